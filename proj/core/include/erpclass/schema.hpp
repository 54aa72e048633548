#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace erpclass {

enum class Electrode { Fz, FCz, Cz, FC3, FC4, C3, C4, CP3, CP4 };
enum class ErpComponent { B0, N100, P200, B1 };

inline constexpr std::array<Electrode, 9> kElectrodes = {
    Electrode::Fz,  Electrode::FCz, Electrode::Cz,  Electrode::FC3, Electrode::FC4,
    Electrode::C3,  Electrode::C4,  Electrode::CP3, Electrode::CP4};
inline constexpr std::array<ErpComponent, 4> kErpComponents = {
    ErpComponent::B0, ErpComponent::N100, ErpComponent::P200, ErpComponent::B1};

std::string_view to_string(Electrode e);
std::string_view to_string(ErpComponent c);

// Binary diagnosis. SZ is the positive class (+1 inside the SVM).
enum class Label { SZ, HC };

std::string_view to_string(Label label);
// Accepts SZ/HC (any case) and the 1/0 coding used by the public dataset.
std::optional<Label> parse_label(std::string_view text);

enum class ColumnKind { kErp, kRawElectrode, kTiming, kDemographic };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kTiming;
  std::optional<Electrode> electrode;
  std::optional<ErpComponent> component;

  friend bool operator==(const Column&, const Column&) = default;
};

Column erp_column(Electrode e, ErpComponent c);
Column raw_electrode_column(Electrode e);
Column timing_column(std::string name);
Column demographic_column(std::string name);

// Ordered, name-unique list of feature columns.
class ColumnSchema {
 public:
  ColumnSchema() = default;
  explicit ColumnSchema(std::vector<Column> columns);

  // ITI, time_ms, 36 ERP columns (electrode-major), 9 raw electrodes,
  // age, gender, education. Exactly 50 columns.
  static const ColumnSchema& canonical();

  std::size_t size() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  const Column& operator[](std::size_t i) const { return columns_[i]; }
  const std::vector<Column>& columns() const { return columns_; }
  std::vector<std::string> names() const;

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws UnknownColumn.
  std::size_t index_of(std::string_view name) const;

  ColumnSchema subset(const std::vector<std::size_t>& indices) const;

  friend bool operator==(const ColumnSchema&, const ColumnSchema&) = default;

 private:
  std::vector<Column> columns_;
};

enum class DatasetGroup { kErpOnly, kEegDemographic, kAll };

std::string_view to_string(DatasetGroup g);
bool group_contains(DatasetGroup g, ColumnKind kind);

}  // namespace erpclass
