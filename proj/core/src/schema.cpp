#include "erpclass/schema.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "erpclass/error.hpp"

namespace erpclass {

std::string_view to_string(Electrode e) {
  switch (e) {
    case Electrode::Fz: return "Fz";
    case Electrode::FCz: return "FCz";
    case Electrode::Cz: return "Cz";
    case Electrode::FC3: return "FC3";
    case Electrode::FC4: return "FC4";
    case Electrode::C3: return "C3";
    case Electrode::C4: return "C4";
    case Electrode::CP3: return "CP3";
    case Electrode::CP4: return "CP4";
  }
  return "?";
}

std::string_view to_string(ErpComponent c) {
  switch (c) {
    case ErpComponent::B0: return "B0";
    case ErpComponent::N100: return "N100";
    case ErpComponent::P200: return "P200";
    case ErpComponent::B1: return "B1";
  }
  return "?";
}

std::string_view to_string(Label label) { return label == Label::SZ ? "SZ" : "HC"; }

std::optional<Label> parse_label(std::string_view text) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    }
  }
  if (t == "SZ" || t == "1") return Label::SZ;
  if (t == "HC" || t == "0") return Label::HC;
  return std::nullopt;
}

Column erp_column(Electrode e, ErpComponent c) {
  return Column{std::string(to_string(e)) + "_" + std::string(to_string(c)),
                ColumnKind::kErp, e, c};
}

Column raw_electrode_column(Electrode e) {
  return Column{std::string(to_string(e)), ColumnKind::kRawElectrode, e, std::nullopt};
}

Column timing_column(std::string name) {
  return Column{std::move(name), ColumnKind::kTiming, std::nullopt, std::nullopt};
}

Column demographic_column(std::string name) {
  return Column{std::move(name), ColumnKind::kDemographic, std::nullopt, std::nullopt};
}

ColumnSchema::ColumnSchema(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.name).second) {
      throw Error(ErrorCode::kSchemaMismatch, "duplicate column name '" + c.name + "'");
    }
  }
}

const ColumnSchema& ColumnSchema::canonical() {
  static const ColumnSchema schema = [] {
    std::vector<Column> cols;
    cols.push_back(timing_column("ITI"));
    cols.push_back(timing_column("time_ms"));
    for (Electrode e : kElectrodes) {
      for (ErpComponent c : kErpComponents) cols.push_back(erp_column(e, c));
    }
    for (Electrode e : kElectrodes) cols.push_back(raw_electrode_column(e));
    cols.push_back(demographic_column("age"));
    cols.push_back(demographic_column("gender"));
    cols.push_back(demographic_column("education"));
    return ColumnSchema(std::move(cols));
  }();
  return schema;
}

std::vector<std::string> ColumnSchema::names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

std::optional<std::size_t> ColumnSchema::find(std::string_view name) const {
  auto it = std::find_if(columns_.begin(), columns_.end(),
                         [&](const Column& c) { return c.name == name; });
  if (it == columns_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns_.begin());
}

std::size_t ColumnSchema::index_of(std::string_view name) const {
  auto idx = find(name);
  if (!idx) throw Error(ErrorCode::kUnknownColumn, "no column named '" + std::string(name) + "'");
  return *idx;
}

ColumnSchema ColumnSchema::subset(const std::vector<std::size_t>& indices) const {
  std::vector<Column> cols;
  cols.reserve(indices.size());
  for (std::size_t i : indices) cols.push_back(columns_.at(i));
  return ColumnSchema(std::move(cols));
}

std::string_view to_string(DatasetGroup g) {
  switch (g) {
    case DatasetGroup::kErpOnly: return "ERP";
    case DatasetGroup::kEegDemographic: return "EEG_demographic";
    case DatasetGroup::kAll: return "ALL";
  }
  return "?";
}

bool group_contains(DatasetGroup g, ColumnKind kind) {
  switch (g) {
    case DatasetGroup::kErpOnly: return kind == ColumnKind::kErp;
    case DatasetGroup::kEegDemographic: return kind != ColumnKind::kErp;
    case DatasetGroup::kAll: return true;
  }
  return false;
}

}  // namespace erpclass
