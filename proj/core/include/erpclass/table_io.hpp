#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erpclass/feature_matrix.hpp"
#include "erpclass/schema.hpp"

namespace erpclass {

enum class TableKind { kDemographics, kErpAverages, kEegTrials };

std::string_view to_string(TableKind kind);
// Canonical file name used by `synth` and by directory-based loading.
std::string_view default_file_name(TableKind kind);

// Columns a file of this kind must carry. The demographics `group` column
// is optional on input (ERP and EEG tables carry the diagnosis) but is
// always written.
std::vector<std::string> required_header(TableKind kind);
// Canonical header written by write_table.
std::vector<std::string> canonical_header(TableKind kind);
// Names of the numeric columns a row of this kind carries, in canonical order.
std::vector<std::string> numeric_columns(TableKind kind);

struct RawRow {
  std::string subject;
  // Always set for ERP/EEG rows; optional for demographics.
  std::optional<Label> group;
  // Parallel to numeric_columns(kind). Missing cells (empty, NA, NaN) are NaN.
  // Demographic gender is already encoded: male -> 0, female -> 1.
  std::vector<double> values;

  friend bool operator==(const RawRow&, const RawRow&) = default;
};

struct RawTable {
  TableKind kind = TableKind::kDemographics;
  std::vector<std::string> header;  // as it appeared in the file
  std::vector<RawRow> rows;
};

// Throws MissingFile, MissingHeader, HeaderMismatch, NonNumericCell,
// InvalidCategory. `source` names the input in error messages.
RawTable parse_table(std::istream& in, TableKind kind, std::string_view source = "<stream>");
RawTable load_table(const std::filesystem::path& path, TableKind kind);

// Writes the canonical header and rows; numbers use shortest round-trip text.
void write_table(std::ostream& out, const RawTable& table);
void save_table(const std::filesystem::path& path, const RawTable& table);

struct IngestStats {
  std::size_t observation_rows = 0;
  std::size_t dropped_missing = 0;
};

// Joins ERP and EEG rows per subject and attaches demographics. Within a
// subject, ERP and EEG rows pair by position; a table contributing exactly
// one row for a subject is broadcast over the other table's rows. Rows with
// a missing cell are dropped and counted in `stats`.
FeatureMatrix merge(const RawTable& erp, const RawTable& eeg, const RawTable& demo,
                    IngestStats* stats = nullptr);

struct DatasetPaths {
  std::filesystem::path erp;
  std::filesystem::path eeg;
  std::filesystem::path demographics;

  static DatasetPaths in_directory(const std::filesystem::path& dir);
};

FeatureMatrix load_dataset(const DatasetPaths& paths, IngestStats* stats = nullptr);

std::string format_number(double v);

}  // namespace erpclass
