#include "erpclass/table_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "erpclass/error.hpp"

namespace erpclass {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"') {
      if (in_quotes && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else {
        in_quotes = !in_quotes;
      }
    } else if (c == ',' && !in_quotes) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool is_missing_token(const std::string& cell) {
  const std::string t = lower(cell);
  return t.empty() || t == "na" || t == "nan" || t == "n/a";
}

std::optional<double> parse_number(const std::string& cell) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<double> parse_gender(const std::string& cell) {
  const std::string t = lower(cell);
  if (t == "male" || t == "m" || t == "0") return 0.0;
  if (t == "female" || t == "f" || t == "1") return 1.0;
  return std::nullopt;
}

std::string location(std::string_view source, std::size_t line, const std::string& column) {
  return std::string(source) + ":" + std::to_string(line) + ", column '" + column + "'";
}

}  // namespace

std::string_view to_string(TableKind kind) {
  switch (kind) {
    case TableKind::kDemographics: return "demographics";
    case TableKind::kErpAverages: return "erp_averages";
    case TableKind::kEegTrials: return "eeg_trials";
  }
  return "?";
}

std::string_view default_file_name(TableKind kind) {
  switch (kind) {
    case TableKind::kDemographics: return "demographics.csv";
    case TableKind::kErpAverages: return "erp_averages.csv";
    case TableKind::kEegTrials: return "eeg_trials.csv";
  }
  return "?";
}

std::vector<std::string> numeric_columns(TableKind kind) {
  std::vector<std::string> cols;
  switch (kind) {
    case TableKind::kDemographics:
      cols = {"age", "gender", "education"};
      break;
    case TableKind::kErpAverages:
      cols = {"ITI", "time_ms"};
      for (Electrode e : kElectrodes) {
        for (ErpComponent c : kErpComponents) cols.push_back(erp_column(e, c).name);
      }
      break;
    case TableKind::kEegTrials:
      for (Electrode e : kElectrodes) cols.emplace_back(to_string(e));
      break;
  }
  return cols;
}

std::vector<std::string> canonical_header(TableKind kind) {
  auto header = required_header(kind);
  if (kind == TableKind::kDemographics) header.emplace_back("group");
  return header;
}

std::vector<std::string> required_header(TableKind kind) {
  std::vector<std::string> header{"subject"};
  auto numeric = numeric_columns(kind);
  if (kind == TableKind::kDemographics) {
    header.insert(header.end(), numeric.begin(), numeric.end());
  } else {
    header.emplace_back("group");
    header.insert(header.end(), numeric.begin(), numeric.end());
  }
  return header;
}

RawTable parse_table(std::istream& in, TableKind kind, std::string_view source) {
  RawTable table;
  table.kind = kind;

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    have_header = true;
    break;
  }
  if (!have_header) {
    throw Error(ErrorCode::kMissingHeader, std::string(source) + " has no header row");
  }
  table.header = split_csv_line(line);

  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < table.header.size(); ++i) position.emplace(table.header[i], i);
  std::vector<std::string> missing;
  for (const auto& name : required_header(kind)) {
    if (!position.contains(name)) missing.push_back(name);
  }
  if (!missing.empty()) {
    std::string msg = std::string(source) + " (" + std::string(to_string(kind)) +
                      ") is missing columns {";
    for (std::size_t i = 0; i < missing.size(); ++i) {
      msg += (i ? ", " : "") + missing[i];
    }
    throw Error(ErrorCode::kHeaderMismatch, msg + "}");
  }

  const auto numeric = numeric_columns(kind);
  std::vector<std::size_t> numeric_pos;
  for (const auto& name : numeric) numeric_pos.push_back(position.at(name));
  const std::size_t subject_pos = position.at("subject");
  const std::optional<std::size_t> group_pos =
      position.contains("group") ? std::optional<std::size_t>(position.at("group"))
                                 : std::nullopt;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::kHeaderMismatch,
                  std::string(source) + ":" + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(table.header.size()));
    }
    RawRow row;
    row.subject = cells[subject_pos];
    if (row.subject.empty()) {
      throw Error(ErrorCode::kInvalidCategory, location(source, line_no, "subject") + ": empty");
    }
    if (group_pos) {
      auto label = parse_label(cells[*group_pos]);
      if (!label) {
        throw Error(ErrorCode::kInvalidCategory,
                    location(source, line_no, "group") + ": '" + cells[*group_pos] + "'");
      }
      row.group = *label;
    }
    row.values.reserve(numeric.size());
    for (std::size_t j = 0; j < numeric.size(); ++j) {
      const std::string& cell = cells[numeric_pos[j]];
      if (is_missing_token(cell)) {
        row.values.push_back(kMissing);
        continue;
      }
      std::optional<double> v =
          (kind == TableKind::kDemographics && numeric[j] == "gender") ? parse_gender(cell)
                                                                       : parse_number(cell);
      if (!v) {
        throw Error(numeric[j] == "gender" ? ErrorCode::kInvalidCategory
                                           : ErrorCode::kNonNumericCell,
                    location(source, line_no, numeric[j]) + ": '" + cell + "'");
      }
      row.values.push_back(*v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

RawTable load_table(const std::filesystem::path& path, TableKind kind) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open '" + path.string() + "'");
  return parse_table(in, kind, path.string());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_table(std::ostream& out, const RawTable& table) {
  const auto header = canonical_header(table.kind);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  const auto numeric = numeric_columns(table.kind);
  for (const auto& row : table.rows) {
    if (row.values.size() != numeric.size()) {
      throw Error(ErrorCode::kSchemaMismatch, "row for subject '" + row.subject +
                                                  "' has wrong value count");
    }
    auto write_value = [&](std::size_t j) {
      const double v = row.values[j];
      if (table.kind == TableKind::kDemographics && numeric[j] == "gender" && !std::isnan(v)) {
        out << (v == 0.0 ? "male" : "female");
      } else {
        out << format_number(v);
      }
    };
    out << row.subject;
    if (table.kind == TableKind::kDemographics) {
      for (std::size_t j = 0; j < numeric.size(); ++j) {
        out << ',';
        write_value(j);
      }
      out << ',' << (row.group ? to_string(*row.group) : "");
    } else {
      out << ',' << (row.group ? to_string(*row.group) : "");
      for (std::size_t j = 0; j < numeric.size(); ++j) {
        out << ',';
        write_value(j);
      }
    }
    out << '\n';
  }
}

void save_table(const std::filesystem::path& path, const RawTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  write_table(out, table);
}

FeatureMatrix merge(const RawTable& erp, const RawTable& eeg, const RawTable& demo,
                    IngestStats* stats) {
  if (erp.kind != TableKind::kErpAverages || eeg.kind != TableKind::kEegTrials ||
      demo.kind != TableKind::kDemographics) {
    throw Error(ErrorCode::kSchemaMismatch, "merge expects (erp_averages, eeg_trials, demographics)");
  }

  std::unordered_map<std::string, std::size_t> demo_row;
  for (std::size_t i = 0; i < demo.rows.size(); ++i) {
    if (!demo_row.emplace(demo.rows[i].subject, i).second) {
      throw Error(ErrorCode::kDuplicateDemographics,
                  "subject '" + demo.rows[i].subject + "' appears more than once");
    }
  }

  // Subjects in order of first appearance in the ERP table, then any
  // EEG-only subjects (which are reported as unknown below).
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> rows_of;
  for (std::size_t i = 0; i < erp.rows.size(); ++i) {
    auto& entry = rows_of[erp.rows[i].subject];
    if (entry.first.empty() && entry.second.empty()) order.push_back(erp.rows[i].subject);
    entry.first.push_back(i);
  }
  for (std::size_t i = 0; i < eeg.rows.size(); ++i) {
    auto& entry = rows_of[eeg.rows[i].subject];
    if (entry.first.empty() && entry.second.empty()) order.push_back(eeg.rows[i].subject);
    entry.second.push_back(i);
  }

  const ColumnSchema& schema = ColumnSchema::canonical();
  std::vector<double> values;
  std::vector<Label> labels;
  std::vector<std::string> ids;
  std::size_t observations = 0;
  std::size_t dropped = 0;

  for (const auto& subject : order) {
    const auto& [erp_rows, eeg_rows] = rows_of.at(subject);
    if (erp_rows.empty() || eeg_rows.empty()) {
      throw Error(ErrorCode::kUnknownSubject,
                  "subject '" + subject + "' has no rows in " +
                      (erp_rows.empty() ? "erp_averages" : "eeg_trials"));
    }
    auto d = demo_row.find(subject);
    if (d == demo_row.end()) {
      throw Error(ErrorCode::kUnknownSubject, "subject '" + subject + "' has no demographics");
    }
    const RawRow& demo_r = demo.rows[d->second];
    const Label label = *erp.rows[erp_rows.front()].group;
    if (demo_r.group && *demo_r.group != label) {
      throw Error(ErrorCode::kGroupMismatch,
                  "subject '" + subject + "' demographics group differs from erp_averages");
    }
    for (std::size_t i : erp_rows) {
      if (erp.rows[i].group != label) {
        throw Error(ErrorCode::kGroupMismatch, "subject '" + subject + "' has conflicting erp_averages groups");
      }
    }
    for (std::size_t i : eeg_rows) {
      if (eeg.rows[i].group != label) {
        throw Error(ErrorCode::kGroupMismatch, "subject '" + subject + "' eeg_trials group differs from erp_averages");
      }
    }

    const std::size_t a = erp_rows.size();
    const std::size_t e = eeg_rows.size();
    if (a != e && a != 1 && e != 1) {
      throw Error(ErrorCode::kRowCountMismatch,
                  "subject '" + subject + "' has " + std::to_string(a) + " erp rows and " +
                      std::to_string(e) + " eeg rows");
    }
    const std::size_t n = std::max(a, e);
    for (std::size_t k = 0; k < n; ++k) {
      const RawRow& er = erp.rows[erp_rows[a == 1 ? 0 : k]];
      const RawRow& gr = eeg.rows[eeg_rows[e == 1 ? 0 : k]];
      std::vector<double> row;
      row.reserve(schema.size());
      row.insert(row.end(), er.values.begin(), er.values.end());
      row.insert(row.end(), gr.values.begin(), gr.values.end());
      row.insert(row.end(), demo_r.values.begin(), demo_r.values.end());
      ++observations;
      if (std::any_of(row.begin(), row.end(), [](double v) { return std::isnan(v); })) {
        ++dropped;
        continue;
      }
      values.insert(values.end(), row.begin(), row.end());
      labels.push_back(label);
      ids.push_back(subject);
    }
  }

  if (stats) {
    stats->observation_rows = observations;
    stats->dropped_missing = dropped;
  }
  return FeatureMatrix(schema, std::move(values), std::move(labels), std::move(ids));
}

DatasetPaths DatasetPaths::in_directory(const std::filesystem::path& dir) {
  return DatasetPaths{dir / default_file_name(TableKind::kErpAverages),
                      dir / default_file_name(TableKind::kEegTrials),
                      dir / default_file_name(TableKind::kDemographics)};
}

FeatureMatrix load_dataset(const DatasetPaths& paths, IngestStats* stats) {
  return merge(load_table(paths.erp, TableKind::kErpAverages),
               load_table(paths.eeg, TableKind::kEegTrials),
               load_table(paths.demographics, TableKind::kDemographics), stats);
}

}  // namespace erpclass
