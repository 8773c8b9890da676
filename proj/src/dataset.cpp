#include "mlaudit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mlaudit {

using nlohmann::json;

void check_schema(const Schema& schema) {
  if (schema.empty()) throw AuditError("schema: no columns declared");
  std::set<std::string> names;
  std::size_t responses = 0;
  for (const auto& col : schema) {
    if (col.name.empty()) throw AuditError("schema: empty column name");
    if (!names.insert(col.name).second)
      throw AuditError("schema: duplicate column name '" + col.name + "'");
    if (col.role == ColumnRole::response) {
      ++responses;
      if (col.kind != FeatureKind::numeric)
        throw AuditError("schema: response column '" + col.name + "' must be numeric");
    }
  }
  if (responses != 1)
    throw AuditError("schema: expected exactly one response column, found " +
                     std::to_string(responses));
}

Schema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AuditError("cannot open schema file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw AuditError("schema file " + path + ": " + e.what());
  }
  if (!doc.is_array()) throw AuditError("schema file " + path + ": expected a JSON array");
  Schema schema;
  for (const auto& entry : doc) {
    SchemaColumn col;
    col.name = entry.at("name").get<std::string>();
    const std::string kind = entry.at("kind").get<std::string>();
    if (kind == "numeric") {
      col.kind = FeatureKind::numeric;
    } else if (kind == "categorical") {
      col.kind = FeatureKind::categorical;
    } else {
      throw AuditError("schema column '" + col.name + "': unknown kind '" + kind + "'");
    }
    const std::string role = entry.at("role").get<std::string>();
    if (role == "feature") {
      col.role = ColumnRole::feature;
    } else if (role == "response") {
      col.role = ColumnRole::response;
    } else {
      throw AuditError("schema column '" + col.name + "': unknown role '" + role + "'");
    }
    col.units = entry.value("units", "");
    schema.push_back(std::move(col));
  }
  check_schema(schema);
  return schema;
}

void save_schema(const Schema& schema, const std::string& path) {
  check_schema(schema);
  json doc = json::array();
  for (const auto& col : schema) {
    doc.push_back({{"name", col.name},
                   {"kind", col.kind == FeatureKind::numeric ? "numeric" : "categorical"},
                   {"role", col.role == ColumnRole::feature ? "feature" : "response"},
                   {"units", col.units}});
  }
  std::ofstream out(path);
  if (!out) throw AuditError("cannot write schema file: " + path);
  out << doc.dump(2) << "\n";
}

Dataset::Dataset(Schema schema, std::vector<Column> columns, std::string provenance)
    : schema_(std::move(schema)), columns_(std::move(columns)),
      provenance_(std::move(provenance)) {
  check_schema(schema_);
  if (columns_.size() != schema_.size())
    throw AuditError("dataset: column count does not match schema");
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    const bool numeric = schema_[i].kind == FeatureKind::numeric;
    if (numeric != std::holds_alternative<std::vector<double>>(columns_[i]))
      throw AuditError("dataset: column '" + schema_[i].name +
                       "' storage does not match its declared kind");
    const std::size_t len = numeric ? std::get<0>(columns_[i]).size()
                                    : std::get<1>(columns_[i]).size();
    if (i == 0) {
      n_rows_ = len;
    } else if (len != n_rows_) {
      throw AuditError("dataset: ragged columns");
    }
    if (schema_[i].role == ColumnRole::response) response_idx_ = i;
  }
  if (n_rows_ == 0) throw AuditError("dataset: zero data rows");
}

std::size_t Dataset::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < schema_.size(); ++i)
    if (schema_[i].name == name) return i;
  throw AuditError("unknown column '" + name + "'");
}

bool Dataset::has_column(const std::string& name) const {
  for (const auto& col : schema_)
    if (col.name == name) return true;
  return false;
}

const std::vector<double>& Dataset::numeric_column(std::size_t idx) const {
  if (schema_[idx].kind != FeatureKind::numeric)
    throw AuditError("column '" + schema_[idx].name + "' is not numeric");
  return std::get<0>(columns_[idx]);
}

const std::vector<std::string>& Dataset::categorical_column(std::size_t idx) const {
  if (schema_[idx].kind != FeatureKind::categorical)
    throw AuditError("column '" + schema_[idx].name + "' is not categorical");
  return std::get<1>(columns_[idx]);
}

const std::vector<double>& Dataset::numeric_column(const std::string& name) const {
  return numeric_column(column_index(name));
}

const std::vector<std::string>& Dataset::categorical_column(const std::string& name) const {
  return categorical_column(column_index(name));
}

const std::string& Dataset::response_name() const { return schema_[response_idx_].name; }

const std::vector<double>& Dataset::response() const {
  return std::get<0>(columns_[response_idx_]);
}

std::vector<std::string> Dataset::feature_names() const {
  std::vector<std::string> names;
  for (const auto& col : schema_)
    if (col.role == ColumnRole::feature) names.push_back(col.name);
  return names;
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& rows) const {
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (schema_[c].kind == FeatureKind::numeric) {
      const auto& src = std::get<0>(columns_[c]);
      std::vector<double> out;
      out.reserve(rows.size());
      for (std::size_t r : rows) {
        if (r >= n_rows_) throw AuditError("select_rows: index out of range");
        out.push_back(src[r]);
      }
      cols.emplace_back(std::move(out));
    } else {
      const auto& src = std::get<1>(columns_[c]);
      std::vector<std::string> out;
      out.reserve(rows.size());
      for (std::size_t r : rows) {
        if (r >= n_rows_) throw AuditError("select_rows: index out of range");
        out.push_back(src[r]);
      }
      cols.emplace_back(std::move(out));
    }
  }
  return Dataset(schema_, std::move(cols), provenance_);
}

CellValue Dataset::cell(std::size_t row, std::size_t col) const {
  if (schema_[col].kind == FeatureKind::numeric)
    return std::get<0>(columns_[col])[row];
  return std::get<1>(columns_[col])[row];
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_numeric_cell(const std::string& raw, std::size_t row, const std::string& col) {
  const std::string token = trim(raw);
  if (token.empty())
    throw CsvError("empty cell at row " + std::to_string(row) + ", column " + col);
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw CsvError("cannot parse '" + token + "' as numeric at row " +
                   std::to_string(row) + ", column " + col);
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const Schema& schema) {
  check_schema(schema);
  std::ifstream in(path);
  if (!in) throw AuditError("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw CsvError(path + ": missing header line");
  const auto header = split_line(line);
  if (header.size() != schema.size())
    throw CsvError(path + ": header has " + std::to_string(header.size()) +
                   " columns, schema declares " + std::to_string(schema.size()));
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (trim(header[i]) != schema[i].name)
      throw CsvError(path + ": header column " + std::to_string(i + 1) + " is '" +
                     trim(header[i]) + "', schema declares '" + schema[i].name + "'");
  }

  std::vector<Column> cols;
  for (const auto& col : schema) {
    if (col.kind == FeatureKind::numeric)
      cols.emplace_back(std::vector<double>{});
    else
      cols.emplace_back(std::vector<std::string>{});
  }

  std::size_t row = 1;  // 1-based, header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() && in.eof()) break;
    const auto cells = split_line(line);
    if (cells.size() != schema.size())
      throw CsvError(path + ": row " + std::to_string(row) + " has " +
                     std::to_string(cells.size()) + " cells, expected " +
                     std::to_string(schema.size()));
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (schema[c].kind == FeatureKind::numeric) {
        std::get<0>(cols[c]).push_back(parse_numeric_cell(cells[c], row, schema[c].name));
      } else {
        const std::string token = trim(cells[c]);
        if (token.empty())
          throw CsvError("empty cell at row " + std::to_string(row) + ", column " +
                         schema[c].name);
        std::get<1>(cols[c]).push_back(token);
      }
    }
  }
  if (row == 1) throw CsvError(path + ": zero data rows");
  return Dataset(schema, std::move(cols), path);
}

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw AuditError("format_double failed");
  return std::string(buf, ptr);
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw AuditError("cannot write CSV file: " + path);
  const auto& schema = ds.schema();
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (c) out << ',';
    out << schema[c].name;
  }
  out << '\n';
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (c) out << ',';
      if (schema[c].kind == FeatureKind::numeric)
        out << format_double(ds.numeric_column(c)[r]);
      else
        out << ds.categorical_column(c)[r];
    }
    out << '\n';
  }
}

std::string GroupKey::label() const {
  std::string out;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (i) out += ',';
    out += features[i];
    out += '=';
    if (std::holds_alternative<double>(values[i]))
      out += format_double(std::get<double>(values[i]));
    else
      out += std::get<std::string>(values[i]);
  }
  return out;
}

bool cell_less(const CellValue& a, const CellValue& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (std::holds_alternative<double>(a))
    return std::get<double>(a) < std::get<double>(b);
  return std::get<std::string>(a) < std::get<std::string>(b);
}

bool tuple_less(const std::vector<CellValue>& a, const std::vector<CellValue>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (cell_less(a[i], b[i])) return true;
    if (cell_less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

void check_partition(const SplitIndices& split, std::size_t n) {
  if (split.folds.size() < 2) throw AuditError("partition: need at least 2 folds");
  std::vector<char> seen(n, 0);
  std::size_t total = 0;
  for (const auto& fold : split.folds) {
    if (fold.empty()) throw AuditError("partition: empty fold");
    for (std::size_t idx : fold) {
      if (idx >= n) throw AuditError("partition: index out of range");
      if (seen[idx]) throw AuditError("partition: index appears twice");
      seen[idx] = 1;
      ++total;
    }
  }
  if (total != n) throw AuditError("partition: folds do not cover all rows");
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction,
                                             std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw AuditError("train_test_split: fraction must be in (0,1)");
  const std::size_t n = ds.n_rows();
  const auto n_train =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5));
  if (n_train < 1 || n_train >= n)
    throw AuditError("train_test_split: degenerate partition (train=" +
                     std::to_string(n_train) + ", n=" + std::to_string(n) + ")");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(idx);
  std::vector<std::size_t> train(idx.begin(), idx.begin() + static_cast<long>(n_train));
  std::vector<std::size_t> test(idx.begin() + static_cast<long>(n_train), idx.end());
  // Keep original row order inside each side.
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {ds.select_rows(train), ds.select_rows(test)};
}

std::vector<std::pair<GroupKey, std::size_t>> unique_combinations(
    const Dataset& ds, const std::vector<std::string>& features) {
  auto groups = group_row_indices(ds, features);
  std::vector<std::pair<GroupKey, std::size_t>> out;
  out.reserve(groups.size());
  // group_row_indices already orders groups lexicographically by value tuple.
  for (const auto& rows : groups) {
    GroupKey key;
    key.features = features;
    for (const auto& f : features) key.values.push_back(ds.cell(rows.front(), ds.column_index(f)));
    out.emplace_back(std::move(key), rows.size());
  }
  return out;
}

std::vector<std::vector<std::size_t>> group_row_indices(
    const Dataset& ds, const std::vector<std::string>& features) {
  if (features.empty()) throw AuditError("grouping requires at least one feature");
  std::vector<std::size_t> cols;
  for (const auto& f : features) cols.push_back(ds.column_index(f));

  std::map<std::vector<CellValue>, std::vector<std::size_t>,
           bool (*)(const std::vector<CellValue>&, const std::vector<CellValue>&)>
      groups(tuple_less);
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    std::vector<CellValue> key;
    key.reserve(cols.size());
    for (std::size_t c : cols) key.push_back(ds.cell(r, c));
    groups[std::move(key)].push_back(r);
  }
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [key, rows] : groups) out.push_back(std::move(rows));
  return out;
}

}  // namespace mlaudit
