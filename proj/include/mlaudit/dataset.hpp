#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mlaudit/common.hpp"

namespace mlaudit {

enum class FeatureKind { numeric, categorical };
enum class ColumnRole { feature, response };

struct SchemaColumn {
  std::string name;
  FeatureKind kind = FeatureKind::numeric;
  ColumnRole role = ColumnRole::feature;
  std::string units;
};

using Schema = std::vector<SchemaColumn>;

/// Throws unless names are unique and nonempty and exactly one column is a
/// numeric response.
void check_schema(const Schema& schema);

Schema load_schema(const std::string& path);
void save_schema(const Schema& schema, const std::string& path);

/// One cell: numeric columns hold double, categorical columns hold a label.
using CellValue = std::variant<double, std::string>;

/// Column storage: one vector per column, type matching the schema kind.
using Column = std::variant<std::vector<double>, std::vector<std::string>>;

/// Immutable column-typed table. All operations that need a subset of rows
/// build a new Dataset; instances are safe to share across threads.
class Dataset {
 public:
  Dataset(Schema schema, std::vector<Column> columns, std::string provenance = "");

  std::size_t n_rows() const { return n_rows_; }
  const Schema& schema() const { return schema_; }
  const std::string& provenance() const { return provenance_; }

  /// Index of a named column; throws AuditError if absent.
  std::size_t column_index(const std::string& name) const;
  bool has_column(const std::string& name) const;

  const SchemaColumn& column_info(std::size_t idx) const { return schema_[idx]; }
  const std::vector<double>& numeric_column(std::size_t idx) const;
  const std::vector<std::string>& categorical_column(std::size_t idx) const;
  const std::vector<double>& numeric_column(const std::string& name) const;
  const std::vector<std::string>& categorical_column(const std::string& name) const;

  const std::string& response_name() const;
  const std::vector<double>& response() const;

  /// Names of all feature-role columns, in schema order.
  std::vector<std::string> feature_names() const;

  Dataset select_rows(const std::vector<std::size_t>& rows) const;

  CellValue cell(std::size_t row, std::size_t col) const;

 private:
  Schema schema_;
  std::vector<Column> columns_;
  std::string provenance_;
  std::size_t n_rows_ = 0;
  std::size_t response_idx_ = 0;
};

/// CSV ingestion: comma separated, one header line, '.' decimal point,
/// scientific notation accepted, no quoting. Any missing or malformed cell
/// is an error naming the row and column.
Dataset load_csv(const std::string& path, const Schema& schema);
void save_csv(const Dataset& ds, const std::string& path);

struct GroupKey {
  std::vector<std::string> features;
  std::vector<CellValue> values;

  std::string label() const;  // "t=1,Lsl=10"
  bool operator==(const GroupKey& other) const = default;
};

bool cell_less(const CellValue& a, const CellValue& b);
bool tuple_less(const std::vector<CellValue>& a, const std::vector<CellValue>& b);

/// Disjoint, exhaustive folds over row indices [0, n).
struct SplitIndices {
  std::vector<std::vector<std::size_t>> folds;
  std::optional<std::uint64_t> seed;  // absent for grouped plans
};

/// Verifies the partition laws (disjoint, exhaustive, nonempty, >= 2 folds);
/// throws AuditError on violation.
void check_partition(const SplitIndices& split, std::size_t n);

/// Seeded shuffle split; train size = round(fraction * n), ties toward train.
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction,
                                             std::uint64_t seed);

/// Distinct value tuples of the given features with their row counts,
/// ordered lexicographically by value tuple.
std::vector<std::pair<GroupKey, std::size_t>> unique_combinations(
    const Dataset& ds, const std::vector<std::string>& features);

/// Row indices of every group, aligned with unique_combinations output.
std::vector<std::vector<std::size_t>> group_row_indices(
    const Dataset& ds, const std::vector<std::string>& features);

std::string format_double(double v);

}  // namespace mlaudit
