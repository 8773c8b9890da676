#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mlaudit/dataset.hpp"

namespace mlaudit {

/// Parsed model specification.
///
/// Grammar (whitespace-insensitive):
///   formula       := response-expr "~" element ("+" element | "-" "1")*
///   response-expr := ident | "log" "(" ident ")"
///   element       := ident | ident ":" ident | "1" | "-" "1"
///
/// The intercept is implicit; a "-1" element suppresses it, a bare "1" is a
/// no-op placeholder so "y ~ 1" spells the intercept-only model.
struct Formula {
  std::string response;
  bool log_response = false;
  std::vector<std::string> terms;  // main effects, in written order
  std::vector<std::pair<std::string, std::string>> interactions;
  bool intercept = true;

  bool operator==(const Formula&) const = default;
};

/// Throws FormulaError (with byte offset) on syntax errors, duplicate terms,
/// duplicate or self-paired interactions, or a response reused as predictor.
Formula parse_formula(const std::string& text);

/// Canonical text form; parse(print(f)) == f.
std::string print_formula(const Formula& f);

/// Numeric design matrix, row-major, with the (possibly transformed)
/// response alongside.
struct DesignMatrix {
  std::vector<std::string> column_names;
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<double> values;    // n * p, row-major
  std::vector<double> response;  // transform applied

  double at(std::size_t i, std::size_t j) const { return values[i * p + j]; }
};

/// Formula plus the categorical levels captured at fit time, so the same
/// encoding can be replayed on new data. Levels are sorted; the first level
/// of each categorical is the dropped reference.
struct DesignInfo {
  Formula formula;
  std::map<std::string, std::vector<std::string>> levels;
};

DesignInfo capture_design(const Formula& f, const Dataset& ds);

/// Materializes the design matrix for ds using captured levels. Throws on
/// unknown identifiers, unseen categorical levels, or a nonpositive response
/// under a log transform. with_response=false skips the response column
/// (prediction on feature-only access paths).
DesignMatrix materialize_design(const DesignInfo& info, const Dataset& ds,
                                bool with_response = true);

/// capture + materialize in one step.
DesignMatrix design_matrix(const Formula& f, const Dataset& ds);

/// Distinct feature identifiers the formula reads (mains + interaction
/// members), in first-appearance order.
std::vector<std::string> formula_features(const Formula& f);

}  // namespace mlaudit
