#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlaudit/dataset.hpp"

namespace mlaudit {

/// Maps a feature list onto a numeric matrix for tree/forest/SVR fitting.
/// Numeric features pass through; categoricals expand to one indicator per
/// level (no reference dropping; these models carry no intercept). Levels
/// are captured at fit time and unseen levels fail at transform.
class FeatureEncoder {
 public:
  FeatureEncoder() = default;

  static FeatureEncoder fit(const Dataset& ds, const std::vector<std::string>& features);

  std::size_t n_cols() const { return column_names_.size(); }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const std::vector<std::string>& features() const { return features_; }

  /// Column-major encoding (one vector per encoded column).
  std::vector<std::vector<double>> transform_columns(const Dataset& ds) const;

  /// Row-major encoding, n * n_cols flat.
  std::vector<double> transform_rows(const Dataset& ds) const;

  nlohmann::json to_json() const;
  static FeatureEncoder from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> features_;
  std::vector<std::string> column_names_;
  // per feature: empty vector marks numeric, otherwise the captured levels
  std::map<std::string, std::vector<std::string>> levels_;
};

}  // namespace mlaudit
