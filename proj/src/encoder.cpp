#include "mlaudit/encoder.hpp"

#include <algorithm>
#include <set>

namespace mlaudit {

using nlohmann::json;

FeatureEncoder FeatureEncoder::fit(const Dataset& ds,
                                   const std::vector<std::string>& features) {
  if (features.empty()) throw AuditError("encoder: empty feature list");
  FeatureEncoder enc;
  enc.features_ = features;
  std::set<std::string> seen;
  for (const auto& name : features) {
    if (!seen.insert(name).second)
      throw AuditError("encoder: duplicate feature '" + name + "'");
    const std::size_t col = ds.column_index(name);
    if (ds.column_info(col).role == ColumnRole::response)
      throw AuditError("encoder: response '" + name + "' cannot be a feature");
    if (ds.column_info(col).kind == FeatureKind::numeric) {
      enc.levels_[name] = {};
      enc.column_names_.push_back(name);
    } else {
      std::set<std::string> uniq(ds.categorical_column(col).begin(),
                                 ds.categorical_column(col).end());
      enc.levels_[name] = std::vector<std::string>(uniq.begin(), uniq.end());
      for (const auto& level : enc.levels_[name])
        enc.column_names_.push_back(name + "=" + level);
    }
  }
  return enc;
}

std::vector<std::vector<double>> FeatureEncoder::transform_columns(const Dataset& ds) const {
  std::vector<std::vector<double>> cols;
  cols.reserve(n_cols());
  const std::size_t n = ds.n_rows();
  for (const auto& name : features_) {
    const std::size_t col = ds.column_index(name);
    const auto& levels = levels_.at(name);
    if (levels.empty()) {
      if (ds.column_info(col).kind != FeatureKind::numeric)
        throw AuditError("encoder: column '" + name + "' was numeric at fit time");
      cols.push_back(ds.numeric_column(col));
    } else {
      const auto& labels = ds.categorical_column(col);
      for (const auto& label : labels)
        if (std::find(levels.begin(), levels.end(), label) == levels.end())
          throw AuditError("unseen level '" + label + "' in categorical '" + name + "'");
      for (const auto& level : levels) {
        std::vector<double> indicator(n, 0.0);
        for (std::size_t r = 0; r < n; ++r)
          if (labels[r] == level) indicator[r] = 1.0;
        cols.push_back(std::move(indicator));
      }
    }
  }
  return cols;
}

std::vector<double> FeatureEncoder::transform_rows(const Dataset& ds) const {
  const auto cols = transform_columns(ds);
  const std::size_t n = ds.n_rows();
  const std::size_t p = cols.size();
  std::vector<double> rows(n * p);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t r = 0; r < n; ++r) rows[r * p + c] = cols[c][r];
  return rows;
}

json FeatureEncoder::to_json() const {
  json levels = json::object();
  for (const auto& [name, lv] : levels_) levels[name] = lv;
  return {{"features", features_}, {"levels", levels}};
}

FeatureEncoder FeatureEncoder::from_json(const json& j) {
  FeatureEncoder enc;
  enc.features_ = j.at("features").get<std::vector<std::string>>();
  for (const auto& name : enc.features_) {
    const auto lv = j.at("levels").at(name).get<std::vector<std::string>>();
    enc.levels_[name] = lv;
    if (lv.empty()) {
      enc.column_names_.push_back(name);
    } else {
      for (const auto& level : lv) enc.column_names_.push_back(name + "=" + level);
    }
  }
  return enc;
}

}  // namespace mlaudit
