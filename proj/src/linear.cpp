#include "mlaudit/linear.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mlaudit/metrics.hpp"

namespace mlaudit {

using nlohmann::json;

OlsSolution fit_ols(const DesignMatrix& dm) {
  if (dm.n < dm.p)
    throw SingularDesignError("fit_ols: fewer rows (" + std::to_string(dm.n) +
                              ") than design columns (" + std::to_string(dm.p) + ")");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> x(dm.values.data(), static_cast<Eigen::Index>(dm.n),
                               static_cast<Eigen::Index>(dm.p));
  Eigen::Map<const Eigen::VectorXd> y(dm.response.data(), static_cast<Eigen::Index>(dm.n));

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < static_cast<Eigen::Index>(dm.p)) {
    std::string cols;
    for (const auto& name : dm.column_names) cols += (cols.empty() ? "" : ", ") + name;
    throw SingularDesignError("fit_ols: design matrix is rank deficient (rank " +
                              std::to_string(qr.rank()) + " of " + std::to_string(dm.p) +
                              "; columns: " + cols + ")");
  }
  Eigen::VectorXd beta = qr.solve(y);

  OlsSolution sol;
  sol.coefficients.assign(beta.data(), beta.data() + beta.size());
  Eigen::VectorXd fitted = x * beta;
  std::vector<double> yhat(fitted.data(), fitted.data() + fitted.size());
  sol.train_rmse = rmse(dm.response, yhat);
  double mean = 0.0;
  for (double v : dm.response) mean += v;
  mean /= static_cast<double>(dm.n);
  double ss_tot = 0.0;
  for (double v : dm.response) ss_tot += (v - mean) * (v - mean);
  if (dm.n >= 2 && ss_tot > 0.0) sol.train_r2 = r_squared(dm.response, yhat);
  return sol;
}

LinearModel::LinearModel(DesignInfo info, OlsSolution solution)
    : info_(std::move(info)), solution_(std::move(solution)),
      features_(formula_features(info_.formula)) {}

std::vector<double> LinearModel::predict(const Dataset& ds) const {
  DesignMatrix dm = materialize_design(info_, ds, /*with_response=*/false);
  if (dm.p != solution_.coefficients.size())
    throw AuditError("predict: design has " + std::to_string(dm.p) +
                     " columns, model has " + std::to_string(solution_.coefficients.size()) +
                     " coefficients");
  std::vector<double> out(dm.n, 0.0);
  for (std::size_t r = 0; r < dm.n; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < dm.p; ++c) acc += dm.at(r, c) * solution_.coefficients[c];
    out[r] = info_.formula.log_response ? std::exp(acc) : acc;
  }
  return out;
}

json LinearModel::to_json() const {
  json levels = json::object();
  for (const auto& [name, lv] : info_.levels) levels[name] = lv;
  json j = {{"family", "lm"},
            {"formula", print_formula(info_.formula)},
            {"levels", levels},
            {"coefficients", solution_.coefficients},
            {"train_rmse", solution_.train_rmse}};
  if (solution_.train_r2) j["train_r2"] = *solution_.train_r2;
  return j;
}

std::shared_ptr<LinearModel> LinearModel::from_json(const json& j) {
  DesignInfo info;
  info.formula = parse_formula(j.at("formula").get<std::string>());
  for (const auto& [name, lv] : j.at("levels").items())
    info.levels[name] = lv.get<std::vector<std::string>>();
  OlsSolution sol;
  sol.coefficients = j.at("coefficients").get<std::vector<double>>();
  sol.train_rmse = j.value("train_rmse", 0.0);
  if (j.contains("train_r2")) sol.train_r2 = j.at("train_r2").get<double>();
  return std::make_shared<LinearModel>(std::move(info), std::move(sol));
}

std::shared_ptr<LinearModel> fit_linear(const Formula& f, const Dataset& ds) {
  DesignInfo info = capture_design(f, ds);
  DesignMatrix dm = materialize_design(info, ds, true);
  OlsSolution sol = fit_ols(dm);
  return std::make_shared<LinearModel>(std::move(info), std::move(sol));
}

}  // namespace mlaudit
