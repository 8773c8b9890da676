#pragma once

#include <optional>

#include "mlaudit/formula.hpp"
#include "mlaudit/model.hpp"

namespace mlaudit {

struct OlsSolution {
  std::vector<double> coefficients;  // aligned to design columns
  double train_rmse = 0.0;           // on the fitting scale
  std::optional<double> train_r2;    // absent when the response is constant
};

/// Least squares via rank-revealing QR. Requires n >= p and full column
/// rank; a rank-deficient design raises SingularDesignError.
OlsSolution fit_ols(const DesignMatrix& dm);

class LinearModel final : public FittedModel {
 public:
  LinearModel(DesignInfo info, OlsSolution solution);

  std::string family() const override { return "lm"; }
  const std::vector<std::string>& features() const override { return features_; }
  /// For a log-transformed response, predictions are exponentiated back to
  /// the original scale so metrics stay comparable across families.
  std::vector<double> predict(const Dataset& ds) const override;
  nlohmann::json to_json() const override;
  static std::shared_ptr<LinearModel> from_json(const nlohmann::json& j);

  const Formula& formula() const { return info_.formula; }
  const std::vector<double>& coefficients() const { return solution_.coefficients; }
  const OlsSolution& solution() const { return solution_; }

 private:
  DesignInfo info_;
  OlsSolution solution_;
  std::vector<std::string> features_;
};

std::shared_ptr<LinearModel> fit_linear(const Formula& f, const Dataset& ds);

}  // namespace mlaudit
