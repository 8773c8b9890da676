#include "mlaudit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mlaudit/common.hpp"

namespace mlaudit {

namespace {

void check_lengths(const std::vector<double>& y, const std::vector<double>& yhat) {
  if (y.empty()) throw AuditError("metric: empty vectors");
  if (y.size() != yhat.size())
    throw AuditError("metric: length mismatch (" + std::to_string(y.size()) + " vs " +
                     std::to_string(yhat.size()) + ")");
}

}  // namespace

double rmse(const std::vector<double>& y, const std::vector<double>& yhat) {
  check_lengths(y, yhat);
  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - yhat[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(y.size()));
}

double median_abs_error(const std::vector<double>& y, const std::vector<double>& yhat) {
  check_lengths(y, yhat);
  std::vector<double> abs_err(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) abs_err[i] = std::fabs(y[i] - yhat[i]);
  const std::size_t n = abs_err.size();
  const std::size_t mid = n / 2;
  std::nth_element(abs_err.begin(), abs_err.begin() + static_cast<long>(mid), abs_err.end());
  const double upper = abs_err[mid];
  if (n % 2 == 1) return upper;
  const double lower =
      *std::max_element(abs_err.begin(), abs_err.begin() + static_cast<long>(mid));
  return 0.5 * (lower + upper);
}

double r_squared(const std::vector<double>& y, const std::vector<double>& yhat) {
  check_lengths(y, yhat);
  if (y.size() < 2) throw AuditError("r_squared: need at least 2 observations");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_tot = 0.0;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_tot += (y[i] - mean) * (y[i] - mean);
    ss_res += (y[i] - yhat[i]) * (y[i] - yhat[i]);
  }
  if (ss_tot == 0.0)
    throw AuditError("r_squared: response is constant, variance undefined");
  return 1.0 - ss_res / ss_tot;
}

}  // namespace mlaudit
