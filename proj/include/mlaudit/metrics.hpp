#pragma once

#include <vector>

namespace mlaudit {

/// sqrt(mean((y - yhat)^2)); both vectors nonempty and of equal length.
double rmse(const std::vector<double>& y, const std::vector<double>& yhat);

/// Median of |y - yhat|; for even n the midpoint of the central pair.
double median_abs_error(const std::vector<double>& y, const std::vector<double>& yhat);

/// 1 - SS_res/SS_tot. Requires length >= 2 and non-constant y; a constant
/// response has no variance to explain and raises an error instead of
/// returning a silent NaN.
double r_squared(const std::vector<double>& y, const std::vector<double>& yhat);

}  // namespace mlaudit
