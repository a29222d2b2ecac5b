#pragma once

#include <vector>

namespace zenosta {

struct SlopeFit {
  double slope = 0.0;
  double stderr = 0.0;
  double intercept = 0.0;
  bool excluded_largest = false;  // asymptotic-regime guard fired
};

/// Least-squares fit of log(metric) vs log(axis). If the residual of the
/// largest axis value exceeds 3× the fit RMS, that point is dropped and the
/// fit repeated (reported via excluded_largest). Throws FitDegenerate on
/// non-positive metrics or fewer than 4 points.
SlopeFit fit_loglog_slope(const std::vector<double>& axis,
                          const std::vector<double>& metric);

}  // namespace zenosta
