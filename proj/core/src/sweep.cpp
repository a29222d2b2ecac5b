#include "zenosta/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zenosta/errors.hpp"

namespace zenosta {

namespace {

SlopeFit least_squares(const std::vector<double>& x,
                       const std::vector<double>& y) {
  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw FitDegenerate("axis values are not distinct");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.stderr = n > 2 ? std::sqrt(ss_res / ((n - 2) * sxx)) : 0.0;
  return fit;
}

}  // namespace

SlopeFit fit_loglog_slope(const std::vector<double>& axis,
                          const std::vector<double>& metric) {
  if (axis.size() != metric.size() || axis.size() < 4)
    throw FitDegenerate("need at least 4 matched points");
  std::vector<std::size_t> order(axis.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return axis[a] < axis[b]; });
  std::vector<double> lx, ly;
  for (std::size_t i : order) {
    if (axis[i] <= 0.0 || metric[i] <= 0.0)
      throw FitDegenerate("non-positive value in log-log fit");
    lx.push_back(std::log(axis[i]));
    ly.push_back(std::log(metric[i]));
  }
  SlopeFit fit = least_squares(lx, ly);

  // Asymptotic-regime guard on the largest axis value.
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  const double rms = std::sqrt(ss / lx.size());
  const double last_res =
      std::abs(ly.back() - (fit.intercept + fit.slope * lx.back()));
  if (lx.size() > 4 && rms > 0.0 && last_res > 3.0 * rms) {
    lx.pop_back();
    ly.pop_back();
    fit = least_squares(lx, ly);
    fit.excluded_largest = true;
  }
  return fit;
}

}  // namespace zenosta
