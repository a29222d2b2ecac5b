#pragma once

#include <vector>

#include "zenosta/types.hpp"

namespace zenosta {

struct ChannelResult {
  Mat output;
  double purity_before = 0.0;
  double purity_after = 0.0;
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  std::vector<double> sector_weights;
};

/// Pinching ρ ↦ Σ_n P_n ρ P_n with purity/entropy bookkeeping.
ChannelResult pinch(const Mat& rho, const std::vector<Mat>& ps);

double purity(const Mat& rho);
double von_neumann_entropy(const Mat& rho);  // natural log
double fidelity(const Mat& rho, const Mat& sigma);
double trace_distance(const Mat& rho, const Mat& sigma);

double fidelity_pure(const Vec& psi, const Mat& rho);

}  // namespace zenosta
