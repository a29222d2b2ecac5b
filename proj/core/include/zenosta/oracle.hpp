#pragma once

#include <functional>
#include <vector>

#include "zenosta/operators.hpp"
#include "zenosta/time_grid.hpp"
#include "zenosta/types.hpp"

namespace zenosta {

/// Brute-force references kept on a different stepping rule (midpoint) than
/// the simulators, so agreement is independent evidence.
struct OracleConfig {
  int refinement = 100;  // oracle substeps per scenario step
  bool doubling_check = true;
  double doubling_tol = 1e-9;
};

/// Time-ordered product of midpoint exponentials at R-fold refinement.
Mat reference_unitary(const OperatorSchedule& hgen, const TimeGrid& grid,
                      const OracleConfig& cfg = {});

/// Reference state at every scenario grid point.
std::vector<Vec> reference_states(const OperatorSchedule& hgen,
                                  const TimeGrid& grid, const Vec& psi0,
                                  int refinement = 100);

using Channel = std::function<Mat(const Mat&)>;

/// Max elementwise deviation of two channels over a complete Hermitian
/// operator basis (d² elements).
double channel_tomography(const Channel& a, const Channel& b, int dim);

}  // namespace zenosta
