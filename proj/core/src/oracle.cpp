#include "zenosta/oracle.hpp"

#include <cmath>

#include "zenosta/errors.hpp"

namespace zenosta {

namespace {

Mat propagate(const OperatorSchedule& hgen, const TimeGrid& grid, int refine) {
  const double dt = grid.total_time / (static_cast<double>(grid.steps) * refine);
  Mat u = identity(hgen.dim);
  for (long step = 0; step < static_cast<long>(grid.steps) * refine; ++step) {
    const double tm = (step + 0.5) * dt;
    u = matrix_exponential(hgen(tm), -iu * dt, hgen.hermitian) * u;
  }
  return u;
}

}  // namespace

Mat reference_unitary(const OperatorSchedule& hgen, const TimeGrid& grid,
                      const OracleConfig& cfg) {
  if (cfg.refinement < 10)
    throw ConfigInvalid("oracle refinement must be at least 10");
  const Mat u = propagate(hgen, grid, cfg.refinement);
  if (cfg.doubling_check) {
    const Mat u2 = propagate(hgen, grid, 2 * cfg.refinement);
    const double diff = operator_norm(u - u2);
    if (diff > cfg.doubling_tol)
      throw NonConvergence("refinement doubling changed result by " +
                           std::to_string(diff));
  }
  return u;
}

std::vector<Vec> reference_states(const OperatorSchedule& hgen,
                                  const TimeGrid& grid, const Vec& psi0,
                                  int refinement) {
  const double dt = grid.dt() / refinement;
  std::vector<Vec> states;
  states.reserve(grid.points());
  Vec psi = psi0 / psi0.norm();
  states.push_back(psi);
  for (int k = 0; k < grid.steps; ++k) {
    for (int s = 0; s < refinement; ++s) {
      const double tm = grid.point(k) + (s + 0.5) * dt;
      psi = matrix_exponential(hgen(tm), -iu * dt, hgen.hermitian) * psi;
    }
    psi /= psi.norm();
    states.push_back(psi);
  }
  return states;
}

double channel_tomography(const Channel& a, const Channel& b, int dim) {
  if (dim > 16) throw ConfigInvalid("tomography limited to dim <= 16");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double worst = 0.0;
  auto probe = [&](const Mat& e) {
    const Mat diff = a(e) - b(e);
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  };
  for (int j = 0; j < dim; ++j) {
    Mat e = Mat::Zero(dim, dim);
    e(j, j) = 1.0;
    probe(e);
    for (int k = j + 1; k < dim; ++k) {
      Mat sym = Mat::Zero(dim, dim);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      probe(sym);
      Mat asym = Mat::Zero(dim, dim);
      asym(j, k) = -iu * inv_sqrt2;
      asym(k, j) = iu * inv_sqrt2;
      probe(asym);
    }
  }
  return worst;
}

}  // namespace zenosta
