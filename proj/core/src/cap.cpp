#include "zenosta/cap.hpp"

#include <algorithm>
#include <cmath>

#include "zenosta/errors.hpp"
#include "zenosta/generators.hpp"
#include "zenosta/operators.hpp"

namespace zenosta {

CapResult cap_evolve(const OperatorSchedule& h, const CapSpec& cap,
                     const TimeGrid& grid, const Vec& psi0) {
  if (cap.multi_sector() &&
      static_cast<int>(cap.lambdas.size()) != cap.fam.sectors)
    throw ConfigInvalid("one λ per sector required");
  const double dt = grid.dt();
  CapResult res;
  std::vector<double> lambdas = cap.lambdas;
  if (cap.multi_sector()) {
    const double lmin = *std::min_element(lambdas.begin(), lambdas.end());
    for (auto& l : lambdas) l -= lmin;
    res.lambda_shift = lmin;
  }

  auto absorber = [&](double t) {
    const auto ps = cap.fam.eval(t);
    if (!cap.multi_sector())
      return Mat(identity(cap.fam.dim) - ps[cap.protected_sector]);
    Mat lam = Mat::Zero(cap.fam.dim, cap.fam.dim);
    for (int n = 0; n < cap.fam.sectors; ++n) lam += lambdas[n] * ps[n];
    return lam;
  };

  Vec psi = psi0 / psi0.norm();
  auto push = [&](double t) {
    const double norm = psi.norm();
    if (norm < 1e-300) throw NormUnderflow("state absorbed to numerical zero");
    res.states.push_back(psi);
    res.norms.push_back(norm);
    if (!cap.multi_sector()) {
      res.q_fraction.push_back((absorber(t) * psi).norm() / norm);
    } else {
      const auto ps = cap.fam.eval(t);
      std::vector<double> pops(cap.fam.sectors);
      for (int n = 0; n < cap.fam.sectors; ++n)
        pops[n] = (ps[n] * psi).squaredNorm() / (norm * norm);
      res.sector_populations.push_back(std::move(pops));
    }
  };
  push(0.0);
  for (int k = 0; k < grid.steps; ++k) {
    const double tm = grid.point(k) + dt / 2.0;
    const Mat h_nh = h(tm) - iu * cap.kappa * absorber(tm);
    psi = matrix_exponential(h_nh, -iu * dt, false) * psi;
    push(grid.point(k + 1));
  }
  return res;
}

Vec adiabatic_elimination_estimate(const Mat& h_tilde, const Mat& p0,
                                   const Mat& q0, const Vec& psi_p,
                                   double kappa) {
  return (1.0 / (iu * kappa)) * (q0 * h_tilde * p0 * psi_p);
}

SchulmanReport schulman_compare(const Mat& h, const Mat& p, const Mat& pdot,
                                double dt) {
  SchulmanReport rep;
  rep.kappa = 1.0 / dt;
  const Mat g_dt = gamma_dt(h, p, pdot);
  const Mat g_k = gamma_kappa(h, p, pdot);
  const auto cross = gamma_cross_and_bound(h, p, pdot);
  rep.gamma_diff_norm = operator_norm(g_dt - g_k);
  rep.cross_norm = cross.lhs;
  rep.bound_ratio = cross.rhs > 0.0 ? cross.lhs / cross.rhs : 0.0;
  return rep;
}

}  // namespace zenosta
