#include "zenosta/generators.hpp"

#include <cmath>

#include "zenosta/errors.hpp"
#include "zenosta/operators.hpp"

namespace zenosta {

namespace {

void require_projector(const Mat& p) {
  if (projector_defect(p) > 1e-8)
    throw NotAProjector("‖P² − P‖ = " + std::to_string(projector_defect(p)));
}

}  // namespace

Mat kato_avron_hamiltonian(const Mat& h, const Mat& p, const Mat& pdot) {
  require_projector(p);
  return p * h * p + iu * commutator(pdot, p);
}

Mat multi_sector_zeno_hamiltonian(const Mat& h, const std::vector<Mat>& ps,
                                  const std::vector<Mat>& pdots) {
  if (ps.empty() || ps.size() != pdots.size())
    throw FamilyInvalid("projector/derivative lists mismatched");
  // For a complete family Σ_n[Ṗ_n,P_n] = 2Σ_nṖ_nP_n; the half-sum is the
  // Kato generator that actually transports every sector (it reduces to
  // [Ṗ,P] for the two-sector family {P, I−P}).
  Mat out = Mat::Zero(h.rows(), h.cols());
  for (std::size_t n = 0; n < ps.size(); ++n) {
    require_projector(ps[n]);
    out += ps[n] * h * ps[n] + 0.5 * iu * commutator(pdots[n], ps[n]);
  }
  return out;
}

Mat cd_term(const EigenFrame& frame, double t) {
  Eigen::VectorXd e;
  Mat v;
  eigensystem_at(frame.schedule, t, frame.gap_tol, e, v);
  const Mat vel = eigenvector_velocities(frame, t);
  const int d = frame.schedule.dim;
  Mat a = Mat::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    const cplx nn = v.col(n).dot(vel.col(n));
    a += iu * (vel.col(n) * v.col(n).adjoint() -
               nn * v.col(n) * v.col(n).adjoint());
  }
  return (a + a.adjoint()) / 2.0;
}

Mat transport_generator(const std::vector<Mat>& ps,
                        const std::vector<Mat>& pdots) {
  if (ps.empty() || ps.size() != pdots.size())
    throw FamilyInvalid("projector/derivative lists mismatched");
  // Half-sum Kato convention; see multi_sector_zeno_hamiltonian.
  Mat k = Mat::Zero(ps[0].rows(), ps[0].cols());
  for (std::size_t n = 0; n < ps.size(); ++n) {
    require_projector(ps[n]);
    k += 0.5 * commutator(pdots[n], ps[n]);
  }
  return k;
}

Intertwiner evolve_intertwiner(const ProjectorFamily& fam,
                               const TimeGrid& grid) {
  Intertwiner w;
  w.grid = grid;
  w.values.reserve(grid.points());
  w.values.push_back(identity(fam.dim));
  const double dt = grid.dt();
  for (int k = 0; k < grid.steps; ++k) {
    const double tm = grid.point(k) + dt / 2.0;
    const auto ps = fam.eval(tm);
    const auto pdots = projector_derivative(fam, tm, 1);
    const Mat kgen = transport_generator(ps, pdots);
    // K is anti-Hermitian: exponentiate via the Hermitian generator iK.
    const Mat step = matrix_exponential(iu * kgen, -iu * dt, true);
    w.values.push_back(step * w.values.back());
    if (operator_norm(w.values.back().adjoint() * w.values.back() -
                      identity(fam.dim)) > 1e-6)
      throw UnitarityLoss("intertwiner drifted off the unitary group; refine grid");
  }
  return w;
}

Mat gamma_dt(const Mat& h, const Mat& p, const Mat& pdot) {
  require_projector(p);
  const Mat q = identity(static_cast<int>(p.rows())) - p;
  return 2.0 * (p * h * q * h * p + p * pdot * pdot * p);
}

Mat gamma_kappa(const Mat& h, const Mat& p, const Mat& pdot) {
  require_projector(p);
  const Mat q = identity(static_cast<int>(p.rows())) - p;
  // The connection enters the leakage with the same sign as in the
  // co-moving Hamiltonian W†(H − i[Ṗ,P])W.  Adiabatic
  // elimination of the absorbed sector then reproduces Γ_κ/(2κ) as the
  // decay block of the effective generator.
  const Mat hz = h - iu * commutator(pdot, p);
  return 2.0 * (p * hz * q * hz * p);
}

CrossTermReport gamma_cross_and_bound(const Mat& h, const Mat& p,
                                      const Mat& pdot) {
  require_projector(p);
  const Mat q = identity(static_cast<int>(p.rows())) - p;
  CrossTermReport rep;
  rep.gamma_cross = 2.0 * iu * (p * pdot * q * h * p - p * h * q * pdot * p);
  rep.lhs = operator_norm(rep.gamma_cross);
  rep.rhs = 4.0 * operator_norm(q * h * p) * operator_norm(q * pdot * p);
  rep.bound_holds = rep.lhs <= rep.rhs + 1e-10;
  return rep;
}

OperatorSchedule zeno_schedule(const OperatorSchedule& h,
                               const ProjectorFamily& fam) {
  OperatorSchedule out;
  out.dim = h.dim;
  out.t_max = h.t_max;
  out.hermitian = true;
  out.eval = [h, fam](double t) {
    const auto ps = fam.eval(t);
    const auto pdots = projector_derivative(fam, t, 1);
    Mat hz = multi_sector_zeno_hamiltonian(h(t), ps, pdots);
    return Mat((hz + hz.adjoint()) / 2.0);
  };
  return out;
}

OperatorSchedule cd_schedule(const EigenFrame& frame) {
  OperatorSchedule out;
  out.dim = frame.schedule.dim;
  out.t_max = frame.schedule.t_max;
  out.hermitian = true;
  out.eval = [frame](double t) {
    return Mat(frame.schedule(t) + cd_term(frame, t));
  };
  return out;
}

}  // namespace zenosta
