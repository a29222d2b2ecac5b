#include "zenosta/strobe.hpp"

#include <cmath>

#include "zenosta/errors.hpp"
#include "zenosta/generators.hpp"
#include "zenosta/operators.hpp"
#include "zenosta/rng.hpp"

namespace zenosta {

QuantumState QuantumState::mixed(Mat rho) {
  validate_density_matrix(rho);
  QuantumState s;
  s.kind = Kind::mixed;
  s.density = std::move(rho);
  return s;
}

void validate_density_matrix(const Mat& rho, double tol) {
  if (!is_finite(rho)) throw InvalidDensityMatrix("non-finite entries");
  if (hermiticity_defect(rho) > 1e-9 * std::max(1.0, operator_norm(rho)))
    throw InvalidDensityMatrix("not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw InvalidDensityMatrix("negative eigenvalue " +
                               std::to_string(es.eigenvalues().minCoeff()));
}

Mat strobe_step(const Mat& h, const Mat& p_now, const Mat& p_next, double dt) {
  if (dt <= 0.0) throw ConfigInvalid("step size must be positive");
  if (projector_defect(p_now) > 1e-8 || projector_defect(p_next) > 1e-8)
    throw NotAProjector("strobe_step");
  return p_next * matrix_exponential(h, -iu * dt, true) * p_now;
}

StrobeResult strobe_evolve_conditioned(const OperatorSchedule& h,
                                       const ProjectorFamily& fam, int sector,
                                       const TimeGrid& grid, const Vec& psi0,
                                       bool midpoint_freeze) {
  const double dt = grid.dt();
  const Mat p0 = fam.eval(0.0)[sector];
  const Mat q0 = identity(fam.dim) - p0;
  if ((q0 * psi0).norm() > 1e-8 * psi0.norm())
    throw InitialStateOutsideSubspace("‖Qψ0‖ = " +
                                      std::to_string((q0 * psi0).norm()));

  StrobeResult res;
  res.survival.reserve(grid.steps);
  res.leak_estimate.reserve(grid.steps);
  res.states.reserve(grid.points());
  Vec psi = psi0 / psi0.norm();
  res.states.push_back(psi);
  double log_surv = 0.0;
  auto ps_now = fam.eval(0.0);
  for (int k = 0; k < grid.steps; ++k) {
    const double tk = grid.point(k);
    const double t_freeze = midpoint_freeze ? tk + dt / 2.0 : tk;
    const auto ps_next = fam.eval(grid.point(k + 1));
    const Mat omega =
        strobe_step(h(t_freeze), ps_now[sector], ps_next[sector], dt);

    // Small-dt leak prediction dt²·⟨PHQHP + PṖṖP⟩ for diagnostics.
    {
      const Mat p = ps_now[sector];
      const double td = std::min(std::max(tk, fam.step()),
                                 fam.t_max - fam.step());
      const Mat pdot = projector_derivative(fam, td, 1)[sector];
      const Mat gamma = gamma_dt(h(tk), p, pdot);
      res.leak_estimate.push_back(
          dt * dt * 0.5 * (psi.dot(gamma * psi)).real());
    }

    const Vec next = omega * psi;
    const double p_surv = next.squaredNorm();
    res.survival.push_back(p_surv);
    log_surv += std::log(std::max(p_surv, 1e-320));
    if (log_surv < std::log(1e-300))
      throw ZeroSurvival("cumulative survival underflow at step " +
                         std::to_string(k));
    psi = next / next.norm();
    res.states.push_back(psi);
    ps_now = ps_next;
  }
  res.cumulative_survival = std::exp(log_surv);
  res.final_state = psi;
  return res;
}

StrobeResult strobe_evolve_channel(const OperatorSchedule& h,
                                   const ProjectorFamily& fam,
                                   const TimeGrid& grid, const Mat& rho0) {
  validate_density_matrix(rho0);
  const double dt = grid.dt();
  StrobeResult res;
  Mat rho = rho0;
  res.trace_history.reserve(grid.points());
  res.trace_history.push_back(rho.trace().real());
  auto ps_now = fam.eval(0.0);
  for (int k = 0; k < grid.steps; ++k) {
    const Mat u = matrix_exponential(h(grid.point(k)), -iu * dt, true);
    const auto ps_next = fam.eval(grid.point(k + 1));
    Mat next = Mat::Zero(fam.dim, fam.dim);
    for (int n = 0; n < fam.sectors; ++n) {
      const Mat kraus = ps_next[n] * u * ps_now[n];
      next += kraus * rho * kraus.adjoint();
    }
    rho = next;
    res.trace_history.push_back(rho.trace().real());
    ps_now = ps_next;
  }
  res.final_density = rho;
  res.cumulative_survival = rho.trace().real();
  return res;
}

StrobeResult strobe_evolve_selective(const OperatorSchedule& h,
                                     const ProjectorFamily& fam,
                                     const TimeGrid& grid, const Vec& psi0,
                                     std::uint64_t seed) {
  const double dt = grid.dt();
  auto gen = make_stream(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  StrobeResult res;
  res.outcomes.reserve(grid.steps);
  Vec psi = psi0 / psi0.norm();
  for (int k = 0; k < grid.steps; ++k) {
    const Mat u = matrix_exponential(h(grid.point(k)), -iu * dt, true);
    const auto ps_next = fam.eval(grid.point(k + 1));
    const Vec evolved = u * psi;
    double r = unif(gen);
    int outcome = fam.sectors - 1;
    double acc = 0.0;
    for (int n = 0; n < fam.sectors; ++n) {
      acc += (ps_next[n] * evolved).squaredNorm();
      if (r <= acc) {
        outcome = n;
        break;
      }
    }
    res.outcomes.push_back(outcome);
    const Vec collapsed = ps_next[outcome] * evolved;
    psi = collapsed / collapsed.norm();
  }
  res.final_state = psi;
  return res;
}

Mat pinch_apply(const std::vector<Mat>& ps, const Mat& op) {
  Mat out = Mat::Zero(op.rows(), op.cols());
  for (const auto& p : ps) out += p * op * p;
  return out;
}

Mat pinch_step(const std::vector<Mat>& ps, const Mat& rho) {
  validate_density_matrix(rho);
  return pinch_apply(ps, rho);
}

Mat dilation_channel_step(const std::vector<Mat>& ps, const Mat& rho) {
  validate_density_matrix(rho);
  return dilation_apply(ps, rho);
}

Mat dilation_apply(const std::vector<Mat>& ps, const Mat& rho) {
  const int d = static_cast<int>(rho.rows());
  const int m = static_cast<int>(ps.size());
  // Probe shift operators W_n |j⟩ = |(j + n) mod m⟩ keep U = Σ P_n ⊗ W_n unitary.
  Mat u = Mat::Zero(d * m, d * m);
  for (int n = 0; n < m; ++n)
    for (int j = 0; j < m; ++j) {
      const int jp = (j + n) % m;
      u.block(jp * d, j * d, d, d) += ps[n];
    }
  Mat joint = Mat::Zero(d * m, d * m);
  joint.block(0, 0, d, d) = rho;  // ρ ⊗ |0⟩⟨0|
  joint = u * joint * u.adjoint();
  Mat reduced = Mat::Zero(d, d);
  for (int j = 0; j < m; ++j) reduced += joint.block(j * d, j * d, d, d);
  return reduced;
}

}  // namespace zenosta
