#include "zenosta/sme.hpp"

#include <cmath>

#include "zenosta/errors.hpp"
#include "zenosta/operators.hpp"
#include "zenosta/rng.hpp"
#include "zenosta/strobe.hpp"

namespace zenosta {

Mat MonitoredObservable::at(double t) const {
  const auto ps = fam.eval(t);
  Mat x = Mat::Zero(fam.dim, fam.dim);
  for (int n = 0; n < fam.sectors; ++n) x += eigenvalues[n] * ps[n];
  return x;
}

MonitoredObservable MonitoredObservable::make(ProjectorFamily fam, double kappa,
                                              std::vector<double> eigenvalues) {
  MonitoredObservable obs;
  if (eigenvalues.empty()) {
    eigenvalues.resize(fam.sectors);
    for (int n = 0; n < fam.sectors; ++n) eigenvalues[n] = n;
  }
  if (static_cast<int>(eigenvalues.size()) != fam.sectors)
    throw ConfigInvalid("one eigenvalue per sector required");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
      if (std::abs(eigenvalues[i] - eigenvalues[j]) < 1e-9)
        throw ConfigInvalid("monitored eigenvalues must be pairwise distinct");
  obs.fam = std::move(fam);
  obs.eigenvalues = std::move(eigenvalues);
  obs.kappa = kappa;
  return obs;
}

namespace {

Mat lindblad_rhs(const Mat& rho, const Mat& h, const Mat& x, double kappa) {
  const Mat diss = x * rho * x - 0.5 * anticommutator(x * x, rho);
  return -iu * commutator(h, rho) + kappa * diss;
}

}  // namespace

Mat sme_step(const Mat& rho, const Mat& h, const Mat& x, double kappa,
             double dt, double dw, double* clip_budget) {
  // Exponential Kraus step: ρ' ∝ MρM† with
  //   M = exp(−iH dt − κX² dt + √κ X dY).
  // Expanding to O(dt) recovers the linear Kraus form
  // I − (iH + κX²/2)dt + √κ X dY, i.e. the diffusive SME with the
  // symmetrized innovation Xρ + ρX − 2⟨X⟩ρ.  For a static X commuting
  // with H the exponentials telescope into the exact conditional
  // likelihood exp(√κ X Y_t − κX²t), so strong monitoring carries no
  // κ·dt bias.  The update is completely positive, so the clipping
  // budget below only absorbs roundoff.
  const double mean_x = (x * rho).trace().real();
  const double sqrt_kappa = std::sqrt(kappa);
  const double dy = 2.0 * sqrt_kappa * mean_x * dt + dw;
  const Mat gen = -(iu * h + kappa * x * x) * dt + sqrt_kappa * dy * x;
  const Mat m = matrix_exponential(gen, 1.0, false);
  Mat next = m * rho * m.adjoint();
  next = (next + next.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Mat> es(next);
  const auto& vals = es.eigenvalues();
  if (vals.minCoeff() < -1e-8) {
    double clipped = 0.0;
    Eigen::VectorXd fixed = vals;
    for (int i = 0; i < fixed.size(); ++i)
      if (fixed(i) < 0.0) {
        clipped += -fixed(i);
        fixed(i) = 0.0;
      }
    if (clip_budget) {
      *clip_budget += clipped;
      if (*clip_budget > 1e-6)
        throw PositivityLoss("clipping budget exceeded; reduce dt for this κ");
    }
    next = es.eigenvectors() * fixed.asDiagonal().toDenseMatrix().cast<cplx>() *
           es.eigenvectors().adjoint();
  }
  return next / next.trace().real();
}

TrajectoryRecord sme_trajectory(const OperatorSchedule& h,
                                const MonitoredObservable& obs,
                                const TimeGrid& grid, const Mat& rho0,
                                std::uint64_t seed) {
  const double dt = grid.dt();
  if (obs.kappa * dt > 0.1)
    throw StabilityGuard("κ·dt = " + std::to_string(obs.kappa * dt) +
                         " exceeds 0.1");
  validate_density_matrix(rho0);
  auto gen = make_stream(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(dt));

  TrajectoryRecord rec;
  rec.grid = grid;
  rec.seed = seed;
  rec.wiener.reserve(grid.steps);
  rec.record.reserve(grid.steps);
  rec.states.reserve(grid.points());
  Mat rho = rho0 / rho0.trace().real();
  rec.states.push_back(rho);
  double clip_budget = 0.0;
  for (int k = 0; k < grid.steps; ++k) {
    const double t = grid.point(k);
    const Mat x = obs.at(t);
    const double dw = normal(gen);
    const double mean_x = (x * rho).trace().real();
    rec.wiener.push_back(dw);
    rec.record.push_back(2.0 * std::sqrt(obs.kappa) * mean_x * dt + dw);
    rho = sme_step(rho, h(t), x, obs.kappa, dt, dw, &clip_budget);
    rec.states.push_back(rho);
  }
  return rec;
}

std::vector<Mat> lindblad_evolve(const OperatorSchedule& h,
                                 const MonitoredObservable& obs,
                                 const TimeGrid& grid, const Mat& rho0) {
  validate_density_matrix(rho0);
  const double dt = grid.dt();
  std::vector<Mat> states;
  states.reserve(grid.points());
  Mat rho = rho0 / rho0.trace().real();
  states.push_back(rho);
  for (int k = 0; k < grid.steps; ++k) {
    const double t0 = grid.point(k);
    const double t1 = grid.point(k + 1);
    const Mat k1 = lindblad_rhs(rho, h(t0), obs.at(t0), obs.kappa);
    const Mat pred = rho + dt * k1;
    const Mat k2 = lindblad_rhs(pred, h(t1), obs.at(t1), obs.kappa);
    rho += dt / 2.0 * (k1 + k2);
    rho = (rho + rho.adjoint()) / 2.0;
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-9)
      throw PositivityLoss("trace drifted to " + std::to_string(tr));
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-6)
      throw PositivityLoss("state left the PSD cone; refine the grid");
    states.push_back(rho);
  }
  return states;
}

std::vector<Mat> comoving_transform(const std::vector<Mat>& states,
                                    const Intertwiner& w) {
  if (states.size() != w.values.size())
    throw GridMismatch("state and intertwiner grids differ");
  std::vector<Mat> out;
  out.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k)
    out.push_back(w.values[k].adjoint() * states[k] * w.values[k]);
  return out;
}

double comoving_observable_drift(const MonitoredObservable& obs,
                                 const Intertwiner& w) {
  const Mat x0 = obs.at(0.0);
  double worst = 0.0;
  for (int k = 0; k < w.grid.points(); ++k) {
    const Mat xt = obs.at(w.grid.point(k));
    worst = std::max(worst, operator_norm(w.values[k].adjoint() * xt *
                                              w.values[k] -
                                          x0));
  }
  return worst;
}

Mat comoving_hamiltonian(const OperatorSchedule& h, const ProjectorFamily& fam,
                         const Intertwiner& w, int k) {
  const double t = w.grid.point(k);
  const auto ps = fam.eval(t);
  const auto pdots = projector_derivative(fam, t, 1);
  const Mat kgen = transport_generator(ps, pdots);
  const Mat& wk = w.values.at(k);
  // ψ̃ = W†ψ obeys iψ̃̇ = (W†HW − iW†Ẇ)ψ̃; with Ẇ = KW the connection
  // enters as −iW†KW.
  return wk.adjoint() * h(t) * wk - iu * wk.adjoint() * kgen * wk;
}

}  // namespace zenosta
