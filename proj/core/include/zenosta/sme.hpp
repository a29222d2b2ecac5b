#pragma once

#include <cstdint>
#include <vector>

#include "zenosta/generators.hpp"
#include "zenosta/spectral.hpp"
#include "zenosta/time_grid.hpp"
#include "zenosta/types.hpp"

namespace zenosta {

/// Monitored observable X(t) = Σ_n x_n P_n(t) with strength κ.
struct MonitoredObservable {
  ProjectorFamily fam;
  std::vector<double> eigenvalues;  // default x_n = n
  double kappa = 0.0;

  Mat at(double t) const;
  static MonitoredObservable make(ProjectorFamily fam, double kappa,
                                  std::vector<double> eigenvalues = {});
};

struct TrajectoryRecord {
  TimeGrid grid;
  std::uint64_t seed = 0;
  std::vector<double> wiener;   // dW per step
  std::vector<double> record;   // dY per step
  std::vector<Mat> states;      // conditioned ρ_c per grid point
};

/// One Euler–Maruyama step of the diffusive SME, with trace renormalization,
/// Hermitian symmetrization, and positivity clipping (budgeted).
Mat sme_step(const Mat& rho, const Mat& h, const Mat& x, double kappa,
             double dt, double dw, double* clip_budget = nullptr);

TrajectoryRecord sme_trajectory(const OperatorSchedule& h,
                                const MonitoredObservable& obs,
                                const TimeGrid& grid, const Mat& rho0,
                                std::uint64_t seed);

/// Deterministic unconditional master equation, order-2 (Heun) stepping.
std::vector<Mat> lindblad_evolve(const OperatorSchedule& h,
                                 const MonitoredObservable& obs,
                                 const TimeGrid& grid, const Mat& rho0);

/// ρ̃(t_k) = W(t_k)† ρ(t_k) W(t_k).
std::vector<Mat> comoving_transform(const std::vector<Mat>& states,
                                    const Intertwiner& w);

/// max_k ‖W(t_k)† X(t_k) W(t_k) − X(0)‖ — co-moving staticness diagnostic.
double comoving_observable_drift(const MonitoredObservable& obs,
                                 const Intertwiner& w);

/// H̃ = W†HW + iW†ẆW-form connection, evaluated at grid point k.
Mat comoving_hamiltonian(const OperatorSchedule& h,
                         const ProjectorFamily& fam, const Intertwiner& w,
                         int k);

}  // namespace zenosta
