#pragma once

#include <functional>
#include <vector>

#include "zenosta/operators.hpp"
#include "zenosta/time_grid.hpp"
#include "zenosta/types.hpp"

namespace zenosta {

/// Instantaneous eigenframe of H(t) on a grid: continuity-ordered levels and
/// parallel-transport gauge-fixed eigenvectors (successive overlaps real ≥ 0).
struct EigenFrame {
  OperatorSchedule schedule;
  TimeGrid grid;
  Eigen::MatrixXd energies;   // dim × (N+1)
  std::vector<Mat> vectors;   // per grid point, eigenvectors as columns
  double gap_tol = 1e-8;
};

EigenFrame instantaneous_frame(const OperatorSchedule& h, const TimeGrid& grid,
                               double gap_tol = 1e-8);

/// Complete orthogonal constant-rank projector family on [0, t_max].
struct ProjectorFamily {
  int dim = 0;
  int sectors = 0;
  double t_max = 1.0;
  std::vector<int> ranks;
  std::function<std::vector<Mat>(double)> eval;
  std::function<std::vector<Mat>(double)> deriv1;  // optional analytic
  std::function<std::vector<Mat>(double)> deriv2;  // optional analytic
  double fd_step = 0.0;  // 0 → default 1e-5·t_max

  std::vector<Mat> operator()(double t) const { return eval(t); }
  double step() const { return fd_step > 0.0 ? fd_step : 1e-5 * t_max; }
  bool has_analytic() const { return static_cast<bool>(deriv1); }
};

/// Rank-1 spectral PVM of the frame's Hamiltonian, evaluated on demand.
/// Derivatives use first-order perturbation theory when the schedule carries
/// an analytic Ḣ, central finite differences otherwise.
ProjectorFamily spectral_projectors(const EigenFrame& frame);

/// Same family directly from a Hermitian schedule.
ProjectorFamily spectral_family(const OperatorSchedule& h, double gap_tol = 1e-8);

/// Ṗ_n (order 1) or P̈_n (order 2) for every sector.
std::vector<Mat> projector_derivative(const ProjectorFamily& fam, double t,
                                      int order = 1);

/// Validate idempotence/Hermiticity/orthogonality/completeness/rank constancy
/// at one instant; throws FamilyInvalid on violation.
void check_family(const ProjectorFamily& fam, double t, double tol = 1e-8);

/// Two-sector coarse-graining {P_n, I − P_n} of a family.
ProjectorFamily two_sector(const ProjectorFamily& fam, int sector);

/// Gauge-fixed eigenvector velocities |ṅ(t)⟩ in the parallel-transport gauge
/// (perturbative when Ḣ is analytic). Columns of the result.
Mat eigenvector_velocities(const EigenFrame& frame, double t);

/// Eigenvectors of frame.schedule at arbitrary t, continuity-ordered
/// (ascending eigenvalues; the in-scope models are crossing-free).
void eigensystem_at(const OperatorSchedule& h, double t, double gap_tol,
                    Eigen::VectorXd& energies, Mat& vectors);

}  // namespace zenosta
