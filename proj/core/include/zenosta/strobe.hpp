#pragma once

#include <cstdint>
#include <vector>

#include "zenosta/spectral.hpp"
#include "zenosta/time_grid.hpp"
#include "zenosta/types.hpp"

namespace zenosta {

/// Pure vector or density matrix.
struct QuantumState {
  enum class Kind { pure, mixed };
  Kind kind = Kind::pure;
  Vec vector;
  Mat density;

  static QuantumState pure(Vec v) {
    QuantumState s;
    s.kind = Kind::pure;
    s.vector = std::move(v);
    return s;
  }
  static QuantumState mixed(Mat rho);

  int dim() const {
    return kind == Kind::pure ? static_cast<int>(vector.size())
                              : static_cast<int>(density.rows());
  }
  Mat as_density() const {
    return kind == Kind::pure ? Mat(vector * vector.adjoint()) : density;
  }
};

void validate_density_matrix(const Mat& rho, double tol = 1e-9);

struct StrobeResult {
  std::vector<double> survival;     // per-step p_surv
  double cumulative_survival = 1.0;
  Vec final_state;                  // conditioned, renormalized
  Mat final_density;                // channel mode
  std::vector<double> trace_history;  // channel mode, cumulative trace
  std::vector<int> outcomes;        // selective mode
  std::vector<double> leak_estimate;  // dt²·⟨Γ_δt/2⟩ per step
  std::vector<Vec> states;          // conditioned states per grid point
};

/// One conditioned step Ω = P(t+δt)·e^{−iHδt}·P(t).
Mat strobe_step(const Mat& h, const Mat& p_now, const Mat& p_next, double dt);

/// Conditioned single-projector protocol on a pure state. `sector` selects
/// the monitored sector of `fam`. H is frozen at the left endpoint of each
/// step (`midpoint_freeze` switches to the midpoint).
StrobeResult strobe_evolve_conditioned(const OperatorSchedule& h,
                                       const ProjectorFamily& fam, int sector,
                                       const TimeGrid& grid, const Vec& psi0,
                                       bool midpoint_freeze = false);

/// Nonselective full-PVM channel on a density matrix; trace non-increasing.
StrobeResult strobe_evolve_channel(const OperatorSchedule& h,
                                   const ProjectorFamily& fam,
                                   const TimeGrid& grid, const Mat& rho0);

/// Selective full-PVM trajectory: outcomes sampled from Born probabilities.
StrobeResult strobe_evolve_selective(const OperatorSchedule& h,
                                     const ProjectorFamily& fam,
                                     const TimeGrid& grid, const Vec& psi0,
                                     std::uint64_t seed);

/// Nonselective PVM via ancilla dilation: couple to an m-level probe with
/// shift operators, apply Σ_n P_n ⊗ W_n, trace out the probe.
Mat dilation_channel_step(const std::vector<Mat>& ps, const Mat& rho);

/// Direct pinching Σ_n P_n ρ P_n (reference for the dilation).
Mat pinch_step(const std::vector<Mat>& ps, const Mat& rho);

// Linear-map forms without density-matrix validation (for tomography).
Mat pinch_apply(const std::vector<Mat>& ps, const Mat& op);
Mat dilation_apply(const std::vector<Mat>& ps, const Mat& op);

}  // namespace zenosta
