#pragma once

#include <vector>

#include "zenosta/spectral.hpp"
#include "zenosta/time_grid.hpp"
#include "zenosta/types.hpp"

namespace zenosta {

/// Complex absorbing potential: two-sector −iκQ(t) or multi-sector −iκΛ(t).
struct CapSpec {
  double kappa = 1.0;
  ProjectorFamily fam;
  int protected_sector = 0;           // two-sector mode: P = fam[sector]
  std::vector<double> lambdas;        // non-empty → multi-sector Λ = Σ λ_n P_n

  bool multi_sector() const { return !lambdas.empty(); }
};

struct CapResult {
  std::vector<Vec> states;            // unnormalized ψ(t_k)
  std::vector<double> norms;          // ‖ψ(t_k)‖
  std::vector<double> q_fraction;     // ‖Q(t_k)ψ‖/‖ψ‖ (two-sector)
  std::vector<std::vector<double>> sector_populations;  // multi-sector, normalized
  double lambda_shift = 0.0;          // λ_min subtracted before evolution
};

/// Non-unitary evolution ψ' = exp(−i H_nh(t_mid) dt) ψ with midpoint freezing.
CapResult cap_evolve(const OperatorSchedule& h, const CapSpec& cap,
                     const TimeGrid& grid, const Vec& psi0);

/// Eq-of-motion closure estimate ψ_Q ≈ (1/iκ) Q0 H̃ P0 ψ_P.
Vec adiabatic_elimination_estimate(const Mat& h_tilde, const Mat& p0,
                                   const Mat& q0, const Vec& psi_p,
                                   double kappa);

struct SchulmanReport {
  double gamma_diff_norm = 0.0;   // ‖Γ_δt − Γ_κ‖
  double cross_norm = 0.0;        // ‖Γ_cross‖
  double bound_ratio = 0.0;       // ‖Γ_cross‖ / (4‖QHP‖‖QṖP‖), 0 when rhs = 0
  double kappa = 0.0;             // 1/δt identification
};

/// Compare the stroboscopic and absorber leakage generators at time t
/// under the identification δt = 1/κ.
SchulmanReport schulman_compare(const Mat& h, const Mat& p, const Mat& pdot,
                                double dt);

}  // namespace zenosta
