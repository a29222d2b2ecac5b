#pragma once

#include <vector>

#include "zenosta/spectral.hpp"
#include "zenosta/time_grid.hpp"
#include "zenosta/types.hpp"

namespace zenosta {

/// H_Z = PHP + i[Ṗ, P].
Mat kato_avron_hamiltonian(const Mat& h, const Mat& p, const Mat& pdot);

/// Σ_n P_n H P_n + i Σ_n [Ṗ_n, P_n].
Mat multi_sector_zeno_hamiltonian(const Mat& h, const std::vector<Mat>& ps,
                                  const std::vector<Mat>& pdots);

/// CD term A = i Σ_n (|ṅ⟩⟨n| − ⟨n|ṅ⟩|n⟩⟨n|), gauge invariant.
Mat cd_term(const EigenFrame& frame, double t);

/// K = Σ_n [Ṗ_n, P_n]; anti-Hermitian, K = −iA.
Mat transport_generator(const std::vector<Mat>& ps,
                        const std::vector<Mat>& pdots);

/// Unitary intertwiner solving Ẇ = K W, W(0) = I.
struct Intertwiner {
  TimeGrid grid;
  std::vector<Mat> values;  // W(t_k) per grid point

  const Mat& at(int k) const { return values.at(k); }
};

Intertwiner evolve_intertwiner(const ProjectorFamily& fam, const TimeGrid& grid);

/// Γ_δt = 2(PHQHP + PṖṖP).
Mat gamma_dt(const Mat& h, const Mat& p, const Mat& pdot);

/// Γ_κ = 2P(H + i[Ṗ,P])Q(H + i[Ṗ,P])P.
Mat gamma_kappa(const Mat& h, const Mat& p, const Mat& pdot);

struct CrossTermReport {
  Mat gamma_cross;
  double lhs = 0.0;  // ‖Γ_cross‖
  double rhs = 0.0;  // 4‖QHP‖‖QṖP‖
  bool bound_holds = false;
};

/// Γ_cross = 2i(PHQṖP − PṖQHP) with its operator-norm bound.
CrossTermReport gamma_cross_and_bound(const Mat& h, const Mat& p,
                                      const Mat& pdot);

/// Effective Zeno schedule of the full family (Hermitian-flagged).
OperatorSchedule zeno_schedule(const OperatorSchedule& h,
                               const ProjectorFamily& fam);

/// H(t) + A(t), the transitionless-driving schedule of a spectral frame.
OperatorSchedule cd_schedule(const EigenFrame& frame);

}  // namespace zenosta
