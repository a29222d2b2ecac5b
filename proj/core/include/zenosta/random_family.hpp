#pragma once

#include <cstdint>
#include <vector>

#include "zenosta/spectral.hpp"

namespace zenosta {

/// Smooth constant-rank family P_n(t) = e^{tG} P_n(0) e^{-tG} with a random
/// anti-Hermitian G and random orthonormal initial sectors. Carries exact
/// first and second derivatives Ṗ = [G, P], P̈ = [G, [G, P]].
ProjectorFamily random_rotated_family(int dim, const std::vector<int>& ranks,
                                      double t_max, std::uint64_t seed,
                                      double rotation_scale = 1.0);

/// Two-sector convenience: rank-r sector plus complement.
ProjectorFamily random_rotated_projector(int dim, int rank, double t_max,
                                         std::uint64_t seed,
                                         double rotation_scale = 1.0);

}  // namespace zenosta
