#include "zenosta/random_family.hpp"

#include <numeric>

#include "zenosta/errors.hpp"
#include "zenosta/operators.hpp"
#include "zenosta/rng.hpp"

namespace zenosta {

ProjectorFamily random_rotated_family(int dim, const std::vector<int>& ranks,
                                      double t_max, std::uint64_t seed,
                                      double rotation_scale) {
  if (std::accumulate(ranks.begin(), ranks.end(), 0) != dim)
    throw FamilyInvalid("ranks must sum to the dimension");
  auto gen = make_stream(seed);
  const Mat u = random_unitary(dim, gen);
  Mat g = random_anti_hermitian(dim, gen);
  g *= rotation_scale / std::max(operator_norm(g), 1e-30);

  std::vector<Mat> p0;
  int col = 0;
  for (int rank : ranks) {
    Mat p = Mat::Zero(dim, dim);
    for (int r = 0; r < rank; ++r, ++col)
      p += u.col(col) * u.col(col).adjoint();
    p0.push_back(std::move(p));
  }

  auto rotate = [g](double t) { return matrix_exponential(iu * g, -iu * t, true); };

  ProjectorFamily fam;
  fam.dim = dim;
  fam.sectors = static_cast<int>(ranks.size());
  fam.t_max = t_max;
  fam.ranks = ranks;
  fam.eval = [p0, rotate](double t) {
    const Mat w = rotate(t);
    std::vector<Mat> ps;
    ps.reserve(p0.size());
    for (const auto& p : p0) ps.push_back(w * p * w.adjoint());
    return ps;
  };
  fam.deriv1 = [fam_eval = fam.eval, g](double t) {
    auto ps = fam_eval(t);
    for (auto& p : ps) p = commutator(g, p);
    return ps;
  };
  fam.deriv2 = [fam_eval = fam.eval, g](double t) {
    auto ps = fam_eval(t);
    for (auto& p : ps) p = commutator(g, commutator(g, p));
    return ps;
  };
  return fam;
}

ProjectorFamily random_rotated_projector(int dim, int rank, double t_max,
                                         std::uint64_t seed,
                                         double rotation_scale) {
  return random_rotated_family(dim, {rank, dim - rank}, t_max, seed,
                               rotation_scale);
}

}  // namespace zenosta
