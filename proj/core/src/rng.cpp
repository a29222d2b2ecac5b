#include "zenosta/rng.hpp"

namespace zenosta {

namespace {

Mat ginibre(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(n(gen), n(gen));
  return g;
}

}  // namespace

Mat random_hermitian(int dim, std::mt19937_64& gen) {
  Mat g = ginibre(dim, gen);
  return (g + g.adjoint()) / 2.0;
}

Mat random_anti_hermitian(int dim, std::mt19937_64& gen) {
  Mat g = ginibre(dim, gen);
  return (g - g.adjoint()) / 2.0;
}

Mat random_unitary(int dim, std::mt19937_64& gen) {
  Mat g = ginibre(dim, gen);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    cplx d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

Vec random_pure_state(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(n(gen), n(gen));
  return v / v.norm();
}

Mat random_density_matrix(int dim, std::mt19937_64& gen) {
  Mat g = ginibre(dim, gen);
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace zenosta
