#include "zenosta/metrics.hpp"

#include <cmath>

#include "zenosta/errors.hpp"
#include "zenosta/strobe.hpp"

namespace zenosta {

namespace {

// Hermitian square root with negative-eigenvalue clipping at −1e-9.
Mat psd_sqrt(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  Eigen::VectorXd vals = es.eigenvalues();
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -1e-9)
      throw InvalidDensityMatrix("eigenvalue " + std::to_string(vals(i)));
    vals(i) = std::sqrt(std::max(vals(i), 0.0));
  }
  return es.eigenvectors() * vals.asDiagonal().toDenseMatrix().cast<cplx>() *
         es.eigenvectors().adjoint();
}

}  // namespace

ChannelResult pinch(const Mat& rho, const std::vector<Mat>& ps) {
  validate_density_matrix(rho);
  ChannelResult res;
  res.purity_before = purity(rho);
  res.entropy_before = von_neumann_entropy(rho);
  res.output = Mat::Zero(rho.rows(), rho.cols());
  res.sector_weights.reserve(ps.size());
  for (const auto& p : ps) {
    res.output += p * rho * p;
    res.sector_weights.push_back((p * rho).trace().real());
  }
  res.purity_after = purity(res.output);
  res.entropy_after = von_neumann_entropy(res.output);
  return res;
}

double purity(const Mat& rho) { return (rho * rho).trace().real(); }

double von_neumann_entropy(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

double fidelity(const Mat& rho, const Mat& sigma) {
  validate_density_matrix(rho);
  validate_density_matrix(sigma);
  const Mat root = psd_sqrt(rho);
  const Mat inner = psd_sqrt(root * sigma * root);
  const double tr = inner.trace().real();
  return tr * tr;
}

double trace_distance(const Mat& rho, const Mat& sigma) {
  validate_density_matrix(rho);
  validate_density_matrix(sigma);
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(rho - sigma), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity_pure(const Vec& psi, const Mat& rho) {
  return (psi.dot(rho * psi)).real() / psi.squaredNorm();
}

}  // namespace zenosta
