#include "zenosta/types.hpp"

namespace zenosta {

double operator_norm(const Mat& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double hermiticity_defect(const Mat& a) {
  return operator_norm(a - a.adjoint());
}

bool is_finite(const Mat& a) {
  return a.allFinite();
}

double projector_defect(const Mat& p) {
  return operator_norm(p * p - p);
}

Mat identity(int dim) { return Mat::Identity(dim, dim); }

Mat pauli_x() {
  Mat s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

Mat pauli_y() {
  Mat s(2, 2);
  s << 0, -iu, iu, 0;
  return s;
}

Mat pauli_z() {
  Mat s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

Mat spin1_jx() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat j = Mat::Zero(3, 3);
  j(0, 1) = r;
  j(1, 0) = r;
  j(1, 2) = r;
  j(2, 1) = r;
  return j;
}

Mat spin1_jz() {
  Mat j = Mat::Zero(3, 3);
  j(0, 0) = 1.0;
  j(2, 2) = -1.0;
  return j;
}

}  // namespace zenosta
