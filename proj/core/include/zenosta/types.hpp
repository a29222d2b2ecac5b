#pragma once

#include <complex>
#include <Eigen/Dense>

namespace zenosta {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr cplx iu{0.0, 1.0};

/// Largest singular value.
double operator_norm(const Mat& a);

/// ‖A − A†‖ in operator norm.
double hermiticity_defect(const Mat& a);

bool is_finite(const Mat& a);

/// ‖P² − P‖ in operator norm.
double projector_defect(const Mat& p);

Mat identity(int dim);

// Pauli matrices and spin-1 angular momentum.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat spin1_jx();
Mat spin1_jz();

}  // namespace zenosta
