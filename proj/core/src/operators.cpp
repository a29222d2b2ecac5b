#include "zenosta/operators.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace zenosta {

Mat matrix_exponential(const Mat& a, cplx scale, bool hermitian_generator) {
  if (!is_finite(a) || !std::isfinite(scale.real()) || !std::isfinite(scale.imag()))
    throw NonFiniteInput("matrix_exponential");
  if (hermitian_generator) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    const auto& v = es.eigenvectors();
    Vec phases(a.rows());
    for (int i = 0; i < a.rows(); ++i)
      phases(i) = std::exp(scale * es.eigenvalues()(i));
    return v * phases.asDiagonal() * v.adjoint();
  }
  Mat m = scale * a;
  return m.exp();
}

Mat commutator(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatch("commutator");
  return a * b - b * a;
}

Mat anticommutator(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatch("anticommutator");
  return a * b + b * a;
}

namespace {

using std::numbers::pi;

OperatorSchedule rotating_qubit(const ModelSpec& spec) {
  const double omega = spec.get("omega");
  const double total = spec.get("T");
  const double rate = (pi / 2.0) / total;  // θ(t) = (π/2) t/T
  OperatorSchedule h;
  h.dim = 2;
  h.t_max = total;
  h.eval = [omega, rate](double t) {
    const double th = rate * t;
    return Mat(0.5 * omega * (std::cos(th) * pauli_z() + std::sin(th) * pauli_x()));
  };
  h.derivative = [omega, rate](double t) {
    const double th = rate * t;
    return Mat(0.5 * omega * rate * (-std::sin(th) * pauli_z() + std::cos(th) * pauli_x()));
  };
  return h;
}

OperatorSchedule landau_zener(const ModelSpec& spec) {
  const double v = spec.get("v");
  const double delta = spec.get("delta");
  const double total = spec.get("T");
  OperatorSchedule h;
  h.dim = 2;
  h.t_max = total;
  h.eval = [v, delta, total](double t) {
    return Mat(0.5 * v * (t - total / 2.0) * pauli_z() + 0.5 * delta * pauli_x());
  };
  h.derivative = [v](double) { return Mat(0.5 * v * pauli_z()); };
  return h;
}

OperatorSchedule three_level(const ModelSpec& spec) {
  const double omega = spec.get("omega");
  const double total = spec.get("T");
  const double rate = (pi / 2.0) / total;
  OperatorSchedule h;
  h.dim = 3;
  h.t_max = total;
  h.eval = [omega, rate](double t) {
    const double th = rate * t;
    return Mat(omega * (std::cos(th) * spin1_jz() + std::sin(th) * spin1_jx()));
  };
  h.derivative = [omega, rate](double t) {
    const double th = rate * t;
    return Mat(omega * rate * (-std::sin(th) * spin1_jz() + std::cos(th) * spin1_jx()));
  };
  return h;
}

// Transverse-field Ising chain, open boundary, linearly ramped field.
OperatorSchedule tfim(const ModelSpec& spec) {
  const int spins = static_cast<int>(spec.get("L"));
  if (spins < 1 || spins > 6) throw ConfigInvalid("tfim requires 1 <= L <= 6");
  const double coupling = spec.get("J");
  const double h0 = spec.get("h0");
  const double h1 = spec.get("h1");
  const double total = spec.get("T");
  const int dim = 1 << spins;

  Mat zz = Mat::Zero(dim, dim);
  Mat xsum = Mat::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int i = 0; i + 1 < spins; ++i) {
      const int zi = (s >> i) & 1 ? -1 : 1;
      const int zj = (s >> (i + 1)) & 1 ? -1 : 1;
      diag += zi * zj;
    }
    zz(s, s) = diag;
    for (int i = 0; i < spins; ++i) xsum(s ^ (1 << i), s) += 1.0;
  }

  OperatorSchedule h;
  h.dim = dim;
  h.t_max = total;
  h.eval = [=](double t) {
    const double field = h0 + (h1 - h0) * (t / total);
    return Mat(-coupling * zz - field * xsum);
  };
  h.derivative = [=](double) { return Mat(-(h1 - h0) / total * xsum); };
  return h;
}

}  // namespace

OperatorSchedule model_hamiltonian(const ModelSpec& spec) {
  if (spec.name == "rotating-qubit") return rotating_qubit(spec);
  if (spec.name == "landau-zener") return landau_zener(spec);
  if (spec.name == "three-level") return three_level(spec);
  if (spec.name == "tfim") return tfim(spec);
  throw UnknownModel(spec.name);
}

OperatorSchedule constant_schedule(const Mat& h, double t_max) {
  OperatorSchedule s;
  s.dim = static_cast<int>(h.rows());
  s.t_max = t_max;
  s.hermitian = hermiticity_defect(h) <= 1e-12 * std::max(1.0, operator_norm(h));
  s.eval = [h](double) { return h; };
  s.derivative = [d = h.rows()](double) { return Mat(Mat::Zero(d, d)); };
  return s;
}

}  // namespace zenosta
