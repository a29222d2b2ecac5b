#pragma once

#include <functional>
#include <map>
#include <string>

#include "zenosta/errors.hpp"
#include "zenosta/time_grid.hpp"
#include "zenosta/types.hpp"

namespace zenosta {

/// Time-parametrized operator H(t) on [0, t_max], ħ = 1 units.
struct OperatorSchedule {
  int dim = 0;
  double t_max = 1.0;
  bool hermitian = true;
  std::function<Mat(double)> eval;
  std::function<Mat(double)> derivative;  // optional analytic Ḣ(t)

  Mat operator()(double t) const { return eval(t); }
  bool has_derivative() const { return static_cast<bool>(derivative); }
};

/// Named testbed model with parameter map.
struct ModelSpec {
  std::string name;
  std::map<std::string, double> params;

  double get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw MissingParam(name + " requires '" + key + "'");
    return it->second;
  }
  double get_or(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

/// exp(scale·A). Hermitian eigendecomposition when `hermitian_generator`
/// (applied to A itself, scale may still be complex); general dense
/// exponential otherwise.
Mat matrix_exponential(const Mat& a, cplx scale, bool hermitian_generator = false);

Mat commutator(const Mat& a, const Mat& b);
Mat anticommutator(const Mat& a, const Mat& b);

/// Models: rotating-qubit, landau-zener, three-level, tfim.
OperatorSchedule model_hamiltonian(const ModelSpec& spec);

OperatorSchedule constant_schedule(const Mat& h, double t_max);

}  // namespace zenosta
