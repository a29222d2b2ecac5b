#pragma once

#include "zenosta/errors.hpp"

namespace zenosta {

/// Uniform grid t_k = k·dt, k = 0..N, with t_N = T exactly.
struct TimeGrid {
  double total_time = 1.0;
  int steps = 1;

  TimeGrid() = default;
  TimeGrid(double T, int N) : total_time(T), steps(N) {
    if (T <= 0.0) throw ConfigInvalid("total time must be positive");
    if (N < 1) throw ConfigInvalid("step count must be at least 1");
  }

  double dt() const { return total_time / steps; }
  double point(int k) const {
    return k == steps ? total_time : k * dt();
  }
  int points() const { return steps + 1; }
};

}  // namespace zenosta
