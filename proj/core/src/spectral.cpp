#include "zenosta/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "zenosta/errors.hpp"

namespace zenosta {

namespace {

void check_gaps(const Eigen::VectorXd& e, double t, double gap_tol) {
  for (int i = 0; i + 1 < e.size(); ++i) {
    const double gap = e(i + 1) - e(i);
    if (gap < gap_tol)
      throw GapCollapse("gap " + std::to_string(gap) + " below tolerance at t=" +
                        std::to_string(t));
  }
}

// Reorder columns of `v` (and entries of `e`) so column j best overlaps
// column j of `ref`, then rotate each phase so ⟨ref_j|v_j⟩ is real ≥ 0.
void match_to_reference(const Mat& ref, Eigen::VectorXd& e, Mat& v) {
  const int d = static_cast<int>(v.cols());
  Mat overlaps = ref.adjoint() * v;
  std::vector<int> perm(d, -1);
  std::vector<bool> used(d, false);
  for (int j = 0; j < d; ++j) {
    int best = -1;
    double best_mag = -1.0;
    for (int i = 0; i < d; ++i) {
      if (used[i]) continue;
      const double mag = std::abs(overlaps(i, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    perm[j] = best;
    used[best] = true;
  }
  Mat v2(v.rows(), d);
  Eigen::VectorXd e2(d);
  for (int j = 0; j < d; ++j) {
    v2.col(perm[j]) = v.col(j);
    e2(perm[j]) = e(j);
  }
  for (int j = 0; j < d; ++j) {
    const cplx ov = ref.col(j).dot(v2.col(j));
    const double mag = std::abs(ov);
    if (mag > 1e-14) v2.col(j) *= std::conj(ov / mag);
  }
  v = std::move(v2);
  e = std::move(e2);
}

}  // namespace

void eigensystem_at(const OperatorSchedule& h, double t, double gap_tol,
                    Eigen::VectorXd& energies, Mat& vectors) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h(t));
  energies = es.eigenvalues();
  vectors = es.eigenvectors();
  check_gaps(energies, t, gap_tol);
}

EigenFrame instantaneous_frame(const OperatorSchedule& h, const TimeGrid& grid,
                               double gap_tol) {
  EigenFrame frame;
  frame.schedule = h;
  frame.grid = grid;
  frame.gap_tol = gap_tol;
  frame.energies.resize(h.dim, grid.points());
  frame.vectors.resize(grid.points());
  for (int k = 0; k < grid.points(); ++k) {
    const double t = grid.point(k);
    Eigen::VectorXd e;
    Mat v;
    eigensystem_at(h, t, gap_tol, e, v);
    if (k > 0) match_to_reference(frame.vectors[k - 1], e, v);
    frame.energies.col(k) = e;
    frame.vectors[k] = std::move(v);
  }
  return frame;
}

ProjectorFamily spectral_family(const OperatorSchedule& h, double gap_tol) {
  ProjectorFamily fam;
  fam.dim = h.dim;
  fam.sectors = h.dim;
  fam.t_max = h.t_max;
  fam.ranks.assign(h.dim, 1);
  fam.eval = [h, gap_tol](double t) {
    Eigen::VectorXd e;
    Mat v;
    eigensystem_at(h, t, gap_tol, e, v);
    std::vector<Mat> ps;
    ps.reserve(v.cols());
    for (int n = 0; n < v.cols(); ++n)
      ps.push_back(v.col(n) * v.col(n).adjoint());
    return ps;
  };
  if (h.has_derivative()) {
    fam.deriv1 = [h, gap_tol](double t) {
      Eigen::VectorXd e;
      Mat v;
      eigensystem_at(h, t, gap_tol, e, v);
      const Mat hdot = h.derivative(t);
      const int d = h.dim;
      std::vector<Mat> ps(d);
      for (int n = 0; n < d; ++n) ps[n] = v.col(n) * v.col(n).adjoint();
      std::vector<Mat> dps(d, Mat::Zero(d, d));
      for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) {
          if (m == n) continue;
          const Mat block = ps[m] * hdot * ps[n] / (e(n) - e(m));
          dps[n] += block + block.adjoint();
        }
      return dps;
    };
  }
  return fam;
}

ProjectorFamily spectral_projectors(const EigenFrame& frame) {
  return spectral_family(frame.schedule, frame.gap_tol);
}

std::vector<Mat> projector_derivative(const ProjectorFamily& fam, double t,
                                      int order) {
  if (order == 1 && fam.deriv1) return fam.deriv1(t);
  if (order == 2 && fam.deriv2) return fam.deriv2(t);
  const double h = fam.step();
  if (t - h < 0.0 || t + h > fam.t_max)
    throw BoundaryStencil("stencil exits [0, t_max] at t=" + std::to_string(t));
  const auto plus = fam.eval(t + h);
  const auto minus = fam.eval(t - h);
  std::vector<Mat> out(fam.sectors);
  if (order == 1) {
    for (int n = 0; n < fam.sectors; ++n)
      out[n] = (plus[n] - minus[n]) / (2.0 * h);
  } else if (order == 2) {
    const auto mid = fam.eval(t);
    for (int n = 0; n < fam.sectors; ++n)
      out[n] = (plus[n] - 2.0 * mid[n] + minus[n]) / (h * h);
  } else {
    throw ConfigInvalid("derivative order must be 1 or 2");
  }
  return out;
}

void check_family(const ProjectorFamily& fam, double t, double tol) {
  const auto ps = fam.eval(t);
  if (static_cast<int>(ps.size()) != fam.sectors)
    throw FamilyInvalid("sector count mismatch");
  Mat sum = Mat::Zero(fam.dim, fam.dim);
  for (int n = 0; n < fam.sectors; ++n) {
    if (projector_defect(ps[n]) > tol)
      throw FamilyInvalid("sector not idempotent");
    if (hermiticity_defect(ps[n]) > tol)
      throw FamilyInvalid("sector not Hermitian");
    if (!fam.ranks.empty() &&
        std::abs(ps[n].trace().real() - fam.ranks[n]) > 1e-6)
      throw FamilyInvalid("sector rank drifted");
    for (int m = n + 1; m < fam.sectors; ++m)
      if (operator_norm(ps[n] * ps[m]) > tol)
        throw FamilyInvalid("sectors not orthogonal");
    sum += ps[n];
  }
  if (operator_norm(sum - identity(fam.dim)) > tol)
    throw FamilyInvalid("family not complete");
}

ProjectorFamily two_sector(const ProjectorFamily& fam, int sector) {
  if (sector < 0 || sector >= fam.sectors)
    throw ConfigInvalid("sector index out of range");
  ProjectorFamily out;
  out.dim = fam.dim;
  out.sectors = 2;
  out.t_max = fam.t_max;
  out.fd_step = fam.fd_step;
  const int rank = fam.ranks.empty() ? 1 : fam.ranks[sector];
  out.ranks = {rank, fam.dim - rank};
  const int d = fam.dim;
  out.eval = [fam, sector, d](double t) {
    const Mat p = fam.eval(t)[sector];
    return std::vector<Mat>{p, identity(d) - p};
  };
  if (fam.deriv1) {
    out.deriv1 = [fam, sector](double t) {
      const Mat dp = fam.deriv1(t)[sector];
      return std::vector<Mat>{dp, -dp};
    };
  }
  if (fam.deriv2) {
    out.deriv2 = [fam, sector](double t) {
      const Mat ddp = fam.deriv2(t)[sector];
      return std::vector<Mat>{ddp, -ddp};
    };
  }
  return out;
}

Mat eigenvector_velocities(const EigenFrame& frame, double t) {
  const auto& h = frame.schedule;
  Eigen::VectorXd e;
  Mat v;
  eigensystem_at(h, t, frame.gap_tol, e, v);
  const int d = h.dim;
  if (h.has_derivative()) {
    const Mat hdot_eig = v.adjoint() * h.derivative(t) * v;
    Mat vel = Mat::Zero(d, d);
    for (int n = 0; n < d; ++n)
      for (int m = 0; m < d; ++m) {
        if (m == n) continue;
        vel.col(n) += v.col(m) * (hdot_eig(m, n) / (e(n) - e(m)));
      }
    return vel;
  }
  const double step = 1e-6 * std::max(frame.schedule.t_max, 1.0);
  if (t - step < 0.0 || t + step > frame.schedule.t_max)
    throw BoundaryStencil("velocity stencil exits schedule domain");
  auto matched = [&](double s) {
    Eigen::VectorXd es;
    Mat vs;
    eigensystem_at(h, s, frame.gap_tol, es, vs);
    match_to_reference(v, es, vs);
    return vs;
  };
  return (matched(t + step) - matched(t - step)) / (2.0 * step);
}

}  // namespace zenosta
