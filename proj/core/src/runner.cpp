#include "zenosta/runner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "zenosta/cap.hpp"
#include "zenosta/errors.hpp"
#include "zenosta/generators.hpp"
#include "zenosta/metrics.hpp"
#include "zenosta/oracle.hpp"
#include "zenosta/parallel.hpp"
#include "zenosta/random_family.hpp"
#include "zenosta/rng.hpp"
#include "zenosta/sme.hpp"
#include "zenosta/strobe.hpp"

namespace zenosta {

namespace {

int sector_of(const ScenarioConfig& cfg) {
  return static_cast<int>(cfg.param_or("sector", 0));
}

Vec eigenstate_at(const OperatorSchedule& h, double t, int sector) {
  Eigen::VectorXd e;
  Mat v;
  eigensystem_at(h, t, 1e-8, e, v);
  return v.col(sector);
}

RunResult run_strobe_conditioned(const ScenarioConfig& cfg) {
  const auto h = model_hamiltonian(cfg.model);
  const auto fam = spectral_family(h);
  const int sector = sector_of(cfg);
  const Vec psi0 = eigenstate_at(h, 0.0, sector);

  const auto res =
      strobe_evolve_conditioned(h, fam, sector, cfg.grid, psi0);
  const auto hz = zeno_schedule(h, two_sector(fam, sector));
  const auto targets =
      reference_states(hz, cfg.grid, psi0, cfg.oracle_refinement);

  RunResult out;
  out.table.columns = {"t", "p_surv", "cum_surv", "fidelity_to_target",
                       "leak_rate"};
  const double dt = cfg.grid.dt();
  double cum = 1.0;
  double leak_sum = 0.0;
  for (int k = 0; k < cfg.grid.points(); ++k) {
    const double p_surv = k == 0 ? 1.0 : res.survival[k - 1];
    if (k > 0) cum *= p_surv;
    const double fid = std::norm(targets[k].dot(res.states[k]));
    const double leak_rate = k == 0 ? 0.0 : (1.0 - p_surv) / (dt * dt);
    if (k > 0) leak_sum += 1.0 - p_surv;
    out.table.add_row({cfg.grid.point(k), p_surv, cum, fid, leak_rate});
  }
  const double final_fid = std::norm(targets.back().dot(res.final_state));
  out.summary["final_fidelity"] = final_fid;
  out.summary["final_infidelity"] = std::max(1.0 - final_fid, 0.0);
  out.summary["mean_step_leak"] = leak_sum / cfg.grid.steps;
  out.summary["cumulative_survival"] = res.cumulative_survival;
  return out;
}

RunResult run_strobe_channel(const ScenarioConfig& cfg) {
  const auto h = model_hamiltonian(cfg.model);
  const auto fam = spectral_family(h);
  const int d = h.dim;

  // Uniform superposition of the t=0 eigenbasis: all |c_n(0)|² = 1/d.
  Eigen::VectorXd e;
  Mat v;
  eigensystem_at(h, 0.0, 1e-8, e, v);
  Vec psi0 = Vec::Zero(d);
  for (int n = 0; n < d; ++n) psi0 += v.col(n);
  psi0 /= psi0.norm();
  const Mat rho0 = psi0 * psi0.adjoint();

  const auto res = strobe_evolve_channel(h, fam, cfg.grid, rho0);
  const Mat rho_t = res.final_density / res.final_density.trace().real();
  const auto ps_final = fam.eval(cfg.grid.total_time);

  RunResult out;
  out.table.columns = {"sector", "population", "target_population"};
  double max_pop_dev = 0.0;
  for (int n = 0; n < d; ++n) {
    const double pop = (ps_final[n] * rho_t).trace().real();
    const double target = std::norm(v.col(n).dot(psi0));
    max_pop_dev = std::max(max_pop_dev, std::abs(pop - target));
    out.table.add_row({static_cast<double>(n), pop, target});
  }
  const Mat coherences = rho_t - pinch_apply(ps_final, rho_t);
  out.summary["max_population_deviation"] = max_pop_dev;
  out.summary["coherence_norm"] = operator_norm(coherences);
  out.summary["final_trace"] = res.final_density.trace().real();
  out.summary["final_purity"] = purity(rho_t);
  return out;
}

RunResult run_strobe_selective(const ScenarioConfig& cfg) {
  const auto h = model_hamiltonian(cfg.model);
  const auto fam = spectral_family(h);
  const int sector = sector_of(cfg);
  const Vec psi0 = eigenstate_at(h, 0.0, sector);
  const auto res =
      strobe_evolve_selective(h, fam, cfg.grid, psi0, cfg.seed);
  RunResult out;
  out.table.columns = {"step", "outcome"};
  std::vector<double> counts(fam.sectors, 0.0);
  for (std::size_t k = 0; k < res.outcomes.size(); ++k) {
    out.table.add_row({static_cast<double>(k),
                       static_cast<double>(res.outcomes[k])});
    counts[res.outcomes[k]] += 1.0;
  }
  out.summary["monitored_fraction"] =
      counts[sector] / std::max<std::size_t>(res.outcomes.size(), 1);
  return out;
}

RunResult run_cd(const ScenarioConfig& cfg) {
  const auto h = model_hamiltonian(cfg.model);
  const int sector = sector_of(cfg);
  const auto frame = instantaneous_frame(h, cfg.grid);
  const auto driven = cd_schedule(frame);
  const Vec psi0 = eigenstate_at(h, 0.0, sector);
  const auto states =
      reference_states(driven, cfg.grid, psi0, cfg.oracle_refinement);

  RunResult out;
  out.table.columns = {"t", "eigenstate_fidelity"};
  double min_fid = 1.0;
  for (int k = 0; k < cfg.grid.points(); ++k) {
    const Vec target = frame.vectors[k].col(sector);
    const double fid = std::norm(target.dot(states[k]));
    min_fid = std::min(min_fid, fid);
    out.table.add_row({cfg.grid.point(k), fid});
  }
  out.summary["final_fidelity"] = std::norm(
      frame.vectors.back().col(sector).dot(states.back()));
  out.summary["min_fidelity"] = min_fid;
  out.summary["final_infidelity"] =
      std::max(1.0 - out.summary["final_fidelity"], 0.0);
  return out;
}

RunResult run_sme(const ScenarioConfig& cfg) {
  const auto h = model_hamiltonian(cfg.model);
  const auto fam = spectral_family(h);
  const double kappa = cfg.param("kappa");
  const int trajectories = static_cast<int>(cfg.param("trajectories"));
  const int sector = sector_of(cfg);
  const auto obs = MonitoredObservable::make(fam, kappa, cfg.eigenvalues);
  const Vec psi0 = eigenstate_at(h, 0.0, sector);
  const Mat rho0 = psi0 * psi0.adjoint();

  const int checkpoints = 5;
  std::vector<int> check_idx;
  for (int c = 1; c <= checkpoints; ++c)
    check_idx.push_back(cfg.grid.steps * c / checkpoints);

  std::vector<Mat> sum_states(check_idx.size(),
                              Mat::Zero(h.dim, h.dim));
  std::vector<std::vector<Mat>> partial(
      trajectories);  // per-trajectory checkpoint states
  std::vector<double> final_pop(trajectories, 0.0);
  parallel_for(trajectories, cfg.threads, [&](int j) {
    const auto rec = sme_trajectory(h, obs, cfg.grid, rho0,
                                    mix64(cfg.seed) ^ static_cast<std::uint64_t>(j));
    auto& mine = partial[j];
    mine.reserve(check_idx.size());
    for (int idx : check_idx) mine.push_back(rec.states[idx]);
    const Mat p_final = fam.eval(cfg.grid.total_time)[sector];
    final_pop[j] = (p_final * rec.states.back()).trace().real();
  });
  for (int j = 0; j < trajectories; ++j)
    for (std::size_t c = 0; c < check_idx.size(); ++c)
      sum_states[c] += partial[j][c];

  const auto lind = lindblad_evolve(h, obs, cfg.grid, rho0);

  RunResult out;
  out.table.columns = {"t", "mean_population", "trace_dist_to_lindblad"};
  double max_td = 0.0;
  for (std::size_t c = 0; c < check_idx.size(); ++c) {
    const Mat mean = sum_states[c] / trajectories;
    const double t = cfg.grid.point(check_idx[c]);
    const Mat p_t = fam.eval(t)[sector];
    const double td = trace_distance(mean, lind[check_idx[c]]);
    max_td = std::max(max_td, td);
    out.table.add_row({t, (p_t * mean).trace().real(), td});
  }
  std::vector<double> pops = final_pop;
  std::nth_element(pops.begin(), pops.begin() + pops.size() / 2, pops.end());
  out.summary["final_population_median"] = pops[pops.size() / 2];
  out.summary["final_population_mean"] =
      std::accumulate(final_pop.begin(), final_pop.end(), 0.0) / trajectories;
  out.summary["max_checkpoint_trace_distance"] = max_td;
  const Mat p_final = fam.eval(cfg.grid.total_time)[sector];
  out.summary["lindblad_final_population"] =
      (p_final * lind.back()).trace().real();
  return out;
}

RunResult run_cap(const ScenarioConfig& cfg) {
  const auto h = model_hamiltonian(cfg.model);
  const auto fam = spectral_family(h);
  const double kappa = cfg.param("kappa");
  const int sector = sector_of(cfg);
  const Vec psi0 = eigenstate_at(h, 0.0, sector);

  CapSpec cap;
  cap.kappa = kappa;
  cap.fam = fam;
  cap.protected_sector = sector;
  cap.lambdas = cfg.lambdas;

  const auto res = cap_evolve(h, cap, cfg.grid, psi0);
  RunResult out;
  if (!cap.multi_sector()) {
    const auto hz = zeno_schedule(h, two_sector(fam, sector));
    const auto targets =
        reference_states(hz, cfg.grid, psi0, cfg.oracle_refinement);
    out.table.columns = {"t", "norm", "q_fraction", "fidelity_to_target"};
    const double t_steady = 5.0 / kappa;
    double leak_sum = 0.0;
    int leak_count = 0;
    for (int k = 0; k < cfg.grid.points(); ++k) {
      const double t = cfg.grid.point(k);
      const Vec psi = res.states[k] / res.states[k].norm();
      const double fid = std::norm(targets[k].dot(psi));
      out.table.add_row({t, res.norms[k], res.q_fraction[k], fid});
      if (t > t_steady) {
        leak_sum += res.q_fraction[k];
        ++leak_count;
      }
    }
    const Vec psi_final = res.states.back() / res.states.back().norm();
    const double final_fid = std::norm(targets.back().dot(psi_final));
    out.summary["final_fidelity"] = final_fid;
    out.summary["final_infidelity"] = std::max(1.0 - final_fid, 0.0);
    out.summary["leakage_fraction"] =
        leak_count > 0 ? leak_sum / leak_count : res.q_fraction.back();
    out.summary["final_norm"] = res.norms.back();
  } else {
    const int m = fam.sectors;
    out.table.columns = {"t", "norm"};
    for (int n = 0; n < m; ++n)
      out.table.columns.push_back("pop_" + std::to_string(n));
    for (int k = 0; k < cfg.grid.points(); ++k) {
      std::vector<double> row{cfg.grid.point(k), res.norms[k]};
      row.insert(row.end(), res.sector_populations[k].begin(),
                 res.sector_populations[k].end());
      out.table.add_row(std::move(row));
    }
    double transfer = 0.0;
    for (int n = 0; n < m; ++n)
      if (n != sector) transfer += res.sector_populations.back()[n];
    out.summary["inter_sector_transfer"] = transfer;
    out.summary["final_norm"] = res.norms.back();
  }
  return out;
}

RunResult run_identities(const ScenarioConfig& cfg) {
  const int instances = static_cast<int>(cfg.param_or("instances", 1000));
  const int dim_lo = static_cast<int>(cfg.param_or("dim_min", 2));
  const int dim_hi = static_cast<int>(cfg.param_or("dim_max", 8));

  RunResult out;
  out.table.columns = {"instance",   "dim",        "pdp_norm",
                       "pddp_resid", "decomp_rel", "cross_norm",
                       "bound_rhs",  "bound_ok"};
  out.table.rows.resize(instances);
  std::vector<double> pdp(instances), pddp(instances), decomp(instances);
  std::vector<int> violations(instances, 0);
  parallel_for(instances, cfg.threads, [&](int i) {
    auto gen = make_stream(cfg.seed, static_cast<std::uint64_t>(i));
    std::uniform_int_distribution<int> dim_dist(dim_lo, dim_hi);
    const int d = dim_dist(gen);
    std::uniform_int_distribution<int> rank_dist(1, d - 1);
    const int rank = rank_dist(gen);
    std::uniform_real_distribution<double> tpick(0.1, 0.9);
    const double t = tpick(gen);

    const auto fam = random_rotated_projector(
        d, rank, 1.0, mix64(cfg.seed) ^ static_cast<std::uint64_t>(i));
    const Mat h = random_hermitian(d, gen);
    const Mat p = fam.eval(t)[0];
    const Mat pd = fam.deriv1(t)[0];
    const Mat pdd = fam.deriv2(t)[0];

    pdp[i] = operator_norm(p * pd * p);
    pddp[i] = operator_norm(p * pdd * p + 2.0 * p * pd * pd * p);
    const Mat g_dt = gamma_dt(h, p, pd);
    const Mat g_k = gamma_kappa(h, p, pd);
    const auto cross = gamma_cross_and_bound(h, p, pd);
    decomp[i] = operator_norm(g_k - g_dt - cross.gamma_cross) /
                std::max(operator_norm(g_k), 1e-300);
    if (!cross.bound_holds) violations[i] = 1;
    out.table.rows[i] = {static_cast<double>(i),
                         static_cast<double>(d),
                         pdp[i],
                         pddp[i],
                         decomp[i],
                         cross.lhs,
                         cross.rhs,
                         cross.bound_holds ? 1.0 : 0.0};
  });
  out.summary["max_pdp_norm"] = *std::max_element(pdp.begin(), pdp.end());
  out.summary["max_pddp_resid"] = *std::max_element(pddp.begin(), pddp.end());
  out.summary["max_decomp_rel"] = *std::max_element(decomp.begin(), decomp.end());
  out.summary["bound_violations"] =
      std::accumulate(violations.begin(), violations.end(), 0);
  out.summary["instances"] = instances;
  return out;
}

}  // namespace

RunResult run_protocol(const ScenarioConfig& cfg) {
  validate_config(cfg);
  if (cfg.protocol == "strobe") {
    if (cfg.strobe_mode == "conditioned") return run_strobe_conditioned(cfg);
    if (cfg.strobe_mode == "channel") return run_strobe_channel(cfg);
    return run_strobe_selective(cfg);
  }
  if (cfg.protocol == "cd") return run_cd(cfg);
  if (cfg.protocol == "sme") return run_sme(cfg);
  if (cfg.protocol == "cap") return run_cap(cfg);
  if (cfg.protocol == "identities") return run_identities(cfg);
  throw ConfigInvalid("protocol");
}

std::string default_sweep_metric(const std::string& protocol) {
  if (protocol == "strobe") return "final_infidelity";
  if (protocol == "cap") return "leakage_fraction";
  if (protocol == "sme") return "max_checkpoint_trace_distance";
  if (protocol == "cd") return "final_infidelity";
  throw ConfigInvalid("no default sweep metric for " + protocol);
}

SweepResult run_sweep(const ScenarioConfig& cfg) {
  validate_config(cfg);
  if (cfg.sweep_axis.empty()) throw ConfigInvalid("sweep block required");
  SweepResult res;
  res.axis = cfg.sweep_axis;
  res.metric = cfg.sweep_metric.empty() ? default_sweep_metric(cfg.protocol)
                                        : cfg.sweep_metric;
  res.values = cfg.sweep_values;
  res.metrics.resize(res.values.size());

  const int points = static_cast<int>(res.values.size());
  parallel_for(points, cfg.threads, [&](int i) {
    ScenarioConfig point = cfg;
    point.sweep_axis.clear();
    point.threads = 1;
    const double v = res.values[i];
    if (cfg.sweep_axis == "dt") {
      const int n = std::max(1, static_cast<int>(std::lround(
                                    cfg.grid.total_time / v)));
      point.grid = TimeGrid(cfg.grid.total_time, n);
    } else if (cfg.sweep_axis == "kappa") {
      point.params["kappa"] = v;
    } else {
      point.params["trajectories"] = v;
    }
    const auto r = run_protocol(point);
    auto it = r.summary.find(res.metric);
    if (it == r.summary.end())
      throw ConfigInvalid("metric '" + res.metric + "' not produced by " +
                          cfg.protocol);
    res.metrics[i] = it->second;
  });

  res.fit = fit_loglog_slope(res.values, res.metrics);
  res.table.columns = {res.axis, res.metric};
  for (std::size_t i = 0; i < res.values.size(); ++i)
    res.table.add_row({res.values[i], res.metrics[i]});
  return res;
}

}  // namespace zenosta
