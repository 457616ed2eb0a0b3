// Copyright 2026 The qnom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "qnom/error.hpp"
#include "qnom/experiments.hpp"
#include "qnom/report.hpp"
#include "qnom/synth.hpp"
#include "qnom/vanish.hpp"

namespace qnom::cli {

using nlohmann::json;

namespace {

// Pinned acceptance tolerances.
constexpr double kMaxcutTargetGap = 0.05;     // cost >= optimum - gap
constexpr double kRingBoundSlack = 1e-9;
constexpr double kEscapeTarget = 3.9;
constexpr double kPolyGradTol = 1e-2;
constexpr double kPolyAssignTol = 1e-2;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kLcuFidelityTol = 1e-10;
constexpr double kLcuProbTol = 1e-10;
constexpr double kBpAgreeTol = 1e-6;
constexpr double kBpNonVanishing = 1e-3;
constexpr double kRlSuccessRate = 0.7;
constexpr double kDisturbFloor = 3.9;

const std::set<std::string> kTopKeys{"seed",  "mode",    "synth",   "nom",       "ppo",      "maxcut",
                                      "polyopt", "vanish", "lcu_check", "disturb", "bp_check", "synth_train"};

std::string fmt(double v, int precision = 17) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

const json& section(const Context& ctx, const char* name) {
  static const json empty = json::object();
  return ctx.config.contains(name) ? ctx.config.at(name) : empty;
}

template <class T>
T pick(const std::optional<T>& flag, const json& sec, const char* key, T fallback) {
  if (flag) return *flag;
  if (sec.contains(key)) return sec.at(key).get<T>();
  return fallback;
}

std::uint64_t base_seed(const Context& ctx) {
  if (ctx.global.seed) return *ctx.global.seed;
  return ctx.config.value("seed", std::uint64_t{0});
}

PPOConfig ppo_from(const json& j, PPOConfig p) {
  p.gamma = j.value("gamma", p.gamma);
  p.n_epochs = j.value("n_epochs", p.n_epochs);
  p.clip_range = j.value("clip_range", p.clip_range);
  p.learning_rate = j.value("learning_rate", p.learning_rate);
  if (j.contains("hidden_sizes")) p.hidden_sizes = j.at("hidden_sizes").get<std::vector<int>>();
  p.total_steps = j.value("total_steps", p.total_steps);
  p.rollout_steps = j.value("rollout_steps", p.rollout_steps);
  p.minibatch = j.value("minibatch", p.minibatch);
  p.vf_coef = j.value("vf_coef", p.vf_coef);
  p.max_grad_norm = j.value("max_grad_norm", p.max_grad_norm);
  p.ent_coef = j.value("ent_coef", p.ent_coef);
  p.early_stop = j.value("early_stop", p.early_stop);
  p.min_steps = j.value("min_steps", p.min_steps);
  return p;
}

/// NOMConfig from defaults, then the config file, then the global flags.
NOMConfig nom_config(const Context& ctx, EncodeMode default_mode) {
  NOMConfig c;
  c.mode = default_mode;
  const json& n = section(ctx, "nom");
  c.xi = n.value("xi", c.xi);
  c.epsilon = n.value("epsilon", c.epsilon);
  c.epsilon0 = n.value("epsilon0", c.epsilon0);
  c.max_iter = n.value("max_iter", c.max_iter);
  c.layer_policy.trigger_ratio = n.value("trigger_ratio", c.layer_policy.trigger_ratio);
  c.layer_policy.stagnation_window = n.value("stagnation_window", c.layer_policy.stagnation_window);
  c.disturbance = n.value("disturbance", c.disturbance);
  c.opt_budget = n.value("opt_budget", c.opt_budget);
  c.synth_max_depth = n.value("synth_max_depth", c.synth_max_depth);
  if (ctx.config.contains("mode")) c.mode = parse_encode_mode(ctx.config.at("mode").get<std::string>());
  if (ctx.config.contains("synth")) c.synth_mode = parse_synth_mode(ctx.config.at("synth").get<std::string>());
  c.ppo = ppo_from(section(ctx, "ppo"), c.ppo);
  c.seed = base_seed(ctx);
  c.ppo.seed = c.seed;
  const GlobalOptions& g = ctx.global;
  if (g.mode) c.mode = parse_encode_mode(*g.mode);
  if (g.synth) c.synth_mode = parse_synth_mode(*g.synth);
  if (g.xi) c.xi = *g.xi;
  if (g.max_iter) c.max_iter = *g.max_iter;
  c.validate();
  return c;
}

std::filesystem::path out_path(const Context& ctx, const std::string& file) {
  std::filesystem::create_directories(ctx.global.out_dir);
  return std::filesystem::path(ctx.global.out_dir) / file;
}

/// Prints the check lines and maps the outcome to the exit code.
int finish(const Context& ctx, const ExperimentReport& rep, const std::map<std::string, bool>& checks,
           const std::map<std::string, std::string>& notes = {}) {
  write_summary_json(out_path(ctx, "summary.json").string(), rep, checks, notes);
  bool all = true;
  for (const auto& [name, ok] : checks) {
    std::cout << "check " << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
    all = all && ok;
  }
  std::cout << "outputs written to " << ctx.global.out_dir << "\n";
  return ctx.global.check && !all ? 1 : 0;
}

CVec random_state_vec(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVec v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

bool monotone(const NOMTrace& t, bool non_decreasing) {
  double prev = t.initial_cost;
  for (const auto& r : t.records) {
    if (non_decreasing ? r.cost < prev - kMonotoneSlack : r.cost > prev + kMonotoneSlack) return false;
    prev = r.cost;
  }
  return true;
}

}  // namespace

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config " + path + ": top level must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!kTopKeys.count(k)) throw InvalidArgument("config " + path + ": unknown key '" + k + "'");
  }
  return j;
}

int run_maxcut(const Context& ctx) {
  NOMConfig cfg = nom_config(ctx, EncodeMode::Reencode);
  const json& sec = section(ctx, "maxcut");
  std::string gpath = ctx.cmd.graph_path.empty() ? sec.value("graph", std::string{}) : ctx.cmd.graph_path;
  const Graph graph = gpath.empty() ? Graph::cycle(4) : load_graph(gpath);
  std::vector<EncodeMode> modes{EncodeMode::Ideal, EncodeMode::Reencode};
  if (ctx.global.mode || ctx.config.contains("mode")) modes = {cfg.mode};

  ExperimentReport rep = run_maxcut_experiment(cfg, graph, modes);
  write_text_file(out_path(ctx, "trace.csv").string(), report_to_csv(rep));
  if (ctx.global.plot) {
    write_svg_line_chart(out_path(ctx, "plot.svg").string(), "Max-Cut NOM ascent", "iteration", "<H_c>",
                         cost_series(rep));
  }

  std::map<std::string, bool> checks;
  bool reach = true, mono = true;
  for (const auto& r : rep.runs) {
    reach = reach && final_cost(r.trace) >= r.extras.at("optimum") - kMaxcutTargetGap &&
            static_cast<int>(r.trace.records.size()) <= cfg.max_iter;
    if (r.label.ends_with("/ideal")) mono = mono && monotone(r.trace, true);
  }
  checks["all_runs_reach_optimum"] = reach;
  checks["ideal_mode_monotone"] = mono;
  for (const auto& r : rep.runs) {
    if (!r.label.starts_with("QAOA1/")) continue;
    const bool stationary = r.extras.at("init_grad_norm") <= 1e-6;
    const bool ring = graph.n != 4 || graph.edges.size() != 4 || r.extras.at("init_cost") <= 3.0 + kRingBoundSlack;
    const bool indicator = !r.trace.records.empty() && r.trace.records[0].indicator > cfg.epsilon0;
    checks["qaoa1_escape/" + r.label.substr(r.label.find('/') + 1)] =
        stationary && ring && indicator && final_cost(r.trace) > kEscapeTarget;
  }
  return finish(ctx, rep, checks, {{"graph", gpath.empty() ? "cycle(4)" : gpath}});
}

int run_polyopt(const Context& ctx) {
  NOMConfig cfg = nom_config(ctx, EncodeMode::Ideal);
  const json& sec = section(ctx, "polyopt");
  // Stop on a much smaller indicator than the Max-Cut default so the final
  // gradient norm is well inside the convergence tolerance.
  if (!section(ctx, "nom").contains("epsilon")) cfg.epsilon = 1e-8;
  cfg.epsilon = pick(ctx.cmd.epsilon, sec, "epsilon", cfg.epsilon);
  ExperimentReport rep = run_poly_experiment(cfg);
  write_text_file(out_path(ctx, "trace.csv").string(), report_to_csv(rep));
  if (ctx.global.plot) {
    write_svg_line_chart(out_path(ctx, "plot.svg").string(), "Quartic polynomial descent", "iteration", "f",
                         cost_series(rep));
  }
  std::map<std::string, bool> checks;
  bool conv = true, assigned = true, mono = true;
  std::set<int> hit;
  for (const auto& r : rep.runs) {
    conv = conv && r.extras.at("grad_norm") <= kPolyGradTol;
    assigned = assigned && r.extras.at("min_distance") <= kPolyAssignTol;
    hit.insert(static_cast<int>(r.extras.at("nearest_min")));
    if (cfg.mode == EncodeMode::Ideal) mono = mono && r.extras.at("cost_monotone") == 1.0;
  }
  checks["all_points_converge"] = conv;
  checks["assigned_to_oracle_minimum"] = assigned;
  checks["four_minima_reached"] = rep.config.at("oracle_minima") == "4" && hit.size() == 4;
  if (cfg.mode == EncodeMode::Ideal) checks["ideal_mode_monotone"] = mono;
  return finish(ctx, rep, checks);
}

int run_vanish(const Context& ctx) {
  const json& sec = section(ctx, "vanish");
  const auto ds = sec.value("ds", std::vector<int>{16, 64, 256});
  const auto eps = sec.value("eps", std::vector<double>{0.2, 0.4});
  const auto ms = sec.value("ms", std::vector<int>{1, 8});
  const long samples = pick(ctx.cmd.samples, sec, "samples", 10000L);
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = concentration_grid(ds, eps, ms, samples, base_seed(ctx));
  ExperimentReport rep;
  rep.name = "vanish";
  rep.config = {{"samples", std::to_string(samples)}, {"seed", std::to_string(base_seed(ctx))}};
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_grid_csv(out_path(ctx, "trace.csv").string(), rows);

  bool ok = true;
  int worst = -1;
  double worst_margin = -1e300;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double margin = rows[i].empirical - (rows[i].bound + 3.0 * rows[i].sigma);
    ok = ok && margin <= 0.0;
    if (margin > worst_margin) worst_margin = margin, worst = static_cast<int>(i);
  }
  if (ctx.global.plot) {
    std::vector<Series> ser;
    for (const char* kind : {"lemma1", "result1"}) {
      for (double e : eps) {
        for (int m : ms) {
          if (std::string(kind) == "lemma1" && m != ms.front()) continue;
          Series s;
          s.name = std::string(kind) + " eps=" + fmt(e, 6) + (std::string(kind) == "result1" ? " m=" + std::to_string(m) : "");
          for (const auto& r : rows) {
            if (r.kind == kind && r.epsilon == e && (r.kind == "lemma1" || r.m == m)) {
              s.x.push_back(r.d);
              s.y.push_back(r.empirical);
            }
          }
          ser.push_back(s);
        }
      }
    }
    write_svg_line_chart(out_path(ctx, "plot.svg").string(), "Empirical tail probability", "d", "P(tail)", ser);
  }
  std::map<std::string, std::string> notes{{"cells", std::to_string(rows.size())}};
  if (worst >= 0) notes["tightest_cell_margin"] = fmt(worst_margin);
  return finish(ctx, rep, {{"tails_within_bound", ok}}, notes);
}

int run_lcu_check(const Context& ctx) {
  const json& sec = section(ctx, "lcu_check");
  const int n = pick(ctx.cmd.configs, sec, "configs", 50);
  const CostSpec spec = quartic_xyz_cost();
  std::mt19937_64 rng(base_seed(ctx));
  std::normal_distribution<double> normal(0.0, 1.0);
  const double xis[] = {0.05, 0.2, 0.5};
  std::ostringstream csv;
  csv.precision(17);
  csv << "config,xi,sign,fidelity,success_prob,expected_success\n";
  double worst_fid = 1.0, worst_prob = 0.0;
  int done = 0;
  ExperimentReport rep;
  rep.name = "lcu-check";
  for (int i = 0; done < n && i < 100 * n; ++i) {
    CVec v(3);
    for (int k = 0; k < 3; ++k) v(k) = Complex(normal(rng), normal(rng));
    const EncodedState s = encode(VariableVector::from_variables(v));
    const double xi = xis[done % 3];
    const StepSign sign = (rng() & 1U) ? StepSign::Ascent : StepSign::Descent;
    LcuOutcome out;
    try {
      out = lcu_step_simulate(spec, s, xi, sign);
    } catch (const SingularCoefficient&) {
      continue;  // redraw: the LCU form divides by this expectation
    }
    const auto D = effective_gradient(spec, s);
    const EncodedState dense = gradient_step(s, D, xi, sign);
    const double fid = std::norm(dense.amps().dot(out.state.amps()));
    const double expected = lcu_expected_success(D.D, s.logical(), xi, out.lambda, sign);
    worst_fid = std::min(worst_fid, fid);
    worst_prob = std::max(worst_prob, std::abs(out.success_prob - expected));
    csv << done << ',' << xi << ',' << (sign == StepSign::Descent ? "descent" : "ascent") << ',' << fid << ','
        << out.success_prob << ',' << expected << '\n';
    ++done;
  }
  write_text_file(out_path(ctx, "trace.csv").string(), csv.str());
  rep.config = {{"configs", std::to_string(done)}, {"seed", std::to_string(base_seed(ctx))}};
  return finish(ctx, rep,
                {{"fidelity_matches_dense", done == n && worst_fid >= 1.0 - kLcuFidelityTol},
                 {"success_prob_matches_norm_ratio", done == n && worst_prob <= kLcuProbTol}},
                {{"worst_fidelity", fmt(worst_fid)}, {"worst_success_prob_error", fmt(worst_prob)}});
}

int run_disturb(const Context& ctx) {
  NOMConfig cfg = nom_config(ctx, EncodeMode::Reencode);
  cfg.sign = StepSign::Ascent;
  const json& sec = section(ctx, "disturb");
  const auto mags = pick(ctx.cmd.magnitudes, sec, "magnitudes", std::vector<double>{0.01, 0.03, 0.05});
  const int runs = pick(ctx.cmd.runs, sec, "runs", 50);
  const Graph g = Graph::cycle(4);
  const CostSpec problem = CostSpec::from_pauli_sum(maxcut_hamiltonian(g));
  const Circuit c = maxcut_initial_circuit(AnsatzId::QAOA1, g);
  const auto init = train_to_stationarity(c, maxcut_initial_params(c), problem.F());
  SweepReport sr = disturbance_sweep(cfg, problem, c, init.theta, mags, runs);
  write_text_file(out_path(ctx, "trace.csv").string(), report_to_csv(sr.report));
  std::ostringstream agg;
  agg.precision(17);
  agg << "magnitude,t,mean_cost,std_cost\n";
  std::vector<Series> ser;
  for (const auto& p : sr.points) {
    Series s;
    s.name = "magnitude " + fmt(p.magnitude, 6);
    for (std::size_t i = 0; i < p.mean_cost.size(); ++i) {
      agg << p.magnitude << ',' << i + 1 << ',' << p.mean_cost[i] << ',' << p.std_cost[i] << '\n';
      s.x.push_back(static_cast<double>(i + 1));
      s.y.push_back(p.mean_cost[i]);
    }
    ser.push_back(s);
  }
  write_text_file(out_path(ctx, "sweep.csv").string(), agg.str());
  if (ctx.global.plot) {
    write_svg_line_chart(out_path(ctx, "plot.svg").string(), "Max-Cut NOM under disturbance", "iteration",
                         "mean <H_c>", ser);
  }
  std::map<std::string, bool> checks;
  std::map<std::string, std::string> notes;
  bool order = true;
  for (std::size_t i = 0; i < sr.points.size(); ++i) {
    notes["mean_final_cost@" + fmt(sr.points[i].magnitude, 6)] = fmt(sr.points[i].mean_final_cost);
    if (i > 0 && sr.points[i].magnitude > sr.points[i - 1].magnitude) {
      order = order && sr.points[i].mean_final_cost <= sr.points[i - 1].mean_final_cost;
    }
  }
  checks["mean_final_cost_non_increasing"] = order;
  if (!sr.points.empty()) {
    const auto smallest = std::min_element(sr.points.begin(), sr.points.end(),
                                           [](const auto& a, const auto& b) { return a.magnitude < b.magnitude; });
    checks["smallest_magnitude_reaches_floor"] = smallest->mean_final_cost >= kDisturbFloor;
  }
  return finish(ctx, sr.report, checks, notes);
}

int run_bp_check(const Context& ctx) {
  const json& sec = section(ctx, "bp_check");
  const int n = pick(ctx.cmd.configs, sec, "configs", 50);
  constexpr int kQubits = 3;
  std::mt19937_64 rng(base_seed(ctx));
  std::uniform_int_distribution<int> depth_d(1, 6);
  std::ostringstream csv;
  csv.precision(17);
  csv << "config,depth,k,analytic,finite_diff\n";
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto t = random_circuit_target(kQubits, depth_d(rng), rng);
    const EncodedState z(random_state_vec(1 << kQubits, rng), 1 << kQubits);
    const EncodedState zp(random_state_vec(1 << kQubits, rng), 1 << kQubits);
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(t.circuit.n_params));
    const auto g = bp_gradient_check(t.circuit, t.theta, k, z, zp);
    worst = std::max(worst, std::abs(g.analytic - g.finite_diff));
    csv << i << ',' << t.circuit.depth() << ',' << k << ',' << g.analytic << ',' << g.finite_diff << '\n';
  }
  // Identity initialization: every action once at angle zero.
  Circuit layer;
  layer.n_qubits = kQubits;
  for (const auto& a : action_space(kQubits, default_gate_set())) layer.add_param_gate(a.kind, a.qubits);
  const ParamVector zero(static_cast<std::size_t>(layer.n_params), 0.0);
  const EncodedState z(random_state_vec(1 << kQubits, rng), 1 << kQubits);
  const EncodedState zp(random_state_vec(1 << kQubits, rng), 1 << kQubits);
  double max_abs = 0.0;
  for (int k = 0; k < layer.n_params; ++k) {
    max_abs = std::max(max_abs, std::abs(bp_gradient_check(layer, zero, k, z, zp).analytic));
  }
  write_text_file(out_path(ctx, "trace.csv").string(), csv.str());
  ExperimentReport rep;
  rep.name = "bp-check";
  rep.config = {{"configs", std::to_string(n)}, {"seed", std::to_string(base_seed(ctx))}};
  return finish(ctx, rep,
                {{"analytic_matches_finite_difference", worst <= kBpAgreeTol},
                 {"identity_gradient_non_vanishing", max_abs > kBpNonVanishing}},
                {{"worst_abs_error", fmt(worst)}, {"identity_max_abs_gradient", fmt(max_abs)}});
}

int run_synth_train(const Context& ctx) {
  const json& sec = section(ctx, "synth_train");
  const int n_targets = pick(ctx.cmd.targets, sec, "targets", 20);
  const int n_seeds = pick(ctx.cmd.seeds, sec, "seeds", 5);
  const int n_qubits = sec.value("n_qubits", 4);
  const int max_target_depth = sec.value("max_target_depth", 5);
  PPOConfig ppo = ppo_from(section(ctx, "ppo"), PPOConfig{});
  ppo.total_steps = pick(ctx.cmd.steps, sec, "steps", ppo.total_steps);
  const std::uint64_t seed = base_seed(ctx);

  const auto t0 = std::chrono::steady_clock::now();
  const RlBenchmark b = run_rl_benchmark(n_targets, n_seeds, n_qubits, max_target_depth, ppo, seed);
  std::ostringstream per_target;
  per_target.precision(17);
  per_target << "seed,target,target_depth,fidelity,solved,env_steps,episodes,decile_return_gain\n";
  std::map<std::string, std::string> notes;
  std::vector<Series> ser;
  for (const auto& r : b.runs) {
    const double gain = r.log.episodes.size() >= 10 ? decile_return_gain(r.log.episodes) : std::nan("");
    per_target << r.seed_index << ',' << r.target_index << ',' << r.target_depth << ',' << r.fidelity << ','
               << (r.solved ? 1 : 0) << ',' << r.log.env_steps << ',' << r.log.episodes.size() << ',' << gain << '\n';
    if (r.target_index == 0) {
      Series sr;
      sr.name = "seed " + std::to_string(r.seed_index) + " target 0";
      for (const auto& e : r.log.episodes) {
        sr.x.push_back(static_cast<double>(e.episode));
        sr.y.push_back(e.ret);
      }
      ser.push_back(sr);
    }
  }
  bool gains_ok = true;
  for (std::size_t s = 0; s < b.mean_gain.size(); ++s) {
    notes["seed" + std::to_string(s) + "_mean_decile_gain"] = fmt(b.mean_gain[s]);
    gains_ok = gains_ok && b.mean_gain[s] > 0.0;
  }
  const std::string curve = rl_curves_csv(b);
  write_text_file(out_path(ctx, "trace.csv").string(), curve);
  write_text_file(out_path(ctx, "targets.csv").string(), per_target.str());
  if (ctx.global.plot) {
    write_svg_line_chart(out_path(ctx, "plot.svg").string(), "PPO training return", "episode", "return", ser);
  }
  ExperimentReport rep;
  rep.name = "synth-train";
  rep.config = {{"targets", std::to_string(n_targets)}, {"seeds", std::to_string(n_seeds)},
                {"n_qubits", std::to_string(n_qubits)}, {"total_steps", std::to_string(ppo.total_steps)},
                {"rollout_steps", std::to_string(ppo.rollout_steps)}, {"minibatch", std::to_string(ppo.minibatch)},
                {"seed", std::to_string(seed)}};
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double rate = b.success_rate;
  notes["success_rate"] = fmt(rate);
  return finish(ctx, rep,
                {{"success_rate_at_least_70pct", rate >= kRlSuccessRate},
                 {"within_step_budget", b.within_budget},
                 {"return_improves_per_seed", gains_ok}},
                notes);
}

}  // namespace qnom::cli
