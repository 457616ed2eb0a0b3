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

#include "qnom/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qnom/error.hpp"
#include "qnom/optimize.hpp"
#include "qnom/synth.hpp"

namespace qnom {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double norm2(const std::vector<double>& g) {
  double a = 0.0;
  for (double v : g) a += v * v;
  return std::sqrt(a);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Real-plane restriction of the quartic benchmark, evaluated from the monomial form.
double plane_f(double x, double y) {
  CVec z(4);
  z << 1.0, x, y, 0.0;
  return eval_cost_expanded(VariableVector(z));
}

void plane_grad(double x, double y, double& gx, double& gy) {
  constexpr double h = 1e-6;
  gx = (plane_f(x + h, y) - plane_f(x - h, y)) / (2 * h);
  gy = (plane_f(x, y + h) - plane_f(x, y - h)) / (2 * h);
}

}  // namespace

int brute_force_maxcut(const Graph& g) {
  g.validate();
  if (g.n > 20) throw InvalidArgument("brute_force_maxcut: n must be at most 20");
  int best = 0;
  for (unsigned long long a = 0; a < (1ULL << g.n); ++a) best = std::max(best, g.cut_value(a));
  return best;
}

StationaryFit train_to_stationarity(const Circuit& c, const ParamVector& theta0, const CMat& obs, int max_evals,
                                    double grad_tol) {
  NelderMeadOptions opt;
  opt.max_evals = max_evals;
  opt.initial_step = 0.3;
  opt.ftol = 1e-16;
  opt.xtol = 1e-12;
  const auto res =
      nelder_mead([&](const std::vector<double>& x) { return -circuit_expectation(c, x, obs); }, theta0, opt);
  StationaryFit fit;
  fit.theta = res.x;
  fit.evals = res.evals;
  auto grad = ansatz_gradient(c, fit.theta, obs);
  fit.grad_norm = norm2(grad);
  fit.cost = circuit_expectation(c, fit.theta, obs);

  // Newton polish on the gradient; flat directions are left alone.
  const int n = c.n_params;
  for (int it = 0; it < 20 && fit.grad_norm > grad_tol && n > 0; ++it) {
    constexpr double h = 1e-4;
    Eigen::MatrixXd H(n, n);
    for (int k = 0; k < n; ++k) {
      ParamVector tp = fit.theta, tm = fit.theta;
      tp[k] += h;
      tm[k] -= h;
      const auto gp = ansatz_gradient(c, tp, obs);
      const auto gm = ansatz_gradient(c, tm, obs);
      for (int j = 0; j < n; ++j) H(j, k) = (gp[j] - gm[j]) / (2 * h);
    }
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    Eigen::VectorXd g = Eigen::Map<Eigen::VectorXd>(grad.data(), n);
    Eigen::VectorXd coef = es.eigenvectors().transpose() * g;
    for (int j = 0; j < n; ++j) {
      const double lam = es.eigenvalues()(j);
      coef(j) = std::abs(lam) > 1e-8 ? coef(j) / lam : 0.0;
    }
    const Eigen::VectorXd step = es.eigenvectors() * coef;
    ParamVector trial = fit.theta;
    for (int j = 0; j < n; ++j) trial[j] -= step(j);
    const auto tg = ansatz_gradient(c, trial, obs);
    const double tc = circuit_expectation(c, trial, obs);
    if (norm2(tg) >= fit.grad_norm || tc < fit.cost - 1e-9) break;
    fit.theta = trial;
    grad = tg;
    fit.grad_norm = norm2(tg);
    fit.cost = tc;
  }
  return fit;
}

Circuit maxcut_initial_circuit(AnsatzId id, const Graph& g) { return with_plus_reference(ansatz_library(id, g)); }

ParamVector maxcut_initial_params(const Circuit& c) {
  ParamVector th(c.n_params);
  for (int k = 0; k < c.n_params; ++k) th[k] = 0.2 + 0.05 * k;
  return th;
}

double final_cost(const NOMTrace& t) { return t.records.empty() ? t.initial_cost : t.records.back().cost; }

Aggregates compute_aggregates(const std::vector<RunRecord>& runs) {
  Aggregates a;
  if (runs.empty()) return a;
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    a.mean_final_cost += final_cost(r.trace) / n;
    a.mean_iterations += static_cast<double>(r.trace.records.size()) / n;
  }
  for (const auto& r : runs) a.std_final_cost += std::pow(final_cost(r.trace) - a.mean_final_cost, 2) / n;
  a.std_final_cost = std::sqrt(a.std_final_cost);
  return a;
}

std::map<std::string, std::string> config_snapshot(const NOMConfig& cfg) {
  return {{"xi", fmt(cfg.xi)},
          {"epsilon", fmt(cfg.epsilon)},
          {"epsilon0", fmt(cfg.epsilon0)},
          {"max_iter", std::to_string(cfg.max_iter)},
          {"sign", cfg.sign == StepSign::Descent ? "descent" : "ascent"},
          {"mode", to_string(cfg.mode)},
          {"synth", to_string(cfg.synth_mode)},
          {"trigger_ratio", fmt(cfg.layer_policy.trigger_ratio)},
          {"stagnation_window", std::to_string(cfg.layer_policy.stagnation_window)},
          {"disturbance", fmt(cfg.disturbance)},
          {"seed", std::to_string(cfg.seed)},
          {"opt_budget", std::to_string(cfg.opt_budget)}};
}

ExperimentReport run_maxcut_experiment(const NOMConfig& cfg_in, const Graph& graph,
                                       const std::vector<EncodeMode>& modes, const std::vector<AnsatzId>& ansatze) {
  const auto t0 = std::chrono::steady_clock::now();
  NOMConfig cfg = cfg_in;
  cfg.sign = StepSign::Ascent;
  const CostSpec problem = CostSpec::from_pauli_sum(maxcut_hamiltonian(graph));
  const int optimum = brute_force_maxcut(graph);
  ExperimentReport rep;
  rep.name = "maxcut";
  rep.config = config_snapshot(cfg);
  rep.config.erase("mode");
  for (EncodeMode m : modes) rep.config["modes"] += (rep.config["modes"].empty() ? "" : ",") + to_string(m);
  for (AnsatzId id : ansatze) {
    const Circuit c = maxcut_initial_circuit(id, graph);
    const auto init = train_to_stationarity(c, maxcut_initial_params(c), problem.F());
    for (EncodeMode m : modes) {
      NOMConfig mc = cfg;
      mc.mode = m;
      RunRecord rr;
      rr.label = to_string(id) + "/" + to_string(m);
      rr.trace = nom_run(problem, c, init.theta, mc);
      rr.extras["init_cost"] = init.cost;
      rr.extras["init_grad_norm"] = init.grad_norm;
      rr.extras["final_cost"] = final_cost(rr.trace);
      rr.extras["optimum"] = optimum;
      rep.runs.push_back(std::move(rr));
    }
  }
  rep.aggregates = compute_aggregates(rep.runs);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

std::vector<VariableVector> poly_initial_points() {
  std::vector<VariableVector> pts;
  for (int k = 0; k < 12; ++k) {
    const double a = k * std::numbers::pi / 6.0;
    CVec v(3);
    v << 1.3 * std::cos(a), 1.3 * std::sin(a), 0.0;
    pts.push_back(VariableVector::from_variables(v));
  }
  return pts;
}

std::pair<Circuit, ParamVector> poly_initial_circuit(const VariableVector& z) {
  SynthEnv env;
  env.target = encode(z);
  env.initial = EncodedState::zero(env.target.n_qubits());
  env.f_t = 0.998;
  const auto res = synthesize_greedy(env);
  return {res.layer, res.alpha};
}

std::vector<std::pair<double, double>> plane_minima_oracle(int grid, double range, double cluster_tol) {
  if (grid < 2) throw InvalidArgument("plane_minima_oracle: grid must have at least 2 points");
  std::vector<std::pair<double, double>> minima;
  const double step = 2.0 * range / (grid - 1);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      double x = -range + i * step, y = -range + j * step;
      double f = plane_f(x, y);
      for (int it = 0; it < 2000; ++it) {
        double gx, gy;
        plane_grad(x, y, gx, gy);
        const double gn2 = gx * gx + gy * gy;
        if (gn2 < 1e-18) break;
        double t = 0.1;
        double nx = x - t * gx, ny = y - t * gy, nf = plane_f(nx, ny);
        while (nf > f - 1e-4 * t * gn2 && t > 1e-12) {
          t *= 0.5;
          nx = x - t * gx;
          ny = y - t * gy;
          nf = plane_f(nx, ny);
        }
        if (t <= 1e-12) break;
        x = nx;
        y = ny;
        f = nf;
      }
      bool known = false;
      for (const auto& m : minima) {
        if (std::hypot(m.first - x, m.second - y) < cluster_tol) {
          known = true;
          break;
        }
      }
      if (known) continue;
      constexpr double h = 1e-4;
      double gxp, gyp, gxm, gym, hx1, hx2;
      plane_grad(x + h, y, gxp, gyp);
      plane_grad(x - h, y, gxm, gym);
      const double hxx = (gxp - gxm) / (2 * h), hxy = (gyp - gym) / (2 * h);
      plane_grad(x, y + h, hx1, gyp);
      plane_grad(x, y - h, hx2, gym);
      const double hyy = (gyp - gym) / (2 * h);
      const double hyx = (hx1 - hx2) / (2 * h);
      const double off = 0.5 * (hxy + hyx);
      if (hxx > 1e-6 && hxx * hyy - off * off > 1e-10) minima.emplace_back(x, y);
    }
  }
  std::sort(minima.begin(), minima.end());
  return minima;
}

ExperimentReport run_poly_experiment(const NOMConfig& cfg_in) {
  const auto t0 = std::chrono::steady_clock::now();
  NOMConfig cfg = cfg_in;
  cfg.sign = StepSign::Descent;
  const CostSpec spec = quartic_xyz_cost();
  const auto minima = plane_minima_oracle();
  ExperimentReport rep;
  rep.name = "polyopt";
  rep.config = config_snapshot(cfg);
  rep.config["oracle_minima"] = std::to_string(minima.size());
  const auto pts = poly_initial_points();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto [c, th] = poly_initial_circuit(pts[k]);
    RunRecord rr;
    rr.label = "point" + std::to_string(k);
    rr.trace = nom_run(spec, c, th, cfg);
    const VariableVector zf = decode(rr.trace.final_state);
    rr.extras["x0"] = pts[k][1].real();
    rr.extras["y0"] = pts[k][2].real();
    rr.extras["init_fidelity"] = 1.0 - fidelity_indicator(c, th, encode(pts[k]));
    for (int i = 1; i <= 3; ++i) {
      rr.extras["final_re_" + std::to_string(i)] = zf[i].real();
      rr.extras["final_im_" + std::to_string(i)] = zf[i].imag();
    }
    rr.extras["grad_norm"] = affine_gradient(spec, zf).norm();
    double best = 1e300;
    int best_i = -1;
    for (std::size_t m = 0; m < minima.size(); ++m) {
      const double dist = std::sqrt(std::norm(zf[1] - minima[m].first) + std::norm(zf[2] - minima[m].second) +
                                    std::norm(zf[3]));
      if (dist < best) {
        best = dist;
        best_i = static_cast<int>(m);
      }
    }
    rr.extras["nearest_min"] = best_i;
    rr.extras["min_distance"] = best;
    bool mono = true;
    double prev = rr.trace.initial_cost;
    for (const auto& r : rr.trace.records) {
      if (r.cost > prev + 1e-9) mono = false;
      prev = r.cost;
    }
    rr.extras["cost_monotone"] = mono ? 1.0 : 0.0;
    rep.runs.push_back(std::move(rr));
  }
  rep.aggregates = compute_aggregates(rep.runs);
  rep.wall_seconds = seconds_since(t0);
  return rep;
}

SweepReport disturbance_sweep(const NOMConfig& cfg, const CostSpec& problem, const Circuit& circuit,
                              const ParamVector& theta, const std::vector<double>& magnitudes,
                              int runs_per_magnitude) {
  if (runs_per_magnitude < 1) throw InvalidArgument("disturbance_sweep: need at least one run");
  const auto t0 = std::chrono::steady_clock::now();
  SweepReport sr;
  sr.report.name = "disturb";
  sr.report.config = config_snapshot(cfg);
  for (double mag : magnitudes) {
    SweepPoint pt;
    pt.magnitude = mag;
    std::vector<std::vector<double>> costs;
    for (int r = 0; r < runs_per_magnitude; ++r) {
      NOMConfig rc = cfg;
      rc.disturbance = mag;
      rc.seed = cfg.seed + static_cast<std::uint64_t>(r);
      RunRecord rr;
      rr.label = "mag" + fmt(mag) + "/run" + std::to_string(r);
      rr.trace = nom_run(problem, circuit, theta, rc);
      rr.extras["magnitude"] = mag;
      rr.extras["final_cost"] = final_cost(rr.trace);
      std::vector<double> cs;
      for (const auto& rec : rr.trace.records) cs.push_back(rec.cost);
      costs.push_back(std::move(cs));
      sr.report.runs.push_back(std::move(rr));
    }
    std::size_t len = 0;
    for (const auto& cs : costs) len = std::max(len, cs.size());
    pt.mean_cost.assign(len, 0.0);
    pt.std_cost.assign(len, 0.0);
    const double n = static_cast<double>(costs.size());
    auto at = [](const std::vector<double>& cs, std::size_t i) { return i < cs.size() ? cs[i] : cs.back(); };
    for (std::size_t i = 0; i < len; ++i) {
      for (const auto& cs : costs) pt.mean_cost[i] += at(cs, i) / n;
      for (const auto& cs : costs) pt.std_cost[i] += std::pow(at(cs, i) - pt.mean_cost[i], 2) / n;
      pt.std_cost[i] = std::sqrt(pt.std_cost[i]);
    }
    for (const auto& cs : costs) pt.mean_final_cost += cs.back() / n;
    sr.points.push_back(std::move(pt));
  }
  sr.report.aggregates = compute_aggregates(sr.report.runs);
  sr.report.wall_seconds = seconds_since(t0);
  return sr;
}

DampingReport perturbation_damping_demo(const CostSpec& spec, const VariableVector& z, double delta_norm,
                                        const std::vector<double>& xi_grid, bool real_only, int directions,
                                        std::uint64_t seed) {
  if (spec.mode() != CostMode::Affine) throw InvalidArgument("perturbation_damping_demo: needs an Affine cost");
  if (!(delta_norm > 0.0)) throw InvalidArgument("perturbation_damping_demo: delta_norm must be positive");
  const Index d = z.d();
  const Index n = real_only ? d : 2 * d;
  auto to_z = [&](const Eigen::VectorXd& x) {
    CVec v(d);
    for (Index i = 0; i < d; ++i) v(i) = Complex(x(i), real_only ? 0.0 : x(d + i));
    return VariableVector::from_variables(v);
  };
  auto f = [&](const Eigen::VectorXd& x) { return eval_cost(spec, to_z(x)); };
  auto grad = [&](const Eigen::VectorXd& x) {
    constexpr double h = 1e-5;
    Eigen::VectorXd g(n), xp = x;
    for (Index i = 0; i < n; ++i) {
      xp(i) = x(i) + h;
      const double fp = f(xp);
      xp(i) = x(i) - h;
      const double fm = f(xp);
      xp(i) = x(i);
      g(i) = (fp - fm) / (2 * h);
    }
    return g;
  };
  auto hessian = [&](const Eigen::VectorXd& x) {
    constexpr double h = 1e-4;
    Eigen::MatrixXd H(n, n);
    Eigen::VectorXd xp = x;
    for (Index i = 0; i < n; ++i) {
      xp(i) = x(i) + h;
      const Eigen::VectorXd gp = grad(xp);
      xp(i) = x(i) - h;
      const Eigen::VectorXd gm = grad(xp);
      xp(i) = x(i);
      H.col(i) = (gp - gm) / (2 * h);
    }
    return Eigen::MatrixXd(0.5 * (H + H.transpose()));
  };

  Eigen::VectorXd x(n);
  for (Index i = 0; i < d; ++i) {
    x(i) = z[i + 1].real();
    if (!real_only) x(d + i) = z[i + 1].imag();
  }
  // Refine to the nearby minimum: damped Newton on a pseudo-inverse, then gradient steps.
  for (int it = 0; it < 50; ++it) {
    const Eigen::VectorXd g = grad(x);
    if (g.norm() < 1e-10) break;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian(x));
    Eigen::VectorXd coef = es.eigenvectors().transpose() * g;
    for (Index j = 0; j < n; ++j) {
      const double lam = es.eigenvalues()(j);
      coef(j) = lam > 1e-8 ? coef(j) / lam : 0.0;
    }
    Eigen::VectorXd step = es.eigenvectors() * coef;
    if (step.norm() < 1e-14) step = 0.01 * g;
    double t = 1.0;
    const double f0 = f(x);
    while (f(x - t * step) > f0 && t > 1e-10) t *= 0.5;
    x -= t * step;
  }

  DampingReport rep;
  rep.minimum.assign(x.data(), x.data() + n);
  const Eigen::MatrixXd H = hessian(x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  rep.hessian_eigs.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  rep.lambda_max = es.eigenvalues().maxCoeff();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::VectorXd> dirs;
  for (int k = 0; k < directions; ++k) {
    Eigen::VectorXd v(n);
    for (Index i = 0; i < n; ++i) v(i) = normal(rng);
    dirs.push_back(delta_norm * v / v.norm());
  }
  const Eigen::VectorXd g_star = grad(x);
  for (double xi : xi_grid) {
    DampingRow row;
    row.xi = xi;
    row.contraction = 0.0;
    for (Index j = 0; j < n; ++j) row.contraction = std::max(row.contraction, std::abs(1.0 - xi * es.eigenvalues()(j)));
    for (const auto& delta : dirs) {
      // Error relative to the exact step taken from the minimum itself.
      const Eigen::VectorXd exact = x - xi * g_star;
      const Eigen::VectorXd pert = (x + delta) - xi * grad(x + delta);
      row.ratio = std::max(row.ratio, (pert - exact).norm() / delta.norm());
    }
    rep.rows.push_back(row);
  }
  return rep;
}

RlBenchmark run_rl_benchmark(int n_targets, int n_seeds, int n_qubits, int max_target_depth,
                             const PPOConfig& ppo, std::uint64_t seed) {
  if (n_targets < 1 || n_seeds < 1 || max_target_depth < 1) {
    throw InvalidArgument("run_rl_benchmark: counts must be positive");
  }
  RlBenchmark b;
  std::mt19937_64 trng(seed);
  std::uniform_int_distribution<int> dd(1, max_target_depth);
  for (int i = 0; i < n_targets; ++i) b.targets.push_back(random_circuit_target(n_qubits, dd(trng), trng));

  int solved = 0;
  for (int s = 0; s < n_seeds; ++s) {
    double gain_sum = 0.0;
    int gain_n = 0;
    for (int i = 0; i < n_targets; ++i) {
      SynthEnv env;
      env.initial = EncodedState::zero(n_qubits);
      env.target = b.targets[static_cast<std::size_t>(i)].state;
      PPOConfig pc = ppo;
      pc.seed = seed + 1000ULL * static_cast<std::uint64_t>(s) + static_cast<std::uint64_t>(i);
      RlTargetRun run;
      run.seed_index = s;
      run.target_index = i;
      run.target_depth = static_cast<int>(b.targets[static_cast<std::size_t>(i)].circuit.depth());
      const PolicyNet pol = ppo_train(env, pc, &run.log);
      run.fidelity = synthesize_rl(pol, env).fidelity;
      run.solved = run.fidelity >= env.f_t;
      solved += run.solved;
      b.within_budget = b.within_budget && run.log.env_steps <= ppo.total_steps;
      if (run.log.episodes.size() >= 10) {
        gain_sum += decile_return_gain(run.log.episodes);
        ++gain_n;
      }
      b.runs.push_back(std::move(run));
    }
    b.mean_gain.push_back(gain_n ? gain_sum / gain_n : std::nan(""));
  }
  b.success_rate = static_cast<double>(solved) / static_cast<double>(b.runs.size());
  return b;
}

std::string rl_curves_csv(const RlBenchmark& b) {
  std::ostringstream os;
  os.precision(17);
  os << "seed,target,episode,return,best_fidelity,env_steps\n";
  for (const auto& r : b.runs) {
    for (const auto& e : r.log.episodes) {
      os << r.seed_index << ',' << r.target_index << ',' << e.episode << ',' << e.ret << ',' << e.best_fidelity << ','
         << e.env_steps << '\n';
    }
  }
  return os.str();
}

}  // namespace qnom
