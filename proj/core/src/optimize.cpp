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

#include "qnom/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qnom/error.hpp"

namespace qnom {

namespace {

struct Counted {
  const Objective& f;
  int max_evals;
  int evals = 0;
  std::vector<double> best_x;
  double best_f = 0.0;

  double operator()(const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    if (evals == 1 || v < best_f) {
      best_f = v;
      best_x = x;
    }
    return v;
  }
  bool exhausted() const { return evals >= max_evals; }
};

// One Nelder-Mead descent from the simplex built around x0.
void run_simplex(Counted& cf, const std::vector<double>& x0, double step, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  fv[0] = cf(x0);
  for (std::size_t i = 0; i < n && !cf.exhausted(); ++i) {
    pts[i + 1][i] += step;
    fv[i + 1] = cf(pts[i + 1]);
  }
  if (cf.exhausted()) return;

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (!cf.exhausted()) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t lo = order.front(), hi = order.back(), nh = order[n - 1];
    if (fv[lo] <= opt.target) return;

    double diam = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) diam = std::max(diam, std::abs(pts[i][k] - pts[lo][k]));
    }
    if (fv[hi] - fv[lo] <= opt.ftol * (1.0 + std::abs(fv[lo])) && diam <= 1e3 * opt.xtol) return;
    if (diam <= opt.xtol) return;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / dn;
    }
    for (std::size_t k = 0; k < n; ++k) xr[k] = centroid[k] + alpha * (centroid[k] - pts[hi][k]);
    const double fr = cf(xr);
    if (fr < fv[lo]) {
      if (cf.exhausted()) return;
      for (std::size_t k = 0; k < n; ++k) xe[k] = centroid[k] + beta * (xr[k] - centroid[k]);
      const double fe = cf(xe);
      if (fe < fr) {
        pts[hi] = xe;
        fv[hi] = fe;
      } else {
        pts[hi] = xr;
        fv[hi] = fr;
      }
      continue;
    }
    if (fr < fv[nh]) {
      pts[hi] = xr;
      fv[hi] = fr;
      continue;
    }
    if (cf.exhausted()) return;
    const bool outside = fr < fv[hi];
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] = outside ? centroid[k] + gamma * (xr[k] - centroid[k])
                      : centroid[k] - gamma * (centroid[k] - pts[hi][k]);
    }
    const double fc = cf(xc);
    if (fc < (outside ? fr : fv[hi])) {
      pts[hi] = xc;
      fv[hi] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n && !cf.exhausted(); ++i) {
      if (i == lo) continue;
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[lo][k] + delta * (pts[i][k] - pts[lo][k]);
      fv[i] = cf(pts[i]);
    }
  }
}

}  // namespace

OptResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt) {
  if (opt.max_evals < 1) throw InvalidArgument("nelder_mead: budget must be at least 1");
  Counted cf{f, opt.max_evals, 0, {}, 0.0};
  cf(x0);
  if (x0.empty() || cf.best_f <= opt.target) return {cf.best_x, cf.best_f, cf.evals};

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double step = opt.initial_step;
  for (int restart = 0; restart <= opt.max_restarts && !cf.exhausted(); ++restart) {
    const double before = cf.best_f;
    std::vector<double> start = cf.best_x;
    if (restart > 0) {
      for (auto& v : start) v += 0.1 * step * unif(rng);
    }
    run_simplex(cf, start, step, opt);
    if (cf.best_f <= opt.target) break;
    // Shrink the restart scale when a restart stops paying off.
    if (before - cf.best_f < 1e-14 * (1.0 + std::abs(before))) step *= 0.25;
    if (step < 1e-9) break;
  }
  return {cf.best_x, cf.best_f, cf.evals};
}

double minimize_1d(const std::function<double(double)>& f, double lo, double hi, int grid, int refine_iters) {
  if (grid < 3) throw InvalidArgument("minimize_1d: grid must have at least 3 points");
  const double h = (hi - lo) / grid;
  double best_x = lo, best_f = f(lo);
  for (int i = 1; i < grid; ++i) {
    const double x = lo + i * h;
    const double v = f(x);
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
  }
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_x - h, b = best_x + h;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < refine_iters && b - a > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  return fx <= best_f ? x : best_x;
}

}  // namespace qnom
