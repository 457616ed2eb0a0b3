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
/**
 * @file
 * Derivative-free local minimization: Nelder-Mead with dimension-adaptive
 * coefficients and seeded restarts around the incumbent.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace qnom {

using Objective = std::function<double(const std::vector<double>&)>;

struct NelderMeadOptions {
  int max_evals = 500;
  double initial_step = 0.5;
  double ftol = 1e-13;    ///< simplex spread in f that counts as converged
  double xtol = 1e-10;    ///< simplex diameter that counts as converged
  int max_restarts = 8;
  std::uint64_t seed = 0;
  double target = -1e300; ///< stop as soon as f <= target
};

struct OptResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
};

/// Never returns a point worse than x0.
OptResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt = {});

/// Golden-section refinement of a 1-D function on a coarse grid over
/// [lo, hi); returns the best argument found.
double minimize_1d(const std::function<double(double)>& f, double lo, double hi, int grid = 24,
                   int refine_iters = 60);

}  // namespace qnom
