// Copyright 2026 The channel-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "channelforge/linalg.hpp"

namespace channelforge {

/// Objectives are minimized.
using Objective = std::function<double(const RealVector&)>;

struct OptimizeOptions {
  int max_evaluations = 2000;
  /// Stop when the simplex (or coordinate step) diameter falls below this.
  double tolerance = 1e-8;
  double initial_step = 0.25;
};

struct OptimizeResult {
  RealVector x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Adaptive Nelder-Mead (dimension-dependent coefficients). The best point
/// seen is returned, so the result is never worse than x0.
OptimizeResult nelder_mead(const Objective& f, const RealVector& x0, const OptimizeOptions& opt = {});

/// Cyclic coordinate search with Brent line minimization inside a shrinking
/// bracket.
OptimizeResult coordinate_descent(const Objective& f, const RealVector& x0,
                                  const OptimizeOptions& opt = {});

enum class OptimizerKind { nelder_mead, coordinate_descent };

struct MultiStartOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  /// Restarts after the first draw x0 + uniform(-spread, spread) per
  /// coordinate unless a custom sampler is given.
  double spread = 1.0;
  OptimizerKind kind = OptimizerKind::nelder_mead;
  OptimizeOptions local;
};

/// Restart 0 starts at x0. `sampler` (optional) draws the other starts.
OptimizeResult multistart(const Objective& f, const RealVector& x0, const MultiStartOptions& opt,
                          const std::function<RealVector(std::mt19937_64&)>& sampler = {});

struct ScalarResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Brent minimization on [lo, hi].
ScalarResult brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                            int bits = 40, int max_iterations = 200);

/// Grid scan with `points` samples followed by Brent refinement around the
/// best sample.
ScalarResult grid_brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                                 int points, int bits = 40);

}  // namespace channelforge
