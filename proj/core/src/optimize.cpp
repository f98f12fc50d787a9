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

#include "channelforge/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/tools/minima.hpp>

namespace channelforge {
namespace {

// Objective call that respects the evaluation budget: once it is spent the
// point is scored +inf without calling f.
double guarded(const Objective& f, const RealVector& x, int& evals, int limit) {
  if (evals >= limit) return std::numeric_limits<double>::infinity();
  ++evals;
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

OptimizeResult nelder_mead(const Objective& f, const RealVector& x0, const OptimizeOptions& opt) {
  const Eigen::Index n = x0.size();
  OptimizeResult res;
  if (n == 0) {
    res.x = x0;
    res.value = guarded(f, x0, res.evaluations, std::max(1, opt.max_evaluations));
    res.converged = true;
    return res;
  }
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = n > 1 ? 1.0 - 1.0 / dn : 0.5;

  std::vector<RealVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  int evals = 0;
  vals[0] = guarded(f, x0, evals, std::max(1, opt.max_evaluations));
  for (Eigen::Index i = 0; i < n; ++i) {
    pts[i + 1](i) += opt.initial_step;
    vals[i + 1] = guarded(f, pts[i + 1], evals, opt.max_evaluations);
  }
  std::vector<std::size_t> idx(pts.size());

  while (true) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<RealVector> sp;
    std::vector<double> sv;
    for (std::size_t k : idx) {
      sp.push_back(pts[k]);
      sv.push_back(vals[k]);
    }
    pts.swap(sp);
    vals.swap(sv);

    double diameter = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k) {
      diameter = std::max(diameter, (pts[k] - pts[0]).cwiseAbs().maxCoeff());
    }
    if (diameter < opt.tolerance) {
      res.converged = true;
      break;
    }
    if (evals >= opt.max_evaluations) break;

    RealVector centroid = RealVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) centroid += pts[k];
    centroid /= dn;
    RealVector& worst = pts[n];
    const double f_worst = vals[n];

    const RealVector xr = centroid + alpha * (centroid - worst);
    const double fr = guarded(f, xr, evals, opt.max_evaluations);
    if (fr < vals[0]) {
      const RealVector xe = centroid + beta * (xr - centroid);
      const double fe = guarded(f, xe, evals, opt.max_evaluations);
      if (fe < fr) {
        worst = xe;
        vals[n] = fe;
      } else {
        worst = xr;
        vals[n] = fr;
      }
      continue;
    }
    if (fr < vals[n - 1]) {
      worst = xr;
      vals[n] = fr;
      continue;
    }
    bool shrink = false;
    if (fr < f_worst) {
      const RealVector xc = centroid + gamma * (xr - centroid);
      const double fc = guarded(f, xc, evals, opt.max_evaluations);
      if (fc <= fr) {
        worst = xc;
        vals[n] = fc;
      } else {
        shrink = true;
      }
    } else {
      const RealVector xc = centroid + gamma * (worst - centroid);
      const double fc = guarded(f, xc, evals, opt.max_evaluations);
      if (fc < f_worst) {
        worst = xc;
        vals[n] = fc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t k = 1; k < pts.size(); ++k) {
        pts[k] = pts[0] + delta * (pts[k] - pts[0]);
        vals[k] = guarded(f, pts[k], evals, opt.max_evaluations);
      }
    }
  }
  const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
  res.x = pts[static_cast<std::size_t>(best)];
  res.value = vals[static_cast<std::size_t>(best)];
  res.evaluations = evals;
  return res;
}

OptimizeResult coordinate_descent(const Objective& f, const RealVector& x0,
                                  const OptimizeOptions& opt) {
  OptimizeResult res;
  int evals = 0;
  RealVector x = x0;
  double fx = guarded(f, x, evals, std::max(1, opt.max_evaluations));
  double step = opt.initial_step;
  while (evals < opt.max_evaluations) {
    if (step < opt.tolerance) {
      res.converged = true;
      break;
    }
    const double before = fx;
    for (Eigen::Index i = 0; i < x.size() && evals < opt.max_evaluations; ++i) {
      const double xi = x(i);
      auto line = [&](double t) {
        RealVector y = x;
        y(i) = xi + t;
        return guarded(f, y, evals, opt.max_evaluations);
      };
      std::uintmax_t iters = 40;
      const auto [t, ft] = boost::math::tools::brent_find_minima(line, -step, step, 30, iters);
      if (ft < fx) {
        x(i) = xi + t;
        fx = ft;
      }
    }
    if (before - fx < 1e-14) step *= 0.5;
  }
  res.x = x;
  res.value = fx;
  res.evaluations = evals;
  return res;
}

OptimizeResult multistart(const Objective& f, const RealVector& x0, const MultiStartOptions& opt,
                          const std::function<RealVector(std::mt19937_64&)>& sampler) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(-opt.spread, opt.spread);
  OptimizeResult best;
  best.value = std::numeric_limits<double>::infinity();
  int total = 0;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    RealVector start = x0;
    if (r > 0) {
      if (sampler) {
        start = sampler(rng);
      } else {
        for (Eigen::Index i = 0; i < start.size(); ++i) start(i) += u(rng);
      }
    }
    OptimizeResult run = opt.kind == OptimizerKind::nelder_mead ? nelder_mead(f, start, opt.local)
                                                                : coordinate_descent(f, start, opt.local);
    total += run.evaluations;
    if (run.value < best.value) best = run;
  }
  best.evaluations = total;
  return best;
}

ScalarResult brent_minimize(const std::function<double(double)>& f, double lo, double hi, int bits,
                            int max_iterations) {
  ScalarResult res;
  auto counted = [&](double x) {
    ++res.evaluations;
    return f(x);
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iterations);
  const auto [x, v] = boost::math::tools::brent_find_minima(counted, lo, hi, bits, iters);
  res.x = x;
  res.value = v;
  return res;
}

ScalarResult grid_brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                                 int points, int bits) {
  points = std::max(points, 3);
  const double h = (hi - lo) / (points - 1);
  ScalarResult best;
  best.value = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k < points; ++k) {
    const double x = lo + h * k;
    const double v = f(x);
    ++best.evaluations;
    if (v < best.value) {
      best.value = v;
      best.x = x;
      best_k = k;
    }
  }
  const double a = lo + h * std::max(0, best_k - 1);
  const double b = lo + h * std::min(points - 1, best_k + 1);
  const ScalarResult refined = brent_minimize(f, a, b, bits);
  best.evaluations += refined.evaluations;
  if (refined.value <= best.value) {
    best.x = refined.x;
    best.value = refined.value;
  }
  return best;
}

}  // namespace channelforge
