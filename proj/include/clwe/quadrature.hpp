/*
 * Copyright 2026 The clwe-lab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CLWE_QUADRATURE_HPP_
#define CLWE_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace clwe {

// Adaptive Gauss-Kronrod 15(7) on a bounded interval. The per-panel error
// estimate is the conservative |K15 - G7|; the panel with the largest
// estimate is bisected first, ties broken by left endpoint, and the final
// sums run over panels ordered by left endpoint, so results are bit-stable
// across runs.
struct QuadOutcome {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

namespace detail {

// Kronrod-15 abscissae (positive half) and weights; Gauss-7 weights.
// Standard QUADPACK qk15 constants.
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
inline constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                                  0.3818300505051189, 0.4179591836734694};

struct Panel {
  double a, b, value, error;
};

template <class F>
Panel gk15_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kWgk[7] * f(center);
  double gauss = kWg[3] * f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[i] * pair;
    if (i % 2 == 1) gauss += kWg[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

// Uniform cut list for a bounded interval; the overload below does the work.
inline std::vector<double> uniform_cuts(double a, double b,
                                        double max_width) {
  std::size_t n = 1;
  if (max_width > 0.0)
    n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil((b - a) / max_width)));
  std::vector<double> cuts(n + 1);
  cuts.front() = a;
  cuts.back() = b;
  for (std::size_t i = 1; i < n; ++i)
    cuts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  return cuts;
}

// Integrates over [cuts.front(), cuts.back()] with the given initial panel
// boundaries. Sharp features (band transitions, boundary layers) must appear
// in the cut list: the |K15 - G7| estimate is only trustworthy once every
// feature is visible to some panel.
template <class F>
QuadOutcome adaptive_gk15_cuts(F&& f, const std::vector<double>& cuts,
                               double abs_tol,
                               std::size_t max_subdivisions) {
  QuadOutcome out;
  if (cuts.size() < 2 || !(cuts.back() > cuts.front())) {
    out.converged = true;
    return out;
  }

  auto cmp = [](const detail::Panel& x, const detail::Panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // prefer the leftmost panel among equals
  };
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, decltype(cmp)>
      worst(cmp);
  std::vector<detail::Panel> done;

  double err_sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    auto p = detail::gk15_panel(f, cuts[i], cuts[i + 1]);
    err_sum += p.error;
    worst.push(p);
  }

  std::size_t splits = 0;
  while (err_sum > abs_tol && splits < max_subdivisions && !worst.empty()) {
    const detail::Panel p = worst.top();
    worst.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) {  // interval at floating resolution
      done.push_back(p);
      continue;
    }
    err_sum -= p.error;
    auto left = detail::gk15_panel(f, p.a, mid);
    auto right = detail::gk15_panel(f, mid, p.b);
    err_sum += left.error + right.error;
    worst.push(left);
    worst.push(right);
    ++splits;
  }

  while (!worst.empty()) {
    done.push_back(worst.top());
    worst.pop();
  }
  std::sort(done.begin(), done.end(),
            [](const detail::Panel& x, const detail::Panel& y) {
              return x.a < y.a;
            });
  for (const auto& p : done) {
    out.value += p.value;
    out.error_estimate += p.error;
  }
  out.panels = done.size();
  out.converged = out.error_estimate <= abs_tol;
  return out;
}

template <class F>
QuadOutcome adaptive_gk15(F&& f, double a, double b, double abs_tol,
                          std::size_t max_subdivisions,
                          double max_initial_width = 0.0) {
  if (!(b > a)) {
    QuadOutcome out;
    out.converged = true;
    return out;
  }
  return adaptive_gk15_cuts(f, uniform_cuts(a, b, max_initial_width), abs_tol,
                            max_subdivisions);
}

}  // namespace clwe

#endif  // CLWE_QUADRATURE_HPP_
