#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "croft/error.hpp"

namespace croft::optim {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Brent minimisation of `f` on [lo, hi]. Throws ConvergenceError when the
/// iteration budget runs out and DomainError when the minimum sits on the
/// bracket boundary (the caller's bracket did not contain an interior minimum).
template <class F>
ScalarMinimum minimize_scalar(F&& f, double lo, double hi, int bits = 40,
                              std::uintmax_t max_iter = 500) {
  std::uintmax_t iters = max_iter;
  const auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, bits, iters);
  if (iters >= max_iter) throw ConvergenceError("Brent minimisation hit its iteration limit");
  const double edge = 1e-9 * (hi - lo);
  if (x - lo <= edge || hi - x <= edge) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "minimum at bracket boundary (x = " << x << " in [" << lo << ", " << hi << "])";
    throw DomainError(msg.str());
  }
  return {x, fx};
}

/// Root of `f` on a sign-changing bracket, to full double precision.
template <class F>
double find_root(F&& f, double lo, double hi, std::uintmax_t max_iter = 200) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw DomainError("root bracket does not change sign");
  std::uintmax_t iters = max_iter;
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 1);
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  if (iters >= max_iter) throw ConvergenceError("root solve hit its iteration limit");
  return 0.5 * (a + b);
}

struct NelderMeadOptions {
  double initial_step = 1e-3;
  double f_tolerance = 1e-16;  // spread of simplex values
  double x_tolerance = 1e-11;  // simplex diameter
  int max_evaluations = 20000;
  int restarts = 2;
};

template <std::size_t N>
struct SimplexMinimum {
  std::array<double, N> x{};
  double value = 0.0;
  int evaluations = 0;
};

/// Nelder–Mead simplex search with restarts from the incumbent.
///
/// Standard coefficients (reflect 1, expand 2, contract ½, shrink ½). A restart
/// rebuilds the simplex around the best point at the initial step scaled by
/// 1e-2 and stops once a restart no longer improves the value.
template <std::size_t N, class F>
SimplexMinimum<N> nelder_mead(F&& f, std::array<double, N> start, const NelderMeadOptions& opt = {}) {
  using Point = std::array<double, N>;
  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return static_cast<double>(f(p));
  };

  auto run = [&](const Point& origin, double step) {
    std::array<Point, N + 1> pts;
    std::array<double, N + 1> vals;
    pts[0] = origin;
    for (std::size_t i = 0; i < N; ++i) {
      pts[i + 1] = origin;
      pts[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= N; ++i) vals[i] = eval(pts[i]);

    std::array<std::size_t, N + 1> order;
    for (;;) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
      const std::size_t best = order[0], worst = order[N], second = order[N - 1];

      double diam = 0.0;
      for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t k = 0; k < N; ++k) {
          diam = std::max(diam, std::fabs(pts[order[i]][k] - pts[best][k]));
        }
      }
      if (vals[worst] - vals[best] <= opt.f_tolerance && diam <= opt.x_tolerance) break;
      if (diam <= 1e-3 * opt.x_tolerance) break;  // collapsed; values are at noise level
      if (evals >= opt.max_evaluations) {
        throw ConvergenceError("Nelder-Mead exceeded its evaluation budget");
      }

      Point centroid{};
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[order[i]][k] / static_cast<double>(N);
      }
      auto along = [&](double t) {
        Point p;
        for (std::size_t k = 0; k < N; ++k) p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
        return p;
      };

      const Point reflected = along(-1.0);
      const double fr = eval(reflected);
      if (fr < vals[best]) {
        const Point expanded = along(-2.0);
        const double fe = eval(expanded);
        if (fe < fr) {
          pts[worst] = expanded;
          vals[worst] = fe;
        } else {
          pts[worst] = reflected;
          vals[worst] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[worst] = reflected;
        vals[worst] = fr;
        continue;
      }
      const bool outside = fr < vals[worst];
      const Point contracted = along(outside ? -0.5 : 0.5);
      const double fc = eval(contracted);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = contracted;
        vals[worst] = fc;
        continue;
      }
      for (std::size_t i = 1; i <= N; ++i) {
        auto& p = pts[order[i]];
        for (std::size_t k = 0; k < N; ++k) p[k] = pts[best][k] + 0.5 * (p[k] - pts[best][k]);
        vals[order[i]] = eval(p);
      }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= N; ++i) {
      if (vals[i] < vals[best]) best = i;
    }
    return std::pair{pts[best], vals[best]};
  };

  auto [x, fx] = run(start, opt.initial_step);
  double step = opt.initial_step * 1e-2;
  for (int r = 0; r < opt.restarts; ++r) {
    auto [x2, fx2] = run(x, step);
    const bool improved = fx2 < fx - opt.f_tolerance;
    if (fx2 < fx) {
      x = x2;
      fx = fx2;
    }
    if (!improved) break;
    step *= 1e-1;
  }
  return {x, fx, evals};
}

}  // namespace croft::optim
