#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "croft/error.hpp"
#include "croft/optim.hpp"
#include "croft/step_function.hpp"
#include "croft/vec2.hpp"

namespace croft {

/// One circular arc of a body boundary, traversed counter-clockwise from
/// `begin` to `end` (radians, begin < end).
struct Arc {
  Vec2 center;
  double radius = 1.0;
  double begin = 0.0;
  double end = 0.0;

  Vec2 point(double phi) const { return center + radius * unit(phi); }
};

/// Constant-diameter-2 body: the boundary point at angle φ in interval i is
/// M_i + (1 − ε·q_i)(cos φ, sin φ).
struct ArcBody {
  std::vector<Arc> arcs;
  double epsilon = 0.0;
  double closure_residual = 0.0;
};

inline constexpr double kClosureTolerance = 1e-9;

/// Centre of the first interval for which the boundary passes through (1, 0)
/// at φ = 0; the convention of the published offset tables.
inline Vec2 canonical_anchor(const StepFunction& q, double epsilon) {
  return {epsilon * q.values().front(), 0.0};
}

/// Chains the arc centres from `anchor` so consecutive arcs meet at each break.
/// Throws DomainError for a negative radius or a chain that fails to close
/// (a q that violates the two closure constraints).
inline ArcBody build_body(const StepFunction& q, double epsilon, Vec2 anchor) {
  const auto values = q.values();
  const std::size_t n = values.size();
  ArcBody body;
  body.epsilon = epsilon;
  body.arcs.reserve(n);

  Vec2 center = anchor;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = 1.0 - epsilon * values[i];
    if (radius < 0.0) {
      std::ostringstream msg;
      msg.precision(15);
      msg << "negative radius " << radius << " on interval " << i << " at eps = " << epsilon;
      throw DomainError(msg.str());
    }
    body.arcs.push_back({center, radius, q.break_radians(i), q.break_radians(i + 1)});
    const double next = values[(i + 1) % n];
    center += epsilon * (next - values[i]) * unit(q.break_radians(i + 1));
  }
  body.closure_residual = norm(center - anchor);
  if (body.closure_residual > kClosureTolerance) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "arc chain does not close (residual " << body.closure_residual << ")";
    throw DomainError(msg.str());
  }
  return body;
}

inline ArcBody build_body(const StepFunction& q, double epsilon) {
  return build_body(q, epsilon, canonical_anchor(q, epsilon));
}

/// Index of the arc whose angular range contains `phi` (reduced mod 2π).
inline std::size_t arc_index(const ArcBody& body, double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  auto it = std::upper_bound(body.arcs.begin(), body.arcs.end(), p,
                             [](double v, const Arc& a) { return v < a.begin; });
  if (it == body.arcs.begin()) return 0;
  return static_cast<std::size_t>(it - body.arcs.begin()) - 1;
}

inline Vec2 boundary_point(const ArcBody& body, double phi) {
  return body.arcs[arc_index(body, phi)].point(phi);
}

/// Green's-theorem contribution ½∮(x dy − y dx) of a single arc, relative to
/// `origin`.
inline double arc_area_term(const Arc& a, Vec2 origin = {}) {
  const Vec2 m = a.center - origin;
  const double r = a.radius;
  return 0.5 * (r * r * (a.end - a.begin) +
                r * (m.x * (std::sin(a.end) - std::sin(a.begin)) -
                     m.y * (std::cos(a.end) - std::cos(a.begin))));
}

/// Exact enclosed area, summed arc by arc in closed form.
inline double body_area(const ArcBody& body) {
  double area = 0.0;
  for (const auto& a : body.arcs) area += arc_area_term(a);
  return area;
}

/// Largest distance from `p` to any point of the arc.
inline double farthest_on_arc(const Arc& a, Vec2 p) {
  double best = std::max(norm(a.point(a.begin) - p), norm(a.point(a.end) - p));
  const Vec2 d = a.center - p;
  if (norm(d) > 0.0 && a.radius > 0.0) {
    // farthest point of the full circle lies along p → centre
    double t = std::atan2(d.y, d.x);
    t -= kTwoPi * std::floor((t - a.begin) / kTwoPi);
    if (t <= a.end) best = std::max(best, norm(a.point(t) - p));
  }
  return best;
}

struct DiameterProfile {
  double max = 0.0;
  double min = std::numeric_limits<double>::infinity();
};

/// Extremes over n sampled boundary points (plus every arc endpoint) of the
/// point's diameter, the largest distance to the body.
inline DiameterProfile diameter_profile(const ArcBody& body, std::size_t n) {
  if (n < 24) throw DomainError("diameter_profile needs at least 24 samples");
  DiameterProfile out;
  auto visit = [&](Vec2 p) {
    double d = 0.0;
    for (const auto& a : body.arcs) d = std::max(d, farthest_on_arc(a, p));
    out.max = std::max(out.max, d);
    out.min = std::min(out.min, d);
  };
  for (std::size_t k = 0; k < n; ++k) {
    visit(boundary_point(body, kTwoPi * static_cast<double>(k) / static_cast<double>(n)));
  }
  for (const auto& a : body.arcs) visit(a.point(a.begin));
  return out;
}

/// Croft's construction at diameter-2 scale.
struct CroftConstants {
  double half_angle = 0.0;        ///< φ_C
  double cap_width = 0.0;         ///< w_C = 1 − cos φ_C
  double cap_area = 0.0;          ///< A_C = φ_C − cos φ_C sin φ_C
  double lattice_constant = 0.0;  ///< L = 2(1 + cos φ_C)
  double density = 0.0;           ///< δ_C
};

/// Periodic density of discs of radius 1 with six caps of half angle `phi`
/// removed, on the hexagonal lattice of constant 2(1 + cos φ).
inline double croft_density(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return (kPi - 6.0 * (phi - s * c)) / (2.0 * std::sqrt(3.0) * (1.0 + c) * (1.0 + c));
}

inline double croft_density_derivative(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double num = kPi - 6.0 * (phi - s * c);
  const double den = 2.0 * std::sqrt(3.0) * (1.0 + c) * (1.0 + c);
  const double dnum = -12.0 * s * s;
  const double dden = -4.0 * std::sqrt(3.0) * s * (1.0 + c);
  return (dnum * den - num * dden) / (den * den);
}

namespace detail {

inline CroftConstants solve_croft() {
  // Brent brackets the maximiser; the stationarity root then pins it to
  // machine precision, which value-based search alone cannot reach.
  const auto coarse = optim::minimize_scalar([](double p) { return -croft_density(p); }, 0.05, 0.6);
  const double width = 1e-4;
  const double phi =
      optim::find_root(croft_density_derivative, coarse.x - width, coarse.x + width);
  if (std::fabs(phi - coarse.x) > 1e-6) {
    throw ConvergenceError("Croft angle: Brent and stationarity solutions disagree");
  }
  CroftConstants k;
  k.half_angle = phi;
  k.cap_width = 1.0 - std::cos(phi);
  k.cap_area = phi - std::cos(phi) * std::sin(phi);
  k.lattice_constant = 2.0 * (1.0 + std::cos(phi));
  k.density = croft_density(phi);
  return k;
}

}  // namespace detail

inline const CroftConstants& croft_constants() {
  static const CroftConstants k = detail::solve_croft();
  return k;
}

}  // namespace croft
