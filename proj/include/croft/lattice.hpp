#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "croft/arc_region.hpp"
#include "croft/body.hpp"
#include "croft/segments.hpp"
#include "croft/step_function.hpp"

namespace croft {

enum class Color { red = 0, green = 1, blue = 2 };

inline const char* color_name(Color c) {
  switch (c) {
    case Color::red: return "red";
    case Color::green: return "green";
    case Color::blue: return "blue";
  }
  return "?";
}

/// Proper 3-colouring of the triangular lattice; (0,0) is red, (1,0) green,
/// (0,1) blue.
inline Color color_of(long i, long j) {
  long m = (i - j) % 3;
  if (m < 0) m += 3;
  return static_cast<Color>(m);
}

/// Rotation of the copy placed on a site of the given colour.
inline double orientation(Color c) { return static_cast<int>(c) * 2.0 * kPi / 3.0; }

struct LatticeConfig {
  double L = 0.0;
  Vec2 omega1;
  Vec2 omega2;
  Vec2 shift;  ///< per unit ε, applied to every copy before its rotation

  Vec2 site(long i, long j) const {
    return static_cast<double>(i) * omega1 + static_cast<double>(j) * omega2;
  }
};

inline LatticeConfig make_lattice(Vec2 shift = {}) {
  const double L = croft_constants().lattice_constant;
  return {L, {L, 0.0}, {0.5 * L, 0.5 * std::sqrt(3.0) * L}, shift};
}

struct PlacedBody {
  long i = 0;
  long j = 0;
  Color color = Color::red;
  Pose pose;
};

inline PlacedBody place(const LatticeConfig& cfg, long i, long j, double epsilon) {
  const Color c = color_of(i, j);
  return {i, j, c, Pose{orientation(c), cfg.site(i, j), epsilon * cfg.shift}};
}

struct FramePoint {
  double x_bar = 0.0;
  double y = 0.0;
};

/// Boundary point at angle φ (after translating the body by `offset`),
/// rotated by −φ, with 1 subtracted from the first coordinate.
inline FramePoint rotated_frame(const ArcBody& body, double phi, Vec2 offset = {}) {
  const Vec2 p = boundary_point(body, phi) + offset;
  const Vec2 u = unit(phi);
  return {dot(u, p) - 1.0, cross(u, p)};
}

/// Which side limits of q feed the right body's upper/lower radii. The right
/// copy faces the edge at body angle b after a rotation by π − b, so its upper
/// side sees q(b−) (geometric). The alternative assigns q(b+) to the upper side.
enum class RadiusLabeling { geometric, as_printed };

/// Body angles (2kπ/3, (2k+1)π/3) of the left and right copy on edge class k.
inline std::array<PiMultiple, 2> edge_angles(int k) {
  if (k < 0 || k > 2) throw DomainError("edge class must be 0, 1 or 2");
  return {PiMultiple(2 * k, 3), PiMultiple(2 * k + 1, 3)};
}

/// PairCut of edge class k read off the step function and the rotated frame.
inline PairCut cut_parameters(const StepFunction& q, double epsilon, int k, Vec2 shift = {},
                              RadiusLabeling labeling = RadiusLabeling::geometric) {
  const auto [a, b] = edge_angles(k);
  const ArcBody body = build_body(q, epsilon);
  const Vec2 offset = epsilon * shift;
  const FramePoint fa = rotated_frame(body, a.radians(), offset);
  const FramePoint fb = rotated_frame(body, b.radians(), offset);
  PairCut c;
  c.d_x = fa.x_bar + fb.x_bar;
  c.d_y = fa.y + fb.y;
  c.r_lu = -epsilon * eval_step(q, a, Side::right);
  c.r_ll = -epsilon * eval_step(q, a, Side::left);
  const double b_plus = -epsilon * eval_step(q, b, Side::right);
  const double b_minus = -epsilon * eval_step(q, b, Side::left);
  if (labeling == RadiusLabeling::geometric) {
    c.r_ru = b_minus;
    c.r_rl = b_plus;
  } else {
    c.r_ru = b_plus;
    c.r_rl = b_minus;
  }
  return c;
}

/// A nearest-neighbour pair, ordered so that `left` faces the edge at an even
/// multiple of π/3 of its own body angle.
struct LatticeEdge {
  PlacedBody left;
  PlacedBody right;
  int k = 0;
  double direction = 0.0;  ///< world angle from left to right
};

namespace detail {

/// Multiple of π/3 nearest to an angle, reduced to 0..5.
inline int sixth(double angle) {
  long m = std::lround(angle / (kPi / 3.0)) % 6;
  if (m < 0) m += 6;
  return static_cast<int>(m);
}

}  // namespace detail

/// Classifies the edge from site (i, j) in world direction dir·π/3.
inline LatticeEdge classify_edge(const LatticeConfig& cfg, double epsilon, long i, long j, int dir) {
  static constexpr long step[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  const int d = ((dir % 6) + 6) % 6;
  PlacedBody p = place(cfg, i, j, epsilon);
  PlacedBody n = place(cfg, i + step[d][0], j + step[d][1], epsilon);
  const int local = detail::sixth(d * kPi / 3.0 - p.pose.rotation);
  if (local % 2 == 0) return {p, n, local / 2, d * kPi / 3.0};
  const int back = (d + 3) % 6;
  const int other = detail::sixth(back * kPi / 3.0 - n.pose.rotation);
  return {n, p, other / 2, back * kPi / 3.0};
}

namespace detail {

inline double radius_at(const ArcBody& body, double phi, Side side) {
  const double nudge = side == Side::right ? 1e-9 : -1e-9;
  return body.arcs[arc_index(body, phi + nudge)].radius;
}

}  // namespace detail

/// PairCut of a concrete lattice edge measured on the placed copies in world
/// coordinates: tips along the edge, offsets in the edge frame, radii on the
/// upper and lower side of the edge line.
inline PairCut edge_cut_parameters(const ArcBody& body, const LatticeEdge& e) {
  const double theta = e.direction;
  const Vec2 origin = e.left.pose.offset;
  auto to_edge = [&](Vec2 w) { return rotate(w - origin, -theta); };
  const double a = theta - e.left.pose.rotation;
  const double b = theta + kPi - e.right.pose.rotation;
  const Vec2 pl = to_edge(e.left.pose.apply(boundary_point(body, a)));
  const Vec2 pr = to_edge(e.right.pose.apply(boundary_point(body, b)));
  const double span = norm(e.right.pose.offset - origin);
  PairCut c;
  c.d_x = (pl.x - 1.0) + (span - pr.x - 1.0);
  c.d_y = pl.y - pr.y;
  c.r_lu = detail::radius_at(body, a, Side::right) - 1.0;
  c.r_ll = detail::radius_at(body, a, Side::left) - 1.0;
  c.r_ru = detail::radius_at(body, b, Side::left) - 1.0;
  c.r_rl = detail::radius_at(body, b, Side::right) - 1.0;
  return c;
}

/// Separating stripe in the edge frame (left copy at the origin, right copy at
/// (L, 0)): centre line x − y·tan δ = L/2 − shift, full width `width`
/// measured perpendicular to the lines.
struct Stripe {
  double shift = 0.0;
  double tilt = 0.0;
  double width = 2.0;
};

/// Half-planes kept by the left and the right copy, in the edge frame.
inline std::array<HalfPlane, 2> stripe_halfplanes(const Stripe& s, double L) {
  const Vec2 n{1.0, -std::tan(s.tilt)};
  const double centre = 0.5 * L - s.shift;
  const double half = 0.5 * s.width / std::cos(s.tilt);
  return {HalfPlane{n, centre - half}, HalfPlane{-n, -(centre + half)}};
}

/// Poses of the two copies of edge class k in the edge frame.
inline std::array<Pose, 2> edge_frame_poses(int k, double L, Vec2 pre_shift) {
  const auto [a, b] = edge_angles(k);
  return {Pose{-a.radians(), {}, pre_shift}, Pose{kPi - b.radians(), {L, 0.0}, pre_shift}};
}

inline HalfPlane to_world(const HalfPlane& h, double theta, Vec2 origin) {
  const Vec2 n = rotate(h.n, theta);
  return {n, h.c + dot(n, origin)};
}

struct EdgeMargin {
  long left_i = 0, left_j = 0, right_i = 0, right_j = 0;
  int k = 0;
  double gap = 0.0;        ///< remainder separation along the stripe normal
  double min_cross = 0.0;  ///< smallest sampled distance between the remainders
};

struct AvoidanceReport {
  double epsilon = 0.0;
  std::vector<EdgeMargin> edges;
  double max_self_distance = 0.0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Tolerance for "≥ 2" on exactly computed separations and distances.
inline constexpr double kAvoidanceTolerance = 1e-12;

/// The remainder of the copy on (i, j) after removing all six caps.
inline CurvedRegion remainder_at(const ArcBody& body, const LatticeConfig& cfg, double epsilon,
                                 const std::array<Stripe, 3>& stripes, long i, long j) {
  const PlacedBody self = place(cfg, i, j, epsilon);
  std::vector<HalfPlane> keep;
  for (int d = 0; d < 6; ++d) {
    const LatticeEdge e = classify_edge(cfg, epsilon, i, j, d);
    const auto planes = stripe_halfplanes(stripes[e.k], cfg.L);
    const bool is_left = e.left.i == i && e.left.j == j;
    keep.push_back(to_world(planes[is_left ? 0 : 1], e.direction, e.left.pose.offset));
  }
  return clip(region_of(body, self.pose), keep);
}

/// Checks on a 4×4 patch of sites (one fundamental domain plus neighbours)
/// that every pair of adjacent remainders is separated by its stripe of width
/// 2, that sampled cross distances are at least 2, and that no remainder has
/// diameter above 2.
inline AvoidanceReport verify_avoidance(const ArcBody& body, const LatticeConfig& cfg, double epsilon,
                                        const std::array<Stripe, 3>& stripes,
                                        std::size_t samples = 10000) {
  AvoidanceReport rep;
  rep.epsilon = epsilon;
  constexpr long lo = -1, hi = 2;
  auto idx = [](long i, long j) { return static_cast<std::size_t>((i - lo) * (hi - lo + 1) + (j - lo)); };
  std::vector<CurvedRegion> rem((hi - lo + 1) * (hi - lo + 1));
  std::vector<std::vector<Vec2>> pts(rem.size());
  for (long i = lo; i <= hi; ++i) {
    for (long j = lo; j <= hi; ++j) {
      auto& r = rem[idx(i, j)];
      r = remainder_at(body, cfg, epsilon, stripes, i, j);
      pts[idx(i, j)] = sample_boundary(r, samples);
      for (const Vec2& p : pts[idx(i, j)]) rep.max_self_distance = std::max(rep.max_self_distance, farthest(r, p));
    }
  }
  if (rep.max_self_distance > 2.0 + 1e-9) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "remainder diameter " << rep.max_self_distance << " exceeds 2";
    rep.violations.push_back(msg.str());
  }

  for (long i = lo; i <= hi; ++i) {
    for (long j = lo; j <= hi; ++j) {
      for (int d = 0; d < 3; ++d) {  // each undirected edge once
        const LatticeEdge e = classify_edge(cfg, epsilon, i, j, d);
        if (e.right.i < lo || e.right.i > hi || e.right.j < lo || e.right.j > hi) continue;
        if (e.left.i < lo || e.left.i > hi || e.left.j < lo || e.left.j > hi) continue;
        const auto& L = rem[idx(e.left.i, e.left.j)];
        const auto& R = rem[idx(e.right.i, e.right.j)];
        EdgeMargin m{e.left.i, e.left.j, e.right.i, e.right.j, e.k, 0.0, 0.0};
        const double tilt = stripes[e.k].tilt;
        const Vec2 nw = rotate(Vec2{std::cos(tilt), -std::sin(tilt)}, e.direction);
        m.gap = -support(R, -nw) - support(L, nw);
        m.min_cross = std::numeric_limits<double>::infinity();
        for (const Vec2& p : pts[idx(e.left.i, e.left.j)]) m.min_cross = std::min(m.min_cross, distance(R, p));
        for (const Vec2& p : pts[idx(e.right.i, e.right.j)]) m.min_cross = std::min(m.min_cross, distance(L, p));
        if (m.gap < 2.0 - kAvoidanceTolerance || m.min_cross < 2.0 - kAvoidanceTolerance) {
          std::ostringstream msg;
          msg.precision(15);
          msg << "edge (" << e.left.i << "," << e.left.j << ")-(" << e.right.i << "," << e.right.j
              << ") class " << e.k << ": gap " << m.gap << ", min cross distance " << m.min_cross;
          rep.violations.push_back(msg.str());
        }
        rep.edges.push_back(m);
      }
    }
  }
  return rep;
}

}  // namespace croft
