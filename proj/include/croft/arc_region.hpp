#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "croft/body.hpp"
#include "croft/vec2.hpp"

namespace croft {

/// Straight boundary piece from `a` to `b`.
struct Chord {
  Vec2 a;
  Vec2 b;
};

using Piece = std::variant<Arc, Chord>;

inline Vec2 piece_start(const Piece& p) {
  if (const auto* arc = std::get_if<Arc>(&p)) return arc->point(arc->begin);
  return std::get<Chord>(p).a;
}

inline Vec2 piece_end(const Piece& p) {
  if (const auto* arc = std::get_if<Arc>(&p)) return arc->point(arc->end);
  return std::get<Chord>(p).b;
}

/// Closed half-plane {x : n·x ≤ c}.
struct HalfPlane {
  Vec2 n;
  double c = 0.0;

  double excess(Vec2 x) const { return dot(n, x) - c; }
  HalfPlane complement() const { return {-n, -c}; }
};

/// Rigid placement of a body: x ↦ offset + R(rotation)(x + pre_shift).
struct Pose {
  double rotation = 0.0;
  Vec2 offset;
  Vec2 pre_shift;

  Vec2 apply(Vec2 local) const { return offset + rotate(local + pre_shift, rotation); }
};

/// Convex region bounded by a counter-clockwise chain of arcs and chords.
struct CurvedRegion {
  std::vector<Piece> pieces;

  bool empty() const { return pieces.empty(); }
};

/// Gaps narrower than this between consecutive pieces are not closed by a chord.
inline constexpr double kChordGap = 1e-13;

/// Relative slack under which a circle touching a clip line counts as tangent.
inline constexpr double kTangency = 1e-12;

inline CurvedRegion region_of(const ArcBody& body, const Pose& pose = {}) {
  CurvedRegion r;
  r.pieces.reserve(body.arcs.size());
  for (const auto& a : body.arcs) {
    r.pieces.emplace_back(
        Arc{pose.apply(a.center), a.radius, a.begin + pose.rotation, a.end + pose.rotation});
  }
  return r;
}

/// Intersection of a convex region with a half-plane.
inline CurvedRegion clip(const CurvedRegion& region, const HalfPlane& h) {
  std::vector<Piece> kept;
  const double nn = norm(h.n);
  const double alpha = std::atan2(h.n.y, h.n.x);
  for (const auto& p : region.pieces) {
    if (const auto* chord = std::get_if<Chord>(&p)) {
      const double f0 = h.excess(chord->a);
      const double f1 = h.excess(chord->b);
      if (f0 <= 0.0 && f1 <= 0.0) {
        kept.push_back(p);
      } else if (f0 <= 0.0 || f1 <= 0.0) {
        const Vec2 x = chord->a + (f0 / (f0 - f1)) * (chord->b - chord->a);
        kept.emplace_back(f0 <= 0.0 ? Chord{chord->a, x} : Chord{x, chord->b});
      }
      continue;
    }
    const Arc& a = std::get<Arc>(p);
    if (a.radius == 0.0) {
      if (h.excess(a.center) <= 0.0) kept.push_back(p);
      continue;
    }
    const double t = (h.c - dot(h.n, a.center)) / (a.radius * nn);
    if (t >= 1.0 - kTangency) {
      kept.push_back(p);
      continue;
    }
    if (t <= -1.0) continue;
    // outside the half-plane exactly for |φ − α| < w (mod 2π)
    const double w = std::acos(t);
    double lo = alpha - w;
    lo += kTwoPi * std::floor((a.begin - lo) / kTwoPi);  // lo ≤ begin < lo + 2π
    const double hi = lo + 2.0 * w;
    const double windows[2][2] = {{hi, lo + kTwoPi}, {hi + kTwoPi, lo + 2.0 * kTwoPi}};
    for (const auto& win : windows) {
      const double b0 = std::max(a.begin, win[0]);
      const double b1 = std::min(a.end, win[1]);
      if (b1 > b0) kept.emplace_back(Arc{a.center, a.radius, b0, b1});
    }
  }

  CurvedRegion out;
  out.pieces.reserve(kept.size() + 1);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    out.pieces.push_back(kept[i]);
    const Vec2 e = piece_end(kept[i]);
    const Vec2 s = piece_start(kept[(i + 1) % kept.size()]);
    if (norm(s - e) > kChordGap) out.pieces.emplace_back(Chord{e, s});
  }
  return out;
}

inline CurvedRegion clip(CurvedRegion region, const std::vector<HalfPlane>& planes) {
  for (const auto& h : planes) region = clip(region, h);
  return region;
}

/// Enclosed area. Green's theorem is taken about a point of the boundary so
/// that small regions far from the origin keep full relative precision.
inline double area(const CurvedRegion& r) {
  if (r.empty()) return 0.0;
  const Vec2 o = piece_start(r.pieces.front());
  double total = 0.0;
  for (const auto& p : r.pieces) {
    if (const auto* a = std::get_if<Arc>(&p)) {
      total += arc_area_term(*a, o);
    } else {
      const auto& c = std::get<Chord>(p);
      total += 0.5 * cross(c.a - o, c.b - o);
    }
  }
  return total;
}

/// max over the region of n·x.
inline double support(const CurvedRegion& r, Vec2 n) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : r.pieces) {
    best = std::max({best, dot(n, piece_start(p)), dot(n, piece_end(p))});
    if (const auto* a = std::get_if<Arc>(&p)) {
      double t = std::atan2(n.y, n.x);
      t -= kTwoPi * std::floor((t - a->begin) / kTwoPi);
      if (t <= a->end) best = std::max(best, dot(n, a->point(t)));
    }
  }
  return best;
}

namespace detail {

inline double distance_to_chord(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

inline double distance_to_arc(Vec2 p, const Arc& a) {
  double best = std::min(norm(p - a.point(a.begin)), norm(p - a.point(a.end)));
  const Vec2 d = p - a.center;
  if (a.radius > 0.0 && norm(d) > 0.0) {
    double t = std::atan2(d.y, d.x);
    t -= kTwoPi * std::floor((t - a.begin) / kTwoPi);
    if (t <= a.end) best = std::min(best, std::fabs(norm(d) - a.radius));
  }
  return best;
}

}  // namespace detail

/// Whether `p` lies in the closed region: inside the polygon of piece
/// endpoints or inside the circular segment cut off by one of the arcs.
inline bool contains(const CurvedRegion& r, Vec2 p) {
  if (r.empty()) return false;
  bool in_polygon = true;
  for (const auto& piece : r.pieces) {
    const Vec2 a = piece_start(piece);
    const Vec2 b = piece_end(piece);
    if (norm(b - a) > 0.0 && cross(b - a, p - a) < 0.0) {
      in_polygon = false;
      break;
    }
  }
  if (in_polygon) return true;
  for (const auto& piece : r.pieces) {
    const auto* arc = std::get_if<Arc>(&piece);
    if (arc == nullptr || norm(p - arc->center) > arc->radius) continue;
    const Vec2 a = arc->point(arc->begin);
    const Vec2 b = arc->point(arc->end);
    if (cross(b - a, p - a) <= 0.0) return true;
  }
  return false;
}

/// Distance from `p` to the region (0 inside).
inline double distance(const CurvedRegion& r, Vec2 p) {
  if (contains(r, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& piece : r.pieces) {
    if (const auto* a = std::get_if<Arc>(&piece)) {
      best = std::min(best, detail::distance_to_arc(p, *a));
    } else {
      const auto& c = std::get<Chord>(piece);
      best = std::min(best, detail::distance_to_chord(p, c.a, c.b));
    }
  }
  return best;
}

/// Largest distance from `p` to a point of the region.
inline double farthest(const CurvedRegion& r, Vec2 p) {
  double best = 0.0;
  for (const auto& piece : r.pieces) {
    if (const auto* a = std::get_if<Arc>(&piece)) {
      best = std::max(best, farthest_on_arc(*a, p));
    } else {
      const auto& c = std::get<Chord>(piece);
      best = std::max({best, norm(c.a - p), norm(c.b - p)});
    }
  }
  return best;
}

inline double piece_length(const Piece& p) {
  if (const auto* a = std::get_if<Arc>(&p)) return a->radius * (a->end - a->begin);
  const auto& c = std::get<Chord>(p);
  return norm(c.b - c.a);
}

/// About n boundary points spread by arc length, plus every piece endpoint.
inline std::vector<Vec2> sample_boundary(const CurvedRegion& r, std::size_t n) {
  std::vector<Vec2> out;
  double perimeter = 0.0;
  for (const auto& p : r.pieces) perimeter += piece_length(p);
  if (perimeter <= 0.0) {
    for (const auto& p : r.pieces) out.push_back(piece_start(p));
    return out;
  }
  out.reserve(n + r.pieces.size());
  for (const auto& p : r.pieces) {
    out.push_back(piece_start(p));
    const double len = piece_length(p);
    const auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * len / perimeter));
    for (std::size_t i = 1; i < k; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(k);
      if (const auto* a = std::get_if<Arc>(&p)) {
        out.push_back(a->point(a->begin + t * (a->end - a->begin)));
      } else {
        const auto& c = std::get<Chord>(p);
        out.push_back(c.a + t * (c.b - c.a));
      }
    }
  }
  return out;
}

}  // namespace croft
