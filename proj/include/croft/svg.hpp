#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <variant>

#include "croft/arc_region.hpp"
#include "croft/lattice.hpp"
#include "croft/tortoise.hpp"

namespace croft::svg {

struct Box {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;

  void add(Vec2 p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  void add(const CurvedRegion& r) {
    if (r.empty()) return;
    x1 = std::max(x1, support(r, {1, 0}));
    x0 = std::min(x0, -support(r, {-1, 0}));
    y1 = std::max(y1, support(r, {0, 1}));
    y0 = std::min(y0, -support(r, {0, -1}));
  }
};

/// Path data in y-up coordinates; the document flips the axis.
inline std::string path_data(const CurvedRegion& r) {
  if (r.empty()) return {};
  std::ostringstream os;
  os.precision(10);
  const Vec2 s = piece_start(r.pieces.front());
  os << "M" << s.x << " " << s.y;
  for (const auto& p : r.pieces) {
    const Vec2 e = piece_end(p);
    const auto* a = std::get_if<Arc>(&p);
    if (a != nullptr && a->radius > 0.0 && a->end > a->begin) {
      const int large = a->end - a->begin > kPi ? 1 : 0;
      os << " A" << a->radius << " " << a->radius << " 0 " << large << " 1 " << e.x << " " << e.y;
    } else {
      os << " L" << e.x << " " << e.y;
    }
  }
  os << " Z";
  return os.str();
}

class Document {
 public:
  Document() { body_.precision(10); }

  void region(const CurvedRegion& r, std::string_view fill, std::string_view stroke) {
    box_.add(r);
    body_ << "  <path d=\"" << path_data(r) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
          << "\" stroke-width=\"0.01\"/>\n";
  }
  void line(Vec2 a, Vec2 b, std::string_view stroke, double width = 0.008) {
    body_ << "  <line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
  }
  void dot(Vec2 p, std::string_view fill, double r = 0.03) {
    box_.add(p);
    body_ << "  <circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"" << r << "\" fill=\"" << fill << "\"/>\n";
  }

  std::string str(double margin = 0.2) const {
    const double w = box_.x1 - box_.x0 + 2 * margin;
    const double h = box_.y1 - box_.y0 + 2 * margin;
    std::ostringstream os;
    os.precision(10);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << box_.x0 - margin << " "
       << -(box_.y1 + margin) << " " << w << " " << h << "\" width=\"" << 200 * w << "\" height=\"" << 200 * h
       << "\">\n <g transform=\"scale(1,-1)\">\n"
       << body_.str() << " </g>\n</svg>\n";
    return os.str();
  }

 private:
  Box box_;
  std::ostringstream body_;
};

inline std::string render_body(const ArcBody& body) {
  Document doc;
  doc.region(region_of(body), "#dde6f0", "black");
  doc.dot({}, "black", 0.02);
  return doc.str();
}

inline const char* fill_of(Color c) {
  switch (c) {
    case Color::red: return "#e8a0a0";
    case Color::green: return "#a0d8a0";
    case Color::blue: return "#a0b8e8";
  }
  return "grey";
}

/// One tortoise on the red origin site drawn over the uncut body, so the
/// removed caps show in the body colour.
inline std::string render_tortoise(const Family& f, double epsilon, const std::array<Stripe, 3>& stripes) {
  const ArcBody body = build_body(f.q, epsilon);
  const LatticeConfig cfg = make_lattice(f.shift);
  const PlacedBody self = place(cfg, 0, 0, epsilon);
  Document doc;
  doc.region(region_of(body, self.pose), "#4060c0", "none");
  doc.region(remainder_at(body, cfg, epsilon, stripes, 0, 0), fill_of(self.color), "black");
  return doc.str();
}

/// Remainders on a 4×4 patch with every stripe boundary drawn.
inline std::string render_lattice(const Family& f, double epsilon, const std::array<Stripe, 3>& stripes) {
  const ArcBody body = build_body(f.q, epsilon);
  const LatticeConfig cfg = make_lattice(f.shift);
  Document doc;
  for (long i = -1; i <= 2; ++i) {
    for (long j = -1; j <= 2; ++j) {
      const PlacedBody p = place(cfg, i, j, epsilon);
      doc.region(region_of(body, p.pose), "#4060c0", "none");
      doc.region(remainder_at(body, cfg, epsilon, stripes, i, j), fill_of(p.color), "black");
    }
  }
  for (long i = -1; i <= 2; ++i) {
    for (long j = -1; j <= 2; ++j) {
      for (int d = 0; d < 3; ++d) {
        const LatticeEdge e = classify_edge(cfg, epsilon, i, j, d);
        for (const auto& h : stripe_halfplanes(stripes[e.k], cfg.L)) {
          const HalfPlane w = to_world(h, e.direction, e.left.pose.offset);
          const Vec2 n = (1.0 / norm(w.n)) * w.n;
          const Vec2 foot = (w.c / norm(w.n)) * n;
          const Vec2 t{-n.y, n.x};
          const Vec2 mid = 0.5 * (e.left.pose.offset + e.right.pose.offset);
          const Vec2 c = foot + dot(mid - foot, t) * t;
          doc.line(c - 0.6 * t, c + 0.6 * t, "#203080");
        }
      }
    }
  }
  return doc.str();
}

}  // namespace croft::svg
