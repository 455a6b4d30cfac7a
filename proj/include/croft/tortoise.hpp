#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "croft/arc_region.hpp"
#include "croft/body.hpp"
#include "croft/lattice.hpp"
#include "croft/optim.hpp"
#include "croft/reference_family.hpp"
#include "croft/segments.hpp"

namespace croft {

/// 1 = stripe shift only, 2 = shift and tilt; series = second-order cap
/// formulas, exact = caps clipped from the arc boundary.
enum class Mode { series1, series2, exact1, exact2 };

inline constexpr std::array<Mode, 4> kAllModes{Mode::series1, Mode::series2, Mode::exact1, Mode::exact2};

inline std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::series1: return "series1";
    case Mode::series2: return "series2";
    case Mode::exact1: return "exact1";
    case Mode::exact2: return "exact2";
  }
  return "?";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : kAllModes) {
    if (mode_name(m) == s) return m;
  }
  return std::nullopt;
}

inline bool is_exact(Mode m) { return m == Mode::exact1 || m == Mode::exact2; }
inline bool has_tilt(Mode m) { return m == Mode::series2 || m == Mode::exact2; }

/// A q-spec together with its pre-rotation shift per unit ε.
struct Family {
  StepFunction q;
  Vec2 shift;
};

inline Family reference_family() { return {reference::q(), reference::kShift}; }

struct EdgeRecord {
  double shift = 0.0;
  double tilt = 0.0;
  double cap_area = 0.0;  ///< both caps of the edge
};

struct DensityRecord {
  double epsilon = 0.0;
  Mode mode = Mode::exact2;
  double area = 0.0;
  double density = 0.0;
  std::array<EdgeRecord, 3> edges{};
  std::string error;  ///< non-empty when the point could not be evaluated

  bool ok() const { return error.empty(); }
};

inline double fundamental_cell_area() {
  const double L = croft_constants().lattice_constant;
  return L * L * std::sqrt(3.0) / 2.0;
}

/// The two copies of one edge class in its edge frame, ready for clipping.
struct EdgeGeometry {
  CurvedRegion left;
  CurvedRegion right;
  double L = 0.0;
};

inline EdgeGeometry edge_geometry(const ArcBody& body, int k, Vec2 pre_shift) {
  const double L = croft_constants().lattice_constant;
  const auto poses = edge_frame_poses(k, L, pre_shift);
  return {region_of(body, poses[0]), region_of(body, poses[1]), L};
}

/// Areas of the two caps the stripe removes, clipped from the arc boundaries.
inline std::array<double, 2> exact_edge_caps(const EdgeGeometry& g, const Stripe& s) {
  const auto keep = stripe_halfplanes(s, g.L);
  return {area(clip(g.left, keep[0].complement())), area(clip(g.right, keep[1].complement()))};
}

inline double exact_edge_cut(const EdgeGeometry& g, const Stripe& s) {
  const auto caps = exact_edge_caps(g, s);
  return caps[0] + caps[1];
}

namespace detail {

/// Stripe shift equivalent to a series shift at the given tilt. The series
/// splits the tilted width evenly between the copies; the stripe meets each
/// tip at its own depth and height.
inline double stripe_shift(const ArcBody& body, int k, Vec2 offset, double series_shift, double tilt) {
  const auto [a, b] = edge_angles(k);
  const FramePoint fa = rotated_frame(body, a.radians(), offset);
  const FramePoint fb = rotated_frame(body, b.radians(), offset);
  return series_shift + 0.5 * (fb.x_bar - fa.x_bar) + 0.5 * std::tan(tilt) * (fa.y - fb.y);
}

inline EdgeRecord minimize_exact_edge(const EdgeGeometry& g, Mode mode, Stripe seed) {
  if (mode == Mode::exact1) {
    double half = 0.02;
    for (int attempt = 0;; ++attempt) {
      try {
        const auto m = optim::minimize_scalar(
            [&](double s) { return exact_edge_cut(g, Stripe{s, 0.0, 2.0}); }, seed.shift - half,
            seed.shift + half, 52);
        return {m.x, 0.0, m.value};
      } catch (const DomainError&) {
        if (attempt == 2) throw;
        half *= 4.0;
      }
    }
  }
  optim::NelderMeadOptions opt;
  opt.f_tolerance = 1e-17;
  opt.x_tolerance = 1e-10;
  const auto m = optim::nelder_mead<2>(
      [&](const std::array<double, 2>& v) {
        if (!(std::fabs(v[1]) < 0.5)) return 1e3;  // keeps the search in the small-tilt regime
        return exact_edge_cut(g, Stripe{v[0], v[1], 2.0});
      },
      {seed.shift, seed.tilt}, opt);
  return {m.x[0], m.x[1], m.value};
}

}  // namespace detail

/// Area of the tortoise: the body minus the six caps removed by the minimising
/// stripes of the three edge classes. Throws on an invalid ε (negative radius)
/// or a failed minimisation.
inline DensityRecord tortoise_area(const Family& f, double epsilon, Mode mode,
                                   RadiusLabeling labeling = RadiusLabeling::geometric) {
  const ArcBody body = build_body(f.q, epsilon);
  const Vec2 offset = epsilon * f.shift;
  DensityRecord rec;
  rec.epsilon = epsilon;
  rec.mode = mode;
  double removed = 0.0;
  for (int k = 0; k < 3; ++k) {
    const PairCut c = cut_parameters(f.q, epsilon, k, f.shift, labeling);
    EdgeRecord e;
    if (mode == Mode::series1) {
      const auto m = minimize_pair_shift(c, Evaluation::series);
      e = {m.shift, 0.0, m.area};
    } else if (mode == Mode::series2) {
      const auto m = minimize_pair_shift_tilt(c, Evaluation::series);
      e = {m.shift, m.tilt, m.area};
    } else {
      const auto sm = minimize_pair_shift_tilt(c, Evaluation::series);
      const double tilt = mode == Mode::exact2 ? sm.tilt : 0.0;
      const double shift = mode == Mode::exact2 ? sm.shift : series_pair_shift(c).shift;
      const Stripe seed{detail::stripe_shift(body, k, offset, shift, tilt), tilt, 2.0};
      e = detail::minimize_exact_edge(edge_geometry(body, k, offset), mode, seed);
    }
    rec.edges[static_cast<std::size_t>(k)] = e;
    removed += e.cap_area;
  }
  rec.area = body_area(body) - removed;
  rec.density = rec.area / fundamental_cell_area();
  return rec;
}

/// Optimal stripes of the three edge classes (exact modes only).
inline std::array<Stripe, 3> optimal_stripes(const Family& f, double epsilon, Mode mode) {
  if (!is_exact(mode)) throw DomainError("optimal stripes are defined for exact modes only");
  const auto rec = tortoise_area(f, epsilon, mode);
  std::array<Stripe, 3> out;
  for (std::size_t k = 0; k < 3; ++k) out[k] = {rec.edges[k].shift, rec.edges[k].tilt, 2.0};
  return out;
}

/// One record per grid point, in grid order. Points are evaluated
/// concurrently; an error at one point is recorded and does not stop the scan.
inline std::vector<DensityRecord> scan(const Family& f, const std::vector<double>& grid, Mode mode) {
  std::vector<std::future<DensityRecord>> jobs;
  jobs.reserve(grid.size());
  for (double eps : grid) {
    jobs.push_back(std::async(std::launch::async, [&f, eps, mode] {
      try {
        return tortoise_area(f, eps, mode);
      } catch (const Error& e) {
        DensityRecord r;
        r.epsilon = eps;
        r.mode = mode;
        r.area = std::nan("");
        r.density = std::nan("");
        r.error = e.what();
        return r;
      }
    }));
  }
  std::vector<DensityRecord> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

inline const std::vector<double>& default_fit_samples() {
  static const std::vector<double> s{-0.08, -0.04, -0.02, -0.01, 0.01, 0.02, 0.04, 0.08};
  return s;
}

/// A(ε) = A(0) + c1 ε + c2 ε² + c3 ε³ + c4 ε⁴ with A(0) held at its exact value.
struct EpsFit {
  double a0 = 0.0;
  std::array<double, 4> coefficients{};  ///< c1..c4
  double residual = 0.0;                 ///< largest absolute residual

  double c2() const { return coefficients[1]; }
};

namespace detail {

inline void check_fit_samples(const std::vector<double>& eps) {
  if (eps.size() < 4) throw DomainError("fit needs at least 4 samples");
  std::vector<double> sorted(eps);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (std::fabs(sorted[i] + sorted[sorted.size() - 1 - i]) > 1e-15) {
      throw DomainError("fit samples must be symmetric about 0");
    }
    if (std::fabs(sorted[i]) > 0.1 + 1e-15) throw DomainError("fit samples must satisfy |eps| <= 0.1");
    if (sorted[i] == 0.0) throw DomainError("fit samples must exclude 0");
  }
}

template <class F>
EpsFit fit_polynomial(F&& value, const std::vector<double>& eps) {
  check_fit_samples(eps);
  EpsFit fit;
  fit.a0 = value(0.0);
  const auto n = static_cast<Eigen::Index>(eps.size());
  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = eps[static_cast<std::size_t>(i)];
    A(i, 0) = e;
    A(i, 1) = e * e;
    A(i, 2) = e * e * e;
    A(i, 3) = e * e * e * e;
    y(i) = value(e) - fit.a0;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 4) throw DomainError("eps fit is rank deficient");
  const Eigen::VectorXd c = qr.solve(y);
  for (int i = 0; i < 4; ++i) fit.coefficients[static_cast<std::size_t>(i)] = c(i);
  fit.residual = (A * c - y).cwiseAbs().maxCoeff();
  return fit;
}

}  // namespace detail

/// Fits the ε expansion of the tortoise area of `mode` on the given samples.
inline EpsFit fit_eps2_coefficient(const Family& f, Mode mode,
                                   const std::vector<double>& eps = default_fit_samples()) {
  detail::check_fit_samples(eps);
  std::vector<double> grid{0.0};
  grid.insert(grid.end(), eps.begin(), eps.end());
  const auto recs = scan(f, grid, mode);
  for (const auto& r : recs) {
    if (!r.ok()) throw DomainError("fit sample failed: " + r.error);
  }
  return detail::fit_polynomial(
      [&](double e) {
        const auto it = std::find(grid.begin(), grid.end(), e);
        return recs[static_cast<std::size_t>(it - grid.begin())].area;
      },
      eps);
}

/// The same fit for the uncut body area.
inline EpsFit fit_body_area_coefficient(const Family& f,
                                        const std::vector<double>& eps = default_fit_samples()) {
  return detail::fit_polynomial([&](double e) { return body_area(build_body(f.q, e)); }, eps);
}

/// ε² coefficients of the series pipelines in closed form. Every quantity
/// is a quadratic polynomial in ε, so the even part at ε = ±1 is exact.
struct SeriesEps2 {
  double body = 0.0;    ///< ε² coefficient of the body area
  double cuts1 = 0.0;   ///< ε² coefficient of Σ minimised cap pairs, shift only
  double cuts2 = 0.0;   ///< the same with tilt
  double linear = 0.0;  ///< Σ_k (B d_x + C/2 r_s) at ε = 1

  double net1() const { return body - cuts1; }
  double net2() const { return body - cuts2; }
};

inline SeriesEps2 series_eps2_coefficients(const Family& f,
                                           RadiusLabeling labeling = RadiusLabeling::geometric) {
  const auto& k = series_coefficients();
  SeriesEps2 out;
  const double a_plus = body_area(build_body(f.q, 1.0));
  const double a_minus = body_area(build_body(f.q, -1.0));
  out.body = 0.5 * (a_plus + a_minus) - kPi;
  for (int e = 0; e < 3; ++e) {
    const PairCut cp = cut_parameters(f.q, 1.0, e, f.shift, labeling);
    const PairCut cm = cut_parameters(f.q, -1.0, e, f.shift, labeling);
    out.cuts1 += 0.5 * (series_pair_shift(cp).area + series_pair_shift(cm).area) - 2.0 * k.A0;
    out.cuts2 += 0.5 * (minimize_pair_shift_tilt(cp, Evaluation::series).area +
                        minimize_pair_shift_tilt(cm, Evaluation::series).area) -
                 2.0 * k.A0;
    out.linear += k.B * cp.d_x + 0.5 * k.C * cp.r_s();
  }
  return out;
}

}  // namespace croft
