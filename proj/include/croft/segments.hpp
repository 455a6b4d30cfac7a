#pragma once

#include <array>
#include <cmath>
#include <sstream>

#include "croft/body.hpp"
#include "croft/error.hpp"
#include "croft/optim.hpp"

namespace croft {

/// Second-order expansion constants of the cap area around Croft's cap.
///
/// A1(d, r) ≈ A0 + B d + C r + D/2 d² + E d r + F/2 r², and the tilted
/// half-cap sum adds H δ + J d δ + K r δ + L/2 δ².
struct SeriesCoefficients {
  double A0 = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  double E = 0.0;
  double F = 0.0;
  double H = 0.0;
  double J = 0.0;
  double K = 0.0;
  double L = 0.0;
};

inline SeriesCoefficients series_coefficients_at(double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  SeriesCoefficients k;
  k.A0 = phi - c * s;
  k.B = 2.0 * s;
  k.C = 2.0 * (phi - s);
  k.D = 2.0 * c / s;
  k.E = 2.0 * (1.0 - c) / s;
  k.F = 2.0 * (phi - 2.0 * (1.0 - c) / s);
  k.H = -s * s;
  k.J = -2.0 * c;
  k.K = 2.0 * (c - 1.0);
  k.L = 2.0 * c * s;
  return k;
}

inline const SeriesCoefficients& series_coefficients() {
  static const SeriesCoefficients k = series_coefficients_at(croft_constants().half_angle);
  return k;
}

/// Area of the cap of a disc of radius R = 1 + r cut at depth
/// D = w_C + d from its rightmost point.
inline double segment_area_exact(double d, double r) {
  const double R = 1.0 + r;
  const double depth = croft_constants().cap_width + d;
  if (!(R > 0.0)) throw DomainError("cap radius must be positive");
  const double h = (R - depth) / R;
  if (h < -1.0 || h > 1.0) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "cap depth " << depth << " outside [0, 2R] for R = " << R;
    throw DomainError(msg.str());
  }
  const double phi = std::acos(h);
  return R * R * phi - (R - depth) * R * std::sin(phi);
}

inline double segment_area_series(double d, double r) {
  const auto& k = series_coefficients();
  return k.A0 + k.B * d + k.C * r + 0.5 * k.D * d * d + k.E * d * r + 0.5 * k.F * r * r;
}

/// Twice the area of the upper half cap cut off by the line
/// x = (R − D) + y·tan δ. At δ = 0 this is the full symmetric cap; a lower
/// half cap is the same expression at −δ.
inline double segment_area_exact_tilted(double d, double r, double tilt) {
  const double R = 1.0 + r;
  const double depth = croft_constants().cap_width + d;
  if (!(R > 0.0)) throw DomainError("cap radius must be positive");
  if (!(std::fabs(tilt) < kPi / 2.0)) throw DomainError("tilt must lie in (-π/2, π/2)");
  const double h = (R - depth) / R * std::cos(tilt);
  if (h < -1.0 || h > 1.0) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "tilted cap: arccos argument " << h << " outside [-1, 1]";
    throw DomainError(msg.str());
  }
  const double phi = std::acos(h) - tilt;
  return R * R * phi - (R - depth) * R * std::sin(phi);
}

inline double segment_area_series_tilted(double d, double r, double tilt) {
  const auto& k = series_coefficients();
  return segment_area_series(d, r) + k.H * tilt + k.J * d * tilt + k.K * r * tilt +
         0.5 * k.L * tilt * tilt;
}

/// Geometry of two opposite caps across one lattice edge.
///
/// d_x, d_y: summed horizontal / vertical displacements of the two tips;
/// r_*: radius perturbations of the (l)eft/(r)ight body on the (u)pper/(l)ower
/// side of the edge.
struct PairCut {
  double d_x = 0.0;
  double d_y = 0.0;
  double r_lu = 0.0;
  double r_ll = 0.0;
  double r_ru = 0.0;
  double r_rl = 0.0;

  double r_s() const { return r_lu + r_ll + r_ru + r_rl; }
  double r_s2() const { return r_lu * r_lu + r_ll * r_ll + r_ru * r_ru + r_rl * r_rl; }
  double r_l() const { return r_lu + r_ll - r_ru - r_rl; }
  double r_c() const { return r_lu + r_rl - r_ll - r_ru; }

  PairCut scaled(double f) const { return {f * d_x, f * d_y, f * r_lu, f * r_ll, f * r_ru, f * r_rl}; }
  double max_abs() const {
    return std::max({std::fabs(d_x), std::fabs(d_y), std::fabs(r_lu), std::fabs(r_ll),
                     std::fabs(r_ru), std::fabs(r_rl)});
  }
};

enum class Evaluation { exact, series };

/// How the exact tilted width d̄ₓ = dₓ + 2(1/cos δ − 1) − tan δ·d_y enters the
/// series: only in the B·d̄ term (truncated to total degree 2), or everywhere.
enum class Bookkeeping { truncated, full };

struct ShiftMinimum {
  double shift = 0.0;
  double area = 0.0;
};

struct ShiftTiltMinimum {
  double shift = 0.0;
  double tilt = 0.0;
  double area = 0.0;
};

/// Exact two-cap area with independent left/right depth offsets and shift s:
/// the left caps have depth offset d_left + s, the right ones d_right − s.
inline double pair_area_split(double d_left, double d_right, const PairCut& c, double s) {
  return 0.5 * (segment_area_exact(d_left + s, c.r_lu) + segment_area_exact(d_right - s, c.r_ru) +
                segment_area_exact(d_left + s, c.r_ll) + segment_area_exact(d_right - s, c.r_rl));
}

inline double pair_area_shift(const PairCut& c, double s) {
  return pair_area_split(0.5 * c.d_x, 0.5 * c.d_x, c, s);
}

/// Exact tilted-stripe width correction.
inline double tilted_width(const PairCut& c, double tilt) {
  return c.d_x + 2.0 * (1.0 / std::cos(tilt) - 1.0) - std::tan(tilt) * c.d_y;
}

/// Exact two-cap area for a stripe shifted by s and tilted by δ.
inline double pair_area_shift_tilt(const PairCut& c, double s, double tilt) {
  const double half = 0.5 * tilted_width(c, tilt);
  return 0.5 * (segment_area_exact_tilted(half + s, c.r_lu, tilt) +
                segment_area_exact_tilted(half - s, c.r_ru, -tilt) +
                segment_area_exact_tilted(half + s, c.r_ll, -tilt) +
                segment_area_exact_tilted(half - s, c.r_rl, tilt));
}

/// Closed-form minimum over s of the series two-cap area.
inline ShiftMinimum series_pair_shift(const PairCut& c) {
  const auto& k = series_coefficients();
  const double d = c.d_x;
  const double rl = c.r_l();
  ShiftMinimum m;
  m.shift = -k.E * rl / (4.0 * k.D);
  m.area = 2.0 * k.A0 + k.B * d + 0.5 * k.C * c.r_s() + 0.25 * k.D * d * d + 0.25 * k.E * d * c.r_s() -
           k.E * k.E / (16.0 * k.D) * rl * rl + 0.25 * k.F * c.r_s2();
  return m;
}

/// Weights (a, b) with (K r_c − 2B d_y)²/(16(L+B)) = (a r_c − b d_y)², a, b > 0.
inline std::array<double, 2> tilt_correction_weights() {
  const auto& k = series_coefficients();
  const double root = 4.0 * std::sqrt(k.L + k.B);
  return {std::fabs(k.K) / root, 2.0 * k.B / root};
}

inline double tilt_correction(const PairCut& c) {
  const auto& k = series_coefficients();
  const double t = k.K * c.r_c() - 2.0 * k.B * c.d_y;
  return t * t / (16.0 * (k.L + k.B));
}

namespace detail {

/// Series two-cap area with the second-order d̄ substituted in every term.
inline double series_pair_full(const PairCut& c, double s, double tilt) {
  const double dbar = c.d_x + tilt * tilt - tilt * c.d_y;
  const double half = 0.5 * dbar;
  return 0.5 * (segment_area_series_tilted(half + s, c.r_lu, tilt) +
                segment_area_series_tilted(half - s, c.r_ru, -tilt) +
                segment_area_series_tilted(half + s, c.r_ll, -tilt) +
                segment_area_series_tilted(half - s, c.r_rl, tilt));
}

inline double shift_bracket(const PairCut& c) {
  // both caps must keep a non-negative depth over the searched range
  const double w = croft_constants().cap_width;
  return 0.9 * (w + 0.5 * c.d_x);
}

}  // namespace detail

/// Minimum over the horizontal stripe shift s of the two-cap area.
inline ShiftMinimum minimize_pair_shift(const PairCut& c, Evaluation mode) {
  if (mode == Evaluation::series) return series_pair_shift(c);
  const double span = detail::shift_bracket(c);
  if (!(span > 0.0)) throw DomainError("pair cut outside the small-perturbation regime");
  const auto m = optim::minimize_scalar([&](double s) { return pair_area_shift(c, s); }, -span, span);
  return {m.x, m.value};
}

/// Coefficients of the local quadratic a s² + b s δ + c δ² of the exact
/// objective around (s, δ), by central differences with step h.
struct LocalQuadratic {
  double ss = 0.0;
  double sd = 0.0;
  double dd = 0.0;
};

inline LocalQuadratic local_quadratic(const PairCut& c, double s, double tilt, double h = 1e-4) {
  auto f = [&](double a, double b) { return pair_area_shift_tilt(c, s + a, tilt + b); };
  const double f0 = f(0, 0);
  LocalQuadratic q;
  q.ss = 0.5 * (f(h, 0) - 2.0 * f0 + f(-h, 0)) / (h * h);
  q.dd = 0.5 * (f(0, h) - 2.0 * f0 + f(0, -h)) / (h * h);
  q.sd = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
  return q;
}

/// Minimum over stripe shift s and tilt δ.
///
/// Series mode: closed form A₂ − (K r_c − 2B d_y)²/(16(L + B)) with
/// s = −E r_l/(4D) and δ = −(K r_c − 2B d_y)/(4(L + B)); with
/// Bookkeeping::full the series objective is minimised numerically instead.
/// Exact mode: Nelder–Mead on the exact objective seeded at the series
/// minimiser, followed by a positive-definiteness check of the local quadratic.
inline ShiftTiltMinimum minimize_pair_shift_tilt(const PairCut& c, Evaluation mode,
                                                 Bookkeeping bookkeeping = Bookkeeping::truncated) {
  const auto& k = series_coefficients();
  ShiftTiltMinimum seed;
  {
    const auto one = series_pair_shift(c);
    const double t = k.K * c.r_c() - 2.0 * k.B * c.d_y;
    seed.shift = one.shift;
    seed.tilt = -t / (4.0 * (k.L + k.B));
    seed.area = one.area - tilt_correction(c);
  }
  if (mode == Evaluation::series && bookkeeping == Bookkeeping::truncated) return seed;

  auto objective = [&](const std::array<double, 2>& v) {
    if (mode == Evaluation::series) return detail::series_pair_full(c, v[0], v[1]);
    return pair_area_shift_tilt(c, v[0], v[1]);
  };
  const auto m = optim::nelder_mead<2>(objective, {seed.shift, seed.tilt});
  if (mode == Evaluation::exact) {
    const auto q = local_quadratic(c, m.x[0], m.x[1]);
    if (!(q.ss > 0.0 && q.dd > 0.0 && q.ss * q.dd - 0.25 * q.sd * q.sd > 0.0)) {
      throw DomainError("exact (s, δ) objective is not locally positive definite");
    }
  }
  return {m.x[0], m.x[1], m.value};
}

}  // namespace croft
