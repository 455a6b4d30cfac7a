#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "croft/error.hpp"

namespace croft {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// An angle given exactly as (num/den)·π. Kept alongside its float value so
/// that break pairing under φ ↦ φ + π is an exact rational comparison.
class PiMultiple {
 public:
  constexpr PiMultiple() = default;
  PiMultiple(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ValidationError("angle denominator is zero");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double radians() const { return static_cast<double>(num_) * kPi / static_cast<double>(den_); }

  /// Adds π and reduces into [0, 2)·π.
  PiMultiple opposite() const {
    std::int64_t n = num_ + den_;
    const std::int64_t period = 2 * den_;
    n %= period;
    if (n < 0) n += period;
    return {n, den_};
  }

  friend bool operator==(const PiMultiple& a, const PiMultiple& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const PiMultiple& a, const PiMultiple& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Which neighbouring interval to use when an angle falls on a break.
enum class Side { left, right };

/// Break angles closer than this to an evaluation angle are treated as hits.
inline constexpr double kBreakSnap = 1e-12;

/// Antisymmetry tolerance for q(φ + π) = −q(φ).
inline constexpr double kAntisymmetryTolerance = 1e-12;

/// Piecewise-constant 2π-periodic function with q(φ + π) = −q(φ).
///
/// Intervals are half-open, [break_i, break_{i+1}). Instances are only
/// produced by make_step_function and are immutable afterwards.
class StepFunction {
 public:
  std::span<const PiMultiple> breaks() const { return breaks_; }
  std::span<const double> values() const { return values_; }
  std::size_t intervals() const { return values_.size(); }
  double break_radians(std::size_t i) const { return radians_[i]; }

  /// Index of the interval selected by `phi` (reduced mod 2π) and `side`.
  std::size_t interval_at(double phi, Side side) const {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) p += kTwoPi;
    const std::size_t n = values_.size();
    // p within snap of 2π is the break at 0.
    if (kTwoPi - p <= kBreakSnap) return side == Side::right ? 0 : n - 1;
    auto it = std::upper_bound(radians_.begin(), radians_.end(), p);
    std::size_t k = static_cast<std::size_t>(it - radians_.begin()) - 1;
    if (k >= n) k = n - 1;
    if (p - radians_[k] <= kBreakSnap) return side == Side::right ? k : (k + n - 1) % n;
    if (radians_[k + 1] - p <= kBreakSnap) return side == Side::right ? (k + 1) % n : k;
    return k;
  }

  /// Interval selected by an exact angle.
  std::size_t interval_at(const PiMultiple& angle, Side side) const {
    PiMultiple a = angle.opposite().opposite();
    const std::size_t n = values_.size();
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), a);
    std::size_t k = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    if (k >= n) k = n - 1;
    if (breaks_[k] == a && side == Side::left) return (k + n - 1) % n;
    return k;
  }

  /// True when some cut direction jπ/3 has a foreign break closer than the
  /// Croft half angle, i.e. a cap would span more than two intervals.
  bool cut_window_warning() const { return cut_window_warning_; }

  /// Cut directions (j in 0..5) whose ±half_angle window contains a break
  /// other than jπ/3 itself.
  std::vector<int> narrow_cut_windows(double half_angle) const {
    std::vector<int> out;
    for (int j = 0; j < 6; ++j) {
      const double dir = j * kPi / 3.0;
      for (std::size_t i = 0; i + 1 < radians_.size(); ++i) {
        double gap = std::fabs(radians_[i] - dir);
        gap = std::min(gap, kTwoPi - gap);
        if (gap > kBreakSnap && gap < half_angle) {
          out.push_back(j);
          break;
        }
      }
    }
    return out;
  }

 private:
  friend StepFunction make_step_function(std::vector<PiMultiple>, std::vector<double>);

  std::vector<PiMultiple> breaks_;
  std::vector<double> radians_;
  std::vector<double> values_;
  bool cut_window_warning_ = false;
};

/// Half angle of Croft's cap, as tabulated; used only for the cut-window flag.
inline constexpr double kTabulatedCroftHalfAngle = 0.263315538964831;

/// Validates and builds a step function. Throws ValidationError for
/// non-monotone breaks, count mismatches, unpaired breaks, or antisymmetry
/// violations beyond kAntisymmetryTolerance.
inline StepFunction make_step_function(std::vector<PiMultiple> breaks, std::vector<double> values) {
  if (breaks.size() < 2) throw ValidationError("need at least two breaks");
  if (!(breaks.front() == PiMultiple(0, 1))) throw ValidationError("first break must be 0");
  if (!(breaks.back() == PiMultiple(2, 1))) throw ValidationError("last break must be 2π");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) {
      std::ostringstream msg;
      msg << "breaks not strictly increasing at index " << i + 1;
      throw ValidationError(msg.str());
    }
  }
  if (values.size() != breaks.size() - 1) {
    std::ostringstream msg;
    msg << "expected " << breaks.size() - 1 << " values, got " << values.size();
    throw ValidationError(msg.str());
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("non-finite value");
  }

  StepFunction f;
  f.breaks_ = std::move(breaks);
  f.values_ = std::move(values);
  f.radians_.reserve(f.breaks_.size());
  for (const auto& b : f.breaks_) f.radians_.push_back(b.radians());

  const std::size_t n = f.values_.size();
  std::vector<std::size_t> partner(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PiMultiple opp = f.breaks_[i].opposite();
    auto it = std::lower_bound(f.breaks_.begin(), f.breaks_.end() - 1, opp);
    if (it == f.breaks_.end() - 1 || !(*it == opp)) {
      std::ostringstream msg;
      msg << "break " << f.breaks_[i].num() << "/" << f.breaks_[i].den()
          << "·π has no partner at +π";
      throw ValidationError(msg.str());
    }
    partner[i] = static_cast<std::size_t>(it - f.breaks_.begin());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double a = f.values_[i];
    const double b = f.values_[partner[i]];
    if (std::fabs(a + b) > kAntisymmetryTolerance) {
      std::ostringstream msg;
      msg.precision(15);
      msg << "antisymmetry violated on interval " << i << ": " << a << " vs " << b;
      throw ValidationError(msg.str());
    }
  }
  f.cut_window_warning_ = !f.narrow_cut_windows(kTabulatedCroftHalfAngle).empty();
  return f;
}

inline double eval_step(const StepFunction& f, double phi, Side side) {
  return f.values()[f.interval_at(phi, side)];
}

inline double eval_step(const StepFunction& f, const PiMultiple& phi, Side side) {
  return f.values()[f.interval_at(phi, side)];
}

/// The constant-zero function on {0, π, 2π}: the disc case.
inline StepFunction zero_step_function() {
  return make_step_function({{0, 1}, {1, 1}, {2, 1}}, {0.0, 0.0});
}

}  // namespace croft
