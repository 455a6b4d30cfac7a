#include <gtest/gtest.h>

#include <cmath>

#include "croft/tortoise.hpp"

using namespace croft;

namespace {

double croft_tortoise_area() { return kPi - 6.0 * croft_constants().cap_area; }

}  // namespace

TEST(Tortoise, ModeNames) {
  for (Mode m : kAllModes) EXPECT_EQ(parse_mode(mode_name(m)), m);
  EXPECT_FALSE(parse_mode("exact3").has_value());
}

TEST(Tortoise, CroftTortoiseAtZero) {
  const auto f = reference_family();
  for (Mode m : kAllModes) {
    const auto r = tortoise_area(f, 0.0, m);
    EXPECT_NEAR(r.area, croft_tortoise_area(), 1e-13) << mode_name(m);
    EXPECT_NEAR(r.density, croft_constants().density, 1e-13) << mode_name(m);
    for (const auto& e : r.edges) {
      EXPECT_NEAR(e.cap_area, 2.0 * croft_constants().cap_area, 1e-13);
      EXPECT_NEAR(e.tilt, 0.0, 1e-6);
    }
  }
}

TEST(Tortoise, ExactStripeMatchesSegmentFormulaOnDisc) {
  const auto body = build_body(reference::q(), 0.0);
  const auto g = edge_geometry(body, 1, {});
  for (auto [s, t] : {std::pair{0.0, 0.0}, {0.01, 0.0}, {-0.004, 0.03}, {0.002, -0.05}}) {
    EXPECT_NEAR(exact_edge_cut(g, Stripe{s, t, 2.0}), pair_area_shift_tilt(PairCut{}, s, t), 1e-14);
  }
}

TEST(Tortoise, ExactStripeCapsEqualPairFormula) {
  // while the chords end on the two tip arcs, both arcs are centred on the
  // tip normal and the clipped caps are exactly the four half caps; the next
  // break lies 0.016 rad beyond the cap, so shifts and tilts stay small
  const auto f = reference_family();
  for (double eps : {0.01, -0.01, 0.005}) {
    const auto body = build_body(f.q, eps);
    const Vec2 off = eps * f.shift;
    for (int k = 0; k < 3; ++k) {
      const PairCut c = cut_parameters(f.q, eps, k, f.shift);
      const auto g = edge_geometry(body, k, off);
      for (auto [s, t] : {std::pair{0.0, 0.0}, {0.001, 0.0}, {-0.001, 0.004}, {0.0005, -0.006}}) {
        const Stripe st{detail::stripe_shift(body, k, off, s, t), t, 2.0};
        EXPECT_NEAR(exact_edge_cut(g, st), pair_area_shift_tilt(c, s, t), 1e-14) << eps << " " << k;
      }
    }
  }
}

TEST(Tortoise, PairFormulaMissesArcsBeyondTheTip) {
  // the next break is 4π/45 from the cut direction, just past the cap; a
  // steep tilt carries the chord onto the neighbouring arc
  const auto f = reference_family();
  const double eps = 0.01;
  const auto body = build_body(f.q, eps);
  const Vec2 off = eps * f.shift;
  const PairCut c = cut_parameters(f.q, eps, 0, f.shift);
  const Stripe st{detail::stripe_shift(body, 0, off, 0.0, 0.04), 0.04, 2.0};
  EXPECT_GT(std::fabs(exact_edge_cut(edge_geometry(body, 0, off), st) - pair_area_shift_tilt(c, 0.0, 0.04)), 1e-9);
}

TEST(Tortoise, MoreFreedomRemovesLess) {
  const auto f = reference_family();
  for (double eps : {0.03, -0.06, 0.1}) {
    const auto one = tortoise_area(f, eps, Mode::exact1);
    const auto two = tortoise_area(f, eps, Mode::exact2);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(two.edges[k].cap_area, one.edges[k].cap_area + 1e-15);
    EXPECT_GE(two.area, one.area - 1e-15);
  }
}

TEST(Tortoise, SeriesAndExactDifferAtHigherOrder) {
  const auto f = reference_family();
  std::vector<double> diff;
  for (double eps : {0.08, 0.04, 0.02}) {
    diff.push_back(std::fabs(tortoise_area(f, eps, Mode::exact2).area - tortoise_area(f, eps, Mode::series2).area));
  }
  EXPECT_GE(diff[0] / diff[1], 7.0);
  EXPECT_GE(diff[1] / diff[2], 7.0);
}

TEST(Tortoise, OptimalStripesNeedExactMode) {
  EXPECT_THROW(optimal_stripes(reference_family(), 0.1, Mode::series2), DomainError);
  const auto s = optimal_stripes(reference_family(), 0.1, Mode::exact1);
  for (const auto& x : s) EXPECT_EQ(x.tilt, 0.0);
}

TEST(Tortoise, ScanKeepsOrderAndRecordsErrors) {
  const std::vector<double> grid{0.1, 1.5, 0.0, -0.05};
  const auto recs = scan(reference_family(), grid, Mode::series2);
  ASSERT_EQ(recs.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(recs[i].epsilon, grid[i]);
  EXPECT_FALSE(recs[1].ok());
  EXPECT_TRUE(std::isnan(recs[1].area));
  EXPECT_TRUE(recs[0].ok() && recs[2].ok() && recs[3].ok());
}

TEST(Tortoise, BodyAreaFitRecoversDeficit) {
  const auto fit = fit_body_area_coefficient(reference_family());
  EXPECT_NEAR(fit.c2(), -reference::kAreaDeficit, 1e-9);
  EXPECT_NEAR(fit.coefficients[0], 0.0, 1e-9);
  EXPECT_LE(fit.residual, 1e-12);
}

TEST(Tortoise, FitSampleValidation) {
  const auto f = reference_family();
  EXPECT_THROW(fit_eps2_coefficient(f, Mode::series2, {0.01, -0.01, 0.02}), DomainError);
  EXPECT_THROW(fit_eps2_coefficient(f, Mode::series2, {0.01, -0.01, 0.02, -0.03}), DomainError);
  EXPECT_THROW(fit_eps2_coefficient(f, Mode::series2, {0.2, -0.2, 0.02, -0.02}), DomainError);
}

TEST(Tortoise, SeriesFitMatchesClosedForm) {
  const auto f = reference_family();
  const auto closed = series_eps2_coefficients(f);
  EXPECT_NEAR(fit_eps2_coefficient(f, Mode::series1).c2(), closed.net1(), 1e-9);
  EXPECT_NEAR(fit_eps2_coefficient(f, Mode::series2).c2(), closed.net2(), 1e-9);
  EXPECT_NEAR(closed.body, -reference::kAreaDeficit, 1e-12);
  EXPECT_NEAR(closed.linear, 0.0, 1e-12);
}

TEST(Tortoise, ExactFitResidualIsSmall) {
  const auto f = reference_family();
  const auto fit = fit_eps2_coefficient(f, Mode::exact2);
  EXPECT_NEAR(fit.a0, croft_tortoise_area(), 1e-13);
  EXPECT_LE(fit.residual, 1e-10 * fit.a0);
  EXPECT_NEAR(fit.c2(), series_eps2_coefficients(f).net2(), 1e-7);
}
