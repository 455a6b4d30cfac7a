#include <gtest/gtest.h>

#include <cmath>

#include "croft/arc_region.hpp"
#include "croft/reference_family.hpp"
#include "croft/segments.hpp"

using namespace croft;

namespace {

CurvedRegion unit_disc(Vec2 centre = {}) {
  return {{Arc{centre, 1.0, 0.0, kPi}, Arc{centre, 1.0, kPi, kTwoPi}}};
}

double segment(double R, double h) {  // disc part beyond distance h from the centre
  return R * R * std::acos(h / R) - h * std::sqrt(R * R - h * h);
}

}  // namespace

TEST(ArcRegion, DiscArea) { EXPECT_NEAR(area(unit_disc()), kPi, 1e-15); }

TEST(ArcRegion, ClipMatchesCircularSegment) {
  for (double h : {-0.9, -0.3, 0.0, 0.5, 0.99}) {
    const auto kept = clip(unit_disc(), HalfPlane{{1.0, 0.0}, h});
    EXPECT_NEAR(area(kept), kPi - segment(1.0, h), 1e-14) << h;
    const auto cap = clip(unit_disc(), HalfPlane{{-1.0, 0.0}, -h});
    EXPECT_NEAR(area(cap), segment(1.0, h), 1e-14) << h;
  }
}

TEST(ArcRegion, ClipAtAnAngleAndNonUnitNormal) {
  const Vec2 n = 3.0 * unit(2.2);
  const auto kept = clip(unit_disc({0.4, -0.2}), HalfPlane{n, 3.0 * (0.3 + dot(unit(2.2), Vec2{0.4, -0.2}))});
  EXPECT_NEAR(area(kept), kPi - segment(1.0, 0.3), 1e-14);
}

TEST(ArcRegion, ClipKeepsOrDropsWholeRegion) {
  EXPECT_NEAR(area(clip(unit_disc(), HalfPlane{{1, 0}, 1.5})), kPi, 1e-15);
  EXPECT_TRUE(clip(unit_disc(), HalfPlane{{1, 0}, -1.5}).empty());
  EXPECT_EQ(area(CurvedRegion{}), 0.0);
}

TEST(ArcRegion, TwoClipsGiveALens) {
  // strip |x| ≤ 0.5 through the unit disc
  const auto strip = clip(unit_disc(), {HalfPlane{{1, 0}, 0.5}, HalfPlane{{-1, 0}, 0.5}});
  EXPECT_NEAR(area(strip), kPi - 2.0 * segment(1.0, 0.5), 1e-14);
  EXPECT_EQ(strip.pieces.size(), 4u);
}

TEST(ArcRegion, AreaKeepsPrecisionFarFromOrigin) {
  // positions carry ~1e-10 rounding at this magnitude; a global origin would lose ~1e-4
  const Vec2 far{1e6, -3e6};
  const auto cap = clip(unit_disc(far), HalfPlane{{-1, 0}, -(far.x + 0.9)});
  EXPECT_NEAR(area(cap), segment(1.0, 0.9), 1e-9);
}

TEST(ArcRegion, ReferenceBodyCapMatchesClosedForm) {
  // ε = 0: the body is the unit disc and the cap is Croft's
  const auto body = build_body(reference::q(), 0.0);
  const double c = std::cos(croft_constants().half_angle);
  EXPECT_NEAR(area(clip(region_of(body), HalfPlane{{-1, 0}, -c})), croft_constants().cap_area, 1e-16);
}

TEST(ArcRegion, PoseIsRigid) {
  const auto body = build_body(reference::q(), 0.6);
  const Pose pose{1.1, {2.0, -4.0}, {0.1, 0.2}};
  const auto placed = region_of(body, pose);
  EXPECT_NEAR(area(placed), body_area(body), 1e-12);
  const Vec2 p = body.arcs[5].point(body.arcs[5].begin + 0.01);
  const auto& a = std::get<Arc>(placed.pieces[5]);
  EXPECT_NEAR(norm(a.point(a.begin + 0.01) - pose.apply(p)), 0.0, 1e-14);
}

TEST(ArcRegion, ClipOfBodyAgreesWithShoelace) {
  const auto body = build_body(reference::q(), 0.9);
  const HalfPlane h{unit(0.4), 0.3};
  const auto kept = clip(region_of(body), h);
  const auto pts = sample_boundary(kept, 200000);
  double shoelace = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) shoelace += cross(pts[i], pts[(i + 1) % pts.size()]);
  EXPECT_NEAR(area(kept), 0.5 * shoelace, 1e-9);
  for (const Vec2& p : pts) ASSERT_LE(h.excess(p), 1e-12);
}

TEST(ArcRegion, SupportContainsDistance) {
  const auto strip = clip(unit_disc(), {HalfPlane{{1, 0}, 0.5}});
  EXPECT_NEAR(support(strip, {1, 0}), 0.5, 1e-15);
  EXPECT_NEAR(support(strip, {0, 1}), 1.0, 1e-15);
  EXPECT_NEAR(support(strip, {-1, 0}), 1.0, 1e-15);
  EXPECT_TRUE(contains(strip, {0.0, 0.0}));
  EXPECT_TRUE(contains(strip, {-0.9, 0.1}));   // inside a circular segment, outside the chord polygon
  EXPECT_FALSE(contains(strip, {0.6, 0.0}));
  EXPECT_FALSE(contains(strip, {-0.8, 0.8}));
  EXPECT_EQ(distance(strip, {0.2, 0.3}), 0.0);
  EXPECT_NEAR(distance(strip, {2.5, 0.0}), 2.0, 1e-15);
  EXPECT_NEAR(distance(strip, {-3.0, 0.0}), 2.0, 1e-15);
  EXPECT_NEAR(farthest(strip, {0.5, 0.0}), 1.5, 1e-15);
}

TEST(ArcRegion, ZeroRadiusArcIsACorner) {
  const auto body = build_body(reference::q(), 1.0);
  const auto r = region_of(body);
  EXPECT_NEAR(area(r), body_area(body), 1e-14);
  const auto kept = clip(r, HalfPlane{{0.3, 1.0}, 0.2});
  EXPECT_GT(area(kept), 0.0);
  EXPECT_LT(area(kept), area(r));
}
