// Prints the arc centres of the bundled family at ε = 1 next to the
// published centre tables, and the body area deficit.

#include <cmath>
#include <cstdio>

#include "croft/body.hpp"
#include "croft/reference_family.hpp"

int main() {
  using namespace croft;
  const StepFunction q = reference::q();
  const ArcBody body = build_body(q, 1.0);
  std::printf("%3s %20s %20s %20s %20s\n", "i", "centre x", "table x", "centre y", "table y");
  for (std::size_t i = 0; i < body.arcs.size(); ++i) {
    const Vec2 c = body.arcs[i].center;
    std::printf("%3zu %20.15f %20.15f %20.15f %20.15f\n", i, c.x, reference::kCenterX[i], c.y,
                reference::kCenterY[i]);
  }
  std::printf("closure residual %.3e\n", body.closure_residual);
  std::printf("area - pi at eps = 1: %.15f (table %.15f)\n", body_area(body) - kPi, -reference::kAreaDeficit);
  return 0;
}
