// Tortoise density of the bundled family for a few ε in every mode.

#include <cstdio>

#include "croft/tortoise.hpp"

int main() {
  using namespace croft;
  const Family f = reference_family();
  const std::vector<double> grid{-0.1, -0.05, 0.0, 0.05, 0.1};
  std::printf("%-8s %8s %20s %20s\n", "mode", "eps", "area", "density");
  for (Mode m : kAllModes) {
    for (const auto& r : scan(f, grid, m)) {
      std::printf("%-8s %8.3f %20.15f %20.15f\n", std::string(mode_name(m)).c_str(), r.epsilon, r.area, r.density);
    }
  }
  const auto fit = fit_eps2_coefficient(f, Mode::exact2);
  std::printf("exact2: A_T = %.15f %+.12f eps^2 + ...  (residual %.2e)\n", fit.a0, fit.c2(), fit.residual);
  return 0;
}
