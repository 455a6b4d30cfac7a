#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "croft/step_function.hpp"
#include "croft/vec2.hpp"

/// The published 24-interval constant-diameter family, verbatim.
///
/// q values, centre offsets and the pre-rotation shift are per unit ε.
namespace croft::reference {

/// Breaks as multiples of π.
inline constexpr std::array<std::pair<std::int64_t, std::int64_t>, 25> kBreaks{{
    {0, 1},   {4, 45},  {1, 6},  {11, 45}, {1, 3},  {19, 45}, {1, 2},
    {26, 45}, {2, 3},   {34, 45}, {5, 6},  {41, 45}, {1, 1},  {49, 45},
    {7, 6},   {56, 45}, {4, 3},  {64, 45}, {3, 2},  {71, 45}, {5, 3},
    {79, 45}, {11, 6},  {86, 45}, {2, 1},
}};

inline constexpr std::array<double, 24> kQ{
    -0.977901957024321, +0.724209871347166, -0.733569955967565, +1.000000000000000,
    -0.922743876968233, +0.488920844394468, -0.126049416295258, +0.044264839209546,
    +0.004202409557006, -0.101935908145429, +0.472228160625608, -0.899297801582359,
    +0.977901957024321, -0.724209871347166, +0.733569955967565, -1.000000000000000,
    +0.922743876968233, -0.488920844394468, +0.126049416295258, -0.044264839209546,
    -0.004202409557006, +0.101935908145429, -0.472228160625608, +0.899297801582359,
};

/// Piecewise-constant part of x(φ), i.e. x-coordinates of the arc centres.
inline constexpr std::array<double, 24> kCenterX{
    -0.977901957024321, +0.658272945792727, -0.604201417786322, +0.642824448212470,
    -0.318547490271646, +0.022965115071595, +0.022965115071595, -0.018237632467773,
    +0.001793582358496, +0.078143098622847, -0.419097570873107, +0.899297801582358,
    -0.977901957024321, +0.658272945792727, -0.604201417786322, +0.642824448212470,
    -0.318547490271646, +0.022965115071595, +0.022965115071595, -0.018237632467773,
    +0.001793582358496, +0.078143098622847, -0.419097570873107, +0.899297801582358,
};

/// Piecewise-constant part of y(φ).
inline constexpr std::array<double, 24> kCenterY{
    +0.000000000000000, +0.469165603677154, -0.259724309980211, +0.944514570708893,
    -0.720630471716577, +0.649101774356247, +0.034131513666520, +0.199386707906710,
    +0.164691626090284, +0.090961755271850, +0.378043789657369, +0.000000000000000,
    +0.000000000000000, +0.469165603677154, -0.259724309980211, +0.944514570708893,
    -0.720630471716577, +0.649101774356247, +0.034131513666520, +0.199386707906710,
    +0.164691626090284, +0.090961755271850, +0.378043789657369, +0.000000000000000,
};

/// Shift applied to each copy before it is rotated onto its lattice site.
inline constexpr Vec2 kShift{-0.001383301426275, -0.158574235421304};

inline constexpr double kLatticeConstant = 3.93106461489781;

/// Body area is π − kAreaDeficit·ε².
inline constexpr double kAreaDeficit = 0.010474705472633;

inline StepFunction q() {
  std::vector<PiMultiple> breaks;
  breaks.reserve(kBreaks.size());
  for (auto [n, d] : kBreaks) breaks.emplace_back(n, d);
  return make_step_function(std::move(breaks), std::vector<double>(kQ.begin(), kQ.end()));
}

}  // namespace croft::reference
