#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace wienerkit {

enum class TrendClass { BOUNDED, GROWING, INCONCLUSIVE };

std::string_view to_string(TrendClass c) noexcept;

struct TrendPoint {
  std::int64_t n;
  double value;
};

struct TrendThresholds {
  double bound_tol = 0.05;
  double slope_tol = 0.02;
};

// Classification looks at the top half of the ladder (its last ceil(L/2)
// points). GROWING: strictly increasing there with slope > slope_tol.
// Otherwise BOUNDED when max - median <= bound_tol * median. Else INCONCLUSIVE.
struct TrendReport {
  std::vector<TrendPoint> ladder;
  TrendClass classification = TrendClass::INCONCLUSIVE;
  double slope = 0.0;  // least-squares slope of value against ln n, top half
};

// Ladders need strictly increasing n >= 1 and finite values; shorter than 2
// points is always INCONCLUSIVE.
TrendReport classify_trend(std::vector<TrendPoint> ladder, const TrendThresholds& th = {});

// Points with index >= top_half_begin(L) form the top half.
std::size_t top_half_begin(std::size_t size) noexcept;

}  // namespace wienerkit
