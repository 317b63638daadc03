#include "wienerkit/trend.hpp"

#include <algorithm>
#include <cmath>

#include "wienerkit/error.hpp"

namespace wienerkit {

std::string_view to_string(TrendClass c) noexcept {
  switch (c) {
    case TrendClass::BOUNDED: return "BOUNDED";
    case TrendClass::GROWING: return "GROWING";
    case TrendClass::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::size_t top_half_begin(std::size_t size) noexcept { return size / 2; }

TrendReport classify_trend(std::vector<TrendPoint> ladder, const TrendThresholds& th) {
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i].n < 1) throw InputError("trend ladder entries must be >= 1");
    if (i > 0 && ladder[i].n <= ladder[i - 1].n) throw InputError("trend ladder must be strictly increasing");
    if (!std::isfinite(ladder[i].value)) throw InputError("trend value is not finite");
  }
  TrendReport r;
  r.ladder = std::move(ladder);
  const std::size_t L = r.ladder.size();
  if (L < 2) return r;

  const std::size_t b = top_half_begin(L);
  const std::size_t m = L - b;
  std::vector<double> top;
  for (std::size_t i = b; i < L; ++i) top.push_back(r.ladder[i].value);

  if (m >= 2) {
    double sx = 0, sy = 0;
    for (std::size_t i = b; i < L; ++i) {
      sx += std::log(static_cast<double>(r.ladder[i].n));
      sy += r.ladder[i].value;
    }
    const double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
    double sxx = 0, sxy = 0;
    for (std::size_t i = b; i < L; ++i) {
      const double dx = std::log(static_cast<double>(r.ladder[i].n)) - mx;
      sxx += dx * dx;
      sxy += dx * (r.ladder[i].value - my);
    }
    r.slope = sxy / sxx;
  }

  bool increasing = m >= 2;
  for (std::size_t i = 1; i < top.size(); ++i) increasing = increasing && top[i] > top[i - 1];
  if (increasing && r.slope > th.slope_tol) {
    r.classification = TrendClass::GROWING;
    return r;
  }

  std::vector<double> sorted = top;
  std::sort(sorted.begin(), sorted.end());
  const double median = (m % 2 == 1) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  if (sorted.back() - median <= th.bound_tol * median) r.classification = TrendClass::BOUNDED;
  return r;
}

}  // namespace wienerkit
