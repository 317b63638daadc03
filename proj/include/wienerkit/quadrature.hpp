#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace wienerkit {

enum class TailMode { analytic_bound, extrapolate };

// Tolerances and truncation shared by every circle and line integral.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 40;
  // Truncation radius for integrals over ℝ.
  double line_radius = 256.0 * std::numbers::pi;
  TailMode tail_mode = TailMode::extrapolate;

  // Throws InputError unless abs_tol, rel_tol ∈ (0,1), max_depth >= 1, R >= 2π.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  // Contribution of each interval between consecutive breakpoints.
  std::vector<double> interval_values;
};

struct ComplexQuadResult {
  std::complex<double> value{};
  double error = 0.0;
  std::size_t evaluations = 0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

// Globally adaptive 15-point Gauss-Kronrod over the partition given by
// `breaks` (sorted). Throws NumericError if the tolerance is not reached
// within spec.max_depth bisections of any initial interval.
QuadResult integrate(const RealFn& f, std::span<const double> breaks, const QuadratureSpec& spec);
ComplexQuadResult integrate(const ComplexFn& f, std::span<const double> breaks,
                            const QuadratureSpec& spec);

// ∫ |g|. Where g is real up to a constant phase on a panel, the panel is
// split at the sign changes of that real part, so zeros of g do not show up
// as kinks inside a Gauss-Kronrod panel.
QuadResult integrate_abs(const ComplexFn& g, std::span<const double> breaks,
                         const QuadratureSpec& spec);

// integrate_abs with the first-pass samples supplied by the caller:
// initial[15*i + j] = g at node j (ascending) of interval i.
QuadResult integrate_abs_presampled(const ComplexFn& g, std::span<const double> breaks,
                                    std::span<const std::complex<double>> initial, const QuadratureSpec& spec);

// The 15 Gauss-Kronrod nodes of [a, b] in ascending order.
void gk15_nodes(double a, double b, std::span<double, 15> out);

// n+1 equally spaced points from a to b.
std::vector<double> uniform_breaks(double a, double b, std::size_t n);

}  // namespace wienerkit
