#pragma once

#include <cstdint>
#include <vector>

#include "wienerkit/quadrature.hpp"
#include "wienerkit/seqcore.hpp"

namespace wienerkit {

// S(y) = Σ_k c_k e^{iky}, evaluated by Horner's rule in e^{iy}.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(CoefficientSequence c) : c_(std::move(c)) {}

  complex operator()(double y) const;
  const CoefficientSequence& coefficients() const noexcept { return c_; }
  // max |k| over the stored block (0 for the zero polynomial).
  std::int64_t degree() const noexcept;

 private:
  CoefficientSequence c_;
};

complex trig_poly_eval(const CoefficientSequence& c, double y);

// c_k (1 - |k|/n)_+.
CoefficientSequence fejer_weights(const CoefficientSequence& c, std::int64_t n);

// σ_n(y) = Σ_k c_k (1 - |k|/n)_+ e^{iky}; n >= 1.
complex fejer_mean(const CoefficientSequence& c, std::int64_t n, double y);

// K(x) = 4 (sin(x/2)/x)², the transform of the unit hat on [-1, 1]; K(0) = 1.
double hat_kernel(double x);

// ∫_ℝ ℓ_c(t) e^{ixt} dt = K(x) Σ_k c_k e^{ikx}.
complex zigzag_ft(const CoefficientSequence& c, double x);

struct FoldSum {
  double value;
  double tail_bound;  // majorant of the omitted terms |k| > K
};

// Σ_{|k|<=K} (sin((y+2kπ)/2)/(y+2kπ))², which tends to 1/4 for every y.
FoldSum fold_sum(double y, std::int64_t K);

// (1/2π) ∫_{-π}^{π} |g(y)| dy. `panels` is the number of initial equal panels.
double l1_circle(const ComplexFn& g, const QuadratureSpec& spec, std::size_t panels = 16);
double l1_circle(const TrigPolynomial& p, const QuadratureSpec& spec);

struct LineIntegral {
  double value = 0.0;          // best estimate of ∫_ℝ |g|
  double truncated = 0.0;      // ∫_{-R}^{R} |g|
  double tail_estimate = 0.0;  // value - truncated
  double tail_bound = 0.0;     // 2C/R from |g(y)| <= C/y²
  double error = 0.0;
};

// ∫_ℝ |g(y)| dy for |g(y)| <= decay_constant / y² beyond the truncation radius.
// The tail is handled per spec.tail_mode: analytic_bound reports the midpoint
// of the rigorous bracket [T, T + 2C/R]; extrapolate eliminates the 1/R and
// 1/R² terms of the tail from the truncated integrals at R/4, R/2 and R.
// `panel_width` bounds the width of the initial panels.
LineIntegral l1_line(const ComplexFn& g, const QuadratureSpec& spec, double decay_constant,
                     double panel_width = 1.0);

// hc_n = Σ_k c_k / (n + 1/2 - k).
complex dht(const CoefficientSequence& c, std::int64_t n);

// hc_n for n = lo .. hi.
std::vector<complex> dht_window(const CoefficientSequence& c, std::int64_t lo, std::int64_t hi);

// Hilbert transform of D(t) = d_k on [k, k+1):
// (1/π) Σ_k d_k ln|(x-k)/(x-k-1)|. Throws DomainError at a jump of D.
complex hilbert_step(const CoefficientSequence& d, double x);

// ∫_δ^M (f(x+u) - f(x-u))/u du. Panels are geometric on [δ, 1] and at most
// `panel_width` wide beyond.
complex conjugate_integral(const ComplexFn& f, double x, double delta, double M,
                           const QuadratureSpec& spec, double panel_width = 1.0);

// -πi ∫ e^{-ixt} sign(t) dF(t), the δ→0, M→∞ limit of conjugate_integral for φ₀ of μ.
complex conjugate_limit(const MeasureModel& mu, double x);

}  // namespace wienerkit
