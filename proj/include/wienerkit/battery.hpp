#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wienerkit/quadrature.hpp"
#include "wienerkit/seqcore.hpp"
#include "wienerkit/trend.hpp"
#include "wienerkit/wnorm.hpp"

namespace wienerkit {

enum class TestStatus {
  NECESSARY_FAILED,
  NECESSARY_CONSISTENT,
  SUFFICIENT_SATISFIED,
  SUFFICIENT_NOT_SATISFIED,
  INCONCLUSIVE,
};

std::string_view to_string(TestStatus s) noexcept;

struct TestResult {
  std::string name;
  TestStatus status = TestStatus::INCONCLUSIVE;
  Numbers numbers;
  std::optional<TrendReport> trend;
};

enum class Parity { even, odd };

// Threshold for "bounded away from zero" in vanishing tests.
inline constexpr double kFailTol = 0.05;

// Top-half minimum above fail_tol: NECESSARY_FAILED. Top half nonincreasing
// and last value <= fail_tol: NECESSARY_CONSISTENT. Otherwise INCONCLUSIVE.
TestResult classify_vanishing(std::string name, std::vector<TrendPoint> ladder, double fail_tol = kFailTol);

// even: k Σ_n a_n/((k+1/2)² - n²); odd: Σ_n n b_n/((k+1/2)² - n²); n >= 1.
// coef(n) supplies a_n or b_n for 1 <= n <= N.
template <class Coef>
auto salem_sum(Coef&& coef, std::int64_t N, Parity parity, std::int64_t k) {
  const double z2 = (static_cast<double>(k) + 0.5) * (static_cast<double>(k) + 0.5);
  decltype(coef(std::int64_t{1}) * 1.0) s{};
  for (std::int64_t n = 1; n <= N; ++n) {
    const double nn = static_cast<double>(n);
    s += coef(n) * ((parity == Parity::even ? 1.0 : nn) / (z2 - nn * nn));
  }
  return parity == Parity::even ? s * static_cast<double>(k) : s;
}

// coeffs[j] holds a_{j+1} (or b_{j+1}).
double salem_transform(std::span<const double> coeffs, Parity parity, std::int64_t k);
complex salem_transform(std::span<const complex> coeffs, Parity parity, std::int64_t k);

// Vanishing of both Salem sums along the ladder, for the cosine/sine split of c.
TestResult salem_test(const CoefficientSequence& c, std::span<const std::int64_t> k_ladder);

// max(|hc_n|, |hc_{-n}|) along the ladder, classified as a vanishing test.
TestResult dht_vanishing(const CoefficientSequence& c, std::span<const std::int64_t> n_ladder);

// Partial sums S_m = Σ_{j<=m} (1/j)(Σ_{n>=j} tail_sup(c,n) tail_sup(diff c,n))^{1/2}.
std::vector<double> p5_partial_sums(const CoefficientSequence& c, std::int64_t M);
// Partial-sum ladder at m = 2, 4, ..., M (and M itself).
TestResult p5_test1(const CoefficientSequence& c, std::int64_t M);
// Totals S_∞ over truncations of a family.
TestResult p5_test1_family(const SequenceFamily& family, std::span<const std::int64_t> truncations);

// 1 + 1/(p-1).
double p5_q_threshold(double p);
TestResult p5_test2(const CoefficientSequence& c, double p, double q);
TestResult p5_test2_family(const SequenceFamily& family, std::span<const std::int64_t> truncations, double p,
                           double q);

struct HtrCheckOptions {
  bool enabled = true;
  // The cross-check costs O(L²) quadrature work; it is skipped above this support.
  std::size_t max_support = 256;
  QuadratureSpec spec{1e-9, 1e-7};
  double constant = 10.0;
};

// Σ|hd_n| over the support window plus tail bound, bv norm of hc on the same
// window, and the step-function Hilbert transform cross-check.
TestResult t3h6_test(const CoefficientSequence& c, const HtrCheckOptions& opt = {});
TestResult t3h6_family(const SequenceFamily& family, std::span<const std::int64_t> truncations);

// Window half-margin used by t3h6_test beyond the support of d.
inline constexpr std::int64_t kDhtWindowMargin = 50;

// ∫_ℝ |HD(x)| dx for the step function D = d_k on [k, k+1).
struct StepHilbertL1 {
  double value;
  double error;
};
StepHilbertL1 step_hilbert_l1(const CoefficientSequence& d, const QuadratureSpec& spec);

// b[j] = b_{j+1}, nonnegative and nonincreasing. Partial sums of Σ b_k/k.
TestResult monotone_odd_test(std::span<const double> b);

enum class ModulusNorm { sup, L2 };

// ω(f;h) and ω(f;h)₂ for the piecewise-linear interpolant. Shifts below one
// grid step are exact; larger shifts are restricted to grid multiples.
class ModulusTable {
 public:
  explicit ModulusTable(const SampledPeriodicFn& f);
  double operator()(double h, ModulusNorm norm) const;
  double step() const noexcept { return step_; }
  double period() const noexcept { return period_; }

 private:
  double step_, period_;
  double max_slope_ = 0.0;
  std::vector<complex> slope_;
  std::vector<double> sup_prefix_;  // [j] = max over shifts 1..j
  std::vector<double> l2_prefix_;
  double l2_subcell(double delta) const;
};

double modulus(const SampledPeriodicFn& f, double h, ModulusNorm norm);

// (2a Σ_{|k|>n} |f̂_k|²)^{1/2} from the DFT of the samples; n < M/2.
double best_l2_tail(const SampledPeriodicFn& f, std::int64_t n);
// E_0 .. E_{ceil(M/2)-1}.
std::vector<double> best_l2_tails(const SampledPeriodicFn& f);

struct SmoothnessOptions {
  // Support margin ε: whether supp f ⊂ [-a+ε, a-ε] is reported when set.
  std::optional<double> support_margin;
  // Refinement by decimation: grids M/2^levels ... M.
  int refinement_levels = 3;
};

struct SmoothnessValues {
  double i1;       // ∫ ω₂(t)/√t
  double i2;       // ∫ √ω(t)/t
  double e_sum;    // Σ_{1<=n<M/2} E_n/√n
  double h_min;
};

// Integrals over [1/M, min(1, 2a)].
SmoothnessValues smoothness_values(const SampledPeriodicFn& f);
TestResult smoothness_tests(const SampledPeriodicFn& f, const SmoothnessOptions& opt = {});

// ∫_0^T sup_{t<=|s|<=T} |g(s)| dt for the interpolant of g; needs T <= halfperiod.
double w0star_majorant(const SampledPeriodicFn& g, double T, const QuadratureSpec& spec = {});

struct ZygmundBridge {
  double l2_modulus;  // ω₂(f;h)
  double bound;       // √(V h ω(f;h))
};
ZygmundBridge zygmund_bridge(const ModulusTable& table, double variation, double h);

}  // namespace wienerkit
