#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "wienerkit/quadrature.hpp"
#include "wienerkit/seqcore.hpp"
#include "wienerkit/trend.hpp"

namespace wienerkit {

enum class VerdictKind {
  IS_FOURIER_STIELTJES_EVIDENCE,
  IS_FOURIER_EVIDENCE,
  NOT_FOURIER_EVIDENCE,
  INCONCLUSIVE,
};

std::string_view to_string(VerdictKind k) noexcept;

using Numbers = std::map<std::string, double>;

struct Verdict {
  VerdictKind kind = VerdictKind::INCONCLUSIVE;
  std::map<std::string, Numbers> witnesses;
};

// (1/2π) ∫ |σ_n(y)| dy over the circle.
double w0_norm_fejer(const CoefficientSequence& c, std::int64_t n, const QuadratureSpec& spec);

// (1/2π) ∫_ℝ K(y) |σ_n(y)| dy. Equal to w0_norm_fejer by folding the line onto the circle.
double w0_norm_line(const CoefficientSequence& c, std::int64_t n, const QuadratureSpec& spec);

struct NormBound {
  double lhs;  // Fejér W₀-norm of c_k = φ₀(k), |k| <= n
  double rhs;  // V(μ)
};

NormBound stieltjes_norm_bound_check(const MeasureModel& mu, std::int64_t n, const QuadratureSpec& spec);

// max_{k_lo <= k <= k_hi} |(φ₀(k) + λ sin(πk)) - φ₀(k)|.
double extension_check(const MeasureModel& mu, complex lambda, std::int64_t k_lo, std::int64_t k_hi);

// Truncation of the series suited to ladder entry n (coefficients |k| < n must be exact).
using SequenceFamily = std::function<CoefficientSequence(std::int64_t n)>;

struct DiagnosticThresholds {
  TrendThresholds trend{};
  double cauchy_tol = 0.01;
  double limit_tol = 1e-6;
  // Known sup of the ladder, V(μ) for families generated by a measure. A
  // ladder that stays below it is classified BOUNDED.
  std::optional<double> upper_bound;
};

struct FourierDiagnostic {
  TrendReport trend;
  Verdict verdict;
};

// Fejér-norm ladder with the membership verdict. Ladder strictly increasing,
// length >= 4. A constant two-sided limit of the coefficients, detected on the
// largest truncation, is subtracted first and reported in the witnesses.
FourierDiagnostic fourier_diagnostic(const SequenceFamily& family, std::span<const std::int64_t> n_ladder,
                                     const QuadratureSpec& spec, const DiagnosticThresholds& th = {});

}  // namespace wienerkit
