#include "wienerkit/wnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "wienerkit/error.hpp"
#include "wienerkit/parallel.hpp"
#include "wienerkit/transforms.hpp"

namespace wienerkit {

namespace {

constexpr double kPi = std::numbers::pi;

struct LimitEstimate {
  bool found = false;
  complex value{};
  double mismatch = 0.0;
  double spread = 0.0;
};

// Mean of the last decile of stored coefficients on each side of 0.
LimitEstimate detect_limit(const CoefficientSequence& c, double tol) {
  LimitEstimate out;
  const std::int64_t pos = c.end() - 1;
  const std::int64_t neg = -c.offset();
  const std::int64_t N = std::min(pos, neg);
  if (N < 10) return out;
  const std::int64_t w = std::max<std::int64_t>(1, N / 10);
  auto side = [&](int sign, complex& mean, double& spread) {
    complex s{};
    for (std::int64_t j = N - w + 1; j <= N; ++j) s += c[sign * j];
    mean = s / static_cast<double>(w);
    spread = 0.0;
    for (std::int64_t j = N - w + 1; j <= N; ++j) spread = std::max(spread, std::abs(c[sign * j] - mean));
  };
  complex mp, mn;
  double sp, sn;
  side(1, mp, sp);
  side(-1, mn, sn);
  out.mismatch = std::abs(mp - mn);
  out.spread = std::max(sp, sn);
  out.value = 0.5 * (mp + mn);
  out.found = out.mismatch <= tol && out.spread <= tol && std::abs(out.value) > 1e-12;
  return out;
}

CoefficientSequence subtract_constant(const CoefficientSequence& c, complex L) {
  std::vector<complex> v(c.values().begin(), c.values().end());
  for (auto& x : v) x -= L;
  return CoefficientSequence(c.offset(), std::move(v));
}

}  // namespace

std::string_view to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::IS_FOURIER_STIELTJES_EVIDENCE: return "IS_FOURIER_STIELTJES_EVIDENCE";
    case VerdictKind::IS_FOURIER_EVIDENCE: return "IS_FOURIER_EVIDENCE";
    case VerdictKind::NOT_FOURIER_EVIDENCE: return "NOT_FOURIER_EVIDENCE";
    case VerdictKind::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

double w0_norm_fejer(const CoefficientSequence& c, std::int64_t n, const QuadratureSpec& spec) {
  return l1_circle(TrigPolynomial(fejer_weights(c, n)), spec);
}

double w0_norm_line(const CoefficientSequence& c, std::int64_t n, const QuadratureSpec& spec) {
  const TrigPolynomial p(fejer_weights(c, n));
  if (p.coefficients().empty()) return 0.0;
  const double decay = 4.0 * l1_norm(p.coefficients());
  const double width = kPi / static_cast<double>(p.degree() + 1);
  auto g = [&p](double y) { return hat_kernel(y) * p(y); };
  return l1_line(g, spec, decay, width).value / (2.0 * kPi);
}

NormBound stieltjes_norm_bound_check(const MeasureModel& mu, std::int64_t n, const QuadratureSpec& spec) {
  if (n < 1) throw InputError("n must be at least 1");
  return {w0_norm_fejer(measure_coefficients(mu, n), n, spec), total_variation(mu)};
}

double extension_check(const MeasureModel& mu, complex lambda, std::int64_t k_lo, std::int64_t k_hi) {
  double dev = 0.0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const complex phi = stieltjes_transform(mu, static_cast<double>(k));
    const complex ext = phi + lambda * std::sin(kPi * static_cast<double>(k));
    dev = std::max(dev, std::abs(ext - phi));
  }
  return dev;
}

FourierDiagnostic fourier_diagnostic(const SequenceFamily& family, std::span<const std::int64_t> n_ladder,
                                     const QuadratureSpec& spec, const DiagnosticThresholds& th) {
  if (n_ladder.size() < 4) throw InputError("ladder needs at least 4 entries");
  for (std::size_t i = 0; i < n_ladder.size(); ++i) {
    if (n_ladder[i] < 1) throw InputError("ladder entries must be >= 1");
    if (i > 0 && n_ladder[i] <= n_ladder[i - 1]) throw InputError("ladder must be strictly increasing");
  }
  spec.validate();

  FourierDiagnostic out;
  Verdict& v = out.verdict;

  const LimitEstimate lim = detect_limit(family(n_ladder.back()), th.limit_tol);
  std::optional<complex> limit;
  if (lim.found) {
    limit = lim.value;
    v.witnesses["p1_limit"] = {{"re", lim.value.real()},
                               {"im", lim.value.imag()},
                               {"side_mismatch", lim.mismatch},
                               {"decile_spread", lim.spread}};
  }
  auto member = [&](std::int64_t n) {
    CoefficientSequence c = family(n);
    return limit ? subtract_constant(c, *limit) : c;
  };

  std::vector<double> values;
  try {
    values = parallel_map<double>(n_ladder.size(), [&](std::size_t i) {
      return w0_norm_fejer(member(n_ladder[i]), n_ladder[i], spec);
    });
  } catch (const NumericError& e) {
    // Sequential retry to report how far the ladder got.
    std::vector<TrendPoint> partial;
    for (std::int64_t n : n_ladder) {
      try {
        partial.push_back({n, w0_norm_fejer(member(n), n, spec)});
      } catch (const NumericError&) {
        break;
      }
    }
    out.trend.ladder = std::move(partial);
    v.kind = VerdictKind::INCONCLUSIVE;
    v.witnesses["ladder_failure"] = {{"completed_points", static_cast<double>(out.trend.ladder.size())},
                                     {"best_estimate", e.best_estimate()},
                                     {"achieved_error", e.achieved_error()}};
    return out;
  }

  std::vector<TrendPoint> ladder;
  for (std::size_t i = 0; i < values.size(); ++i) ladder.push_back({n_ladder[i], values[i]});
  out.trend = classify_trend(std::move(ladder), th.trend);
  if (th.upper_bound) {
    const double ub = *th.upper_bound;
    bool below = true;
    for (const auto& p : out.trend.ladder) below = below && p.value <= ub * (1.0 + 1e-9) + 1e-9;
    v.witnesses["upper_bound"] = {{"bound", ub}, {"respected", below ? 1.0 : 0.0}};
    if (below) out.trend.classification = TrendClass::BOUNDED;
  }

  const auto& L = out.trend.ladder;
  const std::size_t b = top_half_begin(L.size());
  double vmax = 0.0;
  for (std::size_t i = b; i < L.size(); ++i) vmax = std::max(vmax, L[i].value);
  v.witnesses["fejer_ladder"] = {{"top_half_max", vmax},
                                 {"last", L.back().value},
                                 {"slope", out.trend.slope},
                                 {"bound_tol", th.trend.bound_tol},
                                 {"slope_tol", th.trend.slope_tol}};

  switch (out.trend.classification) {
    case TrendClass::GROWING: v.kind = VerdictKind::NOT_FOURIER_EVIDENCE; break;
    case TrendClass::INCONCLUSIVE: v.kind = VerdictKind::INCONCLUSIVE; break;
    case TrendClass::BOUNDED: {
      // ‖σ_{n_{i+1}} - σ_{n_i}‖ in L1 of the circle, both from the larger truncation.
      std::vector<double> d;
      try {
        d = parallel_map<double>(n_ladder.size() - 1, [&](std::size_t i) {
          const CoefficientSequence c = member(n_ladder[i + 1]);
          const auto hi = fejer_weights(c, n_ladder[i + 1]);
          const auto lo = fejer_weights(c, n_ladder[i]);
          return l1_circle(TrigPolynomial(combine(1.0, hi, -1.0, lo)), spec);
        });
      } catch (const NumericError&) {
        v.kind = VerdictKind::IS_FOURIER_STIELTJES_EVIDENCE;
        v.witnesses["cauchy"] = {{"completed", 0.0}};
        break;
      }
      bool nonincreasing = true;
      for (std::size_t i = top_half_begin(d.size()) + 1; i < d.size(); ++i)
        nonincreasing = nonincreasing && d[i] <= d[i - 1];
      const bool cauchy = nonincreasing && d.back() < th.cauchy_tol;
      v.witnesses["cauchy"] = {{"last_difference", d.back()},
                               {"cauchy_tol", th.cauchy_tol},
                               {"nonincreasing", nonincreasing ? 1.0 : 0.0}};
      v.kind = cauchy ? VerdictKind::IS_FOURIER_EVIDENCE : VerdictKind::IS_FOURIER_STIELTJES_EVIDENCE;
      break;
    }
  }
  return out;
}

}  // namespace wienerkit
