#include "wienerkit/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "wienerkit/error.hpp"
#include "fftw_guard.hpp"

namespace wienerkit {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::int64_t TrigPolynomial::degree() const noexcept {
  if (c_.empty()) return 0;
  return std::max(std::abs(c_.offset()), std::abs(c_.end() - 1));
}

complex TrigPolynomial::operator()(double y) const {
  const auto v = c_.values();
  if (v.empty()) return {};
  const complex z = std::polar(1.0, y);
  complex p = v.back();
  for (std::size_t j = v.size() - 1; j-- > 0;) p = p * z + v[j];
  return p * std::polar(1.0, static_cast<double>(c_.offset()) * y);
}

complex trig_poly_eval(const CoefficientSequence& c, double y) { return TrigPolynomial(c)(y); }

CoefficientSequence fejer_weights(const CoefficientSequence& c, std::int64_t n) {
  if (n < 1) throw InputError("Fejer mean order must be at least 1");
  const CoefficientSequence t = c.truncated(n - 1);
  std::vector<complex> v(t.values().begin(), t.values().end());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto k = t.offset() + static_cast<std::int64_t>(j);
    v[j] *= 1.0 - static_cast<double>(std::abs(k)) / static_cast<double>(n);
  }
  return CoefficientSequence(t.offset(), std::move(v));
}

complex fejer_mean(const CoefficientSequence& c, std::int64_t n, double y) {
  return trig_poly_eval(fejer_weights(c, n), y);
}

double hat_kernel(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 12.0 + x2 * x2 / 360.0;
  }
  const double s = std::sin(0.5 * x) / x;
  return 4.0 * s * s;
}

complex zigzag_ft(const CoefficientSequence& c, double x) { return hat_kernel(x) * trig_poly_eval(c, x); }

FoldSum fold_sum(double y, std::int64_t K) {
  if (K < 1) throw InputError("fold_sum needs K >= 1");
  double sum = 0.0, comp = 0.0;
  for (std::int64_t k = -K; k <= K; ++k) {
    const double z = y + 2.0 * kPi * static_cast<double>(k);
    const double term = 0.25 * hat_kernel(z);
    const double t = sum + (term - comp);
    comp = (t - sum) - (term - comp);
    sum = t;
  }
  // Σ_{k>K} 1/(2πk - c)² <= ∫_K^∞ ds/(2πs - c)² = 1/(2π(2πK - c)), c = |y| + π, both sides.
  const double gap = 2.0 * kPi * static_cast<double>(K) - std::abs(y) - kPi;
  const double bound = gap > 0.0 ? 1.0 / (kPi * gap) : std::numeric_limits<double>::infinity();
  return {sum, bound};
}

double l1_circle(const ComplexFn& g, const QuadratureSpec& spec, std::size_t panels) {
  const auto breaks = uniform_breaks(-kPi, kPi, std::max<std::size_t>(panels, 1));
  return integrate_abs(g, breaks, spec).value / (2.0 * kPi);
}

namespace {

// Evaluation of a high-degree trigonometric polynomial from a 16x oversampled
// grid by 16-point local Lagrange interpolation. For degree n the grid step H
// has nH <= π/16, so the interpolation error is below 1e-15 Σ|c_k|.
class GridInterpolant {
 public:
  explicit GridInterpolant(const TrigPolynomial& p) {
    const CoefficientSequence& c = p.coefficients();
    std::size_t G = 64;
    while (G < 16 * static_cast<std::size_t>(2 * p.degree() + 1)) G *= 2;
    detail::Dft dft(G, FFTW_BACKWARD);
    auto& in = dft.input();
    std::fill(in.begin(), in.end(), complex{});
    const auto Gi = static_cast<std::int64_t>(G);
    for (std::int64_t k = c.offset(); k < c.end(); ++k) in[static_cast<std::size_t>(((k % Gi) + Gi) % Gi)] += c[k];
    dft.execute();
    grid_ = dft.output();
    double binom = 1.0;
    for (std::size_t j = 0; j < kM; ++j) {
      w_[j] = (j % 2 == 0) ? binom : -binom;
      binom = binom * static_cast<double>(kM - 1 - j) / static_cast<double>(j + 1);
    }
  }

  complex operator()(double y) const {
    const auto G = static_cast<std::int64_t>(grid_.size());
    const double t = y * static_cast<double>(G) / (2.0 * kPi);
    const auto i0 = static_cast<std::int64_t>(std::floor(t)) - static_cast<std::int64_t>(kM / 2 - 1);
    const double s = t - static_cast<double>(i0);
    complex num{};
    double den = 0.0;
    for (std::size_t j = 0; j < kM; ++j) {
      const complex f = grid_[static_cast<std::size_t>((((i0 + static_cast<std::int64_t>(j)) % G) + G) % G)];
      const double d = s - static_cast<double>(j);
      if (d == 0.0) return f;
      num += (w_[j] / d) * f;
      den += w_[j] / d;
    }
    return num / den;
  }

 private:
  static constexpr std::size_t kM = 16;
  std::vector<complex> grid_;
  std::array<double, kM> w_{};
};

}  // namespace

double l1_circle(const TrigPolynomial& p, const QuadratureSpec& spec) {
  const CoefficientSequence& c = p.coefficients();
  if (c.empty()) return 0.0;
  const auto P = static_cast<std::size_t>(std::max<std::int64_t>(16, 2 * (p.degree() + 1)));
  const auto breaks = uniform_breaks(-kPi, kPi, P);
  // Node j of every panel lies on the grid θ_j + 2πm/P, so the first pass is
  // 15 length-P DFTs of the coefficients folded modulo P.
  std::array<double, 15> theta;
  gk15_nodes(breaks[0], breaks[1], theta);
  std::vector<complex> initial(15 * P);
  detail::Dft dft(P, FFTW_BACKWARD);
  const auto v = c.values();
  for (std::size_t j = 0; j < 15; ++j) {
    auto& in = dft.input();
    std::fill(in.begin(), in.end(), complex{});
    for (std::size_t q = 0; q < v.size(); ++q) {
      const std::int64_t k = c.offset() + static_cast<std::int64_t>(q);
      const auto r = static_cast<std::size_t>(((k % static_cast<std::int64_t>(P)) + static_cast<std::int64_t>(P)) %
                                              static_cast<std::int64_t>(P));
      in[r] += v[q] * std::polar(1.0, static_cast<double>(k) * theta[j]);
    }
    dft.execute();
    const auto& out = dft.output();
    // Remaining factor e^{i k 2πm/P} is the DFT; the phase e^{ikθ_j} went into the input.
    for (std::size_t m = 0; m < P; ++m) initial[15 * m + j] = out[m];
  }
  if (p.degree() < 128) {
    const ComplexFn g = [&p](double y) { return p(y); };
    return integrate_abs_presampled(g, breaks, initial, spec).value / (2.0 * kPi);
  }
  const GridInterpolant fast(p);
  const ComplexFn g = [&fast](double y) { return fast(y); };
  return integrate_abs_presampled(g, breaks, initial, spec).value / (2.0 * kPi);
}

LineIntegral l1_line(const ComplexFn& g, const QuadratureSpec& spec, double decay_constant,
                     double panel_width) {
  spec.validate();
  if (!(panel_width > 0.0)) throw InputError("panel_width must be positive");
  if (!(decay_constant >= 0.0)) throw InputError("decay constant must be nonnegative");
  const double R = spec.line_radius;
  const double quarter = 0.25 * R;
  const auto per_quarter = static_cast<std::size_t>(std::ceil(quarter / panel_width));
  const auto breaks = uniform_breaks(-R, R, 8 * per_quarter);
  const QuadResult q = integrate_abs(g, breaks, spec);

  // Interval i covers [-R + i w, -R + (i+1) w], w = R/(4 per_quarter).
  const std::size_t n = q.interval_values.size();
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ring = std::min(i, n - 1 - i) / per_quarter;  // 0,1 outer half; 2 middle; 3 inner
    const double v = q.interval_values[i];
    t3 += v;
    if (ring >= 2) t2 += v;
    if (ring >= 3) t1 += v;
  }
  LineIntegral out;
  out.truncated = t3;
  out.tail_bound = 2.0 * decay_constant / R;
  if (spec.tail_mode == TailMode::analytic_bound) {
    out.value = t3 + 0.5 * out.tail_bound;
    out.error = 0.5 * out.tail_bound + q.error;
  } else {
    // Quadratic in 1/R through (4/R, t1), (2/R, t2), (1/R, t3), evaluated at 0.
    out.value = t1 / 3.0 - 2.0 * t2 + 8.0 * t3 / 3.0;
    const double linear = 2.0 * t3 - t2;
    out.error = std::abs(out.value - linear) + 5.0 * q.error;
  }
  out.tail_estimate = out.value - out.truncated;
  return out;
}

complex dht(const CoefficientSequence& c, std::int64_t n) {
  complex s{};
  const double x = static_cast<double>(n) + 0.5;
  for (std::int64_t k = c.offset(); k < c.end(); ++k) s += c[k] / (x - static_cast<double>(k));
  return s;
}

std::vector<complex> dht_window(const CoefficientSequence& c, std::int64_t lo, std::int64_t hi) {
  std::vector<complex> out;
  if (hi < lo) return out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) out.push_back(dht(c, n));
  return out;
}

complex hilbert_step(const CoefficientSequence& d, double x) {
  complex s{};
  const double fl = std::floor(x);
  const bool at_integer = (fl == x);
  const auto xi = static_cast<std::int64_t>(fl);
  if (at_integer && d[xi - 1] != d[xi]) throw DomainError("hilbert_step evaluated at a jump of the step function");
  for (std::int64_t k = d.offset(); k < d.end(); ++k) {
    // Both logarithms are singular at x = k or x = k+1; those pairs cancel
    // when D has no jump there and are skipped.
    if (at_integer && (k == xi || k == xi - 1)) continue;
    const double u = x - static_cast<double>(k);  // x - k
    const double w = u - 1.0;                     // x - k - 1
    const double l = std::abs(w) > 2.0 ? std::log1p(1.0 / w) : std::log(std::abs(u)) - std::log(std::abs(w));
    s += d[k] * l;
  }
  return s / kPi;
}

complex conjugate_integral(const ComplexFn& f, double x, double delta, double M, const QuadratureSpec& spec,
                           double panel_width) {
  if (!(delta > 0.0) || !(M > delta)) throw InputError("conjugate_integral needs 0 < delta < M");
  if (!(panel_width > 0.0)) throw InputError("panel_width must be positive");
  std::vector<double> breaks{delta};
  const double knee = std::min(1.0, M);
  while (breaks.back() * 2.0 < knee) breaks.push_back(breaks.back() * 2.0);
  if (knee > breaks.back()) breaks.push_back(knee);
  if (M > knee) {
    const auto n = static_cast<std::size_t>(std::ceil((M - knee) / panel_width));
    const auto tail = uniform_breaks(knee, M, n);
    breaks.insert(breaks.end(), tail.begin() + 1, tail.end());
  }
  auto integrand = [&f, x](double u) { return (f(x + u) - f(x - u)) / u; };
  return integrate(ComplexFn(integrand), breaks, spec).value;
}

complex conjugate_limit(const MeasureModel& mu, double x) {
  complex s{};
  for (const auto& a : mu.atoms()) {
    const double sg = a.location > 0.0 ? 1.0 : (a.location < 0.0 ? -1.0 : 0.0);
    s += sg * a.weight * std::polar(1.0, -x * a.location);
  }
  if (const auto& rho = mu.density()) {
    const auto m = static_cast<std::int64_t>(rho->size());
    const double h = rho->step();
    for (std::int64_t j = 0; j < m; ++j) {
      const double t0 = -kPi + static_cast<double>(j) * h;
      const double t1 = t0 + h;
      const complex r0 = rho->sample(j), r1 = rho->sample(j + 1);
      if (t0 < 0.0 && t1 > 0.0) {
        const complex rz = r0 + (r1 - r0) * (-t0 / h);
        s -= linear_segment_transform(t0, 0.0, r0, rz, x);
        s += linear_segment_transform(0.0, t1, rz, r1, x);
      } else {
        const double sg = (t0 + t1) > 0.0 ? 1.0 : -1.0;
        s += sg * linear_segment_transform(t0, t1, r0, r1, x);
      }
    }
  }
  return complex{0.0, -kPi} * s;
}

}  // namespace wienerkit
