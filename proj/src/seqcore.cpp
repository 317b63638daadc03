#include "wienerkit/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "wienerkit/error.hpp"

namespace wienerkit {

namespace {

constexpr double kPi = std::numbers::pi;

// Σ_{j} (-iu)^j / (j! (j + p + 1)) = ∫_0^1 s^p e^{-ius} ds for small |u|.
complex moment_series(double u, int p) {
  complex term{1.0, 0.0};
  complex sum{0.0, 0.0};
  for (int j = 0; j < 24; ++j) {
    sum += term / static_cast<double>(j + p + 1);
    term *= complex{0.0, -u} / static_cast<double>(j + 1);
  }
  return sum;
}

// A(u) = ∫_0^1 e^{-ius} ds, B(u) = ∫_0^1 s e^{-ius} ds.
std::pair<complex, complex> cell_moments(double u) {
  if (std::abs(u) < 0.5) return {moment_series(u, 0), moment_series(u, 1)};
  const complex e = std::polar(1.0, -u);
  const complex a = (1.0 - e) / complex{0.0, u};
  const complex b = e * complex{1.0 / (u * u), 1.0 / u} - 1.0 / (u * u);
  return {a, b};
}

// ∫_0^1 |a + s d| ds.
double abs_linear_integral(complex a, complex b) {
  if (a.imag() == 0.0 && b.imag() == 0.0) {
    const double x = a.real(), y = b.real();
    if ((x >= 0.0) == (y >= 0.0) || x == 0.0 || y == 0.0) return 0.5 * (std::abs(x) + std::abs(y));
    return 0.5 * (x * x + y * y) / (std::abs(x) + std::abs(y));
  }
  const complex d = b - a;
  const double dd = std::abs(d);
  if (dd == 0.0) return std::abs(a);
  const double s_star = -(a.real() * d.real() + a.imag() * d.imag()) / (dd * dd);
  if (s_star > -1.0 && s_star < 2.0) {
    // |a + s d| = sqrt(D²(s - s*)² + m²); antiderivative in u = s - s*.
    const double m = std::abs(a.real() * d.imag() - a.imag() * d.real()) / dd;
    auto prim = [dd, m](double u) {
      const double r = std::sqrt(dd * dd * u * u + m * m);
      if (m == 0.0) return 0.5 * dd * u * std::abs(u);
      return 0.5 * (u * r + (m * m / dd) * std::asinh(dd * u / m));
    };
    return prim(1.0 - s_star) - prim(-s_star);
  }
  // The zero of the affine map is far from the cell; the modulus is smooth here.
  static constexpr double x10[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                    0.8650633666889845, 0.9739065285171717};
  static constexpr double w10[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                    0.1494513491505806, 0.0666713443086881};
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    sum += w10[i] * (std::abs(a + 0.5 * (1.0 - x10[i]) * d) + std::abs(a + 0.5 * (1.0 + x10[i]) * d));
  }
  return 0.5 * sum;
}

}  // namespace

CoefficientSequence::CoefficientSequence(std::int64_t offset, std::vector<complex> values)
    : offset_(offset), values_(std::move(values)) {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("coefficient sequence contains a non-finite value");
  }
  if (values_.empty()) offset_ = 0;
}

CoefficientSequence CoefficientSequence::symmetric(std::vector<complex> values) {
  if (values.size() % 2 == 0) throw InputError("symmetric sequence needs an odd number of values");
  const auto n = static_cast<std::int64_t>(values.size() / 2);
  return CoefficientSequence(-n, std::move(values));
}

CoefficientSequence CoefficientSequence::truncated(std::int64_t n) const {
  const std::int64_t lo = std::max(offset_, -n);
  const std::int64_t hi = std::min(end(), n + 1);
  if (n < 0 || lo >= hi) return {};
  return CoefficientSequence(lo, std::vector<complex>(values_.begin() + (lo - offset_),
                                                      values_.begin() + (hi - offset_)));
}

CoefficientSequence CoefficientSequence::scaled(complex alpha) const {
  std::vector<complex> v(values_);
  for (auto& x : v) x *= alpha;
  return CoefficientSequence(offset_, std::move(v));
}

CoefficientSequence combine(complex alpha, const CoefficientSequence& x, complex beta,
                            const CoefficientSequence& y) {
  if (x.empty()) return y.scaled(beta);
  if (y.empty()) return x.scaled(alpha);
  const std::int64_t lo = std::min(x.offset(), y.offset());
  const std::int64_t hi = std::max(x.end(), y.end());
  std::vector<complex> v(static_cast<std::size_t>(hi - lo));
  for (std::int64_t k = lo; k < hi; ++k) v[static_cast<std::size_t>(k - lo)] = alpha * x[k] + beta * y[k];
  return CoefficientSequence(lo, std::move(v));
}

CoefficientSequence from_cosine_sine(std::span<const double> a, std::span<const double> b) {
  if (a.empty()) {
    if (!b.empty()) throw InputError("sine coefficients given without cosine coefficients");
    return {};
  }
  if (b.size() + 1 != a.size()) {
    throw InputError("length mismatch: expected " + std::to_string(a.size() - 1) +
                     " sine coefficients, got " + std::to_string(b.size()));
  }
  const auto n = static_cast<std::int64_t>(a.size()) - 1;
  std::vector<complex> v(static_cast<std::size_t>(2 * n + 1));
  v[static_cast<std::size_t>(n)] = a[0] / 2.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double ak = a[static_cast<std::size_t>(k)];
    const double bk = b[static_cast<std::size_t>(k - 1)];
    v[static_cast<std::size_t>(n + k)] = complex{ak / 2.0, -bk / 2.0};
    v[static_cast<std::size_t>(n - k)] = complex{ak / 2.0, bk / 2.0};
  }
  return CoefficientSequence(-n, std::move(v));
}

CosineSine to_cosine_sine(const CoefficientSequence& c) {
  CosineSine out;
  if (c.empty()) return out;
  const std::int64_t n = std::max(std::abs(c.offset()), std::abs(c.end() - 1));
  out.a.resize(static_cast<std::size_t>(n + 1));
  out.b.resize(static_cast<std::size_t>(n));
  out.a[0] = 2.0 * c[0];
  for (std::int64_t k = 1; k <= n; ++k) {
    out.a[static_cast<std::size_t>(k)] = c[k] + c[-k];
    out.b[static_cast<std::size_t>(k - 1)] = complex{0.0, 1.0} * (c[k] - c[-k]);
  }
  return out;
}

CoefficientSequence diff(const CoefficientSequence& c) {
  if (c.empty()) return {};
  std::vector<complex> d(c.size() + 1);
  for (std::int64_t k = c.offset() - 1; k < c.end(); ++k) {
    d[static_cast<std::size_t>(k - c.offset() + 1)] = c[k + 1] - c[k];
  }
  return CoefficientSequence(c.offset() - 1, std::move(d));
}

double bv_norm(const CoefficientSequence& c) { return l1_norm(diff(c)); }

double l1_norm(const CoefficientSequence& c) {
  double s = 0.0;
  for (const auto& v : c.values()) s += std::abs(v);
  return s;
}

double lp_norm(const CoefficientSequence& c, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("lp_norm: exponent must be positive and finite");
  double scale = 0.0;
  for (const auto& v : c.values()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : c.values()) s += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

double tail_sup(const CoefficientSequence& c, std::uint64_t n) {
  double best = 0.0;
  for (std::int64_t k = c.offset(); k < c.end(); ++k) {
    if (static_cast<std::uint64_t>(std::abs(k)) >= n) best = std::max(best, std::abs(c[k]));
  }
  return best;
}

std::vector<double> tail_sup_profile(const CoefficientSequence& c, std::uint64_t n_max) {
  std::vector<double> at(n_max + 2, 0.0);  // at[n] = max_{|k| = n} |c_k|
  for (std::int64_t k = c.offset(); k < c.end(); ++k) {
    const auto a = static_cast<std::uint64_t>(std::abs(k));
    const std::uint64_t slot = std::min(a, n_max + 1);
    at[slot] = std::max(at[slot], std::abs(c[k]));
  }
  std::vector<double> out(n_max + 1);
  double run = at[n_max + 1];
  for (std::uint64_t n = n_max + 1; n-- > 0;) {
    run = std::max(run, at[n]);
    out[n] = run;
  }
  return out;
}

complex ZigzagFunction::operator()(double t) const {
  const double fl = std::floor(t);
  const auto k = static_cast<std::int64_t>(fl);
  const double s = t - fl;
  const complex ck = c_[k];
  if (s == 0.0) return ck;
  return ck + s * (c_[k + 1] - ck);
}

SampledPeriodicFn::SampledPeriodicFn(double halfperiod, std::vector<complex> samples)
    : halfperiod_(halfperiod), samples_(std::move(samples)) {
  if (!(halfperiod_ > 0.0) || !std::isfinite(halfperiod_)) throw InputError("halfperiod must be positive");
  if (samples_.size() < 2) throw InputError("a sampled periodic function needs at least 2 samples");
  for (const auto& v : samples_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("sampled function contains a non-finite value");
  }
}

double SampledPeriodicFn::node(std::int64_t m) const noexcept {
  const auto n = static_cast<std::int64_t>(samples_.size());
  const std::int64_t r = ((m % n) + n) % n;
  return -halfperiod_ + static_cast<double>(r) * step();
}

complex SampledPeriodicFn::sample(std::int64_t m) const noexcept {
  const auto n = static_cast<std::int64_t>(samples_.size());
  return samples_[static_cast<std::size_t>(((m % n) + n) % n)];
}

complex SampledPeriodicFn::operator()(double x) const {
  const double u = (x + halfperiod_) / step();
  const double r = std::round(u);
  if (std::abs(u - r) <= 1e-12 * std::max(1.0, std::abs(u))) return sample(static_cast<std::int64_t>(r));
  const double fl = std::floor(u);
  const auto m = static_cast<std::int64_t>(fl);
  const double s = u - fl;
  const complex lo = sample(m);
  return lo + s * (sample(m + 1) - lo);
}

SampledPeriodicFn SampledPeriodicFn::decimated(std::size_t factor) const {
  if (factor == 0 || samples_.size() % factor != 0 || samples_.size() / factor < 2)
    throw InputError("decimation factor must divide the sample count");
  std::vector<complex> s(samples_.size() / factor);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = samples_[i * factor];
  return SampledPeriodicFn(halfperiod_, std::move(s));
}

double SampledPeriodicFn::variation() const {
  double v = 0.0;
  const auto n = static_cast<std::int64_t>(samples_.size());
  for (std::int64_t m = 0; m < n; ++m) v += std::abs(sample(m + 1) - sample(m));
  return v;
}

double SampledPeriodicFn::max_abs() const {
  double v = 0.0;
  for (const auto& s : samples_) v = std::max(v, std::abs(s));
  return v;
}

MeasureModel::MeasureModel(std::vector<Atom> atoms, std::optional<SampledPeriodicFn> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  std::set<double> seen;
  for (const auto& a : atoms_) {
    if (!(a.location > -kPi && a.location <= kPi))
      throw InputError("atom location must lie in (-pi, pi]");
    if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag()))
      throw InputError("atom weight must be finite");
    if (!seen.insert(a.location).second) throw InputError("atom locations must be distinct");
  }
  if (density_ && std::abs(density_->halfperiod() - kPi) > 1e-12)
    throw InputError("measure density must be sampled on [-pi, pi)");
}

bool MeasureModel::is_nonnegative() const {
  for (const auto& a : atoms_) {
    if (a.weight.imag() != 0.0 || a.weight.real() < 0.0) return false;
  }
  if (density_) {
    for (const auto& s : density_->samples()) {
      if (s.imag() != 0.0 || s.real() < 0.0) return false;
    }
  }
  return true;
}

complex stieltjes_transform(const MeasureModel& mu, double x) {
  complex sum{};
  for (const auto& a : mu.atoms()) sum += a.weight * std::polar(1.0, -x * a.location);
  if (const auto& rho = mu.density()) {
    const double h = rho->step();
    const auto m = static_cast<std::int64_t>(rho->size());
    const auto [ma, mb] = cell_moments(x * h);
    const complex wl = h * (ma - mb);
    const complex wr = h * mb;
    complex acc{};
    // Phase e^{-ixt_j} re-anchored every 64 cells to keep the recurrence exact to ~1e-14.
    const complex rot = std::polar(1.0, -x * h);
    complex phase{};
    for (std::int64_t j = 0; j < m; ++j) {
      if (j % 64 == 0) phase = std::polar(1.0, -x * (-kPi + static_cast<double>(j) * h));
      acc += phase * (rho->sample(j) * wl + rho->sample(j + 1) * wr);
      phase *= rot;
    }
    sum += acc;
  }
  return sum;
}

complex linear_segment_transform(double t0, double t1, complex r0, complex r1, double x) {
  const double h = t1 - t0;
  const auto [ma, mb] = cell_moments(x * h);
  return h * std::polar(1.0, -x * t0) * (r0 * (ma - mb) + r1 * mb);
}

double total_variation(const MeasureModel& mu) {
  double v = 0.0;
  for (const auto& a : mu.atoms()) v += std::abs(a.weight);
  if (const auto& rho = mu.density()) {
    const auto m = static_cast<std::int64_t>(rho->size());
    double acc = 0.0;
    for (std::int64_t j = 0; j < m; ++j) acc += abs_linear_integral(rho->sample(j), rho->sample(j + 1));
    v += acc * rho->step();
  }
  return v;
}

CoefficientSequence measure_coefficients(const MeasureModel& mu, std::int64_t n) {
  if (n < 0) return {};
  std::vector<complex> v(static_cast<std::size_t>(2 * n + 1));
  for (std::int64_t k = -n; k <= n; ++k) v[static_cast<std::size_t>(k + n)] = stieltjes_transform(mu, static_cast<double>(k));
  return CoefficientSequence(-n, std::move(v));
}

}  // namespace wienerkit
