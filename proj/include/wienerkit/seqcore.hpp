#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace wienerkit {

using complex = std::complex<double>;

// Finitely supported doubly-infinite sequence {c_k}. Stores c_offset ...
// c_{offset+L-1}; every other coefficient is zero. L = 0 is the zero sequence.
class CoefficientSequence {
 public:
  CoefficientSequence() = default;
  CoefficientSequence(std::int64_t offset, std::vector<complex> values);

  // Sequence with c_k = values[k + n] for k in [-n, n].
  static CoefficientSequence symmetric(std::vector<complex> values);

  std::int64_t offset() const noexcept { return offset_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  std::span<const complex> values() const noexcept { return values_; }

  // First index past the stored block.
  std::int64_t end() const noexcept { return offset_ + static_cast<std::int64_t>(values_.size()); }

  complex operator[](std::int64_t k) const noexcept {
    if (k < offset_ || k >= end()) return {};
    return values_[static_cast<std::size_t>(k - offset_)];
  }

  // Coefficients restricted to |k| <= n.
  CoefficientSequence truncated(std::int64_t n) const;
  CoefficientSequence scaled(complex alpha) const;

  friend bool operator==(const CoefficientSequence&, const CoefficientSequence&) = default;

 private:
  std::int64_t offset_ = 0;
  std::vector<complex> values_;
};

// Linear combination alpha*x + beta*y.
CoefficientSequence combine(complex alpha, const CoefficientSequence& x, complex beta,
                            const CoefficientSequence& y);

// c_0 = a_0/2, c_{±k} = (a_k ∓ i b_k)/2. `a` is indexed 0..N and `b` 1..N,
// so b.size() must equal a.size() - 1.
CoefficientSequence from_cosine_sine(std::span<const double> a, std::span<const double> b);

struct CosineSine {
  std::vector<complex> a;  // a_0 .. a_N
  std::vector<complex> b;  // b_1 .. b_N
};

// Inverse of from_cosine_sine: a_k = c_k + c_{-k}, b_k = i (c_k - c_{-k}).
// Complex in general; real exactly when c_{-k} = conj(c_k).
CosineSine to_cosine_sine(const CoefficientSequence& c);

// d_k = c_{k+1} - c_k.
CoefficientSequence diff(const CoefficientSequence& c);

// Σ_k |c_k - c_{k+1}| over all of ℤ.
double bv_norm(const CoefficientSequence& c);

// sup_{|k| >= n} |c_k|.
double tail_sup(const CoefficientSequence& c, std::uint64_t n);

// All of tail_sup(c, n) for n = 0 .. n_max in one pass.
std::vector<double> tail_sup_profile(const CoefficientSequence& c, std::uint64_t n_max);

// Σ |c_k|^p, raised to 1/p.
double lp_norm(const CoefficientSequence& c, double p);

double l1_norm(const CoefficientSequence& c);

// Continuous piecewise-linear interpolant with knots at the integers.
class ZigzagFunction {
 public:
  explicit ZigzagFunction(CoefficientSequence c) : c_(std::move(c)) {}
  const CoefficientSequence& knots() const noexcept { return c_; }
  complex operator()(double t) const;

 private:
  CoefficientSequence c_;
};

// Uniform samples of a 2a-periodic function on [-a, a), linearly interpolated.
class SampledPeriodicFn {
 public:
  SampledPeriodicFn(double halfperiod, std::vector<complex> samples);

  double halfperiod() const noexcept { return halfperiod_; }
  double period() const noexcept { return 2.0 * halfperiod_; }
  double step() const noexcept { return 2.0 * halfperiod_ / static_cast<double>(samples_.size()); }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const complex> samples() const noexcept { return samples_; }

  // Grid point x_m = -a + m*step, m taken modulo M.
  double node(std::int64_t m) const noexcept;
  complex sample(std::int64_t m) const noexcept;

  complex operator()(double x) const;

  // Every `factor`-th sample (same halfperiod). factor must divide M and leave >= 2 samples.
  SampledPeriodicFn decimated(std::size_t factor) const;

  // Total variation over one period of the interpolant.
  double variation() const;
  double max_abs() const;

 private:
  double halfperiod_;
  std::vector<complex> samples_;
};

template <class F>
SampledPeriodicFn sample_periodic(double halfperiod, std::size_t m, F&& f) {
  std::vector<complex> s(m);
  const double h = 2.0 * halfperiod / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = f(-halfperiod + static_cast<double>(i) * h);
  return SampledPeriodicFn(halfperiod, std::move(s));
}

struct Atom {
  double location;  // in (-π, π]
  complex weight;
};

// Atomic part plus an optional sampled density on the circle 𝕋 = [-π, π).
// Coefficients are c_k = ∫_𝕋 e^{-ikt} dF(t), with no 1/(2π) factor.
class MeasureModel {
 public:
  MeasureModel() = default;
  explicit MeasureModel(std::vector<Atom> atoms,
                        std::optional<SampledPeriodicFn> density = std::nullopt);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  const std::optional<SampledPeriodicFn>& density() const noexcept { return density_; }

  bool is_nonnegative() const;

 private:
  std::vector<Atom> atoms_;
  std::optional<SampledPeriodicFn> density_;
};

// φ₀(x) = Σ_j w_j e^{-ixt_j} + ∫_{-π}^{π} e^{-ixt} ρ(t) dt. The density
// integral is exact for the piecewise-linear interpolant.
complex stieltjes_transform(const MeasureModel& mu, double x);

// ∫_{t0}^{t1} e^{-ixt} r(t) dt for r affine from r0 at t0 to r1 at t1.
complex linear_segment_transform(double t0, double t1, complex r0, complex r1, double x);

// Σ|w_j| + ∫|ρ|.
double total_variation(const MeasureModel& mu);

// c_k = φ₀(k) for |k| <= n.
CoefficientSequence measure_coefficients(const MeasureModel& mu, std::int64_t n);

}  // namespace wienerkit
