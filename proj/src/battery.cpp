#include "wienerkit/battery.hpp"

#include "fftw_guard.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "wienerkit/error.hpp"
#include "wienerkit/parallel.hpp"
#include "wienerkit/transforms.hpp"

namespace wienerkit {

namespace {

constexpr double kPi = std::numbers::pi;

TestStatus sufficient_from(TrendClass c) {
  switch (c) {
    case TrendClass::BOUNDED: return TestStatus::SUFFICIENT_SATISFIED;
    case TrendClass::GROWING: return TestStatus::SUFFICIENT_NOT_SATISFIED;
    case TrendClass::INCONCLUSIVE: return TestStatus::INCONCLUSIVE;
  }
  return TestStatus::INCONCLUSIVE;
}

void check_ladder(std::span<const std::int64_t> ladder, const char* what) {
  if (ladder.empty()) throw InputError(std::string(what) + " ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 1) throw InputError(std::string(what) + " ladder entries must be >= 1");
    if (i > 0 && ladder[i] <= ladder[i - 1]) throw InputError(std::string(what) + " ladder must be strictly increasing");
  }
}

// Largest |k| with possibly nonzero c_k or d_k.
std::uint64_t extent(const CoefficientSequence& c) {
  if (c.empty()) return 0;
  return static_cast<std::uint64_t>(std::max(std::abs(c.offset() - 1), std::abs(c.end()))) + 1;
}

void add_trend_numbers(TestResult& r) {
  if (!r.trend || r.trend->ladder.empty()) return;
  r.numbers["last"] = r.trend->ladder.back().value;
  r.numbers["slope"] = r.trend->slope;
}

}  // namespace

std::string_view to_string(TestStatus s) noexcept {
  switch (s) {
    case TestStatus::NECESSARY_FAILED: return "NECESSARY_FAILED";
    case TestStatus::NECESSARY_CONSISTENT: return "NECESSARY_CONSISTENT";
    case TestStatus::SUFFICIENT_SATISFIED: return "SUFFICIENT_SATISFIED";
    case TestStatus::SUFFICIENT_NOT_SATISFIED: return "SUFFICIENT_NOT_SATISFIED";
    case TestStatus::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

TestResult classify_vanishing(std::string name, std::vector<TrendPoint> ladder, double fail_tol) {
  TestResult r;
  r.name = std::move(name);
  r.trend = classify_trend(std::move(ladder));
  const auto& L = r.trend->ladder;
  r.numbers["fail_tol"] = fail_tol;
  if (L.empty()) return r;
  const std::size_t b = top_half_begin(L.size());
  double top_min = L[b].value;
  bool nonincreasing = true;
  for (std::size_t i = b; i < L.size(); ++i) {
    top_min = std::min(top_min, L[i].value);
    if (i > b) nonincreasing = nonincreasing && L[i].value <= L[i - 1].value;
  }
  r.numbers["top_half_min"] = top_min;
  r.numbers["last"] = L.back().value;
  if (top_min > fail_tol)
    r.status = TestStatus::NECESSARY_FAILED;
  else if (nonincreasing && L.back().value <= fail_tol)
    r.status = TestStatus::NECESSARY_CONSISTENT;
  return r;
}

double salem_transform(std::span<const double> coeffs, Parity parity, std::int64_t k) {
  if (k < 1) throw InputError("salem_transform needs k >= 1");
  return salem_sum([&](std::int64_t n) { return coeffs[static_cast<std::size_t>(n - 1)]; },
                   static_cast<std::int64_t>(coeffs.size()), parity, k);
}

complex salem_transform(std::span<const complex> coeffs, Parity parity, std::int64_t k) {
  if (k < 1) throw InputError("salem_transform needs k >= 1");
  return salem_sum([&](std::int64_t n) { return coeffs[static_cast<std::size_t>(n - 1)]; },
                   static_cast<std::int64_t>(coeffs.size()), parity, k);
}

TestResult salem_test(const CoefficientSequence& c, std::span<const std::int64_t> k_ladder) {
  check_ladder(k_ladder, "salem");
  const CosineSine cs = to_cosine_sine(c);
  std::span<const complex> a(cs.a);
  if (!a.empty()) a = a.subspan(1);
  const auto vals = parallel_map<std::pair<double, double>>(k_ladder.size(), [&](std::size_t i) {
    return std::pair{std::abs(salem_transform(a, Parity::even, k_ladder[i])),
                     std::abs(salem_transform(std::span<const complex>(cs.b), Parity::odd, k_ladder[i]))};
  });
  std::vector<TrendPoint> ladder;
  for (std::size_t i = 0; i < vals.size(); ++i)
    ladder.push_back({k_ladder[i], std::max(vals[i].first, vals[i].second)});
  TestResult r = classify_vanishing("salem", std::move(ladder));
  r.numbers["last_even"] = vals.back().first;
  r.numbers["last_odd"] = vals.back().second;
  return r;
}

TestResult dht_vanishing(const CoefficientSequence& c, std::span<const std::int64_t> n_ladder) {
  check_ladder(n_ladder, "dht");
  const auto vals = parallel_map<double>(n_ladder.size(), [&](std::size_t i) {
    return std::max(std::abs(dht(c, n_ladder[i])), std::abs(dht(c, -n_ladder[i])));
  });
  std::vector<TrendPoint> ladder;
  for (std::size_t i = 0; i < vals.size(); ++i) ladder.push_back({n_ladder[i], vals[i]});
  return classify_vanishing("dht_vanishing", std::move(ladder));
}

std::vector<double> p5_partial_sums(const CoefficientSequence& c, std::int64_t M) {
  if (M < 1) throw InputError("p5 partial sums need M >= 1");
  const auto n_max = std::max<std::uint64_t>(static_cast<std::uint64_t>(M), extent(c));
  const auto tc = tail_sup_profile(c, n_max);
  const auto td = tail_sup_profile(diff(c), n_max);
  std::vector<double> inner(n_max + 2, 0.0);
  for (std::uint64_t n = n_max + 1; n-- > 1;) inner[n] = inner[n + 1] + tc[n] * td[n];
  std::vector<double> out(static_cast<std::size_t>(M));
  double s = 0.0;
  for (std::int64_t m = 1; m <= M; ++m) {
    s += std::sqrt(inner[static_cast<std::size_t>(m)]) / static_cast<double>(m);
    out[static_cast<std::size_t>(m - 1)] = s;
  }
  return out;
}

TestResult p5_test1(const CoefficientSequence& c, std::int64_t M) {
  if (M < 2) throw InputError("p5_test1 needs M >= 2");
  const auto sums = p5_partial_sums(c, M);
  std::vector<TrendPoint> ladder;
  for (std::int64_t m = 2; m <= M; m *= 2) ladder.push_back({m, sums[static_cast<std::size_t>(m - 1)]});
  if (ladder.back().n != M) ladder.push_back({M, sums.back()});
  TestResult r;
  r.name = "p5_test1";
  r.trend = classify_trend(std::move(ladder));
  r.status = sufficient_from(r.trend->classification);
  const auto full = p5_partial_sums(c, static_cast<std::int64_t>(std::max<std::uint64_t>(extent(c), 1)));
  r.numbers["total"] = full.back();
  r.numbers["partial_M"] = sums.back();
  add_trend_numbers(r);
  return r;
}

TestResult p5_test1_family(const SequenceFamily& family, std::span<const std::int64_t> truncations) {
  check_ladder(truncations, "p5_test1");
  const auto vals = parallel_map<double>(truncations.size(), [&](std::size_t i) {
    const CoefficientSequence c = family(truncations[i]);
    return p5_partial_sums(c, static_cast<std::int64_t>(std::max<std::uint64_t>(extent(c), 1))).back();
  });
  std::vector<TrendPoint> ladder;
  for (std::size_t i = 0; i < vals.size(); ++i) ladder.push_back({truncations[i], vals[i]});
  TestResult r;
  r.name = "p5_test1";
  r.trend = classify_trend(std::move(ladder));
  r.status = sufficient_from(r.trend->classification);
  add_trend_numbers(r);
  return r;
}

double p5_q_threshold(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("q threshold needs finite p > 1");
  return 1.0 + 1.0 / (p - 1.0);
}

namespace {
void check_exponents(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q))
    throw InputError("p5_test2 exponents must be finite and positive");
}
}  // namespace

TestResult p5_test2(const CoefficientSequence& c, double p, double q) {
  check_exponents(p, q);
  TestResult r;
  r.name = "p5_test2";
  r.numbers["p"] = p;
  r.numbers["q"] = q;
  r.numbers["lp_norm"] = lp_norm(c, p);
  r.numbers["lq_norm_diff"] = lp_norm(diff(c), q);
  if (p <= 2.0) {
    r.status = TestStatus::SUFFICIENT_SATISFIED;
    return r;
  }
  const double thr = p5_q_threshold(p);
  r.numbers["q_threshold"] = thr;
  r.status = q < thr ? TestStatus::SUFFICIENT_SATISFIED : TestStatus::SUFFICIENT_NOT_SATISFIED;
  return r;
}

TestResult p5_test2_family(const SequenceFamily& family, std::span<const std::int64_t> truncations, double p,
                           double q) {
  check_exponents(p, q);
  check_ladder(truncations, "p5_test2");
  const auto vals = parallel_map<std::pair<double, double>>(truncations.size(), [&](std::size_t i) {
    const CoefficientSequence c = family(truncations[i]);
    return std::pair{lp_norm(c, p), lp_norm(diff(c), q)};
  });
  std::vector<TrendPoint> lp, lq;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    lp.push_back({truncations[i], vals[i].first});
    lq.push_back({truncations[i], vals[i].second});
  }
  const TrendReport tq = classify_trend(std::move(lq));
  TestResult r;
  r.name = "p5_test2";
  r.trend = classify_trend(std::move(lp));
  r.numbers["p"] = p;
  r.numbers["q"] = q;
  r.numbers["lp_norm"] = vals.back().first;
  r.numbers["lq_norm_diff"] = vals.back().second;
  r.numbers["lq_slope"] = tq.slope;
  const TrendClass cp = r.trend->classification;
  if (p <= 2.0) {
    r.status = sufficient_from(cp);
    return r;
  }
  const double thr = p5_q_threshold(p);
  r.numbers["q_threshold"] = thr;
  if (q >= thr || cp == TrendClass::GROWING || tq.classification == TrendClass::GROWING)
    r.status = TestStatus::SUFFICIENT_NOT_SATISFIED;
  else if (cp == TrendClass::BOUNDED && tq.classification == TrendClass::BOUNDED)
    r.status = TestStatus::SUFFICIENT_SATISFIED;
  return r;
}

namespace {

// min over k₀ in the support hull of Σ |d_k| |k - k₀|, attained at a weighted median.
double first_moment(const CoefficientSequence& d) {
  const double A = l1_norm(d);
  double acc = 0.0;
  std::int64_t k0 = d.offset();
  for (std::int64_t k = d.offset(); k < d.end(); ++k) {
    acc += std::abs(d[k]);
    if (2.0 * acc >= A) {
      k0 = k;
      break;
    }
  }
  double m = 0.0;
  for (std::int64_t k = d.offset(); k < d.end(); ++k) m += std::abs(d[k]) * static_cast<double>(std::abs(k - k0));
  return m;
}

}  // namespace

StepHilbertL1 step_hilbert_l1(const CoefficientSequence& d, const QuadratureSpec& spec) {
  if (d.empty()) return {0.0, 0.0};
  const std::int64_t lo = d.offset() - kDhtWindowMargin;
  const std::int64_t hi = d.end() + kDhtWindowMargin;  // cells [lo, hi)
  auto cell = [&](std::size_t i) {
    const double j = static_cast<double>(lo + static_cast<std::int64_t>(i));
    // x = j + t³/2 and x = j + 1 - t³/2 remove the logarithmic endpoint singularities.
    auto left = [&](double t) { return hilbert_step(d, j + 0.5 * t * t * t) * (1.5 * t * t); };
    auto right = [&](double t) { return hilbert_step(d, j + 1.0 - 0.5 * t * t * t) * (1.5 * t * t); };
    const std::vector<double> br{0.0, 0.5, 1.0};
    const QuadResult a = integrate_abs(left, br, spec);
    const QuadResult b = integrate_abs(right, br, spec);
    return std::pair{a.value + b.value, a.error + b.error};
  };
  const auto parts = parallel_map<std::pair<double, double>>(static_cast<std::size_t>(hi - lo), cell);
  double v = 0.0, e = 0.0;
  for (const auto& [pv, pe] : parts) {
    v += pv;
    e += pe;
  }
  // |HD(x)| <= M₁ / (π dist²) outside the window, by Σ d_k = 0.
  e += 2.0 * first_moment(d) / (kPi * static_cast<double>(kDhtWindowMargin));
  return {v, e};
}

TestResult t3h6_test(const CoefficientSequence& c, const HtrCheckOptions& opt) {
  TestResult r;
  r.name = "t3h6";
  r.status = TestStatus::SUFFICIENT_SATISFIED;
  const CoefficientSequence d = diff(c);
  Numbers& num = r.numbers;
  if (d.empty()) {
    for (const char* k : {"sum_abs_hd_window", "tail_bound", "sum_abs_hd_upper", "bv_hc_window", "sum_abs_d",
                          "commutation_gap"})
      num[k] = 0.0;
    return r;
  }
  const std::int64_t lo = d.offset() - kDhtWindowMargin;
  const std::int64_t hi = d.end() - 1 + kDhtWindowMargin;
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);

  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (count + 1 + kChunk - 1) / kChunk;
  auto hc_parts = parallel_map<std::vector<complex>>(chunks, [&](std::size_t i) {
    const std::int64_t a = lo + static_cast<std::int64_t>(i * kChunk);
    return dht_window(c, a, std::min(hi + 1, a + static_cast<std::int64_t>(kChunk) - 1));
  });
  auto hd_parts = parallel_map<std::vector<complex>>(chunks, [&](std::size_t i) {
    const std::int64_t a = lo + static_cast<std::int64_t>(i * kChunk);
    return dht_window(d, a, std::min(hi, a + static_cast<std::int64_t>(kChunk) - 1));
  });
  std::vector<complex> hc, hd;
  for (auto& p : hc_parts) hc.insert(hc.end(), p.begin(), p.end());
  for (auto& p : hd_parts) hd.insert(hd.end(), p.begin(), p.end());

  double sum_hd = 0.0, bv_hc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sum_hd += std::abs(hd[i]);
    bv_hc += std::abs(hc[i + 1] - hc[i]);
  }
  const double A = l1_norm(d);
  // Beyond the window |hd_n| <= M₁/dist², dist >= W+½+j on the right and W+j-½ on the left.
  const double W = static_cast<double>(kDhtWindowMargin);
  const double tail = first_moment(d) * (1.0 / W + 1.0 / (W + 1.0));
  num["sum_abs_hd_window"] = sum_hd;
  num["tail_bound"] = tail;
  num["sum_abs_hd_upper"] = sum_hd + tail;
  num["bv_hc_window"] = bv_hc;
  num["sum_abs_d"] = A;
  num["commutation_gap"] = std::abs(bv_hc - sum_hd);

  if (opt.enabled && d.size() <= opt.max_support) {
    const StepHilbertL1 I = step_hilbert_l1(d, opt.spec);
    const double gap = std::abs(sum_hd - I.value);
    num["htr_integral"] = I.value;
    num["htr_error"] = I.error;
    num["htr_gap"] = gap;
    num["htr_bound"] = opt.constant * A;
    if (gap > opt.constant * A + tail + I.error) r.status = TestStatus::INCONCLUSIVE;
  }
  return r;
}

TestResult t3h6_family(const SequenceFamily& family, std::span<const std::int64_t> truncations) {
  check_ladder(truncations, "t3h6");
  HtrCheckOptions off;
  off.enabled = false;
  std::vector<TrendPoint> ladder;
  Numbers last;
  for (std::int64_t n : truncations) {
    const TestResult one = t3h6_test(family(n), off);
    ladder.push_back({n, one.numbers.at("sum_abs_hd_upper")});
    last = one.numbers;
  }
  TestResult r;
  r.name = "t3h6";
  r.numbers = std::move(last);
  r.trend = classify_trend(std::move(ladder));
  r.status = sufficient_from(r.trend->classification);
  r.numbers["slope"] = r.trend->slope;
  return r;
}

TestResult monotone_odd_test(std::span<const double> b) {
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!std::isfinite(b[j]) || b[j] < 0.0)
      throw InputError("monotone_odd_test: b_" + std::to_string(j + 1) + " is negative or not finite");
    if (j > 0 && b[j] > b[j - 1])
      throw InputError("monotone_odd_test: sequence increases at index " + std::to_string(j + 1));
  }
  TestResult r;
  r.name = "monotone_odd";
  std::vector<TrendPoint> ladder;
  double s = 0.0;
  const std::size_t N = b.size();
  std::size_t next = 2;
  for (std::size_t k = 1; k <= N; ++k) {
    s += b[k - 1] / static_cast<double>(k);
    if (k == next || k == N) {
      ladder.push_back({static_cast<std::int64_t>(k), s});
      if (k == next) next *= 2;
    }
  }
  r.numbers["sum"] = s;
  if (ladder.empty()) {
    r.status = TestStatus::SUFFICIENT_SATISFIED;
    return r;
  }
  r.trend = classify_trend(std::move(ladder));
  r.numbers["slope"] = r.trend->slope;
  r.numbers["slope_tol"] = TrendThresholds{}.slope_tol;
  switch (r.trend->classification) {
    case TrendClass::BOUNDED: r.status = TestStatus::SUFFICIENT_SATISFIED; break;
    case TrendClass::GROWING: r.status = TestStatus::NECESSARY_FAILED; break;
    case TrendClass::INCONCLUSIVE: r.status = TestStatus::INCONCLUSIVE; break;
  }
  return r;
}

ModulusTable::ModulusTable(const SampledPeriodicFn& f) : step_(f.step()), period_(f.period()) {
  const std::size_t M = f.size();
  const auto s = f.samples();
  slope_.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    slope_[m] = (s[(m + 1) % M] - s[m]) / step_;
    max_slope_ = std::max(max_slope_, std::abs(slope_[m]));
  }
  const std::size_t J = M / 2;
  sup_prefix_.assign(J + 1, 0.0);
  l2_prefix_.assign(J + 1, 0.0);
  for (std::size_t j = 1; j <= J; ++j) {
    double sup = 0.0, l2 = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      const complex g0 = s[(m + j) % M] - s[m];
      const complex g1 = s[(m + 1 + j) % M] - s[(m + 1) % M];
      sup = std::max(sup, std::abs(g0));
      l2 += std::norm(g0) + (g0 * std::conj(g1)).real() + std::norm(g1);
    }
    sup_prefix_[j] = std::max(sup_prefix_[j - 1], sup);
    l2_prefix_[j] = std::max(l2_prefix_[j - 1], std::sqrt(std::max(0.0, l2 * step_ / 3.0)));
  }
}

double ModulusTable::l2_subcell(double delta) const {
  const std::size_t M = slope_.size();
  double acc = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const complex a = slope_[m], b = slope_[(m + 1) % M];
    acc += (step_ - delta) * delta * delta * std::norm(a) +
           delta * delta * delta * (std::norm(a) + (a * std::conj(b)).real() + std::norm(b)) / 3.0;
  }
  return std::sqrt(std::max(0.0, acc));
}

double ModulusTable::operator()(double h, ModulusNorm norm) const {
  if (!(h > 0.0)) throw InputError("modulus needs h > 0");
  if (h > period_ * (1.0 + 1e-12)) throw InputError("modulus shift exceeds the period");
  if (h < step_ * (1.0 - 1e-12)) return norm == ModulusNorm::sup ? h * max_slope_ : l2_subcell(h);
  const auto j = static_cast<std::size_t>(std::floor(h / step_ + 1e-9));
  const std::size_t jj = std::min(j, sup_prefix_.size() - 1);
  return norm == ModulusNorm::sup ? sup_prefix_[jj] : l2_prefix_[jj];
}

double modulus(const SampledPeriodicFn& f, double h, ModulusNorm norm) { return ModulusTable(f)(h, norm); }

std::vector<double> best_l2_tails(const SampledPeriodicFn& f) {
  const std::size_t M = f.size();
  detail::Dft dft(M, FFTW_FORWARD);
  std::copy(f.samples().begin(), f.samples().end(), dft.input().begin());
  dft.execute();
  const auto& out = dft.output();
  // |F_k|² by symmetric frequency |k|, k in (-M/2, M/2].
  const std::size_t K = M / 2;
  std::vector<double> by_freq(K + 1, 0.0);
  const double inv = 1.0 / static_cast<double>(M);
  for (std::size_t k = 0; k < M; ++k) {
    const std::size_t fk = k <= K ? k : M - k;
    by_freq[fk] += std::norm(out[k] * inv);
  }
  const std::size_t count = (M + 1) / 2;  // n < M/2
  std::vector<double> tails(count);
  double acc = 0.0;
  for (std::size_t n = K + 1; n-- > 0;) {
    if (n < count) tails[n] = std::sqrt(2.0 * f.halfperiod() * acc);
    acc += by_freq[n];
  }
  return tails;
}

double best_l2_tail(const SampledPeriodicFn& f, std::int64_t n) {
  if (n < 0) throw InputError("best_l2_tail needs n >= 0");
  if (2 * static_cast<std::uint64_t>(n) >= f.size()) throw InputError("best_l2_tail needs n < M/2");
  return best_l2_tails(f)[static_cast<std::size_t>(n)];
}

SmoothnessValues smoothness_values(const SampledPeriodicFn& f) {
  const ModulusTable tab(f);
  const double dx = f.step();
  const double h_min = 1.0 / static_cast<double>(f.size());
  const double top = std::min(1.0, f.period());
  SmoothnessValues v{0.0, 0.0, 0.0, h_min};
  if (top > h_min) {
    // Below one grid step ω(t) = t·max|slope| and ω₂(t)² is a cubic in t.
    const double sub_hi = std::min(dx, top);
    if (sub_hi > h_min) {
      const double smax = tab(0.5 * sub_hi, ModulusNorm::sup) / (0.5 * sub_hi);
      v.i2 += std::sqrt(smax) * 2.0 * (std::sqrt(sub_hi) - std::sqrt(h_min));
      // √t substitution makes the integrand smooth: ∫ ω₂(t)/√t dt = 2∫ ω₂(u²) du.
      QuadratureSpec qs;
      qs.abs_tol = 1e-13;
      auto g = [&](double u) { return 2.0 * tab(u * u, ModulusNorm::L2); };
      const std::vector<double> br{std::sqrt(h_min), std::sqrt(sub_hi)};
      v.i1 += integrate(RealFn(g), br, qs).value;
    }
    // Above one grid step both moduli are constant on [j dx, (j+1) dx).
    const auto j0 = static_cast<std::size_t>(std::max(1.0, std::floor(h_min / dx + 1e-9)));
    for (std::size_t j = j0;; ++j) {
      const double t0 = std::max(h_min, static_cast<double>(j) * dx);
      const double t1 = std::min(top, static_cast<double>(j + 1) * dx);
      if (t0 >= top) break;
      if (t1 <= t0) continue;
      const double mid = 0.5 * (t0 + t1);
      v.i2 += std::sqrt(tab(mid, ModulusNorm::sup)) * std::log(t1 / t0);
      v.i1 += tab(mid, ModulusNorm::L2) * 2.0 * (std::sqrt(t1) - std::sqrt(t0));
    }
  }
  const auto tails = best_l2_tails(f);
  for (std::size_t n = 1; n < tails.size(); ++n) v.e_sum += tails[n] / std::sqrt(static_cast<double>(n));
  return v;
}

TestResult smoothness_tests(const SampledPeriodicFn& f, const SmoothnessOptions& opt) {
  TestResult r;
  r.name = "smoothness";
  const std::size_t M = f.size();
  std::vector<std::size_t> factors;
  for (int l = opt.refinement_levels; l >= 0; --l) {
    const std::size_t fac = std::size_t{1} << l;
    if (M % fac == 0 && M / fac >= 4) factors.push_back(fac);
  }
  const auto vals = parallel_map<SmoothnessValues>(factors.size(), [&](std::size_t i) {
    return smoothness_values(factors[i] == 1 ? f : f.decimated(factors[i]));
  });
  std::vector<TrendPoint> t1, t2, ts;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const auto n = static_cast<std::int64_t>(M / factors[i]);
    t1.push_back({n, vals[i].i1});
    t2.push_back({n, vals[i].i2});
    ts.push_back({n, vals[i].e_sum});
  }
  const TrendReport r1 = classify_trend(std::move(t1));
  r.trend = classify_trend(std::move(t2));
  const TrendReport rs = classify_trend(std::move(ts));
  const SmoothnessValues& fin = vals.back();
  r.numbers["i1"] = fin.i1;
  r.numbers["i2"] = fin.i2;
  r.numbers["e_sum"] = fin.e_sum;
  r.numbers["h_min"] = fin.h_min;
  r.numbers["i1_slope"] = r1.slope;
  r.numbers["i2_slope"] = r.trend->slope;
  r.numbers["e_sum_slope"] = rs.slope;
  r.numbers["i1_bounded"] = r1.classification == TrendClass::BOUNDED ? 1.0 : 0.0;
  r.numbers["i2_bounded"] = r.trend->classification == TrendClass::BOUNDED ? 1.0 : 0.0;
  r.numbers["e_sum_bounded"] = rs.classification == TrendClass::BOUNDED ? 1.0 : 0.0;
  r.numbers["variation"] = f.variation();

  // Fourier coefficients |f̂_k| monotone in |k| decide the necessity branch.
  {
    const auto tails = best_l2_tails(f);
    bool mono = true;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n + 1 < tails.size(); ++n) {
      const double band = std::sqrt(std::max(0.0, tails[n] * tails[n] - tails[n + 1] * tails[n + 1]));
      if (band > prev * (1.0 + 1e-9) + 1e-14) mono = false;
      prev = band;
    }
    r.numbers["coeff_monotone"] = mono ? 1.0 : 0.0;
  }
  if (opt.support_margin) {
    const double eps = *opt.support_margin;
    const double a = f.halfperiod();
    bool inside = true;
    for (std::size_t m = 0; m < M; ++m) {
      const double x = f.node(static_cast<std::int64_t>(m));
      if (std::abs(x) > a - eps && f.samples()[m] != complex{}) inside = false;
    }
    r.numbers["support_margin"] = eps;
    r.numbers["compact_support"] = inside ? 1.0 : 0.0;
  }

  if (r1.classification == TrendClass::BOUNDED || r.trend->classification == TrendClass::BOUNDED ||
      rs.classification == TrendClass::BOUNDED)
    r.status = TestStatus::SUFFICIENT_SATISFIED;
  else if (r1.classification == TrendClass::GROWING && r.trend->classification == TrendClass::GROWING)
    r.status = TestStatus::SUFFICIENT_NOT_SATISFIED;
  return r;
}

double w0star_majorant(const SampledPeriodicFn& g, double T, const QuadratureSpec& spec) {
  if (!(T > 0.0)) throw InputError("w0star_majorant needs T > 0");
  if (T > g.halfperiod() * (1.0 + 1e-12)) throw InputError("samples do not cover [-T, T]");
  const double dx = g.step();
  // Nodes at ±j dx; cells [j dx, (j+1) dx] traversed from T down to 0.
  const auto jT = static_cast<std::int64_t>(std::floor(T / dx + 1e-9));
  std::vector<std::pair<double, double>> cells;  // [t0, t1], descending
  double hi = T;
  for (std::int64_t j = jT; j >= 0; --j) {
    const double lo = static_cast<double>(j) * dx;
    if (hi > lo) cells.push_back({lo, hi});
    hi = lo;
  }
  double env = std::max(std::abs(g(T)), std::abs(g(-T)));
  double total = 0.0;
  for (const auto& [t0, t1] : cells) {
    const double beyond = env;
    auto e = [&](double t) { return std::max({beyond, std::abs(g(t)), std::abs(g(-t))}); };
    const std::vector<double> br{t0, t1};
    total += integrate(RealFn(e), br, spec).value;
    env = std::max({env, std::abs(g(t0)), std::abs(g(-t0))});
  }
  return total;
}

ZygmundBridge zygmund_bridge(const ModulusTable& table, double variation, double h) {
  return {table(h, ModulusNorm::L2), std::sqrt(variation * h * table(h, ModulusNorm::sup))};
}

}  // namespace wienerkit
