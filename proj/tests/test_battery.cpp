#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wienerkit/battery.hpp"
#include "wienerkit/error.hpp"
#include "wienerkit/transforms.hpp"

using namespace wienerkit;
using oracle::pi;

namespace {
std::vector<std::int64_t> pow2(int lo, int hi) {
  std::vector<std::int64_t> v;
  for (int e = lo; e <= hi; ++e) v.push_back(std::int64_t{1} << e);
  return v;
}

CoefficientSequence symmetric_from(std::int64_t n, auto&& f) {
  std::vector<complex> v(static_cast<std::size_t>(2 * n + 1));
  for (std::int64_t k = -n; k <= n; ++k) v[static_cast<std::size_t>(k + n)] = f(k);
  return CoefficientSequence(-n, std::move(v));
}

SampledPeriodicFn hat(std::size_t M) {
  return sample_periodic(1.0, M, [](double x) { return complex(1.0 - std::abs(x), 0.0); });
}
}  // namespace

TEST_CASE("salem_transform examples") {
  const std::vector<double> a1{1.0};
  CHECK(salem_transform(a1, Parity::even, 1) == doctest::Approx(0.8).epsilon(1e-15));
  const std::vector<double> zero(10, 0.0);
  CHECK(salem_transform(zero, Parity::odd, 3) == 0.0);
  CHECK_THROWS_AS(salem_transform(a1, Parity::even, 0), InputError);

  // b_n = 1/n: |value| decreases toward 0 along k = 2^4 .. 2^12 (long truncation).
  constexpr std::int64_t N = std::int64_t{1} << 26;
  double prev = INFINITY;
  for (std::int64_t k : pow2(4, 12)) {
    const double v = salem_sum([](std::int64_t n) { return 1.0 / static_cast<double>(n); }, N, Parity::odd, k);
    CHECK(std::abs(v) < prev);
    prev = std::abs(v);
  }
  CHECK(prev < 1e-7);
}

TEST_CASE("salem sums reassemble into the discrete Hilbert transform") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 30; ++t) {
    const auto c0 = oracle::random_sequence(rng, 25);
    // Real series (c_{-k} = conj c_k) and a general complex one.
    const auto real = combine(0.5, c0, 0.5, symmetric_from(40, [&](std::int64_t k) { return std::conj(c0[-k]); }));
    for (const auto& c : {real, c0}) {
      const CosineSine cs = to_cosine_sine(c);
      std::span<const complex> a(cs.a);
      for (std::int64_t k = 1; k <= 60; k += 3) {
        const double z = static_cast<double>(k) + 0.5;
        const complex E = salem_transform(a.subspan(1), Parity::even, k);
        const complex O = salem_transform(std::span<const complex>(cs.b), Parity::odd, k);
        const complex rebuilt = cs.a[0] / (2 * z) + (z / static_cast<double>(k)) * E - complex(0, 1) * O;
        CHECK(std::abs(rebuilt - dht(c, k)) < 1e-12);
      }
    }
  }
}

TEST_CASE("dht_vanishing examples") {
  const auto ladder = pow2(4, 9);
  const auto z = dht_vanishing(CoefficientSequence{}, ladder);
  CHECK(z.status == TestStatus::NECESSARY_CONSISTENT);
  for (const auto& p : z.trend->ladder) CHECK(p.value == 0.0);

  const auto one = dht_vanishing(CoefficientSequence(0, {1.0}), ladder);
  CHECK(one.status == TestStatus::NECESSARY_CONSISTENT);
  for (const auto& p : one.trend->ladder) CHECK(std::abs(p.value - 1.0 / (p.n - 0.5)) < 1e-15);

  const auto poisson = symmetric_from(512, [](std::int64_t k) { return std::pow(0.5, std::abs(k)); });
  const auto pr = dht_vanishing(poisson, ladder);
  CHECK(pr.status == TestStatus::NECESSARY_CONSISTENT);
  for (std::size_t i = 1; i < pr.trend->ladder.size(); ++i)
    CHECK(pr.trend->ladder[i].value < pr.trend->ladder[i - 1].value);

  // c_k = 1 on |k| <= 2048 (a Dirichlet-kernel truncation of a non-decaying sequence):
  // hc_n ≈ ln((n+N)/(n-N)) stays large inside the window.
  const auto flat = symmetric_from(2048, [](std::int64_t) { return 1.0; });
  const auto fr = dht_vanishing(flat, ladder);
  CHECK(fr.status == TestStatus::NECESSARY_FAILED);
  CHECK(fr.numbers.at("top_half_min") > fr.numbers.at("fail_tol"));
}

TEST_CASE("p5_test1 examples") {
  const auto one = p5_test1(CoefficientSequence(0, {1.0}), 64);
  CHECK(one.status == TestStatus::SUFFICIENT_SATISFIED);
  CHECK(one.numbers.at("total") == 0.0);
  const auto z = p5_test1(CoefficientSequence{}, 8);
  CHECK(z.numbers.at("total") == 0.0);
  CHECK_THROWS_AS(p5_test1(z.name.empty() ? CoefficientSequence{} : CoefficientSequence{}, 1), InputError);

  // Direct oracle for the partial sums.
  std::mt19937_64 rng(4);
  const auto c = oracle::random_sequence(rng, 20);
  const auto sums = p5_partial_sums(c, 30);
  const auto d = diff(c);
  double s = 0.0;
  for (int m = 1; m <= 30; ++m) {
    double inner = 0.0;
    for (int n = m; n <= 200; ++n) inner += tail_sup(c, n) * tail_sup(d, n);
    s += std::sqrt(inner) / m;
    CHECK(std::abs(sums[static_cast<std::size_t>(m - 1)] - s) < 1e-12);
  }

  SequenceFamily fam = [](std::int64_t n) {
    return symmetric_from(n, [](std::int64_t k) {
      const double u = static_cast<double>(std::abs(k)) + 2.0;
      return 1.0 / (u * std::log(u) * std::log(u));
    });
  };
  const auto f = p5_test1_family(fam, pow2(4, 14));
  CHECK(f.trend->classification == TrendClass::BOUNDED);
  CHECK(f.status == TestStatus::SUFFICIENT_SATISFIED);
}

TEST_CASE("p5_test2 examples") {
  const auto one = p5_test2(CoefficientSequence(0, {1.0}), 2.0, 1.0);
  CHECK(one.numbers.at("lp_norm") == doctest::Approx(1.0));
  CHECK(one.numbers.at("lq_norm_diff") == doctest::Approx(2.0));
  CHECK(one.status == TestStatus::SUFFICIENT_SATISFIED);
  CHECK(p5_test2(CoefficientSequence(0, {1.0}), 3.0, 1.6).status == TestStatus::SUFFICIENT_NOT_SATISFIED);
  CHECK(p5_test2(CoefficientSequence(0, {1.0}), 3.0, 1.4).status == TestStatus::SUFFICIENT_SATISFIED);
  CHECK(p5_q_threshold(2.5) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(p5_q_threshold(3.0) == 1.5);
  CHECK(p5_q_threshold(5.0) == 1.25);
  CHECK_THROWS_AS(p5_test2(CoefficientSequence{}, 0.0, 1.0), InputError);
  CHECK_THROWS_AS(p5_test2(CoefficientSequence{}, 2.0, -1.0), InputError);

  // c_k = (|k|+1)^{-0.4}: in l_3 (slowly), differences in l_1.
  SequenceFamily fam = [](std::int64_t n) {
    return symmetric_from(n, [](std::int64_t k) { return std::pow(static_cast<double>(std::abs(k)) + 1.0, -0.4); });
  };
  const auto f = p5_test2_family(fam, pow2(8, 20), 3.0, 1.0);
  CHECK(f.trend->classification == TrendClass::BOUNDED);
  CHECK(f.status == TestStatus::SUFFICIENT_SATISFIED);
}

TEST_CASE("t3h6 examples and exactness") {
  const auto z = t3h6_test(CoefficientSequence{});
  CHECK(z.numbers.at("sum_abs_hd_window") == 0.0);
  CHECK(z.numbers.at("bv_hc_window") == 0.0);

  const auto one = t3h6_test(CoefficientSequence(0, {1.0}));
  // hd_n = 1/(n+3/2) - 1/(n+1/2); Σ over ℤ by direct long summation.
  double ref = 0.0;
  for (int n = -2000000; n <= 2000000; ++n) ref += std::abs(1.0 / (n + 1.5) - 1.0 / (n + 0.5));
  const double lo = one.numbers.at("sum_abs_hd_window"), hi = one.numbers.at("sum_abs_hd_upper");
  CHECK(lo <= ref);
  CHECK(ref <= hi);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto c = oracle::random_sequence(rng, 64);
    const auto r = t3h6_test(c);
    const double scale = 1.0 + r.numbers.at("sum_abs_hd_window");
    CHECK(r.numbers.at("commutation_gap") <= 1e-12 * scale);
    CHECK(r.numbers.at("htr_gap") <= r.numbers.at("htr_bound"));
    CHECK(r.status == TestStatus::SUFFICIENT_SATISFIED);
    // The upper value majorizes a much wider direct sum.
    const auto d = diff(c);
    double wide = 0.0;
    for (std::int64_t n = d.offset() - 20000; n <= d.end() + 20000; ++n) {
      complex s{};
      for (std::int64_t k = d.offset(); k < d.end(); ++k) s += d[k] / (static_cast<double>(n - k) + 0.5);
      wide += std::abs(s);
    }
    CHECK(wide <= r.numbers.at("sum_abs_hd_upper"));
    CHECK(r.numbers.at("sum_abs_hd_window") <= wide);
  }

  // Wide support concentrated near 0: the tail stays small.
  std::vector<complex> v(801);
  for (int k = -400; k <= 400; ++k) v[static_cast<std::size_t>(k + 400)] = std::pow(0.5, std::abs(k));
  const auto p = t3h6_test(CoefficientSequence(-400, v), {false});
  CHECK(p.numbers.at("tail_bound") < 0.2);
}

TEST_CASE("step Hilbert L1 against a brute-force principal value") {
  const CoefficientSequence d(0, {1.0, -1.0});
  QuadratureSpec spec{1e-9, 1e-7};
  const auto I = step_hilbert_l1(d, spec);
  // Midpoint oracle on a fine grid away from the integer singularities.
  double ref = 0.0;
  const double h = 1e-3;
  for (double x = -50.0 + h / 2; x < 52.0; x += h) ref += std::abs(oracle::hilbert_step_pv(d, x)) * h;
  CHECK(std::abs(I.value - ref) < 2e-3);
}

TEST_CASE("monotone_odd_test examples") {
  std::vector<double> b2(4096);
  for (std::size_t k = 0; k < b2.size(); ++k) b2[k] = 1.0 / double((k + 1) * (k + 1));
  const auto r2 = monotone_odd_test(b2);
  CHECK(r2.status == TestStatus::SUFFICIENT_SATISFIED);
  CHECK(std::abs(r2.numbers.at("sum") - 1.2020569031595942) < 1e-7);

  std::vector<double> bl(4096);
  for (std::size_t k = 0; k < bl.size(); ++k) bl[k] = 1.0 / std::log(double(k + 2));
  const auto rl = monotone_odd_test(bl);
  CHECK(rl.status == TestStatus::NECESSARY_FAILED);
  CHECK(rl.numbers.at("slope") > rl.numbers.at("slope_tol"));

  const std::vector<double> e{1.0, 0.0, 0.0, 0.0};
  const auto re = monotone_odd_test(e);
  CHECK(re.numbers.at("sum") == 1.0);
  CHECK(re.status == TestStatus::SUFFICIENT_SATISFIED);

  const std::vector<double> bad{1.0, 0.5, 0.7};
  try {
    monotone_odd_test(bad);
    FAIL("expected InputError");
  } catch (const InputError& err) {
    CHECK(std::string(err.what()).find("index 3") != std::string::npos);
  }
}

TEST_CASE("modulus examples and properties") {
  const auto h = hat(400);
  CHECK(std::abs(modulus(h, 0.5, ModulusNorm::sup) - 0.5) < 1e-12);
  const auto cst = sample_periodic(1.0, 64, [](double) { return complex(2.0); });
  for (double t : {1e-3, 0.1, 1.0, 2.0}) {
    CHECK(modulus(cst, t, ModulusNorm::sup) == 0.0);
    CHECK(modulus(cst, t, ModulusNorm::L2) == 0.0);
  }
  const double a = 2.0;
  const auto s = sample_periodic(a, 2048, [&](double x) { return complex(std::sin(pi * x / a)); });
  const double small = 0.01;
  // Grid-resolved: bias at most one cell times the maximal slope.
  CHECK(modulus(s, small, ModulusNorm::sup) <= (pi / a) * small + 1e-12);
  CHECK(modulus(s, small, ModulusNorm::sup) >= (pi / a) * (small - s.step()) * std::cos(pi * small / a));
  CHECK_THROWS_AS(modulus(s, 4.5, ModulusNorm::sup), InputError);
  CHECK_THROWS_AS(modulus(s, 0.0, ModulusNorm::sup), InputError);

  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int t = 0; t < 5; ++t) {
    std::vector<complex> v(48);
    for (auto& x : v) x = {g(rng), g(rng)};
    const SampledPeriodicFn f(1.5, v);
    const ModulusTable tab(f);
    const double dx = f.step();
    for (int j = 1; j <= 48; ++j) {
      for (auto norm : {ModulusNorm::sup, ModulusNorm::L2}) {
        const double w = tab(j * dx, norm);
        CHECK(std::abs(w - oracle::brute_modulus(f, j * dx, norm == ModulusNorm::L2)) <= 1e-12 * (1 + w));
        if (j > 1) CHECK(tab((j - 1) * dx, norm) <= w);
        for (int i = 1; i + j <= 48; i += 5) CHECK(tab((i + j) * dx, norm) <= tab(i * dx, norm) + w + 1e-12);
      }
      CHECK(tab(j * dx, ModulusNorm::sup) <= 2 * f.max_abs() + 1e-12);
    }
    // Sub-cell shifts are exact for the interpolant.
    for (double frac : {0.1, 0.5, 0.9}) {
      const double delta = frac * dx;
      double sup = 0.0, l2 = 0.0;
      using Q = boost::math::quadrature::gauss<double, 10>;
      for (int m = 0; m < 48; ++m) {
        const double x0 = f.node(m);
        for (double x : {x0, x0 + dx - delta}) sup = std::max(sup, std::abs(f(x + delta) - f(x)));
        auto sq = [&](double x) { return std::norm(f(x + delta) - f(x)); };
        l2 += Q::integrate(sq, x0, x0 + dx - delta) + Q::integrate(sq, x0 + dx - delta, x0 + dx);
      }
      CHECK(std::abs(tab(delta, ModulusNorm::sup) - sup) < 1e-12);
      CHECK(std::abs(tab(delta, ModulusNorm::L2) - std::sqrt(l2)) < 1e-12);
    }
  }
}

TEST_CASE("best_l2_tail examples") {
  const double a = 1.5;
  const auto e = sample_periodic(a, 64, [&](double x) { return std::exp(complex(0, pi * x / a)); });
  CHECK(std::abs(best_l2_tail(e, 0) - std::sqrt(2 * a)) < 1e-13);
  CHECK(best_l2_tail(e, 1) < 1e-13);
  const auto z = sample_periodic(a, 64, [](double) { return complex{}; });
  for (int n = 0; n < 32; ++n) CHECK(best_l2_tail(z, n) == 0.0);
  CHECK_THROWS_AS(best_l2_tail(z, 32), InputError);
  CHECK_THROWS_AS(best_l2_tail(z, -1), InputError);

  const auto h = hat(128);
  const auto tails = best_l2_tails(h);
  for (int n = 0; n <= 8; ++n) CHECK(std::abs(tails[static_cast<std::size_t>(n)] - oracle::grid_lsq_residual(h, n)) < 1e-8);
  for (std::size_t n = 1; n < tails.size(); ++n) CHECK(tails[n] <= tails[n - 1] + 1e-15);
}

TEST_CASE("smoothness_tests examples") {
  const auto h = hat(4096);
  const auto r = smoothness_tests(h);
  CHECK(r.status == TestStatus::SUFFICIENT_SATISFIED);
  // ω(t) = t for the unit-slope hat: I₂ = 2(1 - √h_min), less a grid bias of order √Δ.
  const double i2 = r.numbers.at("i2"), exact = 2 * (1 - std::sqrt(r.numbers.at("h_min")));
  CHECK(i2 <= exact + 1e-12);
  CHECK(i2 >= exact - std::sqrt(h.step()));
  CHECK(r.numbers.at("i1_bounded") == 1.0);

  const auto z = smoothness_tests(sample_periodic(1.0, 256, [](double) { return complex{}; }));
  CHECK(z.numbers.at("i1") == 0.0);
  CHECK(z.numbers.at("i2") == 0.0);
  CHECK(z.numbers.at("e_sum") == 0.0);

  // ω(t) ≍ 1/ln²(1/t): I₂ grows like ln ln(1/h_min) under refinement.
  const auto slow = sample_periodic(pi, 1 << 14, [](double x) {
    return x == 0.0 ? complex{} : complex(1.0 / std::pow(std::log(4 * pi / std::abs(x)), 2), 0.0);
  });
  SmoothnessOptions opt;
  opt.refinement_levels = 5;
  const auto s = smoothness_tests(slow, opt);
  CHECK(s.trend->classification == TrendClass::GROWING);
  CHECK(s.numbers.at("i2_bounded") == 0.0);

  SmoothnessOptions sup;
  sup.support_margin = 0.1;
  const auto bump = sample_periodic(2.0, 512, [](double x) { return complex(std::max(0.0, 1.0 - std::abs(x))); });
  CHECK(smoothness_tests(bump, sup).numbers.at("compact_support") == 1.0);
  CHECK(smoothness_tests(h, sup).numbers.at("compact_support") == 0.0);
}

TEST_CASE("w0star_majorant examples") {
  const double a = 4.0;
  const std::size_t M = 8192;
  const auto ind = sample_periodic(a, M, [](double s) { return complex((s >= 0 && s < 1) ? 1.0 : 0.0); });
  CHECK(std::abs(w0star_majorant(ind, 2.0) - 1.0) <= 2 * ind.step());
  const auto z = sample_periodic(a, 64, [](double) { return complex{}; });
  CHECK(w0star_majorant(z, 2.0) == 0.0);
  const auto lor = sample_periodic(a, M, [](double s) { return complex(1.0 / (1.0 + s * s)); });
  for (double T : {1.0, 2.5, 4.0}) CHECK(std::abs(w0star_majorant(lor, T) - std::atan(T)) < 1e-6);
  CHECK(w0star_majorant(lor, 2.0) <= w0star_majorant(lor, 3.0));
  CHECK_THROWS_AS(w0star_majorant(lor, 5.0), InputError);
}

TEST_CASE("zygmund bridge on random piecewise-linear functions") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  for (int t = 0; t < 5; ++t) {
    std::vector<complex> v(64);
    for (auto& x : v) x = {g(rng), 0.3 * g(rng)};
    const SampledPeriodicFn f(1.0, v);
    const ModulusTable tab(f);
    const double V = f.variation();
    for (int j = 1; j <= 64; ++j) {
      const auto zb = zygmund_bridge(tab, V, j * f.step());
      CHECK(zb.l2_modulus <= zb.bound * (1 + 1e-12));
    }
    for (double frac : {0.01, 0.3, 0.99}) {
      const auto zb = zygmund_bridge(tab, V, frac * f.step());
      CHECK(zb.l2_modulus <= zb.bound * (1 + 1e-12));
    }
  }
}
