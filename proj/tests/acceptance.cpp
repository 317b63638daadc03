// Acceptance run: one PASS/FAIL line per criterion. A criterion passes only
// if its check holds and it finishes within its runtime budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wienerkit/app.hpp"
#include "wienerkit/battery.hpp"
#include "wienerkit/transforms.hpp"
#include "wienerkit/wnorm.hpp"

using namespace wienerkit;
using oracle::pi;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<std::int64_t> pow2(int lo, int hi) {
  std::vector<std::int64_t> v;
  for (int e = lo; e <= hi; ++e) v.push_back(std::int64_t{1} << e);
  return v;
}

Outcome folding() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-pi, pi);
  double worst_dev = 0.0, worst_bound = 0.0;
  bool ok = true;
  for (int i = 0; i < 100; ++i) {
    const auto f = fold_sum(u(rng), 10000);
    const double dev = std::abs(f.value - 0.25);
    ok = ok && dev <= f.tail_bound && f.tail_bound <= 1e-5;
    worst_dev = std::max(worst_dev, dev);
    worst_bound = std::max(worst_bound, f.tail_bound);
  }
  return {ok, "max |value-1/4| = " + fmt("%.3e", worst_dev) + ", max tail_bound = " + fmt("%.3e", worst_bound)};
}

Outcome transform_pair() {
  const auto K = l1_line([](double y) { return complex(hat_kernel(y)); }, QuadratureSpec{}, 4.0, pi);
  const double err = std::abs(K.value - 2 * pi);
  return {err <= 1e-6, "|∫K - 2π| = " + fmt("%.3e", err)};
}

Outcome zigzag() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-30.0, 30.0);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const auto c = oracle::random_sequence(rng, 32);
    for (int j = 0; j < 20; ++j) {
      const double x = ux(rng);
      const complex ref = oracle::zigzag_ft_quadrature(c, x);
      worst = std::max(worst, std::abs(zigzag_ft(c, x) - ref) / std::abs(ref));
    }
  }
  return {worst <= 1e-8, "max relative error = " + fmt("%.3e", worst)};
}

Outcome norm_pair() {
  std::mt19937_64 rng(4);
  const QuadratureSpec spec;
  double worst = 0.0;
  for (int s = 0; s < 30; ++s) {
    const auto c = oracle::random_sequence(rng, 48, 20);
    for (std::int64_t n : {4, 16, 64}) worst = std::max(worst, std::abs(w0_norm_fejer(c, n, spec) - w0_norm_line(c, n, spec)));
  }
  return {worst <= 1e-5, "max |fejer - line| = " + fmt("%.3e", worst)};
}

std::vector<MeasureModel> measures() {
  std::vector<MeasureModel> m;
  m.emplace_back(std::vector<Atom>{{0.0, 1.0}});
  m.emplace_back(std::vector<Atom>{{0.5, 1.0}, {-2.0, 0.5}, {pi, 0.25}});
  m.emplace_back(std::vector<Atom>{{1.0, 1.0}, {-1.0, -1.0}});
  m.emplace_back(std::vector<Atom>{{0.3, complex{0.5, -0.5}}, {2.5, complex{-0.2, 0.7}}, {-1.7, -0.4}});
  m.emplace_back(std::vector<Atom>{}, sample_periodic(pi, 256, [](double t) { return complex(1.0 + std::cos(t)); }));
  m.emplace_back(std::vector<Atom>{},
                 sample_periodic(pi, 256, [](double t) { return complex(std::sin(3 * t), 0.5 * std::cos(t)); }));
  m.emplace_back(std::vector<Atom>{},
                 sample_periodic(pi, 128, [](double t) { return complex(std::abs(t) < 1.0 ? 1.0 - std::abs(t) : 0.0); }));
  m.emplace_back(std::vector<Atom>{{0.0, 0.5}},
                 sample_periodic(pi, 256, [](double t) { return complex(std::exp(-t * t)); }));
  m.emplace_back(std::vector<Atom>{{-0.4, -1.0}, {2.0, complex{0, 1}}},
                 sample_periodic(pi, 256, [](double t) { return complex(t, -0.3); }));
  m.emplace_back(std::vector<Atom>{{1e-3, 1.0}, {-1e-3, -1.0}},
                 sample_periodic(pi, 64, [](double t) { return complex(std::cos(5 * t)); }));
  return m;
}

Outcome domination() {
  const QuadratureSpec spec;
  double worst = -INFINITY;
  std::size_t checks = 0;
  for (const auto& mu : measures()) {
    for (std::int64_t n = 1; n <= 256; n *= 2) {
      const auto b = stieltjes_norm_bound_check(mu, n, spec);
      worst = std::max(worst, b.lhs - b.rhs);
      ++checks;
    }
  }
  return {worst <= 1e-9, std::to_string(checks) + " checks, max (norm - V) = " + fmt("%.3e", worst)};
}

Outcome commutation() {
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto c = oracle::random_sequence(rng, 64, 30);
    const auto d = diff(c);
    for (std::int64_t n = c.offset() - 51; n <= c.end() + 50; ++n)
      worst = std::max(worst, std::abs(dht(d, n) - (dht(c, n + 1) - dht(c, n))));
  }
  return {worst <= 1e-12, "max |hd_n - (hc_{n+1} - hc_n)| = " + fmt("%.3e", worst)};
}

Outcome htr() {
  std::mt19937_64 rng(7);
  double worst_ratio = 0.0;
  for (int s = 0; s < 20; ++s) {
    // d = diff(c) for random finite c: summable, Σ d_k = 0.
    const auto c = oracle::random_sequence(rng, 24);
    const auto r = t3h6_test(c);
    const auto& n = r.numbers;
    // Σ|hd_n| ∈ [window, window + tail], ∫|HD| ∈ [I - err, I + err].
    const double lo = n.at("sum_abs_hd_window"), hi = n.at("sum_abs_hd_upper");
    const double I = n.at("htr_integral"), e = n.at("htr_error");
    const double gap = std::max(std::abs(hi - (I - e)), std::abs((I + e) - lo));
    worst_ratio = std::max(worst_ratio, gap / n.at("sum_abs_d"));
  }
  return {worst_ratio <= 10.0, "max |Σ|hd| - ∫|HD|| / Σ|d| = " + fmt("%.4f", worst_ratio)};
}

Outcome lemma_l1() {
  const QuadratureSpec spec;
  const auto s = conjugate_integral([](double t) { return complex(std::sin(t)); }, 0.0, 1e-4, 1e4, spec);
  const double err = std::abs(s - pi);
  std::vector<MeasureModel> mus;
  mus.emplace_back(std::vector<Atom>{{1.0, complex{0, 0.5}}, {-1.0, complex{0, -0.5}}});
  mus.emplace_back(std::vector<Atom>{{0.5, 1.0}, {-2.0, -0.5}, {pi, 0.25}});
  mus.emplace_back(std::vector<Atom>{{0.3, complex{0.5, -0.5}}, {2.5, complex{-0.2, 0.7}}});
  mus.emplace_back(std::vector<Atom>{}, sample_periodic(pi, 64, [](double t) { return complex(1.0 + std::cos(t)); }));
  mus.emplace_back(std::vector<Atom>{{0.0, 0.5}},
                   sample_periodic(pi, 64, [](double t) { return complex(std::sin(2 * t), 0.2); }));
  double worst = 0.0;
  for (const auto& mu : mus) {
    const double V = total_variation(mu);
    const ComplexFn phi = [&mu](double x) { return stieltjes_transform(mu, x); };
    for (double x : {-3.0, -0.7, 0.0, 1.1, 4.0})
      for (double delta : {1e-3, 1e-2, 0.1, 0.5, 1.0})
        for (double M : {2.0, 10.0, 50.0, 200.0, 1000.0})
          worst = std::max(worst, std::abs(conjugate_integral(phi, x, delta, M, spec)) / V);
  }
  return {err <= 1e-3 && worst <= 4.0,
          "|value - π| = " + fmt("%.3e", err) + ", max |integral|/V over 625 points = " + fmt("%.4f", worst)};
}

Outcome gallery_separations() {
  const auto p = app::gallery("poisson");
  double pmax = 0.0;
  for (const auto& q : p.trend->ladder) pmax = std::max(pmax, q.value);
  const double plast = p.trend->ladder.back().value;
  const bool poisson_ok = pmax <= 1.0 + 1e-9 && std::abs(plast - 1.0) <= 0.01;

  const auto l = app::gallery("log_sine");
  bool inc = l.trend->ladder.size() == 8 && l.trend->ladder.front().n == 64 && l.trend->ladder.back().n == 8192;
  for (std::size_t i = 1; i < l.trend->ladder.size(); ++i) inc = inc && l.trend->ladder[i].value > l.trend->ladder[i - 1].value;

  const auto s = app::gallery("salem");
  const TestResult* so = nullptr;
  for (const auto& t : s.tests)
    if (t.name == "salem_odd") so = &t;
  const bool salem_ok = so && so->numbers.at("monotone_decreasing") == 1.0 && so->status == TestStatus::NECESSARY_CONSISTENT &&
                        so->trend->ladder.front().n == 16 && so->trend->ladder.back().n == 4096;
  return {poisson_ok && inc && salem_ok,
          "poisson max " + fmt("%.12f", pmax) + " last " + fmt("%.6f", plast) + "; log_sine " +
              fmt("%.4f", l.trend->ladder.front().value) + " -> " + fmt("%.4f", l.trend->ladder.back().value) +
              (inc ? " increasing" : " NOT increasing") + "; salem |odd| " +
              (so ? fmt("%.3e", so->trend->ladder.front().value) + " -> " + fmt("%.3e", so->trend->ladder.back().value)
                  : std::string("missing")) +
              (salem_ok ? " decreasing" : " NOT decreasing")};
}

Outcome chirp() {
  const auto fit = app::chirp_fit(0.8);
  return {std::abs(fit.slope + 1.15) <= 0.05, "fitted slope = " + fmt("%.4f", fit.slope) + " (target -1.15)"};
}

Outcome parseval() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> mexp(5, 8);
  double worst = 0.0;
  for (int s = 0; s < 10; ++s) {
    const std::size_t M = std::size_t{1} << mexp(rng);
    const double a = 0.5 + 2.0 * std::abs(g(rng));
    std::vector<complex> v(M);
    for (auto& z : v) z = {g(rng), g(rng)};
    const SampledPeriodicFn f(a, v);
    for (int n = 0; n <= 8; ++n) worst = std::max(worst, std::abs(best_l2_tail(f, n) - oracle::grid_lsq_residual(f, n)));
  }
  return {worst <= 1e-8, "max |E_n - lsq residual| = " + fmt("%.3e", worst)};
}

Outcome zygmund() {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> len(8, 256);
  double worst = -INFINITY;
  std::size_t checks = 0;
  for (int s = 0; s < 20; ++s) {
    const auto M = static_cast<std::size_t>(len(rng));
    std::vector<complex> v(M);
    // Random walk plus occasional jumps: varied modulus profiles.
    complex acc{};
    for (auto& z : v) {
      acc += complex{g(rng), 0.5 * g(rng)} * (s % 2 == 0 ? 1.0 : 0.1);
      if (s % 3 == 0 && g(rng) > 1.5) acc += 5.0;
      z = acc;
    }
    const SampledPeriodicFn f(0.5 + std::abs(g(rng)), v);
    const ModulusTable tab(f);
    const double V = f.variation();
    for (std::size_t j = 1; j <= M; ++j) {
      const auto zb = zygmund_bridge(tab, V, static_cast<double>(j) * f.step());
      worst = std::max(worst, zb.l2_modulus - zb.bound * (1 + 1e-12));
      ++checks;
    }
  }
  return {worst <= 0.0, std::to_string(checks) + " grid h, max (ω₂ - √(Vhω)) = " + fmt("%.3e", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "folding identity", 1.0, folding},
      {2, "transform-pair spot value", 1.0, transform_pair},
      {3, "zigzag closed form vs quadrature", 30.0, zigzag},
      {4, "norm oracle pair", 120.0, norm_pair},
      {5, "(C,1)-mean domination by V", 120.0, domination},
      {6, "DHT/differencing commutation", 5.0, commutation},
      {7, "step Hilbert cross-check", 60.0, htr},
      {8, "conjugate integral limit and uniform bound", 60.0, lemma_l1},
      {9, "gallery separations", 300.0, gallery_separations},
      {10, "chirp asymptotic slope", 300.0, chirp},
      {11, "Parseval tail vs least squares", 30.0, parseval},
      {12, "Zygmund bridge", 30.0, zygmund},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && secs < c.budget;
    if (!pass) ++failed;
    std::printf("%s  %2d %-44s %s [%.2f s / %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
