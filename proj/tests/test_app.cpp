#include "doctest.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wienerkit/app.hpp"
#include "wienerkit/error.hpp"

using namespace wienerkit;
using namespace wienerkit::app;
using oracle::pi;

namespace {

std::filesystem::path tmpdir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("wienerkit_test_app_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const TestResult& find(const Report& r, const std::string& name) {
  for (const auto& t : r.tests)
    if (t.name == name) return t;
  FAIL("missing test " << name);
  return r.tests.front();
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse_coeffs examples") {
  auto c = parse_coeffs_text("{offset: 0, values: [[1,0]]}", false);
  CHECK(c.offset() == 0);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == complex{1, 0});

  CHECK(parse_coeffs_text("{offset: 3, values: []}", false).empty());

  auto d = parse_coeffs_text("0,1,0\n1,0.5,0\n", true);
  CHECK(d.offset() == 0);
  CHECK(d[0] == complex{1, 0});
  CHECK(d[1] == complex{0.5, 0});

  auto j = parse_coeffs_text(R"({"offset": -1, "values": [[0.25, -1e-3], [2, 0], [0, 1]]})", false);
  CHECK(j.offset() == -1);
  CHECK(j[-1] == complex{0.25, -1e-3});
  CHECK(j[1] == complex{0, 1});

  auto h = parse_coeffs_text("k,re,im\n-2,1,2\n-1,3,4\n", true);
  CHECK(h.offset() == -2);
  CHECK(h[-1] == complex{3, 4});
}

TEST_CASE("parse_coeffs errors carry positions") {
  const auto gap = error_of([] { parse_coeffs_text("0,1,0\n2,1,0\n", true, "f.csv"); });
  CHECK(gap.find("f.csv:2") != std::string::npos);
  CHECK(gap.find("gap") != std::string::npos);

  const auto nf = error_of([] { parse_coeffs_text("0,1,0\n1,nan,0\n", true, "f.csv"); });
  CHECK(nf.find("f.csv:2:2") != std::string::npos);

  const auto bad = error_of([] { parse_coeffs_text("offset: 0\nvalues:\n  - [1, 0]\n  - [x, 0]\n", false, "f.yaml"); });
  CHECK(bad.find("f.yaml:4:") != std::string::npos);
  CHECK(bad.find("values[1].re") != std::string::npos);

  const auto inf = error_of([] { parse_coeffs_text("offset: 0\nvalues: [[.inf, 0]]\n", false, "f.yaml"); });
  CHECK(inf.find("not finite") != std::string::npos);

  CHECK_FALSE(error_of([] { parse_coeffs_text("offset: 1.5\nvalues: []\n", false); }).empty());
  CHECK_FALSE(error_of([] { parse_coeffs_text("values: []\n", false); }).empty());
  CHECK_FALSE(error_of([] { parse_coeffs_text("offset: 0\nvalues: [[1]]\n", false); }).empty());
  CHECK_FALSE(error_of([] { parse_coeffs_text("offset: 0\nvalues: [[1, 0]\n", false); }).empty());
  CHECK_FALSE(error_of([] { parse_coeffs_text("0,1\n", true); }).empty());
  CHECK_FALSE(error_of([] { parse_coeffs("/nonexistent/x.yaml"); }).empty());
}

TEST_CASE("coefficient round trip is the identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> e(-300, 300);
  const auto dir = tmpdir("roundtrip");
  for (int t = 0; t < 50; ++t) {
    auto c = oracle::random_sequence(rng, 40, 20);
    std::vector<complex> v(c.values().begin(), c.values().end());
    // Awkward magnitudes and exact zeros.
    if (t % 5 == 0) v[0] = complex{std::ldexp(1.0, static_cast<int>(e(rng))), -0.0};
    if (t % 7 == 0) v.back() = complex{1.0 / 3.0, 0.1};
    c = CoefficientSequence(c.offset(), v);
    for (bool csv : {false, true}) {
      CHECK(parse_coeffs_text(format_coeffs(c, csv), csv) == c);
      const auto path = (dir / (csv ? "c.csv" : "c.yaml")).string();
      write_coeffs(path, c);
      CHECK(parse_coeffs(path) == c);
    }
  }
  CHECK(parse_coeffs_text(format_coeffs({}, false), false).empty());
}

TEST_CASE("parse_params") {
  auto p = parse_params("r=0.5, sign=odd");
  CHECK(p.at("r") == "0.5");
  CHECK(p.at("sign") == "odd");
  CHECK(parse_params("").empty());
  CHECK_THROWS_AS(parse_params("r"), InputError);
  CHECK_THROWS_AS(parse_params("r=1,r=2"), InputError);
}

TEST_CASE("gen_family examples") {
  auto p = std::get<CoefficientSequence>(gen_family({FamilyKind::poisson, {{"r", "0.5"}}, 2}));
  CHECK(p.offset() == -2);
  CHECK(p[-2] == complex{0.25});
  CHECK(p[-1] == complex{0.5});
  CHECK(p[0] == complex{1});
  CHECK(p[2] == complex{0.25});
  CHECK(p[3] == complex{0});

  auto f = std::get<CoefficientSequence>(gen_family({FamilyKind::fejer, {{"N", "2"}}, 8}));
  CHECK(f[-1] == complex{0.5});
  CHECK(f[0] == complex{1});
  CHECK(f[1] == complex{0.5});
  CHECK(f[2] == complex{0});

  auto ch = std::get<SampledPeriodicFn>(gen_family({FamilyKind::chirp, {{"alpha", "0.8"}}, 0}));
  CHECK(ch.halfperiod() == doctest::Approx(pi));
  CHECK(std::abs(ch(pi)) < 1e-12);
  // Interior grid node: |x|^α sin(π²/x).
  const double x = ch.node(3000);
  CHECK(ch.sample(3000).real() == doctest::Approx(std::pow(std::abs(x), 0.8) * std::sin(pi * pi / x)));
  CHECK(ch.sample(2048) == complex{0});  // x = 0

  auto ls = std::get<CoefficientSequence>(gen_family({FamilyKind::log_sine, {}, 5}));
  const auto cs = to_cosine_sine(ls);
  for (int k = 1; k <= 5; ++k) CHECK(cs.b[k - 1].real() == doctest::Approx(1.0 / std::log(k + 1.0)));

  auto pl = std::get<CoefficientSequence>(gen_family({FamilyKind::power_log, {{"alpha", "1"}, {"sign", "odd"}}, 3}));
  CHECK(pl[2] == complex{0, -0.25});
  CHECK(pl[-2] == complex{0, 0.25});
  CHECK(pl[0] == complex{0});

  Family at = Family::from_spec({FamilyKind::atoms, {{"atoms", "0:1:0;1.5:-0.5:0.5"}}, 4});
  REQUIRE(at.measure());
  CHECK(at.measure()->atoms().size() == 2);
  CHECK(std::abs(at.coefficients(4)[3] - (1.0 + complex{-0.5, 0.5} * std::exp(complex{0, -4.5}))) < 1e-14);
}

TEST_CASE("gen_family rejects invalid parameters") {
  CHECK_THROWS_AS(gen_family({FamilyKind::poisson, {{"r", "1"}}, 4}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::poisson, {{"r", "abc"}}, 4}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::poisson, {}, 0}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::chirp, {{"alpha", "0.5"}}, 1}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::chirp, {{"alpha", "1.01"}}, 1}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::fejer, {{"M", "3"}}, 4}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::power_log, {}, 4}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::power_log, {{"alpha", "1"}, {"sign", "up"}}, 4}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::atoms, {{"atoms", "4:1:0"}}, 4}), InputError);
  CHECK_THROWS_AS(gen_family({FamilyKind::atoms, {{"atoms", "0:x"}}, 4}), InputError);
  CHECK_THROWS_AS(family_from_name("gauss"), InputError);
  CHECK(family_from_name("log_sine") == FamilyKind::log_sine);
}

TEST_CASE("run_report: poisson with all tests") {
  AnalyzeRequest req;
  req.family = FamilySpec{FamilyKind::poisson, {{"r", "0.5"}}, 0};
  req.tests = {"all"};
  const auto r = run_report(req);
  CHECK(r.verdict.kind == VerdictKind::IS_FOURIER_EVIDENCE);
  CHECK(r.exit_code == 0);
  REQUIRE(r.tests.size() == test_names().size());
  for (std::size_t i = 0; i < r.tests.size(); ++i) CHECK(r.tests[i].name == test_names()[i]);
  CHECK(find(r, "fourier_diagnostic").status == TestStatus::NECESSARY_CONSISTENT);
  CHECK(find(r, "dht_vanishing").status == TestStatus::NECESSARY_CONSISTENT);
  CHECK(find(r, "salem").status == TestStatus::NECESSARY_CONSISTENT);
  CHECK(find(r, "norm_oracle_pair").status == TestStatus::NECESSARY_CONSISTENT);
  CHECK(find(r, "smoothness").numbers.at("applicable") == 0.0);
  CHECK(find(r, "smoothness").status == TestStatus::INCONCLUSIVE);
  CHECK(r.inputs.at("truncation") == "16384");
  REQUIRE(r.trend);
  CHECK(r.trend->ladder.back().value == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("run_report: log_sine fails the necessary Fourier test") {
  AnalyzeRequest req;
  req.family = FamilySpec{FamilyKind::log_sine, {}, 0};
  req.tests = {"fourier_diagnostic"};
  req.n_ladder = {64, 128, 256, 512, 1024, 2048, 4096, 8192};
  const auto r = run_report(req);
  CHECK(r.verdict.kind == VerdictKind::NOT_FOURIER_EVIDENCE);
  CHECK(r.exit_code == 3);
  REQUIRE(r.tests.size() == 1);
  CHECK(r.tests[0].status == TestStatus::NECESSARY_FAILED);
}

TEST_CASE("run_report: zero sequence") {
  const auto dir = tmpdir("zero");
  const auto path = (dir / "zero.yaml").string();
  write_coeffs(path, CoefficientSequence(0, {0.0, 0.0, 0.0}));
  AnalyzeRequest req;
  req.coeffs_path = path;
  const auto r = run_report(req);
  CHECK(r.exit_code == 0);
  for (const auto& t : r.tests) CHECK(t.status != TestStatus::NECESSARY_FAILED);

  write_coeffs(path, CoefficientSequence{});
  CHECK(run_report(req).exit_code == 0);
}

TEST_CASE("run_report: measure families and fourier normalization") {
  AnalyzeRequest req;
  req.family = FamilySpec{FamilyKind::atoms, {{"atoms", "0:1:0;2:-0.5:0.25"}}, 0};
  req.tests = {"fourier_diagnostic", "stieltjes_bound"};
  auto r = run_report(req);
  CHECK(r.exit_code == 0);
  CHECK(r.verdict.kind != VerdictKind::NOT_FOURIER_EVIDENCE);
  CHECK(find(r, "stieltjes_bound").status == TestStatus::NECESSARY_CONSISTENT);

  const auto dir = tmpdir("norm");
  const auto path = (dir / "c.csv").string();
  write_coeffs(path, CoefficientSequence(-1, {0.25, 0.5, 0.25}));
  AnalyzeRequest q;
  q.coeffs_path = path;
  q.tests = {"fourier_diagnostic"};
  q.fourier_normalization = true;
  r = run_report(q);
  CHECK(r.trend->ladder.back().value == doctest::Approx(2 * pi * 0.5 * 0.5 * 2 + 0.0).epsilon(0.5));
  CHECK(r.inputs.at("normalization") == "fourier");
}

TEST_CASE("run_report: input errors") {
  AnalyzeRequest req;
  CHECK_THROWS_AS(run_report(req), InputError);
  req.family = FamilySpec{FamilyKind::poisson, {}, 0};
  req.tests = {"nope"};
  CHECK_THROWS_AS(run_report(req), InputError);
  req.tests = {"salem"};
  req.n_ladder = {4, 2, 8, 16};
  CHECK_THROWS_AS(run_report(req), InputError);
  req.n_ladder = {2, 4, 8};
  CHECK_THROWS_AS(run_report(req), InputError);
  req.n_ladder = {};
  req.tol = 2.0;
  CHECK_THROWS_AS(run_report(req), InputError);
}

TEST_CASE("reports are deterministic") {
  AnalyzeRequest req;
  req.family = FamilySpec{FamilyKind::power_log, {{"alpha", "1.2"}, {"sign", "alternating"}}, 0};
  req.tests = {"fourier_diagnostic", "p5_test1", "p5_test2", "dht_vanishing"};
  const auto a = run_report(req);
  const auto b = run_report(req);
  CHECK(report_json(a, false) == report_json(b, false));
  CHECK(report_json(a, true).find("\"timing\"") != std::string::npos);
  CHECK(report_json(a, false).find("\"timing\"") == std::string::npos);

  const auto d1 = tmpdir("det1"), d2 = tmpdir("det2");
  emit_plot_data(a, d1.string());
  emit_plot_data(b, d2.string());
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(d1)) {
    ++files;
    CHECK(slurp(e.path()) == slurp(d2 / e.path().filename()));
  }
  CHECK(files >= 2);
}

TEST_CASE("emit_plot_data") {
  const auto dir = tmpdir("plot");
  Report empty;
  emit_plot_data(empty, dir.string());
  CHECK(slurp(dir / "trend.csv") == "n,value\n");

  Report r;
  r.trend = classify_trend({{1, 0.5}, {2, 0.25}, {4, 1.0 / 3.0}, {8, 0.1}});
  TestResult t;
  t.name = "x";
  t.trend = r.trend;
  r.tests.push_back(t);
  r.curves["c"] = {{0.1, 1e-300}, {0.2, -2.5}};
  emit_plot_data(r, dir.string());
  const auto trend = slurp(dir / "trend.csv");
  CHECK(count_lines(trend) == 5);
  CHECK(trend.find("4,0.33333333333333331\n") != std::string::npos);
  CHECK(count_lines(slurp(dir / "test_x.csv")) == 5);
  CHECK(slurp(dir / "curve_c.csv") == "x,value\n0.10000000000000001,1e-300\n0.20000000000000001,-2.5\n");
  const auto again = tmpdir("plot2");
  emit_plot_data(r, again.string());
  CHECK(slurp(again / "trend.csv") == trend);

  CHECK_THROWS_AS(emit_plot_data(r, "/proc/wienerkit/none"), InputError);
}

TEST_CASE("gallery cases") {
  auto f = gallery("fejer");
  REQUIRE(f.trend);
  for (const auto& p : f.trend->ladder) CHECK(p.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.exit_code == 0);

  auto ls = gallery("log_sine");
  REQUIRE(ls.trend);
  CHECK(ls.trend->ladder.front().n == 64);
  CHECK(ls.trend->ladder.back().n == 8192);
  for (std::size_t i = 1; i < ls.trend->ladder.size(); ++i)
    CHECK(ls.trend->ladder[i].value > ls.trend->ladder[i - 1].value);
  CHECK(ls.exit_code == 3);

  auto p = gallery("poisson");
  CHECK(find(p, "poisson_limit").status == TestStatus::NECESSARY_CONSISTENT);
  CHECK(p.exit_code == 0);

  auto fo = gallery("fold", {{"K", "1000"}});
  CHECK(find(fo, "fold_identity").status == TestStatus::NECESSARY_CONSISTENT);
  CHECK(fo.curves.at("fold_deviation").size() == 101);

  auto at = gallery("atoms");
  CHECK(find(at, "stieltjes_bound").status == TestStatus::NECESSARY_CONSISTENT);
  CHECK(at.verdict.kind != VerdictKind::NOT_FOURIER_EVIDENCE);

  auto s = gallery("salem", {{"N", "1048576"}});
  CHECK(find(s, "salem_odd").trend->ladder.size() == 9);

  CHECK_THROWS_AS(gallery("nope"), InputError);
}

TEST_CASE("chirp_transform against direct quadrature at small y") {
  // Moderate y: compare with a brute-force Gauss-Legendre sum on a fine grid.
  for (double y : {3.0, 40.0}) {
    const auto v = chirp_transform(0.8, y, {1e-13, 1e-10});
    CHECK(std::abs(v.real()) == 0.0);
    double ref = 0.0;
    // Panels of width proportional to the local oscillation.
    double x = 1e-4;
    while (x < pi) {
      const double w = std::min(pi - x, 0.25 * pi / (pi * pi / (x * x) + y));
      ref += boost::math::quadrature::gauss<double, 10>::integrate(
          [y](double t) { return std::pow(t, 0.8) * std::sin(pi * pi / t) * std::sin(t * y); }, x, x + w);
      x += w;
    }
    CHECK(v.imag() == doctest::Approx(-2.0 * ref).epsilon(1e-7));
  }
}
