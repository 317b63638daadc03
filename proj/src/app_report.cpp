#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "wienerkit/app.hpp"
#include "wienerkit/error.hpp"
#include "wienerkit/parallel.hpp"
#include "wienerkit/transforms.hpp"

namespace wienerkit::app {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::int64_t> powers_of_two(int lo, int hi) {
  std::vector<std::int64_t> v;
  for (int e = lo; e <= hi; ++e) v.push_back(std::int64_t{1} << e);
  return v;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

std::string join(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + v;
  return s;
}

TestResult not_applicable(const std::string& name, const std::string& why) {
  TestResult r;
  r.name = name;
  r.status = TestStatus::INCONCLUSIVE;
  r.numbers["applicable"] = 0.0;
  (void)why;
  return r;
}

TestStatus status_for(VerdictKind k) {
  switch (k) {
    case VerdictKind::NOT_FOURIER_EVIDENCE: return TestStatus::NECESSARY_FAILED;
    case VerdictKind::IS_FOURIER_EVIDENCE:
    case VerdictKind::IS_FOURIER_STIELTJES_EVIDENCE: return TestStatus::NECESSARY_CONSISTENT;
    case VerdictKind::INCONCLUSIVE: break;
  }
  return TestStatus::INCONCLUSIVE;
}

double param_or(const Params& p, const std::string& key, double def) {
  auto it = p.find(key);
  if (it == p.end()) return def;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != it->second.size() || !std::isfinite(v))
    throw InputError("parameter " + key + " = '" + it->second + "' is not a finite number");
  return v;
}

struct Context {
  const Family& fam;
  std::vector<std::int64_t> ladder;
  QuadratureSpec spec;
  Params params;
};

struct DiagnosticOut {
  TestResult result;
  FourierDiagnostic diag;
};

DiagnosticOut run_diagnostic(const Family& fam, std::span<const std::int64_t> ladder, const QuadratureSpec& spec) {
  DiagnosticThresholds th;
  if (fam.measure()) th.upper_bound = total_variation(*fam.measure());
  SequenceFamily sf = [&fam](std::int64_t n) { return fam.coefficients(n); };
  DiagnosticOut out{{}, fourier_diagnostic(sf, ladder, spec, th)};
  out.result.name = "fourier_diagnostic";
  out.result.status = status_for(out.diag.verdict.kind);
  out.result.trend = out.diag.trend;
  auto it = out.diag.verdict.witnesses.find("fejer_ladder");
  if (it != out.diag.verdict.witnesses.end()) out.result.numbers = it->second;
  out.result.numbers["applicable"] = 1.0;
  return out;
}

// Real odd sine series with nonnegative nonincreasing b, or nothing.
std::optional<std::vector<double>> monotone_sine_coefficients(const CoefficientSequence& c) {
  const auto cs = to_cosine_sine(c);
  double scale = 0.0;
  for (const auto& z : c.values()) scale = std::max(scale, std::abs(z));
  const double tol = 1e-14 * std::max(scale, 1e-300);
  for (const auto& a : cs.a)
    if (std::abs(a) > tol) return std::nullopt;
  std::vector<double> b;
  b.reserve(cs.b.size());
  for (const auto& z : cs.b) {
    if (std::abs(z.imag()) > tol || z.real() < 0.0) return std::nullopt;
    if (!b.empty() && z.real() > b.back()) return std::nullopt;
    b.push_back(z.real());
  }
  return b;
}

TestResult stieltjes_bound_test(const MeasureModel& mu, std::span<const std::int64_t> ladder,
                                const QuadratureSpec& spec) {
  const auto vals = parallel_map<NormBound>(ladder.size(), [&](std::size_t i) {
    return stieltjes_norm_bound_check(mu, ladder[i], spec);
  });
  TestResult r;
  r.name = "stieltjes_bound";
  std::vector<TrendPoint> pts;
  double max_lhs = 0.0, excess = -INFINITY;
  const double V = vals.empty() ? total_variation(mu) : vals.front().rhs;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    pts.push_back({ladder[i], vals[i].lhs});
    max_lhs = std::max(max_lhs, vals[i].lhs);
    excess = std::max(excess, vals[i].lhs - vals[i].rhs);
  }
  r.trend = classify_trend(std::move(pts));
  r.status = excess <= 1e-9 ? TestStatus::NECESSARY_CONSISTENT : TestStatus::NECESSARY_FAILED;
  r.numbers = {{"applicable", 1.0}, {"variation", V}, {"max_lhs", max_lhs}, {"max_excess", excess}};
  return r;
}

TestResult norm_oracle_pair_test(const Family& fam, std::span<const std::int64_t> ladder, const QuadratureSpec& spec) {
  std::vector<std::int64_t> ns;
  for (auto n : ladder)
    if (n <= 64) ns.push_back(n);
  if (ns.empty()) ns.push_back(ladder.front());
  const auto diffs = parallel_map<double>(ns.size(), [&](std::size_t i) {
    const auto c = fam.coefficients(ns[i]);
    return std::abs(w0_norm_fejer(c, ns[i], spec) - w0_norm_line(c, ns[i], spec));
  });
  TestResult r;
  r.name = "norm_oracle_pair";
  double worst = 0.0;
  for (double d : diffs) worst = std::max(worst, d);
  r.numbers = {{"applicable", 1.0}, {"max_difference", worst}, {"largest_n", static_cast<double>(ns.back())},
               {"tolerance", 1e-5}};
  r.status = worst <= 1e-5 ? TestStatus::NECESSARY_CONSISTENT : TestStatus::INCONCLUSIVE;
  return r;
}

TestResult chirp_asymptotic_test(double alpha, std::map<std::string, std::vector<std::pair<double, double>>>* curves) {
  const auto fit = chirp_fit(alpha);
  TestResult r;
  r.name = "chirp_asymptotic";
  r.numbers = {{"applicable", 1.0}, {"alpha", alpha}, {"slope", fit.slope}, {"target", fit.target},
               {"deviation", fit.slope - fit.target}, {"tolerance", 0.05}};
  r.status = std::abs(fit.slope - fit.target) <= 0.05 ? TestStatus::NECESSARY_CONSISTENT : TestStatus::INCONCLUSIVE;
  if (curves) (*curves)["chirp_envelope"] = fit.envelope;
  return r;
}

void finalize(Report& rep) {
  std::sort(rep.tests.begin(), rep.tests.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  rep.exit_code = 0;
  for (const auto& t : rep.tests)
    if (t.status == TestStatus::NECESSARY_FAILED) rep.exit_code = 3;
}

template <class F>
TestResult timed(Report& rep, F&& f) {
  const auto t0 = Clock::now();
  TestResult r = f();
  rep.timing[r.name] = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

void validate_ladder(const std::vector<std::int64_t>& ladder) {
  if (ladder.size() < 4) throw InputError("n-ladder needs at least 4 entries");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 1) throw InputError("n-ladder entries must be >= 1");
    if (i > 0 && ladder[i] <= ladder[i - 1]) throw InputError("n-ladder must be strictly increasing");
  }
}

}  // namespace

const std::vector<std::string>& test_names() {
  static const std::vector<std::string> names = {
      "chirp_asymptotic", "dht_vanishing", "fourier_diagnostic", "monotone_odd", "norm_oracle_pair", "p5_test1",
      "p5_test2",         "salem",         "smoothness",         "stieltjes_bound", "t3h6"};
  return names;
}

std::vector<std::int64_t> default_ladder() { return powers_of_two(4, 12); }

Report run_report(const AnalyzeRequest& req) {
  if (req.coeffs_path.has_value() == req.family.has_value())
    throw InputError("give exactly one of a coefficient file or a family");
  Report rep;
  if (req.tol) {
    if (!(*req.tol > 0.0 && *req.tol < 1.0)) throw InputError("tol must lie in (0, 1)");
    rep.quadrature.rel_tol = *req.tol;
    rep.quadrature.abs_tol = std::min(rep.quadrature.abs_tol, *req.tol);
  }
  rep.quadrature.validate();

  auto ladder = req.n_ladder.empty() ? default_ladder() : req.n_ladder;
  validate_ladder(ladder);

  std::set<std::string> selected;
  for (const auto& t : req.tests) {
    if (t == "all") {
      selected.insert(test_names().begin(), test_names().end());
      continue;
    }
    if (std::find(test_names().begin(), test_names().end(), t) == test_names().end())
      throw InputError("unknown test '" + t + "' (known: " + join(test_names()) + ", all)");
    selected.insert(t);
  }
  if (req.tests.empty()) selected.insert(test_names().begin(), test_names().end());

  Params params;
  Family fam;
  if (req.coeffs_path) {
    auto c = parse_coeffs(*req.coeffs_path);
    if (req.fourier_normalization) c = c.scaled(2.0 * std::numbers::pi);
    fam = Family::from_coefficients(std::move(c));
    rep.inputs["coeffs"] = *req.coeffs_path;
    rep.inputs["family"] = "explicit";
  } else {
    FamilySpec spec = *req.family;
    if (spec.truncation == 0) spec.truncation = 4 * ladder.back();
    params = spec.params;
    fam = Family::from_spec(spec);
    rep.inputs["family"] = std::string(to_string(spec.kind));
    rep.inputs["params"] = join(spec.params);
  }
  rep.inputs["truncation"] = std::to_string(fam.truncation());
  rep.inputs["n_ladder"] = join(ladder);
  rep.inputs["tests"] = join(std::vector<std::string>(selected.begin(), selected.end()));
  rep.inputs["normalization"] = req.fourier_normalization ? "fourier" : "stieltjes";
  if (req.tol) rep.inputs["tol"] = format_double(*req.tol);

  const bool sampled = fam.is_sampled();
  const QuadratureSpec spec = rep.quadrature;
  std::optional<CoefficientSequence> full;
  if (!sampled) full = fam.full();
  SequenceFamily sf = [&fam](std::int64_t n) { return fam.coefficients(n); };

  const std::vector<std::string> names(selected.begin(), selected.end());
  std::vector<double> seconds(names.size());
  std::optional<FourierDiagnostic> diag;
  std::map<std::string, std::vector<std::pair<double, double>>> curves;

  auto run_one = [&](const std::string& name) -> TestResult {
    if (name == "smoothness") {
      if (!sampled) return not_applicable(name, "needs a sampled function");
      auto r = smoothness_tests(*fam.sampled());
      r.numbers["applicable"] = 1.0;
      return r;
    }
    if (name == "chirp_asymptotic") {
      if (fam.kind() != FamilyKind::chirp) return not_applicable(name, "chirp family only");
      return chirp_asymptotic_test(fam.param("alpha"), &curves);
    }
    if (sampled) return not_applicable(name, "needs coefficients");
    TestResult r;
    if (name == "fourier_diagnostic") {
      auto d = run_diagnostic(fam, ladder, spec);
      diag = d.diag;
      return d.result;
    } else if (name == "dht_vanishing") {
      r = dht_vanishing(*full, ladder);
    } else if (name == "salem") {
      r = salem_test(*full, ladder);
    } else if (name == "p5_test1") {
      r = p5_test1_family(sf, ladder);
    } else if (name == "p5_test2") {
      r = p5_test2_family(sf, ladder, param_or(params, "p5_p", 2.0), param_or(params, "p5_q", 1.0));
    } else if (name == "t3h6") {
      r = t3h6_family(sf, ladder);
    } else if (name == "monotone_odd") {
      auto b = monotone_sine_coefficients(*full);
      if (!b) return not_applicable(name, "not a sine series with nonnegative nonincreasing coefficients");
      r = monotone_odd_test(*b);
    } else if (name == "stieltjes_bound") {
      if (!fam.measure()) return not_applicable(name, "needs a measure");
      return stieltjes_bound_test(*fam.measure(), ladder, spec);
    } else if (name == "norm_oracle_pair") {
      return norm_oracle_pair_test(fam, ladder, spec);
    }
    r.numbers["applicable"] = 1.0;
    return r;
  };

  // Tests are independent; each one parallelizes internally, so they run in order.
  for (std::size_t i = 0; i < names.size(); ++i) rep.tests.push_back(timed(rep, [&] {
    auto r = run_one(names[i]);
    r.name = names[i];
    return r;
  }));

  if (diag) {
    rep.trend = diag->trend;
    rep.verdict = diag->verdict;
  }
  rep.curves = std::move(curves);
  finalize(rep);
  return rep;
}

// ---- gallery ----------------------------------------------------------------

const std::vector<std::string>& gallery_cases() {
  static const std::vector<std::string> cases = {"atoms", "chirp", "fejer", "fold", "log_sine", "poisson", "salem"};
  return cases;
}

Report gallery(const std::string& name, const Params& params) {
  if (std::find(gallery_cases().begin(), gallery_cases().end(), name) == gallery_cases().end())
    throw InputError("unknown gallery case '" + name + "' (known: " + join(gallery_cases()) + ")");
  Report rep;
  rep.inputs["case"] = name;
  rep.inputs["params"] = join(params);
  const QuadratureSpec spec = rep.quadrature;

  auto family_case = [&](FamilyKind kind, std::vector<std::int64_t> ladder) {
    FamilySpec fs{kind, params, 4 * ladder.back()};
    Family fam = Family::from_spec(fs);
    rep.inputs["n_ladder"] = join(ladder);
    rep.inputs["truncation"] = std::to_string(fam.truncation());
    std::optional<DiagnosticOut> d;
    rep.tests.push_back(timed(rep, [&] {
      d = run_diagnostic(fam, ladder, spec);
      return d->result;
    }));
    rep.trend = d->diag.trend;
    rep.verdict = d->diag.verdict;
    return fam;
  };

  if (name == "fejer") {
    family_case(FamilyKind::fejer, default_ladder());
    TestResult r;
    r.name = "fejer_ladder_constant";
    double dev = 0.0;
    for (const auto& p : rep.trend->ladder) dev = std::max(dev, std::abs(p.value - 1.0));
    r.numbers = {{"max_deviation", dev}, {"tolerance", 1e-8}};
    r.status = dev <= 1e-8 ? TestStatus::NECESSARY_CONSISTENT : TestStatus::INCONCLUSIVE;
    rep.tests.push_back(r);
  } else if (name == "poisson") {
    const auto ladder = default_ladder();
    Family fam = family_case(FamilyKind::poisson, ladder);
    rep.tests.push_back(timed(rep, [&] { return dht_vanishing(fam.full(), ladder); }));
    TestResult r;
    r.name = "poisson_limit";
    double mx = 0.0;
    for (const auto& p : rep.trend->ladder) mx = std::max(mx, p.value);
    const double last = rep.trend->ladder.back().value;
    r.numbers = {{"max", mx}, {"last", last}, {"limit", 1.0}, {"tolerance", 0.01}};
    r.status = (mx <= 1.0 + 1e-9 && std::abs(last - 1.0) <= 0.01) ? TestStatus::NECESSARY_CONSISTENT
                                                                   : TestStatus::INCONCLUSIVE;
    rep.tests.push_back(r);
  } else if (name == "log_sine") {
    family_case(FamilyKind::log_sine, powers_of_two(6, 13));
    TestResult r;
    r.name = "ladder_increasing";
    bool inc = true;
    const auto& L = rep.trend->ladder;
    for (std::size_t i = 1; i < L.size(); ++i) inc = inc && L[i].value > L[i - 1].value;
    r.numbers = {{"strictly_increasing", inc ? 1.0 : 0.0}, {"first", L.front().value}, {"last", L.back().value}};
    r.status = inc ? TestStatus::NECESSARY_FAILED : TestStatus::INCONCLUSIVE;
    rep.tests.push_back(r);
  } else if (name == "salem") {
    const auto N = static_cast<std::int64_t>(param_or(params, "N", static_cast<double>(std::int64_t{1} << 26)));
    if (N < 1) throw InputError("salem: N must be >= 1");
    const auto ks = default_ladder();
    rep.inputs["N"] = std::to_string(N);
    rep.tests.push_back(timed(rep, [&] {
      const auto vals = parallel_map<double>(ks.size(), [&](std::size_t i) {
        return std::abs(salem_sum([](std::int64_t n) { return 1.0 / static_cast<double>(n); }, N, Parity::odd, ks[i]));
      });
      std::vector<TrendPoint> pts;
      bool dec = true;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        pts.push_back({ks[i], vals[i]});
        if (i > 0) dec = dec && vals[i] < vals[i - 1];
      }
      TestResult r = classify_vanishing("salem_odd", pts);
      r.numbers["monotone_decreasing"] = dec ? 1.0 : 0.0;
      if (!dec && r.status == TestStatus::NECESSARY_CONSISTENT) r.status = TestStatus::INCONCLUSIVE;
      return r;
    }));
  } else if (name == "chirp") {
    const double alpha = param_or(params, "alpha", 0.8);
    if (!(alpha > 0.5 && alpha <= 1.0)) throw InputError("chirp: alpha must lie in (1/2, 1]");
    rep.tests.push_back(timed(rep, [&] { return chirp_asymptotic_test(alpha, &rep.curves); }));
  } else if (name == "fold") {
    const auto K = static_cast<std::int64_t>(param_or(params, "K", 1e4));
    if (K < 1) throw InputError("fold: K must be >= 1");
    rep.tests.push_back(timed(rep, [&] {
      auto& dev = rep.curves["fold_deviation"];
      auto& bound = rep.curves["fold_tail_bound"];
      bool ok = true;
      double worst = 0.0;
      for (int i = 0; i <= 100; ++i) {
        const double y = -std::numbers::pi + 2.0 * std::numbers::pi * i / 100.0;
        const auto f = fold_sum(y, K);
        dev.emplace_back(y, f.value - 0.25);
        bound.emplace_back(y, f.tail_bound);
        ok = ok && std::abs(f.value - 0.25) <= f.tail_bound;
        worst = std::max(worst, std::abs(f.value - 0.25));
      }
      TestResult r;
      r.name = "fold_identity";
      r.numbers = {{"K", static_cast<double>(K)}, {"max_deviation", worst}};
      r.status = ok ? TestStatus::NECESSARY_CONSISTENT : TestStatus::NECESSARY_FAILED;
      return r;
    }));
  } else if (name == "atoms") {
    Params p = params;
    p.emplace("atoms", "0:1:0;1.5:-0.5:0;-2:0.25:0.25");
    const auto ladder = default_ladder();
    FamilySpec fs{FamilyKind::atoms, p, 4 * ladder.back()};
    Family fam = Family::from_spec(fs);
    rep.inputs["n_ladder"] = join(ladder);
    std::optional<DiagnosticOut> d;
    rep.tests.push_back(timed(rep, [&] {
      d = run_diagnostic(fam, ladder, spec);
      return d->result;
    }));
    rep.trend = d->diag.trend;
    rep.verdict = d->diag.verdict;
    rep.tests.push_back(timed(rep, [&] { return stieltjes_bound_test(*fam.measure(), ladder, spec); }));
  }
  finalize(rep);
  return rep;
}

}  // namespace wienerkit::app
