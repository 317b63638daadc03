#include <cmath>
#include <numbers>

#include "wienerkit/app.hpp"
#include "wienerkit/error.hpp"
#include "wienerkit/parallel.hpp"

namespace wienerkit::app {
namespace {

constexpr double kPi = std::numbers::pi;

struct ParamReader {
  const Params& p;
  std::string family;
  std::vector<std::string> used;

  const std::string* raw(const std::string& key) {
    used.push_back(key);
    auto it = p.find(key);
    return it == p.end() ? nullptr : &it->second;
  }
  double number(const std::string& key, std::optional<double> def) {
    const std::string* s = raw(key);
    if (!s) {
      if (!def) throw InputError(family + ": missing parameter " + key);
      return *def;
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(*s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s->size() || !std::isfinite(v))
      throw InputError(family + ": parameter " + key + " = '" + *s + "' is not a finite number");
    return v;
  }
  std::int64_t integer(const std::string& key, std::optional<std::int64_t> def) {
    const double v = number(key, def ? std::optional<double>(static_cast<double>(*def)) : std::nullopt);
    if (v != std::floor(v) || std::abs(v) > 9e15) throw InputError(family + ": parameter " + key + " is not an integer");
    return static_cast<std::int64_t>(v);
  }
  std::string text(const std::string& key, const std::string& def) {
    const std::string* s = raw(key);
    return s ? *s : def;
  }
  // Test options share the parameter string.
  void finish() {
    for (const auto& [k, v] : p) {
      bool ok = k.rfind("p5_", 0) == 0;
      for (const auto& u : used) ok = ok || u == k;
      if (!ok) throw InputError(family + ": unknown parameter " + k);
    }
  }
};

std::vector<Atom> parse_atoms(const std::string& text) {
  std::vector<Atom> atoms;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    double v[3] = {0, 0, 0};
    std::size_t field = 0, pos = 0;
    while (field < 3) {
      const auto colon = item.find(':', pos);
      const std::string tok = item.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos);
      std::size_t used = 0;
      try {
        v[field] = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != tok.size() || !std::isfinite(v[field]))
        throw InputError("atoms: entry '" + item + "' is not t:re:im");
      ++field;
      if (colon == std::string::npos) break;
      pos = colon + 1;
    }
    if (field < 2) throw InputError("atoms: entry '" + item + "' is not t:re:im");
    if (!(v[0] > -kPi && v[0] <= kPi)) throw InputError("atoms: location " + item + " outside (-pi, pi]");
    atoms.push_back({v[0], complex{v[1], v[2]}});
  }
  if (atoms.empty()) throw InputError("atoms: empty atom list");
  return atoms;
}

}  // namespace

std::string_view to_string(FamilyKind k) noexcept {
  switch (k) {
    case FamilyKind::explicit_coeffs: return "explicit";
    case FamilyKind::poisson: return "poisson";
    case FamilyKind::power_log: return "power_log";
    case FamilyKind::log_sine: return "log_sine";
    case FamilyKind::chirp: return "chirp";
    case FamilyKind::fejer: return "fejer";
    case FamilyKind::atoms: return "atoms";
  }
  return "?";
}

FamilyKind family_from_name(std::string_view name) {
  for (auto k : {FamilyKind::explicit_coeffs, FamilyKind::poisson, FamilyKind::power_log, FamilyKind::log_sine,
                 FamilyKind::chirp, FamilyKind::fejer, FamilyKind::atoms})
    if (to_string(k) == name) return k;
  throw InputError("unknown family '" + std::string(name) +
                   "' (expected explicit, poisson, power_log, log_sine, chirp, fejer or atoms)");
}

Family Family::from_coefficients(CoefficientSequence c) {
  Family f;
  f.kind_ = FamilyKind::explicit_coeffs;
  f.truncation_ = std::max<std::int64_t>({1, -c.offset(), c.end() - 1});
  f.explicit_ = std::move(c);
  return f;
}

Family Family::from_spec(const FamilySpec& spec) {
  if (spec.kind == FamilyKind::explicit_coeffs)
    throw InputError("explicit family needs a coefficient file");
  Family f;
  f.kind_ = spec.kind;
  ParamReader rd{spec.params, std::string(to_string(spec.kind)), {}};
  if (spec.kind != FamilyKind::chirp && spec.truncation < 1)
    throw InputError("truncation N must be >= 1, got " + std::to_string(spec.truncation));
  f.truncation_ = spec.truncation;
  switch (spec.kind) {
    case FamilyKind::poisson: {
      const double r = rd.number("r", 0.5);
      if (!(r > 0.0 && r < 1.0)) throw InputError("poisson: r must lie in (0, 1)");
      f.numeric_["r"] = r;
      break;
    }
    case FamilyKind::power_log: {
      const double alpha = rd.number("alpha", std::nullopt);
      const double beta = rd.number("beta", 0.0);
      const double shift = rd.number("shift", 2.0);
      f.sign_ = rd.text("sign", "even");
      if (f.sign_ != "even" && f.sign_ != "odd" && f.sign_ != "one_sided" && f.sign_ != "alternating")
        throw InputError("power_log: sign must be even, odd, one_sided or alternating");
      if (beta != 0.0 ? !(shift > 1.0) : !(shift > 0.0))
        throw InputError("power_log: shift must be > 1 (> 0 when beta = 0)");
      f.numeric_ = {{"alpha", alpha}, {"beta", beta}, {"shift", shift}};
      break;
    }
    case FamilyKind::log_sine: break;
    case FamilyKind::fejer: {
      const auto n = rd.integer("N", 64);
      if (n < 1) throw InputError("fejer: N must be >= 1");
      f.numeric_["N"] = static_cast<double>(n);
      break;
    }
    case FamilyKind::atoms: {
      f.measure_ = MeasureModel(parse_atoms(rd.text("atoms", "0:1:0")));
      break;
    }
    case FamilyKind::chirp: {
      const double alpha = rd.number("alpha", 0.8);
      if (!(alpha > 0.5 && alpha <= 1.0)) throw InputError("chirp: alpha must lie in (1/2, 1]");
      const auto m = rd.integer("samples", 4096);
      if (m < 16) throw InputError("chirp: samples must be >= 16");
      f.numeric_ = {{"alpha", alpha}, {"samples", static_cast<double>(m)}};
      f.sampled_ = sample_periodic(kPi, static_cast<std::size_t>(m), [alpha](double x) -> complex {
        if (x == 0.0) return 0.0;
        return std::pow(std::abs(x), alpha) * std::sin(kPi * kPi / x);
      });
      break;
    }
    case FamilyKind::explicit_coeffs: break;
  }
  rd.finish();
  return f;
}

double Family::param(const std::string& key) const {
  auto it = numeric_.find(key);
  if (it == numeric_.end()) throw InputError("family has no parameter " + key);
  return it->second;
}

CoefficientSequence Family::coefficients(std::int64_t n) const {
  if (sampled_) throw InputError(std::string(to_string(kind_)) + " is a sampled function, not a coefficient family");
  const std::int64_t m = std::min(n, truncation_);
  if (m < 0) return {};
  if (explicit_) return explicit_->truncated(m);
  if (measure_) return measure_coefficients(*measure_, m);
  const auto sz = static_cast<std::size_t>(2 * m + 1);
  switch (kind_) {
    case FamilyKind::poisson: {
      const double r = numeric_.at("r");
      std::vector<complex> v(sz);
      for (std::int64_t k = -m; k <= m; ++k) v[static_cast<std::size_t>(k + m)] = std::pow(r, std::abs(k));
      return CoefficientSequence(-m, std::move(v));
    }
    case FamilyKind::fejer: {
      const double N = numeric_.at("N");
      std::vector<complex> v(sz);
      for (std::int64_t k = -m; k <= m; ++k)
        v[static_cast<std::size_t>(k + m)] = std::max(0.0, 1.0 - static_cast<double>(std::abs(k)) / N);
      return CoefficientSequence(-m, std::move(v));
    }
    case FamilyKind::log_sine: {
      std::vector<double> a(static_cast<std::size_t>(m + 1), 0.0), b(static_cast<std::size_t>(m));
      for (std::int64_t k = 1; k <= m; ++k) b[static_cast<std::size_t>(k - 1)] = 1.0 / std::log(static_cast<double>(k) + 1.0);
      return from_cosine_sine(a, b);
    }
    case FamilyKind::power_log: {
      const double alpha = numeric_.at("alpha"), beta = numeric_.at("beta"), shift = numeric_.at("shift");
      auto u = [&](std::int64_t k) {
        const double x = static_cast<double>(k) + shift;
        double v = std::pow(x, -alpha);
        if (beta != 0.0) v *= std::pow(std::log(x), -beta);
        return v;
      };
      std::vector<complex> v(sz);
      for (std::int64_t k = -m; k <= m; ++k) {
        const double uk = u(std::abs(k));
        complex c;
        if (sign_ == "even") c = uk;
        else if (sign_ == "odd") c = complex{0.0, k > 0 ? -uk : (k < 0 ? uk : 0.0)};
        else if (sign_ == "one_sided") c = k >= 0 ? uk : 0.0;
        else c = (k % 2 == 0) ? uk : -uk;
        v[static_cast<std::size_t>(k + m)] = c;
      }
      return CoefficientSequence(-m, std::move(v));
    }
    default: break;
  }
  return {};
}

std::variant<CoefficientSequence, SampledPeriodicFn> gen_family(const FamilySpec& spec) {
  FamilySpec s = spec;
  if (s.kind == FamilyKind::chirp && s.truncation < 1) s.truncation = 1;
  Family f = Family::from_spec(s);
  if (f.sampled()) return *f.sampled();
  return f.full();
}

// ---- chirp ------------------------------------------------------------------

complex chirp_transform(double alpha, double y, const QuadratureSpec& spec) {
  if (!(alpha > 0.5 && alpha <= 1.0)) throw InputError("chirp: alpha must lie in (1/2, 1]");
  // f is odd: f̂(y) = -2i ∫_0^π x^α sin(π²/x) sin(xy) dx. The piece [0, ε] is
  // dropped; its size is below ε^{1+α}/(1+α).
  constexpr double eps = 1e-4;
  const double ay = std::abs(y);
  std::vector<double> breaks{eps};
  double next_dyadic = eps * 2.0;
  for (double x = eps; x < kPi;) {
    // Half an oscillation of the faster of the two phases π²/x ± xy.
    x += kPi / (kPi * kPi / (x * x) + ay);
    while (next_dyadic < x && next_dyadic < kPi) {
      breaks.push_back(next_dyadic);
      next_dyadic *= 2.0;
    }
    breaks.push_back(std::min(x, kPi));
  }
  auto g = [alpha, y](double x) { return std::pow(x, alpha) * std::sin(kPi * kPi / x) * std::sin(x * y); };
  const auto r = integrate(RealFn(g), breaks, spec);
  return complex{0.0, -2.0 * r.value};
}

ChirpFit chirp_fit(double alpha, double y_lo, double y_hi, std::size_t centers, std::size_t samples_per_window) {
  if (!(y_lo > 0.0 && y_hi > y_lo) || centers < 2 || samples_per_window < 2)
    throw InputError("chirp_fit: need 0 < y_lo < y_hi, >= 2 centers and >= 2 samples per window");
  const QuadratureSpec spec{1e-13, 1e-9};
  std::vector<double> yc(centers);
  for (std::size_t i = 0; i < centers; ++i)
    yc[i] = y_lo * std::pow(y_hi / y_lo, static_cast<double>(i) / static_cast<double>(centers - 1));
  const std::size_t total = centers * samples_per_window;
  const auto vals = parallel_map<double>(total, [&](std::size_t j) {
    const std::size_t i = j / samples_per_window, s = j % samples_per_window;
    // One stationary-phase oscillation of |f̂| spans about 2√y.
    const double y = yc[i] + 2.0 * std::sqrt(yc[i]) * static_cast<double>(s) / static_cast<double>(samples_per_window - 1);
    return std::abs(chirp_transform(alpha, y, spec));
  });
  ChirpFit fit{0.0, -(alpha / 2.0 + 0.75), {}};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < centers; ++i) {
    double env = 0.0;
    for (std::size_t s = 0; s < samples_per_window; ++s) env = std::max(env, vals[i * samples_per_window + s]);
    fit.envelope.emplace_back(yc[i], env);
    const double lx = std::log(yc[i]), ly = std::log(env);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  const double n = static_cast<double>(centers);
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace wienerkit::app
