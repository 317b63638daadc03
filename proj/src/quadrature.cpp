#include "wienerkit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "wienerkit/error.hpp"

namespace wienerkit {

namespace {

using complex = std::complex<double>;

// QUADPACK qk15 tables: xgk[1], xgk[3], xgk[5], xgk[7] are the Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxPanels = 4'000'000;

// Node x_i for i = 0..14, ascending.
inline double node(double c, double h, int i) {
  if (i < 7) return c - h * kXgk[static_cast<std::size_t>(i)];
  if (i == 7) return c;
  return c + h * kXgk[static_cast<std::size_t>(14 - i)];
}

inline double kronrod_weight(int i) { return kWgk[static_cast<std::size_t>(i <= 7 ? i : 14 - i)]; }

inline double gauss_weight(int i) {
  const int j = i <= 7 ? i : 14 - i;  // distance index into xgk
  if (j % 2 == 0) return 0.0;
  return kWg[static_cast<std::size_t>(j / 2)];
}

template <class T>
struct RuleOut {
  T value{};
  double error = 0.0;
  std::size_t evals = 0;
};

// Apply the GK15 rule to 15 precomputed samples.
template <class T>
RuleOut<T> apply_rule(const std::array<T, 15>& fv, double h) {
  T resk{}, resg{};
  double resabs = 0.0;
  for (int i = 0; i < 15; ++i) {
    resk += kronrod_weight(i) * fv[static_cast<std::size_t>(i)];
    resg += gauss_weight(i) * fv[static_cast<std::size_t>(i)];
    resabs += kronrod_weight(i) * std::abs(fv[static_cast<std::size_t>(i)]);
  }
  const T mean = resk * 0.5;
  double resasc = 0.0;
  for (int i = 0; i < 15; ++i) resasc += kronrod_weight(i) * std::abs(fv[static_cast<std::size_t>(i)] - mean);
  resk *= h;
  resg *= h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {resk, err, 15};
}

template <class T, class F>
RuleOut<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<T, 15> fv;
  for (int i = 0; i < 15; ++i) fv[static_cast<std::size_t>(i)] = f(node(c, h, i));
  return apply_rule<T>(fv, h);
}

// |g| on [a, b], split at sign changes of the phase-aligned real part.
RuleOut<double> abs_panel(const ComplexFn& g, double a, double b, const complex* pre = nullptr) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<double, 15> xs;
  std::array<complex, 15> gv;
  std::size_t ref = 0;
  for (int i = 0; i < 15; ++i) {
    const auto k = static_cast<std::size_t>(i);
    xs[k] = node(c, h, i);
    gv[k] = pre ? pre[k] : g(xs[k]);
    if (std::abs(gv[k]) > std::abs(gv[ref])) ref = k;
  }
  const double gmax = std::abs(gv[ref]);
  std::array<double, 15> mod;
  for (std::size_t k = 0; k < 15; ++k) mod[k] = std::abs(gv[k]);
  if (gmax == 0.0) return apply_rule<double>(mod, h);

  const complex u = std::conj(gv[ref]) / gmax;
  double qmax = 0.0;
  std::array<double, 15> s;
  for (std::size_t k = 0; k < 15; ++k) {
    const complex r = u * gv[k];
    s[k] = r.real();
    qmax = std::max(qmax, std::abs(r.imag()));
  }
  std::vector<double> roots;
  std::size_t extra = 0;
  if (qmax <= 1e-3 * gmax) {
    auto proj = [&](double x) { return (u * g(x)).real(); };
    for (std::size_t k = 0; k + 1 < 15; ++k) {
      if ((s[k] < 0.0 && s[k + 1] > 0.0) || (s[k] > 0.0 && s[k + 1] < 0.0)) {
        boost::uintmax_t iters = 80;
        auto tol = boost::math::tools::eps_tolerance<double>(50);
        const auto br = boost::math::tools::toms748_solve(proj, xs[k], xs[k + 1], s[k], s[k + 1], tol, iters);
        extra += static_cast<std::size_t>(iters);
        roots.push_back(0.5 * (br.first + br.second));
      }
    }
  }
  if (roots.empty()) return apply_rule<double>(mod, h);

  RuleOut<double> out;
  out.evals = 15 + extra;
  double lo = a;
  roots.push_back(b);
  auto absg = [&](double x) { return std::abs(g(x)); };
  for (double r : roots) {
    if (r > lo) {
      const auto part = gk15<double>(absg, lo, r);
      out.value += part.value;
      out.error += part.error;
      out.evals += part.evals;
    }
    lo = r;
  }
  return out;
}

template <class T>
struct Panel {
  double a, b;
  int depth;
  std::size_t interval;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T>
struct Summed {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  std::vector<T> interval_values;
};

template <class T, class Eval, class Init>
Summed<T> adaptive(const Eval& eval, const Init& init, std::span<const double> breaks, const QuadratureSpec& spec) {
  spec.validate();
  if (!std::is_sorted(breaks.begin(), breaks.end())) throw InputError("quadrature breakpoints must be sorted");
  Summed<T> out;
  if (breaks.size() < 2) return out;
  out.interval_values.assign(breaks.size() - 1, T{});

  std::priority_queue<Panel<T>> heap;
  std::vector<Panel<T>> frozen;
  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    const auto r = init(i, breaks[i], breaks[i + 1]);
    out.evaluations += r.evals;
    total += r.value;
    total_err += r.error;
    heap.push({breaks[i], breaks[i + 1], 0, i, r.value, r.error});
  }
  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  // Every panel error is at least 50 eps ∫|f| on it, so this target cannot be met.
  if (tolerance() < 50.0 * kEps * std::abs(total)) {
    throw NumericError("requested tolerance is below double-precision roundoff", std::abs(total), total_err);
  }
  while (total_err > tolerance() && !heap.empty()) {
    Panel<T> p = heap.top();
    heap.pop();
    if (p.depth >= spec.max_depth) {
      frozen.push_back(p);
      continue;
    }
    if (heap.size() + frozen.size() >= kMaxPanels) {
      heap.push(p);
      break;
    }
    const double mid = 0.5 * (p.a + p.b);
    const auto left = eval(p.a, mid);
    const auto right = eval(mid, p.b);
    out.evaluations += left.evals + right.evals;
    total += left.value + right.value - p.value;
    total_err += left.error + right.error - p.error;
    heap.push({p.a, mid, p.depth + 1, p.interval, left.value, left.error});
    heap.push({mid, p.b, p.depth + 1, p.interval, right.value, right.error});
  }
  // Re-sum from scratch so the running updates leave no drift.
  T sum{}, comp{};
  double err = 0.0;
  auto add = [&](const Panel<T>& p) {
    const T y = p.value - comp;
    const T t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    err += p.error;
    out.interval_values[p.interval] += p.value;
  };
  while (!heap.empty()) {
    add(heap.top());
    heap.pop();
  }
  for (const auto& p : frozen) add(p);
  out.value = sum;
  out.error = err;
  if (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(sum))) {
    throw NumericError("adaptive quadrature did not reach tolerance (achieved error " +
                           std::to_string(err) + ")",
                       std::abs(sum), err);
  }
  return out;
}

template <class T, class Eval>
Summed<T> adaptive(const Eval& eval, std::span<const double> breaks, const QuadratureSpec& spec) {
  return adaptive<T>(eval, [&eval](std::size_t, double a, double b) { return eval(a, b); }, breaks, spec);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) throw InputError("abs_tol must lie in (0, 1)");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InputError("rel_tol must lie in (0, 1)");
  if (max_depth < 1) throw InputError("max_depth must be at least 1");
  if (!(line_radius >= 2.0 * std::numbers::pi) || !std::isfinite(line_radius))
    throw InputError("line_radius must be at least 2*pi");
}

QuadResult integrate(const RealFn& f, std::span<const double> breaks, const QuadratureSpec& spec) {
  auto r = adaptive<double>([&f](double a, double b) { return gk15<double>(f, a, b); }, breaks, spec);
  return {r.value, r.error, r.evaluations, std::move(r.interval_values)};
}

ComplexQuadResult integrate(const ComplexFn& f, std::span<const double> breaks, const QuadratureSpec& spec) {
  auto r = adaptive<complex>([&f](double a, double b) { return gk15<complex>(f, a, b); }, breaks, spec);
  return {r.value, r.error, r.evaluations};
}

QuadResult integrate_abs(const ComplexFn& g, std::span<const double> breaks, const QuadratureSpec& spec) {
  auto r = adaptive<double>([&g](double a, double b) { return abs_panel(g, a, b); }, breaks, spec);
  return {r.value, r.error, r.evaluations, std::move(r.interval_values)};
}

QuadResult integrate_abs_presampled(const ComplexFn& g, std::span<const double> breaks,
                                    std::span<const std::complex<double>> initial, const QuadratureSpec& spec) {
  if (breaks.size() >= 2 && initial.size() != 15 * (breaks.size() - 1))
    throw InputError("presampled quadrature needs 15 values per interval");
  auto r = adaptive<double>([&g](double a, double b) { return abs_panel(g, a, b); },
                            [&](std::size_t i, double a, double b) { return abs_panel(g, a, b, &initial[15 * i]); },
                            breaks, spec);
  return {r.value, r.error, r.evaluations, std::move(r.interval_values)};
}

void gk15_nodes(double a, double b, std::span<double, 15> out) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < 15; ++i) out[static_cast<std::size_t>(i)] = node(c, h, i);
}

std::vector<double> uniform_breaks(double a, double b, std::size_t n) {
  if (n == 0) n = 1;
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  v.back() = b;
  return v;
}

}  // namespace wienerkit
