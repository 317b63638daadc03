#include "wienerkit/wienerkit.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "wienerkit/app.hpp"
#include "wienerkit/error.hpp"
#include "wienerkit/parallel.hpp"
#include "wienerkit/transforms.hpp"

using namespace wienerkit;

struct wk_sequence {
  CoefficientSequence c;
};
struct wk_measure {
  MeasureModel mu;
};
struct wk_sampled {
  SampledPeriodicFn f;
};
struct wk_report {
  app::Report r;
  std::string json;
  std::vector<std::string> status_names;
  std::string verdict;
};

namespace {

thread_local std::string g_error;
thread_local double g_best = NAN, g_achieved = NAN;

template <class F>
wk_status guarded(F&& f) noexcept {
  try {
    f();
    return WK_OK;
  } catch (const InputError& e) {
    g_error = e.what();
    return WK_ERR_INPUT;
  } catch (const DomainError& e) {
    g_error = e.what();
    return WK_ERR_DOMAIN;
  } catch (const NumericError& e) {
    g_error = e.what();
    g_best = e.best_estimate();
    g_achieved = e.achieved_error();
    return WK_ERR_NUMERIC;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return WK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return WK_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown error";
    return WK_ERR_INTERNAL;
  }
}

template <class T>
void need(const T* p, const char* what) {
  if (!p) throw InputError(std::string(what) + " is NULL");
}

QuadratureSpec to_spec(const wk_quad_spec* s) {
  QuadratureSpec q;
  if (!s) return q;
  q.abs_tol = s->abs_tol;
  q.rel_tol = s->rel_tol;
  q.max_depth = s->max_depth;
  q.line_radius = s->line_radius;
  if (s->tail_mode != WK_TAIL_ANALYTIC_BOUND && s->tail_mode != WK_TAIL_EXTRAPOLATE)
    throw InputError("tail_mode must be WK_TAIL_ANALYTIC_BOUND or WK_TAIL_EXTRAPOLATE");
  q.tail_mode = s->tail_mode == WK_TAIL_EXTRAPOLATE ? TailMode::extrapolate : TailMode::analytic_bound;
  q.validate();
  return q;
}

void put(complex z, double* re, double* im) {
  need(re, "re");
  *re = z.real();
  if (im) *im = z.imag();
}

std::vector<std::string> split_list(const char* s) {
  std::vector<std::string> out;
  if (!s) return out;
  std::string cur;
  for (const char* p = s;; ++p) {
    if (*p == ',' || *p == '\0') {
      const auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
      if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
      cur.clear();
      if (*p == '\0') break;
    } else {
      cur += *p;
    }
  }
  return out;
}

std::int64_t parse_int(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw InputError(std::string(what) + ": '" + s + "' is not an integer");
  return v;
}

}  // namespace

extern "C" {

void wk_quad_spec_default(wk_quad_spec* spec) {
  if (!spec) return;
  const QuadratureSpec q;
  *spec = {q.abs_tol, q.rel_tol, q.max_depth, q.line_radius,
           q.tail_mode == TailMode::extrapolate ? WK_TAIL_EXTRAPOLATE : WK_TAIL_ANALYTIC_BOUND};
}

const char* wk_last_error(void) { return g_error.c_str(); }

void wk_last_numeric(double* best_estimate, double* achieved_error) {
  if (best_estimate) *best_estimate = g_best;
  if (achieved_error) *achieved_error = g_achieved;
}

const char* wk_version(void) { return app::kVersion.data(); }

void wk_set_max_threads(int n) { set_max_threads(n > 0 ? static_cast<unsigned>(n) : 0u); }

int wk_exit_code_for_status(wk_status s) {
  switch (s) {
    case WK_OK: return 0;
    case WK_ERR_INPUT:
    case WK_ERR_DOMAIN: return 2;
    default: return 4;
  }
}

wk_status wk_sequence_create(int64_t offset, const double* re, const double* im, size_t n, wk_sequence** out) {
  return guarded([&] {
    need(out, "out");
    if (n > 0) need(re, "re");
    std::vector<complex> v(n);
    for (size_t i = 0; i < n; ++i) {
      v[i] = {re[i], im ? im[i] : 0.0};
      if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
        throw InputError("coefficient " + std::to_string(offset + static_cast<int64_t>(i)) + " is not finite");
    }
    *out = new wk_sequence{CoefficientSequence(offset, std::move(v))};
  });
}

wk_status wk_sequence_read(const char* path, wk_sequence** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new wk_sequence{app::parse_coeffs(path)};
  });
}

wk_status wk_sequence_write(const wk_sequence* c, const char* path) {
  return guarded([&] {
    need(c, "sequence");
    need(path, "path");
    app::write_coeffs(path, c->c);
  });
}

void wk_sequence_destroy(wk_sequence* c) { delete c; }
int64_t wk_sequence_offset(const wk_sequence* c) { return c ? c->c.offset() : 0; }
size_t wk_sequence_size(const wk_sequence* c) { return c ? c->c.size() : 0; }

wk_status wk_sequence_get(const wk_sequence* c, int64_t k, double* re, double* im) {
  return guarded([&] {
    need(c, "sequence");
    put(c->c[k], re, im);
  });
}

wk_status wk_sequence_diff(const wk_sequence* c, wk_sequence** out) {
  return guarded([&] {
    need(c, "sequence");
    need(out, "out");
    *out = new wk_sequence{diff(c->c)};
  });
}

wk_status wk_sequence_bv_norm(const wk_sequence* c, double* out) {
  return guarded([&] {
    need(c, "sequence");
    need(out, "out");
    *out = bv_norm(c->c);
  });
}

wk_status wk_sequence_lp_norm(const wk_sequence* c, double p, double* out) {
  return guarded([&] {
    need(c, "sequence");
    need(out, "out");
    *out = lp_norm(c->c, p);
  });
}

wk_status wk_family_generate(const char* name, const char* params, int64_t truncation, wk_sequence** seq,
                             wk_sampled** fn) {
  return guarded([&] {
    need(name, "family name");
    need(seq, "seq");
    need(fn, "fn");
    *seq = nullptr;
    *fn = nullptr;
    const app::FamilySpec spec{app::family_from_name(name), app::parse_params(params ? params : ""), truncation};
    auto v = app::gen_family(spec);
    if (auto* c = std::get_if<CoefficientSequence>(&v)) *seq = new wk_sequence{std::move(*c)};
    else *fn = new wk_sampled{std::get<SampledPeriodicFn>(std::move(v))};
  });
}

wk_status wk_zigzag_ft(const wk_sequence* c, double x, double* re, double* im) {
  return guarded([&] {
    need(c, "sequence");
    put(zigzag_ft(c->c, x), re, im);
  });
}

wk_status wk_fold_sum(double y, int64_t K, double* value, double* tail_bound) {
  return guarded([&] {
    need(value, "value");
    const auto f = fold_sum(y, K);
    *value = f.value;
    if (tail_bound) *tail_bound = f.tail_bound;
  });
}

wk_status wk_dht(const wk_sequence* c, int64_t n, double* re, double* im) {
  return guarded([&] {
    need(c, "sequence");
    put(dht(c->c, n), re, im);
  });
}

wk_status wk_w0_norm_fejer(const wk_sequence* c, int64_t n, const wk_quad_spec* spec, double* out) {
  return guarded([&] {
    need(c, "sequence");
    need(out, "out");
    *out = w0_norm_fejer(c->c, n, to_spec(spec));
  });
}

wk_status wk_w0_norm_line(const wk_sequence* c, int64_t n, const wk_quad_spec* spec, double* out) {
  return guarded([&] {
    need(c, "sequence");
    need(out, "out");
    *out = w0_norm_line(c->c, n, to_spec(spec));
  });
}

wk_status wk_measure_create(const double* t, const double* re, const double* im, size_t n, wk_measure** out) {
  return guarded([&] {
    need(out, "out");
    if (n > 0) {
      need(t, "t");
      need(re, "re");
    }
    std::vector<Atom> atoms(n);
    for (size_t i = 0; i < n; ++i) atoms[i] = {t[i], complex{re[i], im ? im[i] : 0.0}};
    *out = new wk_measure{MeasureModel(std::move(atoms))};
  });
}

void wk_measure_destroy(wk_measure* mu) { delete mu; }

wk_status wk_measure_variation(const wk_measure* mu, double* out) {
  return guarded([&] {
    need(mu, "measure");
    need(out, "out");
    *out = total_variation(mu->mu);
  });
}

wk_status wk_measure_coefficients(const wk_measure* mu, int64_t n, wk_sequence** out) {
  return guarded([&] {
    need(mu, "measure");
    need(out, "out");
    *out = new wk_sequence{measure_coefficients(mu->mu, n)};
  });
}

wk_status wk_stieltjes_transform(const wk_measure* mu, double x, double* re, double* im) {
  return guarded([&] {
    need(mu, "measure");
    put(stieltjes_transform(mu->mu, x), re, im);
  });
}

wk_status wk_sampled_create(double halfperiod, const double* re, const double* im, size_t m, wk_sampled** out) {
  return guarded([&] {
    need(out, "out");
    if (m > 0) need(re, "re");
    std::vector<complex> v(m);
    for (size_t i = 0; i < m; ++i) v[i] = {re[i], im ? im[i] : 0.0};
    *out = new wk_sampled{SampledPeriodicFn(halfperiod, std::move(v))};
  });
}

void wk_sampled_destroy(wk_sampled* f) { delete f; }
size_t wk_sampled_size(const wk_sampled* f) { return f ? f->f.size() : 0; }

wk_status wk_sampled_eval(const wk_sampled* f, double x, double* re, double* im) {
  return guarded([&] {
    need(f, "function");
    put(f->f(x), re, im);
  });
}

wk_status wk_sampled_modulus(const wk_sampled* f, double h, int l2, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = modulus(f->f, h, l2 ? ModulusNorm::L2 : ModulusNorm::sup);
  });
}

wk_status wk_sampled_best_l2_tail(const wk_sampled* f, int64_t n, double* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = best_l2_tail(f->f, n);
  });
}

void wk_analyze_request_default(wk_analyze_request* req) {
  if (req) *req = {nullptr, nullptr, nullptr, 0, nullptr, nullptr, 0.0, 0};
}

static wk_report* make_report(app::Report r) {
  auto* out = new wk_report{std::move(r), {}, {}, {}};
  for (const auto& t : out->r.tests) out->status_names.emplace_back(to_string(t.status));
  out->verdict = std::string(to_string(out->r.verdict.kind));
  return out;
}

wk_status wk_analyze(const wk_analyze_request* req, wk_report** out) {
  return guarded([&] {
    need(req, "request");
    need(out, "out");
    *out = nullptr;
    app::AnalyzeRequest a;
    if (req->coeffs_path) a.coeffs_path = req->coeffs_path;
    if (req->family) {
      a.family = app::FamilySpec{app::family_from_name(req->family),
                                 app::parse_params(req->params ? req->params : ""), req->truncation};
    } else if (req->params && *req->params) {
      throw InputError("params given without a family");
    }
    if (req->truncation < 0) throw InputError("truncation must be >= 1");
    a.tests = split_list(req->tests);
    for (const auto& s : split_list(req->n_ladder)) a.n_ladder.push_back(parse_int(s, "n-ladder"));
    if (req->n_ladder && a.n_ladder.empty()) throw InputError("n-ladder is empty");
    if (req->tol > 0.0) a.tol = req->tol;
    else if (req->tol < 0.0 || std::isnan(req->tol)) throw InputError("tol must lie in (0, 1)");
    a.fourier_normalization = req->fourier_normalization != 0;
    *out = make_report(app::run_report(a));
  });
}

wk_status wk_gallery(const char* case_name, const char* params, wk_report** out) {
  return guarded([&] {
    need(case_name, "case");
    need(out, "out");
    *out = nullptr;
    *out = make_report(app::gallery(case_name, app::parse_params(params ? params : "")));
  });
}

const char* wk_report_json(wk_report* r, int include_timing) {
  if (!r) return "";
  try {
    r->json = app::report_json(r->r, include_timing != 0);
  } catch (const std::exception& e) {
    g_error = e.what();
    r->json.clear();
  }
  return r->json.c_str();
}

int wk_report_exit_code(const wk_report* r) { return r ? r->r.exit_code : 4; }
size_t wk_report_test_count(const wk_report* r) { return r ? r->r.tests.size() : 0; }

wk_status wk_report_test(const wk_report* r, size_t i, const char** name, const char** status) {
  return guarded([&] {
    need(r, "report");
    if (i >= r->r.tests.size()) throw InputError("test index out of range");
    if (name) *name = r->r.tests[i].name.c_str();
    if (status) *status = r->status_names[i].c_str();
  });
}

const char* wk_report_verdict(const wk_report* r) { return r ? r->verdict.c_str() : ""; }

wk_status wk_report_emit_plot_data(const wk_report* r, const char* dir) {
  return guarded([&] {
    need(r, "report");
    need(dir, "dir");
    app::emit_plot_data(r->r, dir);
  });
}

void wk_report_destroy(wk_report* r) { delete r; }

}  // extern "C"
