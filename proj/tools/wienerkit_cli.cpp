// Command-line front end; talks to the library only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "wienerkit/wienerkit.h"

namespace {

int fail(wk_status s) {
  std::fprintf(stderr, "wienerkit: error: %s\n", wk_last_error());
  if (s == WK_ERR_NUMERIC) {
    double best = 0, err = 0;
    wk_last_numeric(&best, &err);
    std::fprintf(stderr, "wienerkit: best estimate %.17g, achieved error %.3g\n", best, err);
  }
  return wk_exit_code_for_status(s);
}

int finish(wk_report* rep, const std::string& out) {
  const std::string json = wk_report_json(rep, 1);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  std::ofstream f(std::filesystem::path(out) / "report.json", std::ios::binary);
  if (!f || !(f << json)) {
    std::fprintf(stderr, "wienerkit: error: cannot write %s/report.json\n", out.c_str());
    wk_report_destroy(rep);
    return 2;
  }
  f.close();
  if (wk_status s = wk_report_emit_plot_data(rep, out.c_str()); s != WK_OK) {
    wk_report_destroy(rep);
    return fail(s);
  }
  for (size_t i = 0; i < wk_report_test_count(rep); ++i) {
    const char *name = nullptr, *status = nullptr;
    wk_report_test(rep, i, &name, &status);
    std::printf("%-22s %s\n", name, status);
  }
  std::printf("%-22s %s\n", "verdict", wk_report_verdict(rep));
  const int code = wk_report_exit_code(rep);
  wk_report_destroy(rep);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical diagnostics for Fourier and Fourier-Stieltjes series"};
  app.set_version_flag("--version", std::string("wienerkit ") + wk_version());
  app.require_subcommand(1);

  std::string coeffs, family, params, tests = "all", ladder, out, normalization = "stieltjes", gcase;
  int64_t truncation = 0;
  double tol = 0.0;
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (default: WIENERKIT_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  auto* an = app.add_subcommand("analyze", "Run the test battery on a coefficient file or a family");
  auto* src = an->add_option_group("input");
  src->add_option("--coeffs", coeffs, "Coefficient file (YAML/JSON, or CSV k,re,im)");
  src->add_option("--family", family, "poisson, power_log, log_sine, chirp, fejer, atoms");
  src->require_option(1);
  an->add_option("--params", params, "Family parameters, k=v,...");
  an->add_option("--truncation", truncation, "Largest |k| (default 4 x largest ladder entry)");
  an->add_option("--tests", tests, "Comma list of tests, or all");
  an->add_option("--n-ladder", ladder, "Comma list of truncations (default 16,...,4096)");
  an->add_option("--tol", tol, "Relative quadrature tolerance");
  an->add_option("--out", out, "Output directory")->required();
  an->add_option("--normalization", normalization, "stieltjes (c_k = ∫e^{-ikt}dF) or fourier (with 1/2π)")
      ->check(CLI::IsMember({"stieltjes", "fourier"}));

  auto* ga = app.add_subcommand("gallery", "Reproduce a known example");
  ga->add_option("--case", gcase, "atoms, chirp, fejer, fold, log_sine, poisson, salem")->required();
  ga->add_option("--params", params, "Case parameters, k=v,...");
  ga->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (threads > 0) wk_set_max_threads(threads);

  wk_report* rep = nullptr;
  wk_status s = WK_OK;
  if (*an) {
    wk_analyze_request req;
    wk_analyze_request_default(&req);
    if (!coeffs.empty()) req.coeffs_path = coeffs.c_str();
    if (!family.empty()) req.family = family.c_str();
    if (!params.empty()) req.params = params.c_str();
    req.truncation = truncation;
    req.tests = tests.c_str();
    if (!ladder.empty()) req.n_ladder = ladder.c_str();
    req.tol = tol;
    req.fourier_normalization = normalization == "fourier";
    s = wk_analyze(&req, &rep);
  } else {
    s = wk_gallery(gcase.c_str(), params.empty() ? nullptr : params.c_str(), &rep);
  }
  if (s != WK_OK) return fail(s);
  return finish(rep, out);
}
