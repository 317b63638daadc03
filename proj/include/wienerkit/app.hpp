#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wienerkit/battery.hpp"
#include "wienerkit/quadrature.hpp"
#include "wienerkit/seqcore.hpp"
#include "wienerkit/trend.hpp"
#include "wienerkit/wnorm.hpp"

namespace wienerkit::app {

inline constexpr std::string_view kToolName = "wienerkit";
inline constexpr std::string_view kVersion = "0.1.0";

// ---- coefficient files ------------------------------------------------------

// YAML/JSON document {offset: int, values: [[re, im], ...]}, or CSV rows k,re,im
// (optional header) when the path ends in .csv. Errors carry path:line:col.
CoefficientSequence parse_coeffs(const std::string& path);
CoefficientSequence parse_coeffs_text(std::string_view text, bool csv, const std::string& origin = "<text>");
void write_coeffs(const std::string& path, const CoefficientSequence& c);
// %.17g
std::string format_double(double x);
std::string format_coeffs(const CoefficientSequence& c, bool csv);

// ---- families ---------------------------------------------------------------

using Params = std::map<std::string, std::string>;

// "k=v,k=v". Keys must be unique.
Params parse_params(std::string_view text);

enum class FamilyKind { explicit_coeffs, poisson, power_log, log_sine, chirp, fejer, atoms };

std::string_view to_string(FamilyKind k) noexcept;
FamilyKind family_from_name(std::string_view name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::explicit_coeffs;
  Params params;
  std::int64_t truncation = 0;  // N >= 1
};

// A generated input: a coefficient family (truncated at any n), optionally
// with the measure it came from, or a sampled function.
class Family {
 public:
  static Family from_spec(const FamilySpec& spec);
  static Family from_coefficients(CoefficientSequence c);

  FamilyKind kind() const noexcept { return kind_; }
  bool is_sampled() const noexcept { return sampled_.has_value(); }

  // Coefficients for |k| <= min(n, N).
  CoefficientSequence coefficients(std::int64_t n) const;
  CoefficientSequence full() const { return coefficients(truncation_); }
  std::int64_t truncation() const noexcept { return truncation_; }
  const std::optional<MeasureModel>& measure() const noexcept { return measure_; }
  const std::optional<SampledPeriodicFn>& sampled() const noexcept { return sampled_; }
  double param(const std::string& key) const;  // numeric parameter actually used

 private:
  FamilyKind kind_ = FamilyKind::explicit_coeffs;
  std::int64_t truncation_ = 0;
  std::map<std::string, double> numeric_;
  std::string sign_;
  std::optional<CoefficientSequence> explicit_;
  std::optional<MeasureModel> measure_;
  std::optional<SampledPeriodicFn> sampled_;
};

// Parametric generation. poisson(r): c_k = r^|k|. power_log(alpha, beta, sign, shift):
// u(m) = (m+shift)^{-alpha} ln(m+shift)^{-beta} and c_k = u(|k|) (even),
// -i sgn(k) u(|k|) (odd), u(k) for k >= 0 (one_sided), (-1)^k u(|k|) (alternating).
// log_sine: b_k = 1/ln(k+1). chirp(alpha, samples): f(x) = |x|^alpha sin(π²/x)
// on [-π, π). fejer(N): c_k = (1-|k|/N)_+. atoms("t:re:im;..."): φ₀ at the integers.
std::variant<CoefficientSequence, SampledPeriodicFn> gen_family(const FamilySpec& spec);

// ---- chirp transform --------------------------------------------------------

// f̂(y) = ∫_{-π}^{π} |x|^α sin(π²/x) e^{-ixy} dx.
complex chirp_transform(double alpha, double y, const QuadratureSpec& spec);

struct ChirpFit {
  double slope;
  double target;  // -(α/2 + 3/4)
  std::vector<std::pair<double, double>> envelope;  // (y, max |f̂| over one oscillation)
};
// Least-squares log-log slope of the envelope of |f̂| over y ∈ [y_lo, y_hi].
ChirpFit chirp_fit(double alpha, double y_lo = 1e2, double y_hi = 1e4, std::size_t centers = 21,
                   std::size_t samples_per_window = 24);

// ---- reports ----------------------------------------------------------------

struct Report {
  std::map<std::string, std::string> inputs;
  QuadratureSpec quadrature;
  std::vector<TestResult> tests;  // sorted by name
  std::optional<TrendReport> trend;
  Verdict verdict;
  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  std::map<std::string, double> timing;  // seconds per test
  int exit_code = 0;
};

struct AnalyzeRequest {
  std::optional<std::string> coeffs_path;
  std::optional<FamilySpec> family;
  std::vector<std::string> tests;  // empty or {"all"} = every test
  std::vector<std::int64_t> n_ladder;  // default 2^4 .. 2^12
  std::optional<double> tol;
  bool fourier_normalization = false;  // input coefficients carry 1/(2π)
};

// Names accepted by --tests.
const std::vector<std::string>& test_names();

std::vector<std::int64_t> default_ladder();

// Runs the selected tests. Exit code 0, or 3 if any necessary test failed.
// Input problems throw InputError, quadrature failures NumericError.
Report run_report(const AnalyzeRequest& req);

// Known cases: fejer, poisson, log_sine, salem, chirp, fold, atoms.
const std::vector<std::string>& gallery_cases();
Report gallery(const std::string& name, const Params& params = {});

// Serialized report. Keys sorted; timing omitted when include_timing is false.
std::string report_json(const Report& r, bool include_timing = true);

// trend.csv, test_<name>.csv per test trend, curve_<name>.csv per curve.
// Numbers use 17 significant digits; directories are created.
void emit_plot_data(const Report& r, const std::string& dir);

// Exit code for an exception escaping run_report/gallery.
int exit_code_for_current_exception() noexcept;

}  // namespace wienerkit::app
