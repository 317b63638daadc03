#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "wienerkit/app.hpp"
#include "wienerkit/error.hpp"

namespace wienerkit::app {
namespace {

std::string where(const std::string& origin, const YAML::Mark& m) {
  if (m.is_null()) return origin;
  return origin + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
}

[[noreturn]] void fail(const std::string& pos, const std::string& msg) { throw InputError(pos + ": " + msg); }

double yaml_number(const YAML::Node& n, const std::string& origin, const std::string& field) {
  if (!n.IsScalar()) fail(where(origin, n.Mark()), field + " is not a number");
  double v = 0.0;
  try {
    v = n.as<double>();
  } catch (const YAML::Exception&) {
    fail(where(origin, n.Mark()), field + " is not a number: '" + n.Scalar() + "'");
  }
  if (!std::isfinite(v)) fail(where(origin, n.Mark()), field + " is not finite");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
bool parse_exact(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && p == end && !s.empty();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

CoefficientSequence parse_yaml(std::string_view text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    fail(where(origin, e.mark), e.msg);
  }
  if (!root.IsMap()) fail(where(origin, root.Mark()), "expected a mapping with fields offset and values");
  for (const auto& kv : root) {
    const auto key = kv.first.Scalar();
    if (key != "offset" && key != "values") fail(where(origin, kv.first.Mark()), "unknown field '" + key + "'");
  }
  const YAML::Node off = root["offset"];
  if (!off) fail(origin, "missing field offset");
  std::int64_t offset = 0;
  if (!off.IsScalar() || !parse_exact(off.Scalar(), offset))
    fail(where(origin, off.Mark()), "offset is not an integer");
  const YAML::Node vals = root["values"];
  if (!vals) fail(origin, "missing field values");
  if (!vals.IsSequence()) fail(where(origin, vals.Mark()), "values is not a list");
  std::vector<complex> v;
  v.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const YAML::Node e = vals[i];
    const std::string field = "values[" + std::to_string(i) + "]";
    if (!e.IsSequence() || e.size() != 2) fail(where(origin, e.Mark()), field + " is not a [re, im] pair");
    v.emplace_back(yaml_number(e[0], origin, field + ".re"), yaml_number(e[1], origin, field + ".im"));
  }
  return CoefficientSequence(offset, std::move(v));
}

CoefficientSequence parse_csv(std::string_view text, const std::string& origin) {
  std::vector<complex> v;
  std::int64_t offset = 0;
  bool first_row = true;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::string pos = origin + ":" + std::to_string(line_no);
    const auto cols = split(line, ',');
    if (cols.size() != 3) fail(pos, "expected 3 columns k,re,im, got " + std::to_string(cols.size()));
    std::int64_t k = 0;
    if (!parse_exact(cols[0], k)) {
      if (first_row && v.empty() && trim(cols[0]) == "k" && trim(cols[1]) == "re" && trim(cols[2]) == "im")
        continue;  // header
      fail(pos + ":1", "k is not an integer");
    }
    double re = 0.0, im = 0.0;
    if (!parse_exact(cols[1], re)) fail(pos + ":2", "re is not a number");
    if (!parse_exact(cols[2], im)) fail(pos + ":3", "im is not a number");
    if (!std::isfinite(re)) fail(pos + ":2", "re is not finite");
    if (!std::isfinite(im)) fail(pos + ":3", "im is not finite");
    if (first_row) {
      offset = k;
      first_row = false;
    } else if (k != offset + static_cast<std::int64_t>(v.size())) {
      fail(pos + ":1", "index gap: expected k = " + std::to_string(offset + static_cast<std::int64_t>(v.size())) +
                           ", got " + std::to_string(k));
    }
    v.emplace_back(re, im);
  }
  return CoefficientSequence(offset, std::move(v));
}

bool ends_with_csv(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".csv" || ext == ".CSV";
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CoefficientSequence parse_coeffs_text(std::string_view text, bool csv, const std::string& origin) {
  return csv ? parse_csv(text, origin) : parse_yaml(text, origin);
}

CoefficientSequence parse_coeffs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open coefficient file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_coeffs_text(ss.str(), ends_with_csv(path), path);
}

std::string format_coeffs(const CoefficientSequence& c, bool csv) {
  std::string out;
  if (csv) {
    out = "k,re,im\n";
    for (std::int64_t k = c.offset(); k < c.end(); ++k)
      out += std::to_string(k) + "," + format_double(c[k].real()) + "," + format_double(c[k].imag()) + "\n";
    return out;
  }
  out = "offset: " + std::to_string(c.offset()) + "\n";
  if (c.empty()) return out + "values: []\n";
  out += "values:\n";
  for (const auto& z : c.values()) out += "  - [" + format_double(z.real()) + ", " + format_double(z.imag()) + "]\n";
  return out;
}

void write_coeffs(const std::string& path, const CoefficientSequence& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write coefficient file");
  out << format_coeffs(c, ends_with_csv(path));
  if (!out) throw InputError(path + ": write failed");
}

Params parse_params(std::string_view text) {
  Params p;
  if (trim(text).empty()) return p;
  for (auto item : split(text, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("parameter '" + std::string(item) + "' is not key=value");
    const std::string key(trim(item.substr(0, eq)));
    const std::string val(trim(item.substr(eq + 1)));
    if (key.empty()) throw InputError("parameter with empty key");
    if (!p.emplace(key, val).second) throw InputError("parameter '" + key + "' given twice");
  }
  return p;
}

// ---- report serialization ---------------------------------------------------

namespace {

using nlohmann::json;

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json numbers_json(const Numbers& n) {
  json o = json::object();
  for (const auto& [k, v] : n) o[k] = num(v);
  return o;
}

json trend_json(const std::optional<TrendReport>& t) {
  if (!t) return nullptr;
  json ladder = json::array();
  for (const auto& p : t->ladder) ladder.push_back(json::array({p.n, num(p.value)}));
  return {{"classification", std::string(to_string(t->classification))},
          {"slope", num(t->slope)},
          {"ladder", ladder}};
}

}  // namespace

std::string report_json(const Report& r, bool include_timing) {
  json j;
  j["tool"] = {{"name", std::string(kToolName)}, {"version", std::string(kVersion)}};
  j["inputs"] = json(r.inputs);
  j["quadrature"] = {{"abs_tol", r.quadrature.abs_tol},
                     {"rel_tol", r.quadrature.rel_tol},
                     {"max_depth", r.quadrature.max_depth},
                     {"line_radius", r.quadrature.line_radius},
                     {"tail_mode", r.quadrature.tail_mode == TailMode::extrapolate ? "extrapolate" : "analytic_bound"}};
  json tests = json::array();
  for (const auto& t : r.tests)
    tests.push_back({{"name", t.name},
                     {"status", std::string(to_string(t.status))},
                     {"numbers", numbers_json(t.numbers)},
                     {"trend", trend_json(t.trend)}});
  j["tests"] = tests;
  j["trend"] = trend_json(r.trend);
  json wit = json::object();
  for (const auto& [k, v] : r.verdict.witnesses) wit[k] = numbers_json(v);
  j["verdict"] = {{"kind", std::string(to_string(r.verdict.kind))}, {"witnesses", wit}};
  json curves = json::object();
  for (const auto& [name, pts] : r.curves) {
    json a = json::array();
    for (const auto& [x, y] : pts) a.push_back(json::array({num(x), num(y)}));
    curves[name] = a;
  }
  j["curves"] = curves;
  if (include_timing) {
    json t = json::object();
    for (const auto& [k, v] : r.timing) t[k] = v;
    j["timing"] = t;
  }
  j["exit_code"] = r.exit_code;
  return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError(p.string() + ": cannot open for writing");
  out << content;
  if (!out) throw InputError(p.string() + ": write failed");
}

std::string ladder_csv(const std::optional<TrendReport>& t) {
  std::string s = "n,value\n";
  if (t)
    for (const auto& p : t->ladder) s += std::to_string(p.n) + "," + format_double(p.value) + "\n";
  return s;
}

}  // namespace

void emit_plot_data(const Report& r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError(dir + ": cannot create directory: " + ec.message());
  const std::filesystem::path base(dir);
  write_file(base / "trend.csv", ladder_csv(r.trend));
  for (const auto& t : r.tests)
    if (t.trend) write_file(base / ("test_" + t.name + ".csv"), ladder_csv(t.trend));
  for (const auto& [name, pts] : r.curves) {
    std::string s = "x,value\n";
    for (const auto& [x, y] : pts) s += format_double(x) + "," + format_double(y) + "\n";
    write_file(base / ("curve_" + name + ".csv"), s);
  }
}

int exit_code_for_current_exception() noexcept {
  try {
    throw;
  } catch (const InputError&) {
    return 2;
  } catch (const DomainError&) {
    return 2;
  } catch (const NumericError&) {
    return 4;
  } catch (...) {
    return 4;
  }
}

}  // namespace wienerkit::app
