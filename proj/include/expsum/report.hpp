#pragma once

// Machine-readable output: RFC-4180 CSV with a schema comment line, and JSON
// with a fixed key order.

#include "expsum/audit.hpp"
#include "expsum/bounds.hpp"
#include "expsum/expsum.hpp"
#include "expsum/identity.hpp"
#include "expsum/sweep.hpp"
#include "expsum/weights.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace expsum {

using Json = nlohmann::ordered_json;

inline constexpr int kCsvSchemaVersion = 1;

inline std::string csv_schema_line() { return "# expsum-kit v" + std::to_string(kCsvSchemaVersion); }

/// Shortest round-trip decimal; "nan" / "inf" / "-inf" for non-finite values.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& columns) : os_(os) {
    os_ << csv_schema_line() << "\r\n";
    row(columns);
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << csv_field(fields[i]);
    os_ << "\r\n";
  }

 private:
  std::ostream& os_;
};

/// "name=1;name=0;..."
inline std::string flags_field(const std::vector<std::pair<std::string, bool>>& flags) {
  std::string s;
  for (const auto& [name, ok] : flags) {
    if (!s.empty()) s += ';';
    s += name + (ok ? "=1" : "=0");
  }
  return s;
}

inline Json json_real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

inline Json to_json(const std::vector<std::pair<std::string, bool>>& flags) {
  Json j = Json::object();
  for (const auto& [name, ok] : flags) j[name] = ok;
  return j;
}

inline Json to_json(const WeightConfig& c) {
  return Json{{"U", c.U}, {"U1", c.U1}, {"R", c.R}, {"V", c.V}, {"q", c.q}, {"eta", c.eta}, {"classic", c.classic}};
}

inline Json to_json(const ResidualReport& r) {
  return Json{{"config", to_json(r.config)},
              {"n_max", r.n_max},
              {"max_abs_residual", to_decimal_string(r.max_abs_residual, 6)},
              {"argmax_n", r.argmax_n}};
}

inline Json to_json(const ParamChoice& p) {
  return Json{{"U", p.U}, {"U1", p.U1}, {"R", p.R}, {"R1", p.R1}, {"V", p.V}, {"Delta", p.Delta}, {"Q", p.Q}};
}

inline Json to_json(const BoundReport& r) {
  return Json{{"x", r.x},
              {"q", r.q},
              {"delta0", r.delta0},
              {"eta", r.eta},
              {"u", r.u},
              {"u0", r.u0},
              {"F", r.F},
              {"G", r.G},
              {"bound_mangoldt", r.bound_mangoldt},
              {"bound_mobius", r.bound_mobius},
              {"params", to_json(r.params)},
              {"flags", to_json(r.params.condition_flags)},
              {"all_flags", r.params.all_flags()},
              {"disclaimer", r.disclaimer}};
}

inline Json to_json(const AuditEntry& e) {
  return Json{{"name", e.name},
              {"instances", e.instances},
              {"violations", e.violations},
              {"max_ratio", json_real(e.max_ratio)},
              {"witness", e.witness}};
}

inline Json to_json(const AuditReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  return Json{{"seed", r.seed}, {"passed", r.passed()}, {"entries", entries}};
}

inline Json to_json(const SweepRow& r) {
  return Json{{"x", r.x},
              {"f", to_string(r.f)},
              {"q", r.q},
              {"a", r.a},
              {"delta", r.delta},
              {"delta0", r.delta0},
              {"re", r.value.real()},
              {"im", r.value.imag()},
              {"abs", r.abs()},
              {"bound", json_real(r.bound)},
              {"ratio", json_real(r.ratio)},
              {"in_range", r.in_range},
              {"U", r.U},
              {"U1", r.U1},
              {"R", r.R},
              {"V", r.V},
              {"flags", to_json(r.flags)}};
}

inline Json to_json(const SweepSummary& s) {
  Json failures = Json::object();
  for (const auto& [name, n] : s.flag_failures) failures[name] = n;
  return Json{{"rows", s.rows},
              {"rows_in_range", s.rows_in_range},
              {"ratio_above_one", s.ratio_above_one},
              {"rows_all_flags", s.rows_all_flags},
              {"max_ratio_mangoldt", s.max_ratio_mangoldt},
              {"max_ratio_mobius", s.max_ratio_mobius},
              {"flag_failures", failures}};
}

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> c{"x",     "f",     "q",        "a", "delta", "delta0", "re", "im", "abs",
                                          "bound", "ratio", "in_range", "U", "U1",    "R",      "V",  "flags"};
  return c;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  CsvWriter w(os, sweep_columns());
  for (const auto& r : rows) {
    w.row({format_real(r.x), to_string(r.f), std::to_string(r.q), std::to_string(r.a), format_real(r.delta),
           format_real(r.delta0), format_real(r.value.real()), format_real(r.value.imag()), format_real(r.abs()),
           format_real(r.bound), format_real(r.ratio), r.in_range ? "1" : "0", format_real(r.U), format_real(r.U1),
           format_real(r.R), format_real(r.V), flags_field(r.flags)});
  }
}

/// One decomposition as rows (component ∈ direct, I1, I2, II, tail).
struct CompareRow {
  double x = 0;
  ArithFn f = ArithFn::mangoldt;
  long long a = 0;
  std::uint64_t q = 1;
  double delta = 0;
  double delta0 = 1;
  std::string component;
  std::complex<double> value;
  double residual = 0;
};

inline std::vector<CompareRow> compare_rows(const DecompositionReport& d, long long a, std::uint64_t q,
                                            double delta) {
  std::vector<CompareRow> rows;
  const std::pair<const char*, const ExpSumValue*> parts[] = {
      {"direct", &d.s_direct}, {"I1", &d.s_I1}, {"I2", &d.s_I2}, {"II", &d.s_II}, {"tail", &d.s_tail}};
  for (const auto& [name, v] : parts)
    rows.push_back({d.x, d.f, a, q, delta, delta0_of(delta), name, v->value, d.residual});
  return rows;
}

inline const std::vector<std::string>& compare_columns() {
  static const std::vector<std::string> c{"x",  "f",  "a",   "q",         "delta",   "delta0",
                                          "re", "im", "abs", "component", "residual"};
  return c;
}

inline void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  CsvWriter w(os, compare_columns());
  for (const auto& r : rows) {
    w.row({format_real(r.x), to_string(r.f), std::to_string(r.a), std::to_string(r.q), format_real(r.delta),
           format_real(r.delta0), format_real(r.value.real()), format_real(r.value.imag()),
           format_real(std::abs(r.value)), r.component, format_real(r.residual)});
  }
}

inline Json to_json(const CompareRow& r) {
  return Json{{"x", r.x},
              {"f", to_string(r.f)},
              {"a", r.a},
              {"q", r.q},
              {"delta", r.delta},
              {"delta0", r.delta0},
              {"re", r.value.real()},
              {"im", r.value.imag()},
              {"abs", std::abs(r.value)},
              {"component", r.component},
              {"residual", r.residual}};
}

}  // namespace expsum
