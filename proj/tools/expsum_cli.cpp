// expsum_cli: identity certification, inequality audit, bound-vs-actual sweeps,
// single bound reports and decomposition comparisons.
//
// Exit status: 0 success, 1 a checked property failed, 2 invalid configuration,
// 3 internal error.

#include "expsum/audit.hpp"
#include "expsum/bounds.hpp"
#include "expsum/diophantine.hpp"
#include "expsum/expsum.hpp"
#include "expsum/identity.hpp"
#include "expsum/report.hpp"
#include "expsum/sweep.hpp"
#include "expsum/weights.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace expsum;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUserError = 2;
constexpr int kExitInternal = 3;

struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double x = 1e6;
  double eta = 1.0 / 15;
  std::string q_range = "1:100";
  std::string a_mode = "all";
  std::string delta_list = "0";
  std::string weight_overrides;
  std::string output = "-";
  std::string format;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t n_max = 10000;
  std::uint64_t instances = 1000;
  long long a = 1;

  std::uint64_t q_lo = 1, q_hi = 100;
  std::optional<std::uint64_t> a_sample;
  std::vector<double> deltas;
  std::optional<WeightOverride> weights;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UserError(what + ": '" + s + "' is not a number");
  }
}

std::uint64_t parse_count(const std::string& s, const std::string& what) {
  const double v = parse_real(s, what);
  if (!(v >= 1) || v != std::floor(v) || v > 1e15) throw UserError(what + ": '" + s + "' is not a positive integer");
  return static_cast<std::uint64_t>(v);
}

void resolve(RunConfig& c) {
  if (!(c.eta > 0 && c.eta <= 0.1)) throw UserError("--eta must lie in (0, 1/10]");
  if (!(c.x >= 100)) throw UserError("--x must be >= 100");
  if (c.x > 2e8) throw UserError("--x above 2e8 is outside the supported table range");

  const auto parts = split(c.q_range, ':');
  if (parts.size() == 1) {
    c.q_lo = c.q_hi = parse_count(parts[0], "--q-range");
  } else if (parts.size() == 2) {
    c.q_lo = parse_count(parts[0], "--q-range");
    c.q_hi = parse_count(parts[1], "--q-range");
  } else {
    throw UserError("--q-range must be 'q' or 'lo:hi'");
  }
  if (c.q_hi < c.q_lo) throw UserError("--q-range: lo must not exceed hi");

  if (c.a_mode == "all" || c.a_mode == "all-coprime") {
    c.a_sample.reset();
  } else if (c.a_mode.rfind("sample:", 0) == 0) {
    c.a_sample = parse_count(c.a_mode.substr(7), "--a-mode sample size");
  } else {
    throw UserError("--a-mode must be 'all' or 'sample:<k>'");
  }

  c.deltas.clear();
  for (const auto& d : split(c.delta_list, ',')) c.deltas.push_back(parse_real(d, "--delta-list"));
  if (c.deltas.empty()) throw UserError("--delta-list is empty");

  if (!c.weight_overrides.empty()) {
    const auto w = split(c.weight_overrides, ',');
    if (w.size() != 4) throw UserError("--weight-overrides must be 'U,U1,R,V'");
    c.weights = WeightOverride{parse_real(w[0], "U"), parse_real(w[1], "U1"), parse_real(w[2], "R"),
                               parse_real(w[3], "V")};
  }
  if (c.format.empty()) c.format = c.command == "sweep" || c.command == "compare" ? "csv" : "json";
  if (c.format != "csv" && c.format != "json") throw UserError("--format must be csv or json");
  if ((c.command == "verify-identity" || c.command == "audit" || c.command == "bound") && c.format != "json")
    throw UserError(c.command + " only writes json");
  if (c.workers == 0) throw UserError("--workers must be >= 1");
}

Json config_json(const RunConfig& c) {
  Json j{{"command", c.command}, {"x", c.x},         {"eta", c.eta},         {"q_range", {c.q_lo, c.q_hi}},
         {"a_mode", c.a_sample ? "sample:" + std::to_string(*c.a_sample) : std::string("all")},
         {"delta_list", c.deltas}, {"seed", c.seed}, {"workers", c.workers}, {"n_max", c.n_max},
         {"instances", c.instances}, {"a", c.a}};
  if (c.weights)
    j["weight_overrides"] = Json{{"U", c.weights->U}, {"U1", c.weights->U1}, {"R", c.weights->R}, {"V", c.weights->V}};
  else
    j["weight_overrides"] = nullptr;
  return j;
}

ArithTables tables_for(std::uint64_t n) {
  const char* dir = std::getenv("EXPSUM_TABLE_CACHE");
  return cached_tables(n, dir ? std::filesystem::path(dir) : std::filesystem::path());
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UserError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

WeightConfig weight_config_for(const RunConfig& c, std::uint64_t q, double delta0) {
  WeightConfig w;
  w.q = q;
  w.eta = c.eta;
  if (c.weights) {
    w.U = c.weights->U, w.U1 = c.weights->U1, w.R = c.weights->R, w.V = c.weights->V;
  } else {
    const auto pc = choose_params(c.x, q, delta0, c.eta);
    w.U = pc.U, w.U1 = pc.U1, w.R = pc.R, w.V = pc.V;
  }
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    throw UserError(std::string(e.what()) + " (pass --weight-overrides U,U1,R,V)");
  }
  return w;
}

int run_verify_identity(const RunConfig& c) {
  WeightConfig w;
  if (c.weights) {
    w = {.U = c.weights->U, .U1 = c.weights->U1, .R = c.weights->R, .V = c.weights->V, .q = c.q_lo, .eta = c.eta};
  } else {
    w = {.U = 10, .U1 = 40, .R = 5, .V = 30, .q = c.q_lo, .eta = c.eta};
  }
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    throw UserError(e.what());
  }
  const auto t = tables_for(std::max<std::uint64_t>(c.n_max, w.h_support_max()) + 1);
  const WeightSystem ws(w, t);
  const auto lam = mangoldt_residual(decompose_mangoldt(c.n_max, ws, t), ws, t);
  const auto mu = mobius_residual(decompose_mobius(c.n_max, ws, t), ws, t);
  const bool lam_worse = lam.max_abs_residual >= mu.max_abs_residual;
  const Real50 worst = lam_worse ? lam.max_abs_residual : mu.max_abs_residual;
  const Real50 tol("1e-25");
  Json j{{"config", config_json(c)},
         {"weights", to_json(w)},
         {"n_max", c.n_max},
         {"max_abs_residual", to_decimal_string(worst, 6)},
         {"argmax_n", lam_worse ? lam.argmax_n : mu.argmax_n},
         {"tolerance", "1e-25"},
         {"passed", worst < tol},
         {"by_function", {{"mangoldt", to_json(lam)}, {"mobius", to_json(mu)}}}};
  Output out(c.output);
  out.stream() << j.dump(2) << "\n";
  return worst < tol ? 0 : kExitCheckFailed;
}

int run_audit(const RunConfig& c) {
  AuditOptions opt;
  opt.seed = c.seed;
  opt.instances = c.instances;
  const auto t = tables_for(std::max<std::uint64_t>(static_cast<std::uint64_t>(4 * opt.mean_square_min_M), 200000));
  const auto rep = inequality_audit(opt, t);
  Json j = to_json(rep);
  j["config"] = config_json(c);
  Output out(c.output);
  out.stream() << j.dump(2) << "\n";
  return rep.passed() ? 0 : kExitCheckFailed;
}

int run_sweep_command(const RunConfig& c) {
  SweepConfig s;
  s.x = c.x;
  s.eta = c.eta;
  s.q_lo = c.q_lo;
  s.q_hi = c.q_hi;
  s.a_sample = c.a_sample;
  s.deltas = c.deltas;
  s.weights = c.weights;
  s.seed = c.seed;
  s.workers = c.workers;
  const auto t = tables_for(static_cast<std::uint64_t>(std::floor(c.x)));
  const auto rows = run_sweep(s, t);
  const auto summary = summarize(rows);
  Output out(c.output);
  if (c.format == "csv") {
    write_sweep_csv(out.stream(), rows);
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out.stream() << Json{{"config", config_json(c)}, {"summary", to_json(summary)}, {"rows", arr}}.dump(2) << "\n";
  }
  std::cerr << "sweep: " << summary.rows << " rows, " << summary.ratio_above_one << " with ratio > 1, "
            << summary.rows_all_flags << " with every condition flag true\n";
  return 0;
}

int run_bound(const RunConfig& c) {
  const double d0 = delta0_of(c.deltas.front());
  BoundReport r;
  try {
    r = bound_report(c.x, c.q_lo, d0, c.eta);
  } catch (const std::domain_error& e) {
    throw UserError(e.what());
  }
  Json j = to_json(r);
  j["config"] = config_json(c);
  const auto comp = bound_components(c.x, c.q_lo, d0, c.eta, r.params);
  j["components"] = Json{{"type_one_a", comp.type_one_a},
                         {"type_one_b", comp.type_one_b},
                         {"type_one_c", comp.type_one_c},
                         {"o_term_non_binding", comp.o_term},
                         {"type_two_mangoldt", comp.type_two_mangoldt},
                         {"type_two_mobius", comp.type_two_mobius},
                         {"total_mangoldt", comp.total_mangoldt},
                         {"total_mobius", comp.total_mobius},
                         {"conditions_hold", comp.conditions_hold}};
  Output out(c.output);
  out.stream() << j.dump(2) << "\n";
  return 0;
}

int run_compare(const RunConfig& c) {
  const std::uint64_t q = c.q_lo;
  const double delta = c.deltas.front();
  const auto w = weight_config_for(c, q, delta0_of(delta));
  const auto t = tables_for(std::max<std::uint64_t>(static_cast<std::uint64_t>(std::floor(c.x)), w.h_support_max()) + 1);
  const WeightSystem ws(w, t);
  const Phase alpha = Phase::of(alpha_from(c.a, q, delta, c.x));
  std::vector<CompareRow> rows;
  bool ok = true;
  double worst = 0;
  for (const ArithFn f : {ArithFn::mangoldt, ArithFn::mobius}) {
    const auto d = decompose_sum(f, alpha, c.x, ws, t);
    ok = ok && d.residual <= 1e-9 * c.x;
    worst = std::max(worst, d.residual);
    for (auto& r : compare_rows(d, c.a, q, delta)) rows.push_back(r);
  }
  Output out(c.output);
  if (c.format == "csv") {
    write_compare_csv(out.stream(), rows);
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out.stream() << Json{{"config", config_json(c)}, {"weights", to_json(w)}, {"tolerance", 1e-9 * c.x},
                         {"max_residual", worst}, {"passed", ok}, {"rows", arr}}
                        .dump(2)
                 << "\n";
  }
  if (!ok) std::cerr << "compare: residual " << worst << " exceeds 1e-9*x\n";
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential sums over primes and the Möbius function: identity checks, audits and bounds"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--x", cfg.x, "summation length x")->capture_default_str();
    sub->add_option("--eta", cfg.eta, "eta in (0, 1/10]")->capture_default_str();
    sub->add_option("--q-range", cfg.q_range, "modulus q or range lo:hi")->capture_default_str();
    sub->add_option("--a-mode", cfg.a_mode, "all | sample:<k>")->capture_default_str();
    sub->add_option("--delta-list", cfg.delta_list, "comma-separated delta values")->capture_default_str();
    sub->add_option("--weight-overrides", cfg.weight_overrides, "U,U1,R,V replacing the default parameters");
    sub->add_option("--output", cfg.output, "output path, - for stdout")->capture_default_str();
    sub->add_option("--format", cfg.format, "csv | json");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify-identity", "certify the weighted Vaughan identities up to n-max");
  add_common(verify);
  verify->add_option("--n-max", cfg.n_max, "largest n checked")->capture_default_str();
  auto* audit = app.add_subcommand("audit", "randomized audit of the explicit inequalities");
  add_common(audit);
  audit->add_option("--instances", cfg.instances, "instances per inequality")->capture_default_str();
  auto* sweep = app.add_subcommand("sweep", "|S| against the main bound over (q, a, delta)");
  add_common(sweep);
  auto* bound = app.add_subcommand("bound", "single bound report for (x, q, delta)");
  add_common(bound);
  auto* compare = app.add_subcommand("compare", "direct sum against its type I/II decomposition at a/q + delta/x");
  add_common(compare);
  compare->add_option("--a", cfg.a, "numerator a of the rational anchor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUserError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "compare") {
    // defaults for compare: alpha = 1/3 + 2/x at x = 10^5
    if (compare->count("--q-range") == 0) cfg.q_range = "3";
    if (compare->count("--delta-list") == 0) cfg.delta_list = "2";
    if (compare->count("--x") == 0) cfg.x = 1e5;
  }

  try {
    resolve(cfg);
    if (cfg.command == "verify-identity") return run_verify_identity(cfg);
    if (cfg.command == "audit") return run_audit(cfg);
    if (cfg.command == "sweep") return run_sweep_command(cfg);
    if (cfg.command == "bound") return run_bound(cfg);
    return run_compare(cfg);
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
