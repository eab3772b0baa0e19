// conecert: command-line front end for the catalog, checkers and certificates.
//
// Exit codes: 0 no violation / certified, 1 violation / refused, 2 usage
// error, 3 numeric failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "conecert/catalog.hpp"
#include "conecert/certify.hpp"
#include "conecert/checkers.hpp"
#include "conecert/error.hpp"
#include "conecert/json_io.hpp"
#include "conecert/suite.hpp"

namespace {

using nlohmann::json;
using namespace conecert;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckArgs {
  std::string id;
  std::string property;
  std::size_t trials = CheckConfig{}.trials;
  std::uint64_t seed = CheckConfig{}.seed;
  double scale = CheckConfig{}.scale;
  std::size_t dim = 0;
  int order_cap = CheckConfig{}.order_cap;
  unsigned threads = CheckConfig{}.threads;
  bool no_shrink = false;
  std::vector<std::string> params;
  std::string json_out;
  std::string config_file;
  bool pretty = false;
  // certify only
  std::string method;
  std::size_t points = 200;
};

ParamValue parse_value(const std::string& text) {
  if (text.empty()) return std::vector<double>{};
  std::vector<double> numbers;
  std::stringstream in(text);
  std::string item;
  bool numeric = true;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) numeric = false;
      numbers.push_back(v);
    } catch (const std::exception&) {
      numeric = false;
    }
    if (!numeric) break;
  }
  if (!numeric) return text;
  if (numbers.size() == 1 && text.find(',') == std::string::npos) return numbers.front();
  return numbers;
}

ParamValue json_param(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array()) return v.get<std::vector<double>>();
  if (v.is_string()) return v.get<std::string>();
  throw UsageError("config params must be numbers, number lists or strings");
}

// Config file keys mirror the long flag names; flags given on the command
// line win.
void apply_config(CheckArgs& args, const CLI::App& cmd, ParamMap& params) {
  if (args.config_file.empty()) return;
  std::ifstream in(args.config_file);
  if (!in) throw UsageError("cannot read config file " + args.config_file);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config file is not valid JSON: ") + e.what());
  }
  auto unset = [&](const char* flag) { return cmd.count(flag) == 0; };
  if (cfg.contains("property") && unset("--property")) args.property = cfg["property"];
  if (cfg.contains("trials") && unset("--trials")) args.trials = cfg["trials"];
  if (cfg.contains("seed") && unset("--seed")) args.seed = cfg["seed"];
  if (cfg.contains("scale") && unset("--scale")) args.scale = cfg["scale"];
  if (cfg.contains("dim") && unset("--dim")) args.dim = cfg["dim"];
  if (cfg.contains("order-cap") && unset("--order-cap")) args.order_cap = cfg["order-cap"];
  if (cfg.contains("threads") && unset("--threads")) args.threads = cfg["threads"];
  if (cfg.contains("points") && unset("--points")) args.points = cfg["points"];
  if (cfg.contains("method") && unset("--method")) args.method = cfg["method"];
  if (cfg.contains("param")) {
    for (const auto& [key, value] : cfg["param"].items()) params[key] = json_param(value);
  }
}

ParamMap collect_params(CheckArgs& args, const CLI::App& cmd) {
  ParamMap params;
  apply_config(args, cmd, params);
  for (const std::string& kv : args.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
  }
  return params;
}

CheckConfig config_of(const CheckArgs& args) {
  CheckConfig cfg;
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.scale = args.scale;
  cfg.order_cap = args.order_cap;
  cfg.threads = args.threads;
  cfg.shrink = !args.no_shrink;
  return cfg;
}

PropertyLabel property_of(const std::string& text) {
  if (text.empty()) throw UsageError("--property is required");
  const auto label = parse_property(text);
  if (!label) throw UsageError("unknown property '" + text + "'");
  return *label;
}

// Opened before any work so an unwritable path fails fast.
std::optional<std::ofstream> open_output(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

void emit(const json& j, std::optional<std::ofstream>& file) {
  if (file) {
    *file << j.dump() << '\n';
  } else {
    std::cout << j.dump() << '\n';
  }
}

std::string format_point(const Point& p) { return to_json(p).dump(); }

void print_report_table(const CheckReport& r, std::ostream& out) {
  out << std::left << std::setw(14) << "target" << r.target << '\n'
      << std::setw(14) << "property" << r.property << '\n'
      << std::setw(14) << "verdict" << to_string(r.verdict) << '\n'
      << std::setw(14) << "trials" << r.trials_run << " (" << r.skipped << " skipped)\n"
      << std::setw(14) << "worst margin" << std::setprecision(12) << r.worst_margin + 0.0 << '\n';
  if (r.witness) {
    const Witness& w = *r.witness;
    out << std::setw(14) << "violated" << w.expression << '\n'
        << std::setw(14) << "margin" << w.margin << '\n';
    for (const NamedPoint& p : w.points) {
      out << "  " << std::setw(12) << p.name << format_point(p.value) << '\n';
    }
  }
}

int cmd_catalog_list(bool pretty) {
  for (const CatalogEntry& e : builtin_entries()) {
    const json j = catalog_listing(e);
    if (pretty) {
      std::cout << std::left << std::setw(24) << e.id << std::setw(30) << j["domain"].get<std::string>();
      for (const auto& l : j["labels"]) std::cout << ' ' << l.get<std::string>();
      std::cout << '\n';
    } else {
      std::cout << j.dump() << '\n';
    }
  }
  return kExitOk;
}

int cmd_check(CheckArgs& args, const CLI::App& cmd, bool refuting) {
  const ParamMap params = collect_params(args, cmd);
  const PropertyLabel label = property_of(args.property);
  const CatalogEntry& entry = lookup(args.id);
  auto file = open_output(args.json_out);
  const CheckConfig cfg = config_of(args);
  const CheckReport r = refuting ? refute(entry, label, cfg, params, args.dim)
                                 : check(entry, label, cfg, params, args.dim);
  json j = to_json(r);
  const auto status = status_of(claims_for(entry, params, args.dim), label);
  j["claim"] = status ? json(to_string(*status)) : json(nullptr);
  if (args.pretty && !file) {
    print_report_table(r, std::cout);
  } else {
    emit(j, file);
  }
  return r.violated() ? kExitViolation : kExitOk;
}

int cmd_certify(CheckArgs& args, const CLI::App& cmd) {
  const ParamMap params = collect_params(args, cmd);
  const CatalogEntry& entry = lookup(args.id);
  auto file = open_output(args.json_out);
  const FunctionHandle f = instantiate(entry, params, args.dim);
  const CheckConfig cfg = config_of(args);
  Certificate c;
  const std::string& m = args.method;
  if (m == "hessian-nonpos") c = certify_hessian_sign(f, HessianSign::Nonpos, args.points, cfg);
  else if (m == "hessian-nonneg") c = certify_hessian_sign(f, HessianSign::Nonneg, args.points, cfg);
  else if (m == "topkis-submodular") c = certify_topkis(f, Modularity::Submodular, args.points, cfg);
  else if (m == "topkis-supermodular") c = certify_topkis(f, Modularity::Supermodular, args.points, cfg);
  else if (m == "monotone-nondecreasing")
    c = certify_differential_monotone(f, Monotonicity::Nondecreasing, args.points, cfg);
  else if (m == "monotone-nonincreasing")
    c = certify_differential_monotone(f, Monotonicity::Nonincreasing, args.points, cfg);
  else throw UsageError("unknown certification method '" + m + "'");
  const json j = to_json(c);
  if (args.pretty && !file) {
    std::cout << j.dump(2) << '\n';
  } else {
    emit(j, file);
  }
  return c.certified() ? kExitOk : kExitViolation;
}

int cmd_suite(std::uint64_t seed, unsigned threads, const std::string& json_out, bool pretty) {
  auto file = open_output(json_out);
  const auto t0 = std::chrono::steady_clock::now();
  const suite::SuiteRun run = suite::run_suite({seed, threads});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const suite::CriterionResult& r : run.results) {
    std::cerr << suite::summary_line(r) << "  (" << std::fixed << std::setprecision(2) << r.seconds
              << " s)\n";
  }
  std::cerr << "wall time " << std::fixed << std::setprecision(2) << secs << " s\n";
  if (file) {
    *file << run.manifest.dump() << '\n';
  } else {
    std::cout << (pretty ? run.manifest.dump(2) : run.manifest.dump()) << '\n';
  }
  return run.passed() ? kExitOk : kExitViolation;
}

void add_check_flags(CLI::App* cmd, CheckArgs& a, bool with_property) {
  cmd->add_option("id", a.id, "catalog id")->required();
  if (with_property) cmd->add_option("--property", a.property, "property label, e.g. strong-subadd");
  cmd->add_option("--trials", a.trials, "number of trials")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "64-bit seed");
  cmd->add_option("--scale", a.scale, "sampling scale")->check(CLI::PositiveNumber);
  cmd->add_option("--dim", a.dim, "dimension (entry default when omitted)");
  cmd->add_option("--order-cap", a.order_cap, "highest difference order for complete monotonicity");
  cmd->add_option("--threads", a.threads, "worker threads");
  cmd->add_option("--param", a.params, "entry parameter key=value (lists: a=1,2,3)");
  cmd->add_option("--json", a.json_out, "write the report to this path");
  cmd->add_option("--config", a.config_file, "JSON config file; flags win");
  cmd->add_flag("--no-shrink", a.no_shrink, "keep the witness as found");
  cmd->add_flag("--pretty", a.pretty, "human-readable output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conecert: property checks and numeric certificates for functions on cones"};
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "catalog commands");
  catalog->require_subcommand(1);
  bool list_pretty = false;
  auto* list = catalog->add_subcommand("list", "print every builtin entry as JSON lines");
  list->add_flag("--pretty", list_pretty, "aligned table");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "randomized property check");
  add_check_flags(check_cmd, check_args, true);

  CheckArgs refute_args;
  auto* refute_cmd = app.add_subcommand("refute", "counterexample search over the scale ladder");
  add_check_flags(refute_cmd, refute_args, true);

  CheckArgs cert_args;
  auto* cert_cmd = app.add_subcommand("certify", "sampled sufficient-condition certificate");
  add_check_flags(cert_cmd, cert_args, false);
  cert_cmd->add_option("--method", cert_args.method,
                       "hessian-nonpos | hessian-nonneg | topkis-submodular | topkis-supermodular | "
                       "monotone-nondecreasing | monotone-nonincreasing");
  cert_cmd->add_option("--points", cert_args.points, "sampled points")->check(CLI::PositiveNumber);

  std::uint64_t suite_seed = 0;
  unsigned suite_threads = 1;
  std::string suite_json;
  bool suite_pretty = false;
  auto* suite_cmd = app.add_subcommand("suite", "run the acceptance suite and write a manifest");
  suite_cmd->add_option("--seed", suite_seed, "64-bit seed");
  suite_cmd->add_option("--threads", suite_threads, "worker threads per check");
  suite_cmd->add_option("--json", suite_json, "manifest path");
  suite_cmd->add_flag("--pretty", suite_pretty, "indent the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (list->parsed()) return cmd_catalog_list(list_pretty);
    if (check_cmd->parsed()) return cmd_check(check_args, *check_cmd, false);
    if (refute_cmd->parsed()) return cmd_check(refute_args, *refute_cmd, true);
    if (cert_cmd->parsed()) return cmd_certify(cert_args, *cert_cmd);
    if (suite_cmd->parsed()) return cmd_suite(suite_seed, suite_threads, suite_json, suite_pretty);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DomainError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    // Lookup, parameter, capability, shape and precondition errors.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
