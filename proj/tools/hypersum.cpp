// Command-line front end: hypersum eval | verify | grid | list

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hypersum/error.hpp"
#include "hypersum/hyper.hpp"
#include "hypersum/registry.hpp"
#include "json.hpp"

using namespace hypersum;
using json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kDomain = 2;
constexpr int kBudget = 3;
constexpr int kUsage = 64;
constexpr int kUnknownIdentity = 65;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int default_digits() {
  const char* env = std::getenv("HYPERSUM_DIGITS");
  if (env == nullptr || *env == '\0') return 50;
  try {
    std::size_t used = 0;
    const int digits = std::stoi(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return digits;
  } catch (const std::exception&) {
    throw UsageError(std::string("HYPERSUM_DIGITS is not an integer: ") + env);
  }
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

int exit_code_for(const Error& e) {
  const std::string& kind = e.kind();
  if (kind == "BudgetExceededError") return kBudget;
  if (kind == "ParseError") return kUsage;
  if (kind == "UnknownIdentityError") return kUnknownIdentity;
  return kDomain;
}

// Values such as "-2,1,4" look like flags to the parser; glue them to their option.
std::vector<std::string> glue_negative_values(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--", 0) == 0 && arg.find('=') == std::string::npos && i + 1 < argc && argv[i + 1][0] == '-' &&
        argv[i + 1][1] != '-' && argv[i + 1][1] != '\0' &&
        (std::isdigit(static_cast<unsigned char>(argv[i + 1][1])) || argv[i + 1][1] == ',')) {
      arg += "=";
      arg += argv[++i];
    }
    args.push_back(std::move(arg));
  }
  std::reverse(args.begin(), args.end());
  return args;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string upper;
  std::string lower;
  std::string z;
  std::string mode = "auto";
  std::optional<int> digits;
  std::size_t max_terms = 200000;
};

int cmd_eval(const EvalArgs& args) {
  const HyperSpec spec{parse_list(args.upper), parse_list(args.lower)};
  const Rational z = Rational::parse(args.z);
  const bool terminating = spec.termination_index().has_value() || z.is_zero();
  std::string mode = args.mode;
  if (mode == "auto") mode = terminating ? "exact" : "numeric";
  if (mode == "exact") {
    std::cout << eval_terminating(spec, z).str() << "\n";
    return kPass;
  }
  NumericOptions options;
  options.digits = args.digits.value_or(default_digits());
  options.max_terms = args.max_terms;
  const NumericValue v = eval_numeric(spec, z, options);
  std::cout << "estimate " << v.estimate.str() << "\n"
            << "tail_bound " << v.tail_bound.str_up(6) << "\n"
            << "terms_used " << v.terms_used << "\n";
  return kPass;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string identity;
  std::vector<std::string> params;
  std::optional<std::string> family;
  std::size_t order = 24;
  std::optional<int> digits;
  std::size_t max_terms = 200000;
};

std::string known_ids() {
  std::string out;
  for (const auto& d : list_identities()) out += (out.empty() ? "" : ", ") + d.id;
  return out;
}

json domain_error_json(const std::string& identity, const Bindings& bindings, const ParamDomainError& e) {
  json j;
  j["identity"] = identity;
  json params = json::object();
  for (const auto& p : find_identity(identity).params) {
    if (const auto it = bindings.find(p.name); it != bindings.end()) params[p.name] = it->second;
  }
  j["params"] = params;
  j["verdict"] = "domain-error";
  j["error"] = e.cause();
  j["message"] = e.what();
  return j;
}

int cmd_verify(const VerifyArgs& args) {
  Bindings bindings;
  for (const auto& item : args.params) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + item + "'");
    bindings[item.substr(0, eq)] = item.substr(eq + 1);
  }
  if (args.family) bindings["family"] = *args.family;
  CheckOptions options;
  options.order = args.order;
  options.digits = args.digits.value_or(default_digits());
  options.max_terms = args.max_terms;
  try {
    const CheckReport report = run_check(args.identity, bindings, options);
    std::cout << to_json(report).dump(2) << "\n";
    return report.passed ? kPass : kFail;
  } catch (const ParamDomainError& e) {
    std::cout << domain_error_json(args.identity, bindings, e).dump(2) << "\n";
    std::cerr << "hypersum: " << e.cause() << ": " << e.what() << "\n";
    return kDomain;
  }
}

// ---------------------------------------------------------------- grid

struct GridConfig {
  std::string identity;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  CheckOptions options;
  std::string output;
  std::string format = "json";
  unsigned jobs = 0;
};

std::string value_text(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw UsageError("field " + field + ": values must be integers or \"p/q\" strings");
}

std::vector<std::string> axis_values(const json& spec, const std::string& field) {
  std::vector<std::string> out;
  if (spec.is_array()) {
    for (std::size_t i = 0; i < spec.size(); ++i) out.push_back(value_text(spec[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }
  if (spec.is_object() && spec.contains("values")) return axis_values(spec["values"], field + ".values");
  if (spec.is_object() && spec.contains("lo") && spec.contains("hi") && spec.contains("count")) {
    const Rational lo = Rational::parse(value_text(spec["lo"], field + ".lo"));
    const Rational hi = Rational::parse(value_text(spec["hi"], field + ".hi"));
    if (!spec["count"].is_number_unsigned()) throw UsageError("field " + field + ".count: expected a non-negative integer");
    const auto count = spec["count"].get<long>();
    for (long i = 0; i < count; ++i) {
      out.push_back(count == 1 ? lo.str() : (lo + (hi - lo) * Rational(i) / Rational(count - 1)).str());
    }
    return out;
  }
  if (spec.is_string() || spec.is_number_integer()) return {value_text(spec, field)};
  throw UsageError("field " + field + ": expected a list, {\"values\": [...]} or {\"lo\", \"hi\", \"count\"}");
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

GridConfig load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ":" + std::to_string(line_of(text, e.byte)) + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError(path + ": top level must be an object");
  GridConfig cfg;
  cfg.options.digits = default_digits();
  for (const auto& [key, value] : j.items()) {
    if (key == "identity") {
      if (!value.is_string()) throw UsageError("field identity: expected a string");
      cfg.identity = value.get<std::string>();
    } else if (key == "params") {
      if (!value.is_object()) throw UsageError("field params: expected an object");
      for (const auto& [name, spec] : value.items()) cfg.axes.emplace_back(name, axis_values(spec, "params." + name));
    } else if (key == "order" || key == "digits" || key == "max_terms" || key == "jobs") {
      if (!value.is_number_unsigned()) throw UsageError("field " + key + ": expected a non-negative integer");
      const auto n = value.get<std::size_t>();
      if (key == "order") cfg.options.order = n;
      if (key == "digits") cfg.options.digits = static_cast<int>(n);
      if (key == "max_terms") cfg.options.max_terms = n;
      if (key == "jobs") cfg.jobs = static_cast<unsigned>(n);
    } else if (key == "output" || key == "format") {
      if (!value.is_string()) throw UsageError("field " + key + ": expected a string");
      (key == "output" ? cfg.output : cfg.format) = value.get<std::string>();
    } else {
      throw UsageError("field " + key + ": unknown field");
    }
  }
  if (cfg.identity.empty()) throw UsageError("field identity: missing");
  return cfg;
}

struct GridRow {
  json report;
  enum class Status { pass, fail, skipped } status = Status::fail;
};

std::vector<Bindings> enumerate(const GridConfig& cfg) {
  std::vector<Bindings> points;
  if (cfg.axes.empty()) return points;
  for (const auto& axis : cfg.axes) {
    if (axis.second.empty()) return points;
  }
  std::vector<std::size_t> idx(cfg.axes.size(), 0);
  while (true) {
    Bindings b;
    for (std::size_t i = 0; i < cfg.axes.size(); ++i) b[cfg.axes[i].first] = cfg.axes[i].second[idx[i]];
    points.push_back(std::move(b));
    std::size_t i = cfg.axes.size();
    while (i > 0) {
      --i;
      if (++idx[i] < cfg.axes[i].second.size()) break;
      idx[i] = 0;
      if (i == 0) return points;
    }
  }
}

GridRow run_point(const std::string& identity, const Bindings& b, const CheckOptions& options) {
  GridRow row;
  try {
    const CheckReport report = run_check(identity, b, options);
    row.report = to_json(report);
    row.status = report.passed ? GridRow::Status::pass : GridRow::Status::fail;
  } catch (const ParamDomainError& e) {
    row.report = domain_error_json(identity, b, e);
    row.report["verdict"] = "skipped: domain";
    row.status = GridRow::Status::skipped;
  } catch (const BudgetExceededError& e) {
    json j;
    j["identity"] = identity;
    json params = json::object();
    for (const auto& [k, v] : b) params[k] = v;
    j["params"] = params;
    j["verdict"] = "fail: budget";
    j["message"] = e.what();
    row.report = j;
    row.status = GridRow::Status::fail;
  }
  return row;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const json& v) { return v.is_string() ? csv_quote(v.get<std::string>()) : csv_quote(v.dump()); }

std::string to_csv(const GridConfig& cfg, const std::vector<GridRow>& rows) {
  std::ostringstream out;
  out << "identity";
  for (const auto& axis : cfg.axes) out << "," << axis.first;
  out << ",verdict,lhs,rhs,abs_diff,first_bad_coeff,terms_used,elapsed_ms\n";
  for (const auto& row : rows) {
    const json& r = row.report;
    out << csv_quote(r["identity"].get<std::string>());
    for (const auto& axis : cfg.axes) {
      const json& params = r["params"];
      out << "," << (params.contains(axis.first) ? csv_cell(params[axis.first]) : "");
    }
    out << "," << csv_quote(r["verdict"].get<std::string>());
    for (const char* field : {"lhs", "rhs", "abs_diff", "first_bad_coeff", "terms_used", "elapsed_ms"}) {
      out << "," << (r.contains(field) ? csv_cell(r[field]) : "");
    }
    out << "\n";
  }
  return out.str();
}

int cmd_grid(const std::string& path, const std::optional<std::string>& output, const std::optional<std::string>& format,
             std::optional<unsigned> jobs) {
  GridConfig cfg = load_grid(path);
  if (output) cfg.output = *output;
  if (format) cfg.format = *format;
  if (jobs) cfg.jobs = *jobs;
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("field format: expected json or csv");
  const IdentityDescriptor& descriptor = find_identity(cfg.identity);
  for (const auto& axis : cfg.axes) {
    const bool known = std::any_of(descriptor.params.begin(), descriptor.params.end(),
                                   [&](const ParamSpec& p) { return p.name == axis.first; });
    if (!known) throw UsageError("field params." + axis.first + ": identity " + cfg.identity + " has no such parameter");
  }

  const std::vector<Bindings> points = enumerate(cfg);
  std::vector<GridRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        rows[i] = run_point(cfg.identity, points[i], cfg.options);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  unsigned workers = cfg.jobs != 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(points.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& row : rows) {
    if (row.status == GridRow::Status::pass) ++passed;
    if (row.status == GridRow::Status::fail) ++failed;
    if (row.status == GridRow::Status::skipped) ++skipped;
  }
  std::string body;
  if (cfg.format == "csv") {
    body = to_csv(cfg, rows);
  } else {
    json all = json::array();
    for (const auto& row : rows) all.push_back(row.report);
    body = all.dump(2) + "\n";
  }
  std::ostringstream summary;
  summary << passed << "/" << rows.size() << " passed, " << failed << " failed, " << skipped << " skipped\n";
  if (cfg.output.empty()) {
    std::cout << body;
    std::cerr << summary.str();
  } else {
    std::ofstream out(cfg.output);
    if (!out) throw UsageError("cannot write " + cfg.output);
    out << body;
    std::cout << summary.str();
  }
  return failed == 0 ? kPass : kFail;
}

// ---------------------------------------------------------------- list

int cmd_list(bool as_json) {
  if (as_json) {
    json all = json::array();
    for (const auto& d : list_identities()) all.push_back(to_json(d));
    std::cout << all.dump(2) << "\n";
    return kPass;
  }
  for (const auto& d : list_identities()) {
    std::string params;
    for (const auto& p : d.params) params += (params.empty() ? "" : ",") + p.name;
    std::cout << d.id << "\t" << mode_name(d.mode) << "\t" << params << "\t" << d.citation << "\n";
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact generalized hypergeometric sums and identity checks", "hypersum"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate pFq(upper; lower; z)");
  eval->add_option("--upper", eval_args.upper, "Comma-separated numerator parameters (p/q)");
  eval->add_option("--lower", eval_args.lower, "Comma-separated denominator parameters (p/q)");
  eval->add_option("--z", eval_args.z, "Argument (p/q)")->required();
  eval->add_option("--mode", eval_args.mode, "exact, numeric or auto")
      ->check(CLI::IsMember({"exact", "numeric", "auto"}));
  eval->add_option("--digits", eval_args.digits, "Decimal digits for numeric mode");
  eval->add_option("--max-terms", eval_args.max_terms, "Term budget for numeric mode");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check one identity and print a JSON report");
  verify->add_option("--identity", verify_args.identity, "Identity id (see list)")->required();
  verify->add_option("--param", verify_args.params, "name=value binding, repeatable");
  verify->add_option("--family", verify_args.family, "Parameter family as d:m pairs, e.g. 2:1,5/2:3");
  verify->add_option("--order", verify_args.order, "Series order for formal checks");
  verify->add_option("--digits", verify_args.digits, "Decimal digits for numeric checks");
  verify->add_option("--max-terms", verify_args.max_terms, "Term budget for numeric checks");

  std::string grid_path;
  std::optional<std::string> grid_output, grid_format;
  std::optional<unsigned> grid_jobs;
  auto* grid = app.add_subcommand("grid", "Run an identity over a parameter grid from a JSON config");
  grid->add_option("config", grid_path, "Grid config (JSON)")->required();
  grid->add_option("--output", grid_output, "Report path (overrides the config)");
  grid->add_option("--format", grid_format, "json or csv (overrides the config)");
  grid->add_option("--jobs", grid_jobs, "Worker threads");

  bool list_json = false;
  auto* list = app.add_subcommand("list", "List the identity registry");
  list->add_flag("--json", list_json, "Print descriptors as JSON");

  try {
    std::vector<std::string> args = glue_negative_values(argc, argv);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_args);
    if (*verify) return cmd_verify(verify_args);
    if (*grid) return cmd_grid(grid_path, grid_output, grid_format, grid_jobs);
    if (*list) return cmd_list(list_json);
  } catch (const UsageError& e) {
    std::cerr << "hypersum: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownIdentityError& e) {
    std::cerr << "hypersum: " << e.what() << "\nknown identities: " << known_ids() << "\n";
    return kUnknownIdentity;
  } catch (const Error& e) {
    std::cerr << "hypersum: " << e.kind() << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kUsage;
}
