#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "icp/catalog.hpp"
#include "icp/constructions.hpp"
#include "icp/ensemble.hpp"
#include "icp/optimizer.hpp"
#include "icp/parallel.hpp"
#include "icp/proof_chain.hpp"
#include "icp/serialization.hpp"
#include "output.hpp"

#ifndef ICP_LAB_VERSION
#define ICP_LAB_VERSION "0.0.0"
#endif

namespace icp::lab {

namespace cons = icp::constructions;

std::vector<std::string> split_labels(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : list) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    if (c != ' ') cur += c;
  }
  out.push_back(cur);
  for (const auto& s : out) {
    if (s.empty()) throw InputError("empty measurement label in '" + list + "'");
  }
  return out;
}

Measurement resolve_measurement(const Theory& theory, const std::string& label) {
  if (const auto* m = theory.find_measurement(label)) return *m;
  const auto* q = std::get_if<QuantumSpace>(&theory.variant);
  if (q && q->hilbert_dim == 2) {
    static const std::regex rotated(R"(^Z\((?:theta=|phi=)?([^)]+)\)$)");
    std::smatch match;
    if (std::regex_match(label, match, rotated)) {
      const std::string arg = match[1];
      char* end = nullptr;
      const double phi = std::strtod(arg.c_str(), &end);
      if (end == arg.c_str() || *end != '\0' || !std::isfinite(phi)) {
        throw InputError("invalid angle in measurement '" + label + "'");
      }
      auto m = catalog::qubit_rotated_measurement(phi);
      for (auto& e : m.effects) e.theory_id = theory.id;
      return m;
    }
  }
  std::string known;
  for (const auto& m : theory.measurements) known += (known.empty() ? "" : ", ") + m.label;
  throw InputError("theory '" + theory.id + "' has no measurement '" + label + "' (known: " + known + ")");
}

namespace {

struct Common {
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 42;
  std::string timestamp;
};

struct Context {
  std::uint64_t seed = 42;
  int threads = 1;
};

int threads_from_env() {
  const char* raw = std::getenv("ICP_LAB_THREADS");
  if (!raw || !*raw) return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 0 || v > 4096) {
    throw InputError(std::string("ICP_LAB_THREADS must be an integer in 0..4096, got '") + raw + "'");
  }
  return static_cast<int>(v);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  if (f.bad()) throw IoError("cannot read '" + path + "'");
  return os.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("cannot write '" + path + "'");
}

Json parse_json_file(const std::string& path, const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto pos = position_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError(path + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                     ": malformed JSON: " + e.what());
  }
}

/// Turns a schema error into "FILE:LINE: path: message".
[[noreturn]] void rethrow_anchored(const io::SchemaError& e, const std::string& path,
                                   const std::string& text) {
  std::optional<std::size_t> line;
  if (e.entry()) line = entry_line(text, *e.entry());
  if (!line) {
    const std::string& p = e.path();
    const auto stop = p.find_first_of(".[");
    const std::string head = p.substr(0, stop);
    if (!head.empty() && head != "$") line = key_line(text, head);
  }
  throw InputError(path + ":" + std::to_string(line.value_or(1)) + ": " + e.what());
}

// ---------------------------------------------------------------------------
// Rows

Json report_row(const ICPReport& r) {
  return Json{{"labels", r.labels},         {"gains", r.gains},
              {"redundancy", r.redundancy}, {"extractable", r.extractable},
              {"observed_dim", r.observed_dim}, {"bound", r.bound},
              {"margin", r.margin},         {"violated", r.violated}};
}

Json maybe_proof_chain(const CorrelatedEnsemble& e, const ObservableAssignment& a) {
  try {
    return io::to_json(info::proof_chain_check(e, a));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotApplicable) throw;
    return Json{{"applicable", false}, {"reason", err.what()}};
  }
}

// ---------------------------------------------------------------------------
// Commands

Output cmd_catalog() {
  Output o;
  o.kind = "listing";
  std::vector<Json> rows;
  for (const auto& entry : catalog::standard_catalog()) {
    Json j = io::to_json(entry);
    rows.push_back(Json{{"id", j["id"]},
                        {"variant", j["variant"]},
                        {"ambient_dimension", j["ambient_dimension"]},
                        {"measurement_count", j["measurements"].size()},
                        {"measurements", [&] {
                           std::string s;
                           for (const auto& m : j["measurements"]) s += (s.empty() ? "" : ";") + m.get<std::string>();
                           return s;
                         }()},
                        {"observed_dimension", j["observed_dimension"]}});
  }
  o.rows = rows;
  return o;
}

struct OptimizerFlags {
  std::string strategy = "coordinate-descent";
  double resolution = 1e-4;
  std::uint64_t max_evals = 400'000;
  int restarts = 20;

  void add(CLI::App* app) {
    app->add_option("--strategy", strategy, "grid, coordinate-descent or random-restart")->capture_default_str();
    app->add_option("--resolution", resolution, "Optimizer resolution")->capture_default_str();
    app->add_option("--max-evals", max_evals, "Objective evaluations per restart")->capture_default_str();
    app->add_option("--restarts", restarts, "Independent restarts")->capture_default_str();
  }
  void record(Json& params) const {
    params["strategy"] = strategy;
    params["resolution"] = resolution;
    params["max-evals"] = max_evals;
    params["restarts"] = restarts;
  }
  OptimizerConfig config(const Context& ctx) const {
    OptimizerConfig c;
    c.strategy = parse_strategy(strategy);
    c.resolution = resolution;
    c.max_evals = max_evals;
    c.restarts = restarts;
    c.seed = ctx.seed;
    c.threads = ctx.threads;
    validate(c);
    return c;
  }
};

Output cmd_demo(const std::string& name, const OptimizerFlags& opt, const Context& ctx) {
  cons::ViolationCertificate cert;
  if (name == "sbit") {
    cert = cons::sbit_violation();
  } else if (name == "hbit") {
    cert = cons::hbit_violation();
  } else if (name == "classical") {
    cert = cons::classical_bit_analysis(opt.config(ctx));
  } else if (name == "qubit-rac") {
    cert = cons::qubit_rac_construction();
  } else {
    throw InputError("unknown demo '" + name + "' (expected sbit, hbit, classical or qubit-rac)");
  }
  Output o;
  o.kind = "certificate";
  o.body = io::to_json(cert);
  o.body["crosscheck_passed"] = cert.crosscheck_passed();
  o.body["proof_chain"] = maybe_proof_chain(cert.ensemble, cert.assignment);
  return o;
}

template <class T, class Fn>
std::vector<Json> fan_out(const std::vector<T>& params, const Context& ctx, Fn&& fn) {
  std::vector<Json> rows(params.size());
  parallel_for(params.size(), ctx.threads, [&](std::size_t i) { rows[i] = fn(params[i]); });
  return rows;
}

Output scan_polygon(const std::vector<int>& ns, const Context& ctx) {
  for (int n : ns) {
    if (n < 3 || n > 1000) throw InputError("polygon scan needs 3 <= n <= 1000, got " + std::to_string(n));
  }
  Output o;
  o.kind = "scan";
  o.body["target"] = "polygon";
  o.rows = fan_out(ns, ctx, [](int n) {
    const auto cert = cons::polygon_violation(n);
    const auto& r = cert.report;
    return Json{{"n", n},
                {"observed_dim", r.observed_dim},
                {"p_z0_given_b0", cert.direct.at("p(Z=0|B=0)")},
                {"p_z1_given_b1", cert.direct.at("p(Z=1|B=1)")},
                {"gains", r.gains},
                {"redundancy", r.redundancy},
                {"extractable", r.extractable},
                {"bound", r.bound},
                {"margin", r.margin},
                {"violated", r.violated},
                {"closed_form_extractable", cert.closed_form.at("extractable")},
                {"crosscheck_max_abs_diff", cert.crosscheck_max_abs_diff}};
  });
  return o;
}

Output scan_mismatch(const std::vector<int>& ns, const Context& ctx) {
  for (int n : ns) {
    if (n < 3 || n > 64) throw InputError("mismatch scan needs 3 <= n <= 64, got " + std::to_string(n));
  }
  Output o;
  o.kind = "scan";
  o.body["target"] = "mismatch";
  o.rows = fan_out(ns, ctx, [](int n) { return io::to_json(cons::polygon_mismatch(n)); });
  return o;
}

Output scan_composite(const std::vector<int>& ns, const Context& ctx) {
  for (int n : ns) {
    if (n < 1 || n > 64) throw InputError("composite scan needs 1 <= n <= 64, got " + std::to_string(n));
  }
  Output o;
  o.kind = "scan";
  o.body["target"] = "composite";
  o.rows = fan_out(ns, ctx, [](int n) { return io::to_json(cons::composite_gbit_extractable(n)); });
  Json first = nullptr;
  for (const auto& r : *o.rows) {
    if (r["violated"].get<bool>()) {
      first = r["n"];
      break;
    }
  }
  o.body["first_violating_n"] = first;
  return o;
}

Json p_value(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

Output scan_pgnst(const std::vector<double>& ps, std::optional<double> epsilon, int grid_points,
                  const Context& ctx) {
  for (double p : ps) {
    if (!(p >= 2.0)) throw InputError("pgnst scan needs p >= 2 or inf");
  }
  if (grid_points < 16) throw InputError("--grid-points must be at least 16");
  cons::PgnstSearchConfig cfg;
  cfg.grid_points = grid_points;
  Output o;
  o.kind = "scan";
  o.body["target"] = "pgnst";
  std::vector<Json> ledgers(ps.size());
  o.rows = fan_out(ps, ctx, [&](double p) {
    const auto min = cons::pgnst_min_entropy_sum(p, cfg);
    const auto cert = cons::pgnst_violation(p, cfg);
    Json row{{"p", p_value(p)},
             {"s_x", min.s_x},
             {"s_z", min.s_z},
             {"entropy_sum", min.entropy_sum},
             {"extractable", cert.report.extractable},
             {"bound", cert.report.bound},
             {"margin", cert.report.margin},
             {"violated", cert.report.violated},
             {"rac_recovery_paper", cons::rac_recovery_paper(p)},
             {"rac_recovery_derived", cons::rac_recovery_derived(p)}};
    if (epsilon) {
      if (std::isfinite(p) && (1.0 + *epsilon) * p > 2.0) {
        const auto ledger = cons::pgnst_bound_check(p, *epsilon, cfg);
        row["bound_pointwise"] = ledger.pointwise;
        row["bound_ratio_increasing"] = ledger.ratio_increasing;
      } else {
        row["bound_pointwise"] = nullptr;
        row["bound_ratio_increasing"] = nullptr;
      }
    }
    return row;
  });
  if (epsilon) {
    Json all = Json::array();
    for (double p : ps) {
      if (std::isfinite(p) && (1.0 + *epsilon) * p > 2.0) {
        all.push_back(io::to_json(cons::pgnst_bound_check(p, *epsilon, cfg)));
      }
    }
    o.body["bound_ledgers"] = all;
  }
  return o;
}

Output scan_axioms(const std::string& kind, int trials, int vn_trials, const Context& ctx) {
  if (kind != "shannon" && kind != "von-neumann" && kind != "both") {
    throw InputError("--kind must be shannon, von-neumann or both");
  }
  if (trials < 1 || vn_trials < 1) throw InputError("trial counts must be positive");
  Output o;
  o.kind = "scan";
  o.body["target"] = "axioms";
  std::vector<Json> rows;
  auto run = [&](info::EntropyKind k, int n) {
    for (const auto& r : info::axiom_suite(k, n, ctx.seed, ctx.threads)) {
      Json row{{"entropy", info::to_string(k)}};
      const Json fields = io::to_json(r);
      for (const auto& [key, value] : fields.items()) row[key] = value;
      if (!row.contains("printed_direction_max_violation")) row["printed_direction_max_violation"] = nullptr;
      rows.push_back(row);
    }
  };
  if (kind != "von-neumann") run(info::EntropyKind::Shannon, trials);
  if (kind != "shannon") run(info::EntropyKind::VonNeumann, vn_trials);
  o.rows = rows;
  return o;
}

Output scan_sweep(const std::vector<double>& thetas, const OptimizerFlags& opt, const Context& ctx) {
  Output o;
  o.kind = "scan";
  o.body["target"] = "sweep";
  std::vector<Json> rows;
  for (const auto& r : qubit_rotation_sweep(thetas, opt.config(ctx))) rows.push_back(io::to_json(r));
  o.rows = rows;
  return o;
}

struct EvalFlags {
  std::string ensemble_path;
  std::string theory;
  std::string measurements;
  bool proof_chain = false;
};

Output cmd_eval(const EvalFlags& flags) {
  const std::string text = read_file(flags.ensemble_path);
  const Json j = parse_json_file(flags.ensemble_path, text);

  std::shared_ptr<const Theory> theory;
  if (!flags.theory.empty()) {
    try {
      theory = catalog::lookup(flags.theory).theory;
    } catch (const Error& e) {
      throw InputError(std::string("--theory: ") + e.what());
    }
  }
  CorrelatedEnsemble ensemble;
  std::optional<std::vector<Measurement>> stored;
  try {
    if (!theory && j.is_object() && j.contains("ensemble") && j.contains("theory") && j["theory"].is_object()) {
      theory = std::make_shared<const Theory>(io::theory_from_json(j["theory"]));
    }
    ensemble = io::ensemble_from_json(j, theory);
    if (flags.measurements.empty()) stored = io::assignment_measurements(j, ensemble.theory->id);
  } catch (const io::SchemaError& e) {
    rethrow_anchored(e, flags.ensemble_path, text);
  }

  std::vector<Measurement> ms;
  if (!flags.measurements.empty()) {
    for (const auto& label : split_labels(flags.measurements)) ms.push_back(resolve_measurement(*ensemble.theory, label));
  } else if (stored) {
    ms = *stored;
  } else {
    const auto& all = ensemble.theory->measurements;
    const std::size_t k = std::min(all.size(), ensemble.register_count());
    ms.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  }
  if (ms.empty()) throw InputError("no measurements to evaluate");
  if (ms.size() > ensemble.register_count()) {
    throw InputError(std::to_string(ms.size()) + " measurements for " +
                     std::to_string(ensemble.register_count()) + " registers");
  }
  ObservableAssignment assignment;
  for (std::size_t i = 0; i < ms.size(); ++i) assignment.pairs.push_back({ms[i], static_cast<int>(i)});
  const auto report = evaluate_icp(ensemble, assignment);

  Output o;
  o.kind = "report";
  o.body["theory_id"] = ensemble.theory->id;
  o.body["theory"] = io::to_json(*ensemble.theory);
  o.body["ensemble"] = io::to_json(ensemble);
  o.body["assignment"] = io::to_json(assignment);
  o.body["report"] = io::to_json(report);
  if (flags.proof_chain) o.body["proof_chain"] = maybe_proof_chain(ensemble, assignment);
  o.rows = std::vector<Json>{report_row(report)};
  return o;
}

/// Rebuilds the argument list recorded in a manifest.
std::vector<std::string> manifest_args(const Manifest& m) {
  std::vector<std::string> args;
  std::istringstream words(m.command);
  for (std::string w; words >> w;) args.push_back(w);
  if (args.empty()) throw InputError("manifest has an empty command");
  for (const auto& [key, value] : m.parameters.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    if (value.is_null()) continue;
    args.push_back("--" + key);
    args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  args.push_back("--seed");
  args.push_back(std::to_string(m.seed));
  if (!m.timestamp.empty()) {
    args.push_back("--timestamp");
    args.push_back(m.timestamp);
  }
  return args;
}

Manifest manifest_from_file(const std::string& path) {
  const std::string text = read_file(path);
  const std::string prefix = "# " + std::string(kCsvVersion) + " ";
  if (text.rfind(prefix, 0) == 0) {
    const auto eol = text.find('\n');
    const std::string line = text.substr(prefix.size(), eol == std::string::npos ? std::string::npos : eol - prefix.size());
    return manifest_from_json(parse_json_file(path, line));
  }
  const Json j = parse_json_file(path, text);
  if (j.is_object() && j.contains("manifest")) return manifest_from_json(j["manifest"]);
  return manifest_from_json(j);
}

std::string timestamp_for(const Common& common) {
  if (!common.timestamp.empty()) return common.timestamp;
  if (const char* env = std::getenv("ICP_LAB_TIMESTAMP"); env && *env) return env;
  return iso8601_now();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth) {
  CLI::App app{"Extractable-information experiments on generalized probabilistic theories", "icp_lab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ICP_LAB_VERSION);

  Common common;
  app.add_option("--format", common.format, "json, csv or table")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", common.out_path, "Output path (default: standard output)");
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  app.add_option("--timestamp", common.timestamp,
                 "ISO-8601 timestamp for the manifest (default: $ICP_LAB_TIMESTAMP, then now)");

  auto* catalog_cmd = app.add_subcommand("catalog", "List the theory catalog");

  auto* demo_cmd = app.add_subcommand("demo", "Print a construction certificate");
  std::string demo_name;
  demo_cmd->add_option("name", demo_name, "sbit, hbit, classical or qubit-rac")->required();
  OptimizerFlags demo_opt;
  demo_opt.add(demo_cmd);

  auto* scan_cmd = app.add_subcommand("scan", "Parameter scans");
  scan_cmd->require_subcommand(1);
  std::string polygon_n = "3:50";
  auto* scan_polygon_cmd = scan_cmd->add_subcommand("polygon", "Polygon constructions");
  scan_polygon_cmd->add_option("--n", polygon_n, "Polygon orders, a:b[:step] or a list")->capture_default_str();
  std::string mismatch_n = "4:13";
  auto* scan_mismatch_cmd = scan_cmd->add_subcommand("mismatch", "Measurement vs information dimension");
  scan_mismatch_cmd->add_option("--n", mismatch_n, "Polygon orders")->capture_default_str();
  std::string composite_n = "1:8";
  auto* scan_composite_cmd = scan_cmd->add_subcommand("composite", "Composite gbit systems");
  scan_composite_cmd->add_option("--n", composite_n, "Numbers of gbits")->capture_default_str();
  std::string pgnst_p = "2,2.5,3,4,8,inf";
  std::optional<double> pgnst_epsilon;
  int pgnst_grid = 100'000;
  auto* scan_pgnst_cmd = scan_cmd->add_subcommand("pgnst", "Norm-constraint theories");
  scan_pgnst_cmd->add_option("--p", pgnst_p, "Exponents; 'inf' allowed in lists")->capture_default_str();
  scan_pgnst_cmd->add_option("--epsilon", pgnst_epsilon, "Also check the small-gap bound with this epsilon");
  scan_pgnst_cmd->add_option("--grid-points", pgnst_grid, "Boundary grid size")->capture_default_str();
  std::string axioms_kind = "both";
  int axioms_trials = 10'000;
  int axioms_vn_trials = 1'000;
  auto* scan_axioms_cmd = scan_cmd->add_subcommand("axioms", "Randomized entropy axiom checks");
  scan_axioms_cmd->add_option("--kind", axioms_kind, "shannon, von-neumann or both")->capture_default_str();
  scan_axioms_cmd->add_option("--trials", axioms_trials, "Shannon trials")->capture_default_str();
  scan_axioms_cmd->add_option("--vn-trials", axioms_vn_trials, "von Neumann trials")->capture_default_str();
  int sweep_count = 50;
  std::string sweep_theta;
  OptimizerFlags sweep_opt;
  sweep_opt.restarts = 4;
  sweep_opt.max_evals = 100'000;
  auto* scan_sweep_cmd = scan_cmd->add_subcommand("sweep", "Qubit X vs rotated observable");
  scan_sweep_cmd->add_option("--count", sweep_count, "Evenly spaced angles in [0, pi/2]")->capture_default_str();
  scan_sweep_cmd->add_option("--theta", sweep_theta, "Explicit angles (overrides --count)");
  sweep_opt.add(scan_sweep_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an ensemble file");
  EvalFlags eval_flags;
  eval_cmd->add_option("--ensemble", eval_flags.ensemble_path, "Ensemble or artifact JSON file")->required();
  eval_cmd->add_option("--theory", eval_flags.theory, "Catalog id overriding the file's theory");
  eval_cmd->add_option("--measurements", eval_flags.measurements, "Comma-separated labels, e.g. X,Z(0.3)");
  eval_cmd->add_flag("--proof-chain", eval_flags.proof_chain, "Attach the step-by-step derivation ledger");

  auto* rerun_cmd = app.add_subcommand("rerun", "Replay the manifest stored in an output file");
  std::string rerun_path;
  rerun_cmd->add_option("file", rerun_path, "JSON or CSV output of an earlier run")->required();

  if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
    const auto subs = app.get_subcommands([](CLI::App*) { return true; });
    const bool known = std::any_of(subs.begin(), subs.end(), [&](CLI::App* s) { return s->get_name() == args[0]; });
    if (!known) {
      err << "icp_lab: unknown command '" << args[0] << "' (expected catalog, demo, scan, eval or rerun)\n";
      return kExitInput;
    }
  }

  std::vector<std::string> argv_store{"icp_lab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ICP_LAB_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "icp_lab: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*rerun_cmd) {
      if (depth > 0) throw InputError("a manifest cannot itself request a rerun");
      auto replay = manifest_args(manifest_from_file(rerun_path));
      if (app.count("--format")) {
        const auto it = std::find(replay.begin(), replay.end(), "--format");
        if (it != replay.end()) replay.erase(it, it + 2);
        replay.push_back("--format");
        replay.push_back(common.format);
      }
      if (!common.out_path.empty()) {
        replay.push_back("--out");
        replay.push_back(common.out_path);
      }
      return run(replay, out, err, depth + 1);
    }

    Context ctx;
    ctx.seed = common.seed;
    ctx.threads = threads_from_env();
    const Format format = parse_format(common.format);

    Manifest manifest;
    manifest.seed = common.seed;
    manifest.tool_version = ICP_LAB_VERSION;
    manifest.timestamp = timestamp_for(common);
    Json& params = manifest.parameters;
    Output output;

    if (*catalog_cmd) {
      manifest.command = "catalog";
      output = cmd_catalog();
    } else if (*demo_cmd) {
      manifest.command = "demo " + demo_name;
      if (demo_name == "classical") demo_opt.record(params);
      output = cmd_demo(demo_name, demo_opt, ctx);
    } else if (*scan_cmd) {
      if (*scan_polygon_cmd) {
        manifest.command = "scan polygon";
        params["n"] = polygon_n;
        output = scan_polygon(parse_int_list(polygon_n), ctx);
      } else if (*scan_mismatch_cmd) {
        manifest.command = "scan mismatch";
        params["n"] = mismatch_n;
        output = scan_mismatch(parse_int_list(mismatch_n), ctx);
      } else if (*scan_composite_cmd) {
        manifest.command = "scan composite";
        params["n"] = composite_n;
        output = scan_composite(parse_int_list(composite_n), ctx);
      } else if (*scan_pgnst_cmd) {
        manifest.command = "scan pgnst";
        params["p"] = pgnst_p;
        if (pgnst_epsilon) params["epsilon"] = *pgnst_epsilon;
        params["grid-points"] = pgnst_grid;
        output = scan_pgnst(parse_real_list(pgnst_p, true), pgnst_epsilon, pgnst_grid, ctx);
      } else if (*scan_axioms_cmd) {
        manifest.command = "scan axioms";
        params["kind"] = axioms_kind;
        params["trials"] = axioms_trials;
        params["vn-trials"] = axioms_vn_trials;
        output = scan_axioms(axioms_kind, axioms_trials, axioms_vn_trials, ctx);
      } else if (*scan_sweep_cmd) {
        manifest.command = "scan sweep";
        std::vector<double> thetas;
        if (!sweep_theta.empty()) {
          params["theta"] = sweep_theta;
          thetas = parse_real_list(sweep_theta);
        } else {
          if (sweep_count < 2 || sweep_count > 10'000) throw InputError("--count must be in 2..10000");
          params["count"] = sweep_count;
          thetas = default_sweep_grid(sweep_count);
        }
        sweep_opt.record(params);
        output = scan_sweep(thetas, sweep_opt, ctx);
      }
    } else if (*eval_cmd) {
      manifest.command = "eval";
      params["ensemble"] = eval_flags.ensemble_path;
      if (!eval_flags.theory.empty()) params["theory"] = eval_flags.theory;
      if (!eval_flags.measurements.empty()) params["measurements"] = eval_flags.measurements;
      params["proof-chain"] = eval_flags.proof_chain;
      output = cmd_eval(eval_flags);
    }
    params["format"] = common.format;

    write_output(common.out_path, render(manifest, output, format), out);
    return kExitOk;
  } catch (const IoError& e) {
    err << "icp_lab: " << e.what() << '\n';
    return kExitIo;
  } catch (const InputError& e) {
    err << "icp_lab: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "icp_lab: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out, err, 0);
  } catch (const std::exception& e) {
    err << "icp_lab: internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace icp::lab
