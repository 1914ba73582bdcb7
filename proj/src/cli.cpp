#include "fjn/cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "fjn/dynamics.hpp"
#include "fjn/error.hpp"
#include "fjn/security.hpp"
#include "fjn/verify.hpp"

namespace fjn::cli {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& source, const std::string& where,
                               const std::string& what) {
  throw SchemaError(source + ": " + (where.empty() ? "/" : where) + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& source,
                    const std::string& where) {
  if (!obj.is_object()) schema_error(source, where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(source, where, std::string("missing field '") + key + "'");
  return *it;
}

double number_at(const json& obj, const char* key, const std::string& source,
                 const std::string& where) {
  const json& v = require(obj, key, source, where);
  if (!v.is_number()) {
    schema_error(source, where + "/" + key, "expected a number, got " + std::string(v.type_name()));
  }
  return v.get<double>();
}

int integer_at(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_number_integer()) {
    schema_error(source, where, "expected an integer, got " + std::string(v.type_name()));
  }
  return v.get<int>();
}

DistributionSpec parse_distribution(const json& d, const std::string& source,
                                    const std::string& where) {
  const json& family = require(d, "family", source, where);
  if (!family.is_string()) schema_error(source, where + "/family", "expected a string");
  const auto name = family.get<std::string>();
  DistributionSpec out;
  if (name == "deterministic") {
    out = Deterministic{number_at(d, "value", source, where)};
  } else if (name == "exponential") {
    out = Exponential{number_at(d, "mean", source, where)};
  } else if (name == "uniform") {
    out = Uniform{number_at(d, "low", source, where), number_at(d, "high", source, where)};
  } else if (name == "erlang") {
    out = Erlang{integer_at(require(d, "shape", source, where), source, where + "/shape"),
                 number_at(d, "mean", source, where)};
  } else {
    schema_error(source, where + "/family", "unknown distribution family '" + name + "'");
  }
  try {
    validate(out);
  } catch (const InvalidInput& e) {
    schema_error(source, where, e.what());
  }
  return out;
}

json distribution_to_json(const DistributionSpec& d) {
  json out;
  out["family"] = family_name(d);
  if (auto* x = std::get_if<Deterministic>(&d)) out["value"] = x->value;
  if (auto* x = std::get_if<Exponential>(&d)) out["mean"] = x->mean;
  if (auto* x = std::get_if<Uniform>(&d)) {
    out["low"] = x->low;
    out["high"] = x->high;
  }
  if (auto* x = std::get_if<Erlang>(&d)) {
    out["shape"] = x->shape;
    out["mean"] = x->mean;
  }
  return out;
}

LoadedNetwork builtin_network() {
  LoadedNetwork out;
  out.name = kBuiltinNetwork;
  out.spec = incident_response_model().network();
  return out;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json estimate_to_json(const CycleTimeEstimate& est) {
  json samples = json::array();
  for (const NormSample& s : est.norm_samples) samples.push_back({s.k, s.norm});
  return {
      {"gamma_hat", est.gamma_hat},
      {"std_error", est.std_error},
      {"norm_rate", est.norm_rate},
      {"cycles", est.cycles},
      {"warmup", est.warmup},
      {"replications", est.replications},
      {"replication_gamma", est.replication_gamma},
      {"norm_samples", samples},
  };
}

json coupling_to_json(const CouplingSpec& c) {
  return {{"kind", c.kind == Coupling::common_shock ? "common_shock" : "independent"},
          {"weight", c.weight}};
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string mode_name(RunMode m) {
  switch (m) {
    case RunMode::analytic: return "analytic";
    case RunMode::simulate: return "simulate";
    case RunMode::verify: return "verify";
  }
  return "analytic";
}

}  // namespace

RunMode parse_mode(const std::string& s) {
  if (s == "analytic") return RunMode::analytic;
  if (s == "simulate") return RunMode::simulate;
  if (s == "verify") return RunMode::verify;
  throw InvalidInput("unknown mode '" + s + "' (expected analytic, simulate or verify)");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw InvalidInput("unknown format '" + s + "' (expected json or csv)");
}

LoadedNetwork parse_network(const json& doc, const std::string& source) {
  if (!doc.is_object()) schema_error(source, "", "expected a JSON object");
  LoadedNetwork out;
  out.name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>()
                                                             : source;
  NetworkSpec spec;

  const json& nodes = require(doc, "nodes", source, "");
  if (!nodes.is_array()) schema_error(source, "/nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "/nodes/" + std::to_string(i);
    const json& node = nodes[i];
    NodeSpec n;
    n.id = integer_at(require(node, "id", source, where), source, where + "/id");
    if (node.contains("label")) {
      if (!node["label"].is_string()) schema_error(source, where + "/label", "expected a string");
      n.label = node["label"].get<std::string>();
    }
    n.timing = parse_distribution(require(node, "distribution", source, where), source,
                                  where + "/distribution");
    spec.nodes.push_back(std::move(n));
  }

  if (doc.contains("arcs")) {
    const json& arcs = doc["arcs"];
    if (!arcs.is_array()) schema_error(source, "/arcs", "expected an array");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const std::string where = "/arcs/" + std::to_string(i);
      if (!arcs[i].is_array() || arcs[i].size() != 2) {
        schema_error(source, where, "expected a [from, to] pair");
      }
      spec.arcs.push_back({integer_at(arcs[i][0], source, where + "/0"),
                           integer_at(arcs[i][1], source, where + "/1")});
    }
  }

  if (doc.contains("arrival_node")) {
    spec.arrival_node = integer_at(doc["arrival_node"], source, "/arrival_node");
  }

  if (doc.contains("coupling")) {
    const json& c = doc["coupling"];
    const json& kind = require(c, "kind", source, "/coupling");
    if (kind == "independent") {
      out.coupling.kind = Coupling::independent;
    } else if (kind == "common_shock") {
      out.coupling.kind = Coupling::common_shock;
      out.coupling.weight = number_at(c, "weight", source, "/coupling");
      if (!(out.coupling.weight >= 0.0 && out.coupling.weight <= 1.0)) {
        schema_error(source, "/coupling/weight", "must lie in [0,1]");
      }
    } else {
      schema_error(source, "/coupling/kind", "unknown coupling '" + kind.dump() + "'");
    }
  }

  try {
    Renumbering r = topological_renumber(spec);
    if (!r.is_identity()) out.renumbering = r.old_to_new;
    out.spec = std::move(r.spec);
  } catch (const NetworkError& e) {
    throw NetworkError(source + ": " + e.what());
  }
  return out;
}

LoadedNetwork load_network(const std::string& path_or_name) {
  if (path_or_name == kBuiltinNetwork) return builtin_network();
  std::ifstream in(path_or_name);
  if (!in) throw SchemaError(path_or_name + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path_or_name + ": " + e.what());
  }
  return parse_network(doc, path_or_name);
}

json network_to_json(const NetworkSpec& spec) {
  json nodes = json::array();
  for (const NodeSpec& n : spec.nodes) {
    nodes.push_back({{"id", n.id}, {"label", n.label}, {"distribution", distribution_to_json(n.timing)}});
  }
  json arcs = json::array();
  for (const Arc& a : spec.arcs) arcs.push_back({a.from, a.to});
  return {{"nodes", nodes}, {"arcs", arcs}, {"arrival_node", spec.arrival_node}};
}

json build_report(const RunConfig& config, const LoadedNetwork& network) {
  const NetworkSpec& spec = network.spec;
  const NetworkSpec evaluated = config.max_traffic ? max_traffic(spec) : spec;

  json report;
  report["mode"] = mode_name(config.mode);
  json net = network_to_json(spec);
  net["name"] = network.name;
  net["longest_path"] = longest_path_length(spec);
  net["renumbering"] = network.renumbering.empty() ? json(nullptr) : json(network.renumbering);
  report["network"] = net;
  report["config"] = {{"steps", config.steps},
                      {"replications", config.replications},
                      {"seed", config.seed},
                      {"max_traffic", config.max_traffic},
                      {"coupling", coupling_to_json(network.coupling)}};

  json analytic;
  analytic["cycle_time"] = analytic_cycle_time(evaluated.timings());
  json warnings = json::array();
  std::optional<double> attack;
  if (spec.size() >= 2) {
    const PerformanceReport perf = performance_ratio(SecurityModel(spec), EvaluationMode::analytic);
    attack = perf.attack_cycle_time;
    analytic["attack_cycle_time"] = perf.attack_cycle_time;
    analytic["recovery_cycle_time"] = perf.recovery_cycle_time;
    analytic["R"] = optional_number(perf.ratio);
    analytic["bottleneck_ranking"] = perf.bottleneck_ranking;
    for (const auto& w : perf.warnings) warnings.push_back(w);
  } else {
    analytic["attack_cycle_time"] = nullptr;
    analytic["recovery_cycle_time"] = nullptr;
    analytic["R"] = nullptr;
    analytic["bottleneck_ranking"] = json::array();
    warnings.push_back("a single-node network has no recovery procedures");
  }
  analytic["warnings"] = warnings;
  report["analytic"] = analytic;

  if (config.mode == RunMode::simulate) {
    const ScenarioSampler sampler(evaluated.timings(), config.seed, network.coupling);
    const CycleTimeEstimate est =
        estimate_cycle_time(evaluated, sampler, config.steps, config.replications);
    json sim = estimate_to_json(est);
    // Under max traffic the simulated cycle time estimates T_S.
    std::optional<double> ratio;
    if (config.max_traffic && attack && *attack > 0.0) ratio = est.gamma_hat / *attack;
    sim["R"] = optional_number(ratio);
    report["simulation"] = sim;
  }

  if (config.mode == RunMode::verify) {
    const VerificationSummary v = verify_network(spec, config.seed, kVerifyTrials, kVerifyCycles);
    auto count = [](const CheckCount& c) { return json{{"passed", c.passed}, {"failed", c.failed}}; };
    report["verification"] = {
        {"trials", kVerifyTrials},
        {"cycles", kVerifyCycles},
        {"oracle_equivalence", count(v.oracle_equivalence)},
        {"transition_bound", count(v.transition_bound)},
        {"support_power_bound", count(v.support_power_bound)},
        {"shifted_power_bound", count(v.shifted_power_bound)},
        {"weighted_power_bound", count(v.weighted_power_bound)},
        {"ok", v.ok()},
    };
  }
  return report;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_csv(const json& report) {
  std::ostringstream out;
  if (report.contains("verification")) {
    out << "check,passed,failed\n";
    for (const char* name : {"oracle_equivalence", "transition_bound", "support_power_bound",
                             "shifted_power_bound", "weighted_power_bound"}) {
      const json& c = report["verification"][name];
      out << name << ',' << c["passed"].dump() << ',' << c["failed"].dump() << '\n';
    }
    return out.str();
  }

  const json& a = report["analytic"];
  out << "row,replication,gamma,std_error,norm_rate,cycle_time,attack_cycle_time,"
         "recovery_cycle_time,R\n";
  json gamma, std_error, norm_rate, ratio = a["R"];
  if (report.contains("simulation")) {
    const json& s = report["simulation"];
    const json& reps = s["replication_gamma"];
    for (std::size_t r = 0; r < reps.size(); ++r) {
      out << "replication," << r << ',' << csv_cell(reps[r]) << ",,,,,,\n";
    }
    gamma = s["gamma_hat"];
    std_error = s["std_error"];
    norm_rate = s["norm_rate"];
    if (!s["R"].is_null()) ratio = s["R"];
  }
  out << "summary,," << csv_cell(gamma) << ',' << csv_cell(std_error) << ','
      << csv_cell(norm_rate) << ',' << csv_cell(a["cycle_time"]) << ','
      << csv_cell(a["attack_cycle_time"]) << ',' << csv_cell(a["recovery_cycle_time"]) << ','
      << csv_cell(ratio) << '\n';
  return out.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.steps < 1 || config.replications < 1) {
    err << "error: --steps and --replications must be >= 1\n";
    return kUsageError;
  }
  json report;
  try {
    const LoadedNetwork network = load_network(config.network);
    report = build_report(config, network);
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kSchemaError;
  } catch (const NetworkError& e) {
    err << "error: " << e.what() << '\n';
    return kNetworkError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  const std::string text =
      config.format == OutputFormat::json ? render_json(report) : render_csv(report);
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << config.output << '\n';
      return kUsageError;
    }
    file << text;
  }
  if (report.contains("verification") && !report["verification"]["ok"].get<bool>()) {
    err << "verification failed\n";
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace fjn::cli
