#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fjn/network.hpp"
#include "fjn/timing.hpp"

namespace fjn::cli {

/// Reserved name of the built-in six-node incident response network.
inline constexpr const char* kBuiltinNetwork = "paper-fig3";

enum class RunMode { analytic, simulate, verify };
enum class OutputFormat { json, csv };

struct RunConfig {
  std::string network = kBuiltinNetwork;
  RunMode mode = RunMode::analytic;
  std::uint64_t steps = 100000;
  std::size_t replications = 10;
  std::uint64_t seed = 0;
  bool max_traffic = false;
  /// Empty means standard output.
  std::string output;
  OutputFormat format = OutputFormat::json;
};

/// Verify mode sizes.
inline constexpr std::size_t kVerifyTrials = 200;
inline constexpr std::size_t kVerifyCycles = 25;

/// Exit statuses of run().
enum ExitStatus : int {
  kOk = 0,
  kUsageError = 1,
  kSchemaError = 2,
  kNetworkError = 3,
  kVerificationFailed = 4,
};

struct LoadedNetwork {
  std::string name;
  /// Validated and in topological order.
  NetworkSpec spec;
  /// Old-to-new ids; empty when the file was already in topological order.
  std::vector<int> renumbering;
  CouplingSpec coupling;
};

/// Parses a network document. `source` prefixes diagnostics.
/// Throws SchemaError for schema violations, NetworkError for bad graphs.
LoadedNetwork parse_network(const nlohmann::json& doc, const std::string& source);

/// Loads the reserved built-in network or a JSON file.
LoadedNetwork load_network(const std::string& path_or_name);

nlohmann::json network_to_json(const NetworkSpec& spec);

/// The full report for a loaded network.
nlohmann::json build_report(const RunConfig& config, const LoadedNetwork& network);

std::string render_json(const nlohmann::json& report);
std::string render_csv(const nlohmann::json& report);

/// Loads, evaluates and writes the report. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

RunMode parse_mode(const std::string& s);
OutputFormat parse_format(const std::string& s);

}  // namespace fjn::cli
