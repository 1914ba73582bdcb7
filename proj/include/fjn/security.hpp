#pragma once

// Security incident handling as a fork-join network. Node 1 (the arrival
// node) produces attack detections; the remaining nodes are the response
// procedures. The ratio R = T_S / T_A compares the recovery cycle time to the
// mean time between attacks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fjn/dynamics.hpp"
#include "fjn/network.hpp"
#include "fjn/timing.hpp"

namespace fjn {

/// A validated network with a designated arrival node.
class SecurityModel {
 public:
  explicit SecurityModel(NetworkSpec network);

  const NetworkSpec& network() const { return network_; }
  int arrival_node() const { return network_.arrival_node; }

 private:
  NetworkSpec network_;
};

/// Arcs of the six-node incident response scheme.
std::vector<Arc> incident_response_arcs();

/// Detection, integrity analysis, vulnerability analysis, recovery,
/// countermeasures and security modification, in node order.
std::vector<std::string> incident_response_labels();

/// The six-node model with the given per-node timings.
SecurityModel incident_response_model(const std::vector<DistributionSpec>& timings);

/// The six-node model with exponential timings of means (10, 5, 4, 3, 6, 2).
SecurityModel incident_response_model();

/// The network with the arrival node pinned to deterministic(0).
NetworkSpec max_traffic(const NetworkSpec& network);

enum class EvaluationMode { analytic, simulated };

struct SimulationSettings {
  std::uint64_t cycles = 100000;
  std::size_t replications = 10;
  std::uint64_t seed = 0;
  CouplingSpec coupling;
  unsigned threads = 0;
};

/// T_A = E[tau_1].
double attack_cycle_time(const SecurityModel& model);

struct RecoveryCycleTime {
  double value = 0.0;
  /// Present in simulated mode.
  std::optional<CycleTimeEstimate> estimate;
};

/// Analytic: max of the means over the non-arrival nodes. Simulated: cycle
/// time estimate of the max-traffic network.
RecoveryCycleTime recovery_cycle_time(const SecurityModel& model, EvaluationMode mode,
                                      const SimulationSettings& settings = {});

/// Non-arrival nodes by descending mean service time, ties by ascending id.
std::vector<int> bottleneck_ranking(const SecurityModel& model);

struct PerformanceReport {
  double attack_cycle_time = 0.0;
  double recovery_cycle_time = 0.0;
  /// Undefined when T_A = 0.
  std::optional<double> ratio;
  std::vector<int> bottleneck_ranking;
  std::vector<std::string> warnings;
  std::optional<CycleTimeEstimate> recovery_estimate;
};

PerformanceReport performance_ratio(const SecurityModel& model, EvaluationMode mode,
                                    const SimulationSettings& settings = {});

/// Same model with every time parameter multiplied by c.
SecurityModel scaled(const SecurityModel& model, double c);

}  // namespace fjn
