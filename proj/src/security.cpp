#include "fjn/security.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fjn/error.hpp"

namespace fjn {

SecurityModel::SecurityModel(NetworkSpec network) : network_(validate(std::move(network))) {
  if (network_.size() < 2) {
    throw InvalidInput("a security model needs an arrival node and at least one procedure");
  }
}

std::vector<Arc> incident_response_arcs() {
  return {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 6}, {5, 6}};
}

std::vector<std::string> incident_response_labels() {
  return {"Security attacks detection",
          "Software and data integrity analysis",
          "Vulnerabilities analysis",
          "Software and data recovery procedures",
          "Development of countermeasures",
          "Security system modification"};
}

SecurityModel incident_response_model(const std::vector<DistributionSpec>& timings) {
  const auto labels = incident_response_labels();
  if (timings.size() != labels.size()) {
    throw InvalidInput("the incident response model has 6 nodes, got " +
                       std::to_string(timings.size()) + " timings");
  }
  NetworkSpec spec;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    spec.nodes.push_back({static_cast<int>(i) + 1, labels[i], timings[i]});
  }
  spec.arcs = incident_response_arcs();
  spec.arrival_node = 1;
  return SecurityModel(std::move(spec));
}

SecurityModel incident_response_model() {
  return incident_response_model({Exponential{10.0}, Exponential{5.0}, Exponential{4.0},
                                  Exponential{3.0}, Exponential{6.0}, Exponential{2.0}});
}

NetworkSpec max_traffic(const NetworkSpec& network) {
  NetworkSpec out = validate(network);
  out.nodes[out.arrival_node - 1].timing = Deterministic{0.0};
  return out;
}

double attack_cycle_time(const SecurityModel& model) {
  return mean(model.network().nodes[model.arrival_node() - 1].timing);
}

RecoveryCycleTime recovery_cycle_time(const SecurityModel& model, EvaluationMode mode,
                                      const SimulationSettings& settings) {
  if (mode == EvaluationMode::analytic) {
    double best = 0.0;
    for (const NodeSpec& node : model.network().nodes) {
      if (node.id != model.arrival_node()) best = std::max(best, mean(node.timing));
    }
    return {best, std::nullopt};
  }
  const NetworkSpec saturated = max_traffic(model.network());
  const ScenarioSampler sampler(saturated.timings(), settings.seed, settings.coupling);
  EstimateOptions options;
  options.threads = settings.threads;
  CycleTimeEstimate est = estimate_cycle_time(saturated, sampler, settings.cycles,
                                              settings.replications, options);
  return {est.gamma_hat, std::move(est)};
}

std::vector<int> bottleneck_ranking(const SecurityModel& model) {
  std::vector<std::pair<double, int>> procedures;
  for (const NodeSpec& node : model.network().nodes) {
    if (node.id != model.arrival_node()) procedures.emplace_back(mean(node.timing), node.id);
  }
  std::sort(procedures.begin(), procedures.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<int> ranking;
  for (const auto& [m, id] : procedures) ranking.push_back(id);
  return ranking;
}

PerformanceReport performance_ratio(const SecurityModel& model, EvaluationMode mode,
                                    const SimulationSettings& settings) {
  PerformanceReport report;
  report.attack_cycle_time = attack_cycle_time(model);
  RecoveryCycleTime ts = recovery_cycle_time(model, mode, settings);
  report.recovery_cycle_time = ts.value;
  report.recovery_estimate = std::move(ts.estimate);
  report.bottleneck_ranking = bottleneck_ranking(model);

  if (report.attack_cycle_time > 0.0) {
    report.ratio = report.recovery_cycle_time / report.attack_cycle_time;
    if (report.recovery_cycle_time > report.attack_cycle_time) {
      std::ostringstream msg;
      msg << "recovery cycle time " << report.recovery_cycle_time
          << " exceeds attack cycle time " << report.attack_cycle_time
          << "; R no longer reads as the fraction of time under recovery";
      report.warnings.push_back(msg.str());
    }
  } else {
    report.warnings.push_back(
        "attack cycle time is 0; the performance ratio is undefined");
  }
  return report;
}

SecurityModel scaled(const SecurityModel& model, double c) {
  NetworkSpec spec = model.network();
  for (NodeSpec& node : spec.nodes) node.timing = scaled(node.timing, c);
  return SecurityModel(std::move(spec));
}

}  // namespace fjn
