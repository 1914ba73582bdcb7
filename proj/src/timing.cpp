#include "fjn/timing.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fjn/error.hpp"
#include "fjn/philox.hpp"

namespace fjn {
namespace {

constexpr std::uint32_t kSharedSlot = 0xFFFFFFFFu;

}  // namespace

ServiceTimeMatrix::ServiceTimeMatrix(Vector times) : times_(std::move(times)) {
  for (Eigen::Index i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_(i)) || times_(i) < 0.0) {
      throw InvalidInput("service time at node " + std::to_string(i + 1) +
                         " must be finite and >= 0");
    }
  }
}

double blended_uniform_cdf(double s, double a, double b) {
  if (a > b) std::swap(a, b);
  if (s <= 0.0) return 0.0;
  if (s >= a + b) return 1.0;
  if (a == 0.0) return s / b;
  if (s < a) return s * s / (2.0 * a * b);
  if (s <= b) return (s - 0.5 * a) / b;
  const double t = a + b - s;
  return 1.0 - t * t / (2.0 * a * b);
}

ScenarioSampler::ScenarioSampler(std::vector<DistributionSpec> nodes,
                                 std::uint64_t seed, CouplingSpec coupling,
                                 std::uint32_t stream)
    : nodes_(std::move(nodes)), seed_(seed), coupling_(coupling), stream_(stream) {
  if (nodes_.empty()) throw InvalidInput("sampler needs at least one node");
  for (const auto& d : nodes_) validate(d);
  if (!(coupling_.weight >= 0.0 && coupling_.weight <= 1.0)) {
    throw InvalidInput("coupling weight must lie in [0,1]");
  }
}

double ScenarioSampler::raw_uniform(std::uint64_t k, std::uint32_t slot) const {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(k),
                                static_cast<std::uint32_t>(k >> 32), slot,
                                stream_};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed_),
                            static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = Philox4x32::apply(ctr, key);
  return Philox4x32::to_unit(out[0], out[1]);
}

std::vector<double> ScenarioSampler::cycle_uniforms(std::uint64_t k) const {
  std::vector<double> u(nodes_.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = raw_uniform(k, static_cast<std::uint32_t>(i));
  }
  if (coupling_.kind == Coupling::common_shock && coupling_.weight > 0.0) {
    const double w = coupling_.weight;
    const double shared = raw_uniform(k, kSharedSlot);
    for (double& ui : u) {
      const double v = blended_uniform_cdf(w * shared + (1.0 - w) * ui, w, 1.0 - w);
      // The CDF can round up to 1; quantiles need [0,1).
      ui = std::min(v, std::nextafter(1.0, 0.0));
    }
  }
  return u;
}

ServiceTimeMatrix ScenarioSampler::sample_cycle(std::uint64_t k) const {
  const auto u = cycle_uniforms(k);
  Vector tau(static_cast<Eigen::Index>(nodes_.size()));
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    tau(static_cast<Eigen::Index>(i)) = quantile(nodes_[i], u[i]);
  }
  return ServiceTimeMatrix(std::move(tau));
}

ScenarioSampler ScenarioSampler::with_stream(std::uint32_t stream) const {
  ScenarioSampler copy = *this;
  copy.stream_ = stream;
  return copy;
}

ScenarioSampler ScenarioSampler::with_distribution(std::size_t index,
                                                   DistributionSpec d) const {
  if (index >= nodes_.size()) {
    throw InvalidInput("node index " + std::to_string(index + 1) +
                       " out of range 1.." + std::to_string(nodes_.size()));
  }
  validate(d);
  ScenarioSampler copy = *this;
  copy.nodes_[index] = std::move(d);
  return copy;
}

ScenarioSampler set_node_to_zero(const ScenarioSampler& sampler, int node) {
  if (node < 1 || static_cast<std::size_t>(node) > sampler.size()) {
    throw InvalidInput("node " + std::to_string(node) + " out of range 1.." +
                       std::to_string(sampler.size()));
  }
  return sampler.with_distribution(static_cast<std::size_t>(node - 1),
                                   Deterministic{0.0});
}

}  // namespace fjn
