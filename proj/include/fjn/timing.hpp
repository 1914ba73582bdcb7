#pragma once

#include <cstdint>
#include <vector>

#include "fjn/distribution.hpp"
#include "fjn/maxplus.hpp"

namespace fjn {

/// T_k = diag(tau_1k, ..., tau_nk): finite nonnegative diagonal, epsilon
/// elsewhere. Only the diagonal is stored.
class ServiceTimeMatrix {
 public:
  explicit ServiceTimeMatrix(Vector times);

  const Vector& times() const { return times_; }
  Eigen::Index size() const { return times_.size(); }
  double operator()(Eigen::Index i) const { return times_(i); }

  /// The dense n x n form.
  Matrix matrix() const { return diagonal_matrix(times_); }

 private:
  Vector times_;
};

enum class Coupling { independent, common_shock };

/// Within-cycle dependence. Under common_shock every node's uniform is
///   V_i = F(w U + (1 - w) U_i),
/// where U is shared by all nodes in the cycle, U_i is private, and F is
/// the CDF of w U + (1 - w) U_i (a trapezoid law). V_i is exactly uniform,
/// so each node keeps its marginal while nodes become positively dependent.
struct CouplingSpec {
  Coupling kind = Coupling::independent;
  double weight = 0.0;
};

/// Draws T_k as a pure function of (seed, stream, k). Streams separate
/// replications that share a seed.
class ScenarioSampler {
 public:
  ScenarioSampler(std::vector<DistributionSpec> nodes, std::uint64_t seed,
                  CouplingSpec coupling = {}, std::uint32_t stream = 0);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<DistributionSpec>& distributions() const { return nodes_; }
  std::uint64_t seed() const { return seed_; }
  std::uint32_t stream() const { return stream_; }
  const CouplingSpec& coupling() const { return coupling_; }

  ServiceTimeMatrix sample_cycle(std::uint64_t k) const;

  /// The uniforms fed to each node's quantile function in cycle k.
  std::vector<double> cycle_uniforms(std::uint64_t k) const;

  ScenarioSampler with_stream(std::uint32_t stream) const;
  ScenarioSampler with_distribution(std::size_t index,
                                    DistributionSpec d) const;

 private:
  double raw_uniform(std::uint64_t k, std::uint32_t slot) const;

  std::vector<DistributionSpec> nodes_;
  std::uint64_t seed_;
  CouplingSpec coupling_;
  std::uint32_t stream_;
};

/// Copy of `sampler` with 1-based `node` pinned to deterministic(0).
ScenarioSampler set_node_to_zero(const ScenarioSampler& sampler, int node);

/// CDF of a U1 + b U2 for independent standard uniforms, a, b >= 0, a + b = 1.
double blended_uniform_cdf(double s, double a, double b);

}  // namespace fjn
