#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fjn/maxplus.hpp"
#include "fjn/network.hpp"
#include "fjn/timing.hpp"

namespace fjn {

/// Sum_{j=0}^{terms} (T ⊗ S^T)^j ⊗ T, accumulated Horner style:
/// acc <- (T ⊗ S^T) ⊗ acc ⊕ E, then acc ⊗ T.
template <typename DerivedT, typename DerivedS>
MaxPlusMatrix<typename DerivedS::Scalar> transition_matrix(
    const Eigen::MatrixBase<DerivedT>& tau,
    const Eigen::MatrixBase<DerivedS>& support, std::size_t terms) {
  using Scalar = typename DerivedS::Scalar;
  const Eigen::Index n = support.rows();
  if (support.cols() != n || tau.size() != n) {
    throw InvalidInput("transition_matrix: " + std::to_string(tau.size()) +
                       " service times for a " + std::to_string(support.rows()) +
                       "x" + std::to_string(support.cols()) +
                       " support matrix");
  }
  // (T ⊗ S^T)(i,j) = tau_i ⊗ s(j,i)
  MaxPlusMatrix<Scalar> step(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) step(i, j) = otimes(tau(i), support(j, i));
  }
  const MaxPlusMatrix<Scalar> e = identity_matrix<Scalar>(n);
  MaxPlusMatrix<Scalar> acc = e;
  for (std::size_t j = 0; j < terms; ++j) acc = mat_oplus(mat_otimes(step, acc), e);
  // acc ⊗ T scales column j by tau_j.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) acc(i, j) = otimes(acc(i, j), tau(j));
  }
  return acc;
}

enum class TransitionKind { network, tandem };

struct TransitionMatrix {
  Matrix matrix;
  std::uint64_t k = 0;
  TransitionKind kind = TransitionKind::network;
};

/// x(k): k-th service completion times at every node.
struct StateVector {
  Vector x;
  std::uint64_t k = 0;

  static StateVector zeros(std::size_t n) {
    return {Vector::Zero(static_cast<Eigen::Index>(n)), 0};
  }
};

/// A(k) = ⊕_{j=0}^{p} (T_k ⊗ G^T)^j ⊗ T_k.
TransitionMatrix build_A(const ServiceTimeMatrix& t, const SupportMatrix& g,
                         std::size_t p, std::uint64_t k = 0);

/// B(k) = ⊕_{j=0}^{n} (T_k ⊗ H^T)^j ⊗ T_k for the n-node tandem H.
TransitionMatrix build_B(const ServiceTimeMatrix& t, const SupportMatrix& h,
                         std::size_t n, std::uint64_t k = 0);

/// x(k) = A(k) ⊗ x(k-1).
StateVector step(const StateVector& prev, const TransitionMatrix& a);

struct NormSample {
  std::uint64_t k = 0;
  double norm = 0.0;
};

struct SimulationOptions {
  /// Record ||x(k)|| every `norm_stride` cycles (and always at k = K);
  /// 0 records nothing.
  std::uint64_t norm_stride = 1;
  /// Cycle whose state is kept in Trajectory::checkpoint.
  std::uint64_t checkpoint = 0;
};

struct Trajectory {
  StateVector final_state;
  StateVector checkpoint;
  std::vector<NormSample> norms;
};

/// Iterates the recurrence for k = 1..K with T_k drawn from `sampler`.
Trajectory simulate(const NetworkSpec& spec, const ScenarioSampler& sampler,
                    std::uint64_t cycles, const StateVector& x0,
                    const SimulationOptions& options = {});

/// Same recurrence over a precomputed table: service_times[k-1](i) = tau_{i,k}.
std::vector<StateVector> simulate_table(const NetworkSpec& spec,
                                        const std::vector<Vector>& service_times,
                                        const StateVector& x0);

struct CycleTimeEstimate {
  /// Mean over replications of max_i (x_i(K) - x_i(W)) / (K - W).
  double gamma_hat = 0.0;
  /// Standard error of gamma_hat across replications.
  double std_error = 0.0;
  /// Mean over replications of ||x(K)|| / K, including the start-up transient.
  double norm_rate = 0.0;
  std::uint64_t cycles = 0;
  std::uint64_t warmup = 0;
  std::size_t replications = 0;
  std::vector<double> replication_gamma;
  /// Thinned ||x(k)|| path of replication 0.
  std::vector<NormSample> norm_samples;
};

struct EstimateOptions {
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
  /// Upper bound on the number of recorded norm samples.
  std::size_t max_norm_samples = 100;
};

/// Replication r runs on sampler stream (sampler.stream() + r) from x(0) = 0
/// and discards the first W = floor(K/2) cycles. In the deterministic case the
/// estimate equals max_i tau_i exactly for every K >= 2.
CycleTimeEstimate estimate_cycle_time(const NetworkSpec& spec,
                                      const ScenarioSampler& sampler,
                                      std::uint64_t cycles,
                                      std::size_t replications,
                                      const EstimateOptions& options = {});

/// max_i E[tau_i].
double analytic_cycle_time(const std::vector<DistributionSpec>& timings);
double analytic_cycle_time(const NetworkSpec& spec, const ScenarioSampler& sampler);

}  // namespace fjn
