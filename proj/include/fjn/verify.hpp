#pragma once

// Runtime checks of the tandem bound: for a network whose support matrix G
// is upper triangular, the transition matrix A(k) never exceeds the tandem
// matrix B(k) built from the same service times.

#include <cstddef>
#include <cstdint>

#include "fjn/network.hpp"
#include "fjn/timing.hpp"

namespace fjn {

struct TandemBoundCheck {
  /// A(k) <= B(k).
  bool transition_bound = false;
  /// G^q <= H ⊕ H^2 ⊕ ... ⊕ H^n for 1 <= q <= n.
  bool support_power_bound = false;
  /// H^q ⊗ T <= (H ⊗ T)^q for 2 <= q <= n + 1.
  bool shifted_power_bound = false;
  /// (G ⊗ T)^q <= ⊕_{j=1}^{n} (H ⊗ T)^j for 1 <= q <= n.
  bool weighted_power_bound = false;

  bool all() const {
    return transition_bound && support_power_bound && shifted_power_bound &&
           weighted_power_bound;
  }
};

/// `spec` must be in topological order (see topological_renumber).
TandemBoundCheck check_tandem_bound(const NetworkSpec& spec, const ServiceTimeMatrix& t);

struct CheckCount {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct VerificationSummary {
  CheckCount oracle_equivalence;
  CheckCount transition_bound;
  CheckCount support_power_bound;
  CheckCount shifted_power_bound;
  CheckCount weighted_power_bound;

  bool ok() const;
};

/// Integer service time in {0, ..., max_value}, a pure function of its
/// coordinates.
double integer_service_time(std::uint64_t seed, std::uint64_t trial, std::uint64_t k,
                            std::uint32_t node, int max_value);

/// Runs `trials` oracle comparisons over `cycles` cycles of integer service
/// times and `trials` tandem-bound checks on the network.
VerificationSummary verify_network(const NetworkSpec& spec, std::uint64_t seed,
                                   std::size_t trials, std::size_t cycles);

}  // namespace fjn
