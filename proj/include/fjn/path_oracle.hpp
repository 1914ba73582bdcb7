#pragma once

// Brute-force completion times straight from the fork-join start rule:
// the k-th service at node i starts once node i has finished its (k-1)-th
// service and every predecessor has finished its k-th service. No (max,+)
// matrices are involved, so it can check the recurrence independently.

#include <vector>

#include "fjn/dynamics.hpp"
#include "fjn/network.hpp"

namespace fjn {

/// service_times[k-1](i) = tau_{i+1,k}. Returns x(1), ..., x(K).
/// Nodes are visited in `order` (0-based indices) within each cycle; when
/// empty, a topological order is used. Throws if `order` is not topological.
std::vector<StateVector> unfolded_completion_times(
    const NetworkSpec& spec, const std::vector<Vector>& service_times,
    const StateVector& x0, const std::vector<int>& order = {});

}  // namespace fjn
