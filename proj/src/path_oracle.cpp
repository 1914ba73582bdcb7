#include "fjn/path_oracle.hpp"

#include <algorithm>

#include "fjn/error.hpp"

namespace fjn {
namespace {

std::vector<int> default_order(const NetworkSpec& spec) {
  const Renumbering r = topological_renumber(spec);
  std::vector<int> order(spec.size());
  for (std::size_t old = 0; old < spec.size(); ++old) {
    order[r.old_to_new[old] - 1] = static_cast<int>(old);
  }
  return order;
}

}  // namespace

std::vector<StateVector> unfolded_completion_times(
    const NetworkSpec& input, const std::vector<Vector>& service_times,
    const StateVector& x0, const std::vector<int>& given_order) {
  const NetworkSpec spec = validate(input);
  const std::size_t n = spec.size();
  if (static_cast<std::size_t>(x0.x.size()) != n) {
    throw InvalidInput("oracle: initial state has wrong dimension");
  }

  std::vector<std::vector<int>> preds(n);
  for (const Arc& a : spec.arcs) preds[a.to - 1].push_back(a.from - 1);

  const std::vector<int> order = given_order.empty() ? default_order(spec) : given_order;
  if (order.size() != n) throw InvalidInput("oracle: order must list every node");
  std::vector<int> position(n, -1);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const int v = order[pos];
    if (v < 0 || static_cast<std::size_t>(v) >= n || position[v] != -1) {
      throw InvalidInput("oracle: order is not a permutation of the nodes");
    }
    position[v] = static_cast<int>(pos);
  }
  for (const Arc& a : spec.arcs) {
    if (position[a.from - 1] > position[a.to - 1]) {
      throw InvalidInput("oracle: order is not topological");
    }
  }

  std::vector<StateVector> out;
  out.reserve(service_times.size());
  std::vector<double> prev(x0.x.data(), x0.x.data() + n);
  for (std::size_t k = 0; k < service_times.size(); ++k) {
    const Vector& tau = service_times[k];
    if (static_cast<std::size_t>(tau.size()) != n) {
      throw InvalidInput("oracle: service time row " + std::to_string(k + 1) +
                         " has wrong length");
    }
    std::vector<double> cur(n, 0.0);
    for (int i : order) {
      if (tau(i) < 0.0) throw InvalidInput("oracle: negative service time");
      double start = prev[i];
      for (int j : preds[i]) start = std::max(start, cur[j]);
      cur[i] = start + tau(i);
    }
    StateVector x{Vector(static_cast<Eigen::Index>(n)), x0.k + k + 1};
    for (std::size_t i = 0; i < n; ++i) x.x(static_cast<Eigen::Index>(i)) = cur[i];
    out.push_back(std::move(x));
    prev = std::move(cur);
  }
  return out;
}

}  // namespace fjn
