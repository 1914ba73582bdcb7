#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// recurrence engine, so the engine can be checked against it.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "fjn/maxplus.hpp"
#include "fjn/network.hpp"

namespace fjn::testing {

/// Random DAG on n nodes in topological order (arcs i -> j with i < j),
/// optionally relabelled by a random permutation.
inline NetworkSpec random_dag(std::mt19937_64& rng, int n, double arc_probability,
                              bool shuffle_labels = false) {
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 1);
  if (shuffle_labels) std::shuffle(label.begin(), label.end(), rng);
  std::bernoulli_distribution coin(arc_probability);
  NetworkSpec spec;
  for (int i = 1; i <= n; ++i) {
    spec.nodes.push_back({i, "n" + std::to_string(i), Deterministic{1.0}});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) spec.arcs.push_back({label[i], label[j]});
    }
  }
  spec.arrival_node = label[0];
  return spec;
}

/// Every topological order of the graph as 1-based id sequences, by
/// exhaustive permutation search.
inline std::vector<std::vector<int>> all_topological_orders(const NetworkSpec& spec) {
  std::vector<int> perm(spec.size());
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> pos(spec.size() + 1);
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = static_cast<int>(i);
    bool ok = true;
    for (const Arc& a : spec.arcs) ok = ok && pos[a.from] < pos[a.to];
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Longest path (in arcs) by enumerating every directed path with DFS.
inline std::size_t brute_force_longest_path(const NetworkSpec& spec) {
  std::size_t best = 0;
  std::function<void(int, std::size_t)> walk = [&](int u, std::size_t len) {
    best = std::max(best, len);
    for (const Arc& a : spec.arcs) {
      if (a.from == u) walk(a.to, len + 1);
    }
  };
  for (const NodeSpec& node : spec.nodes) walk(node.id, 0);
  return best;
}

/// reach[i][j] is true when a directed path (possibly empty) leads from
/// node j+1 to node i+1.
inline std::vector<std::vector<bool>> reaches_from(const NetworkSpec& spec) {
  const std::size_t n = spec.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t src = 0; src < n; ++src) {
    std::vector<int> stack{static_cast<int>(src) + 1};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      if (reach[u - 1][src]) continue;
      reach[u - 1][src] = true;
      for (const Arc& a : spec.arcs) {
        if (a.from == u) stack.push_back(a.to);
      }
    }
  }
  return reach;
}

/// Heaviest node-weighted path from j to i (inclusive), epsilon if none.
/// Computed by explicit path enumeration.
inline Matrix brute_force_path_weights(const NetworkSpec& spec, const Vector& tau) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  Matrix out = null_matrix(n);
  std::function<void(int, int, double)> walk = [&](int start, int u, double w) {
    const double total = w + tau(u - 1);
    out(u - 1, start - 1) = std::max(out(u - 1, start - 1), total);
    for (const Arc& a : spec.arcs) {
      if (a.from == u) walk(start, a.to, total);
    }
  };
  for (Eigen::Index j = 1; j <= n; ++j) walk(static_cast<int>(j), static_cast<int>(j), 0.0);
  return out;
}

/// The transition matrix as the literal sum of powers, without Horner.
inline Matrix transition_by_powers(const Matrix& t, const Matrix& support, std::size_t terms) {
  const Matrix step = mat_otimes(t, Matrix(support.transpose()));
  Matrix sum = null_matrix(t.rows());
  for (std::size_t j = 0; j <= terms; ++j) sum = mat_oplus(sum, mat_power(step, j));
  return mat_otimes(sum, t);
}

/// Random integer-valued matrix with roughly `eps_fraction` epsilon entries.
inline Matrix random_integer_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                                    double eps_fraction = 0.3, int lo = -5, int hi = 10) {
  std::bernoulli_distribution is_eps(eps_fraction);
  std::uniform_int_distribution<int> value(lo, hi);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = is_eps(rng) ? epsilon<double>() : static_cast<double>(value(rng));
    }
  }
  return m;
}

inline Vector random_integer_times(std::mt19937_64& rng, Eigen::Index n, int hi = 10) {
  std::uniform_int_distribution<int> value(0, hi);
  Vector tau(n);
  for (Eigen::Index i = 0; i < n; ++i) tau(i) = value(rng);
  return tau;
}

}  // namespace fjn::testing
