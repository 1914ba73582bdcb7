#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fjn/distribution.hpp"
#include "fjn/maxplus.hpp"

namespace fjn {

/// A service node. Ids are 1-based in every external form.
struct NodeSpec {
  int id = 0;
  std::string label;
  DistributionSpec timing = Deterministic{0.0};
};

/// Directed arc between 1-based node ids.
struct Arc {
  int from = 0;
  int to = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Acyclic fork-join network. Disconnected graphs are allowed.
struct NetworkSpec {
  std::vector<NodeSpec> nodes;
  std::vector<Arc> arcs;
  int arrival_node = 1;

  std::size_t size() const { return nodes.size(); }
  std::vector<DistributionSpec> timings() const;
};

/// Checks that ids are exactly 1..n, that arcs reference known nodes, and
/// that the graph has no self-loops, duplicate arcs or cycles. Returns the
/// spec with nodes sorted by id; throws NetworkError naming the offender.
NetworkSpec validate(NetworkSpec spec);

struct Renumbering {
  NetworkSpec spec;
  /// old_to_new[old_id - 1] is the new 1-based id.
  std::vector<int> old_to_new;

  bool is_identity() const;
};

/// Relabels nodes into topological order so every arc (i, j) has i < j.
/// Ready nodes are taken in ascending original id, so an already ordered
/// spec maps to itself.
Renumbering topological_renumber(const NetworkSpec& spec);

enum class SupportKind { general, tandem };

struct SupportMatrix {
  Matrix matrix;
  SupportKind kind = SupportKind::general;

  Eigen::Index size() const { return matrix.rows(); }
};

/// G with g(i,j) = 0 iff arc (i,j) exists. Strictly upper triangular
/// exactly when the network is in topological order (see topological_renumber).
SupportMatrix support_matrix(const NetworkSpec& spec);

/// H with h(i,j) = 0 iff i + 1 = j.
SupportMatrix tandem_support_matrix(std::size_t n);

/// Maximum number of arcs on a directed path.
std::size_t longest_path_length(const NetworkSpec& spec);

/// The serial chain 1 -> 2 -> ... -> n over the given timings.
NetworkSpec tandem_network(const std::vector<DistributionSpec>& timings);

}  // namespace fjn
