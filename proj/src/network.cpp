#include "fjn/network.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "fjn/error.hpp"

namespace fjn {
namespace {

std::string arc_name(const Arc& a) {
  return std::to_string(a.from) + "->" + std::to_string(a.to);
}

std::vector<std::vector<int>> successors(const NetworkSpec& spec) {
  std::vector<std::vector<int>> out(spec.size());
  for (const Arc& a : spec.arcs) out[a.from - 1].push_back(a.to - 1);
  return out;
}

// Returns one directed cycle as a list of 1-based ids, or empty if acyclic.
std::vector<int> find_cycle(const NetworkSpec& spec) {
  const auto succ = successors(spec);
  const std::size_t n = spec.size();
  enum class Mark { white, grey, black };
  std::vector<Mark> mark(n, Mark::white);
  std::vector<int> parent(n, -1);
  std::vector<int> cycle;

  std::function<bool(int)> visit = [&](int u) {
    mark[u] = Mark::grey;
    for (int v : succ[u]) {
      if (mark[v] == Mark::grey) {
        for (int w = u; w != v; w = parent[w]) cycle.push_back(w + 1);
        cycle.push_back(v + 1);
        std::reverse(cycle.begin(), cycle.end());
        cycle.push_back(v + 1);
        return true;
      }
      if (mark[v] == Mark::white) {
        parent[v] = u;
        if (visit(v)) return true;
      }
    }
    mark[u] = Mark::black;
    return false;
  };

  for (std::size_t u = 0; u < n; ++u) {
    if (mark[u] == Mark::white && visit(static_cast<int>(u))) break;
  }
  return cycle;
}

}  // namespace

std::vector<DistributionSpec> NetworkSpec::timings() const {
  std::vector<DistributionSpec> out;
  out.reserve(nodes.size());
  for (const NodeSpec& node : nodes) out.push_back(node.timing);
  return out;
}

NetworkSpec validate(NetworkSpec spec) {
  const int n = static_cast<int>(spec.size());
  if (n == 0) throw NetworkError("network has no nodes");

  std::sort(spec.nodes.begin(), spec.nodes.end(),
            [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
  for (int i = 0; i < n; ++i) {
    const int id = spec.nodes[i].id;
    if (i > 0 && id == spec.nodes[i - 1].id) {
      throw NetworkError("duplicate node id " + std::to_string(id));
    }
    if (id != i + 1) {
      throw NetworkError("node ids must be exactly 1.." + std::to_string(n) +
                         "; found id " + std::to_string(id));
    }
    try {
      validate(spec.nodes[i].timing);
    } catch (const InvalidInput& e) {
      throw NetworkError("node " + std::to_string(id) + ": " + e.what());
    }
  }

  std::set<Arc> seen;
  for (const Arc& a : spec.arcs) {
    if (a.from < 1 || a.from > n || a.to < 1 || a.to > n) {
      throw NetworkError("arc " + arc_name(a) + " references an unknown node");
    }
    if (a.from == a.to) {
      throw NetworkError("self-loop at node " + std::to_string(a.from));
    }
    if (!seen.insert(a).second) {
      throw NetworkError("duplicate arc " + arc_name(a));
    }
  }

  if (spec.arrival_node < 1 || spec.arrival_node > n) {
    throw NetworkError("arrival node " + std::to_string(spec.arrival_node) +
                       " is not a node of the network");
  }

  if (auto cycle = find_cycle(spec); !cycle.empty()) {
    std::string path;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) path += " -> ";
      path += std::to_string(cycle[i]);
    }
    throw NetworkError("network graph has a cycle: " + path);
  }
  return spec;
}

bool Renumbering::is_identity() const {
  for (std::size_t i = 0; i < old_to_new.size(); ++i) {
    if (old_to_new[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

Renumbering topological_renumber(const NetworkSpec& input) {
  const NetworkSpec spec = validate(input);
  const std::size_t n = spec.size();
  const auto succ = successors(spec);
  std::vector<int> indegree(n, 0);
  for (const Arc& a : spec.arcs) ++indegree[a.to - 1];

  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(static_cast<int>(i));
  }
  std::vector<int> old_to_new(n, 0);
  int next = 1;
  while (!ready.empty()) {
    const int u = ready.top();
    ready.pop();
    old_to_new[u] = next++;
    for (int v : succ[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }

  Renumbering out;
  out.old_to_new = old_to_new;
  out.spec.arrival_node = old_to_new[spec.arrival_node - 1];
  out.spec.nodes.resize(n);
  for (const NodeSpec& node : spec.nodes) {
    NodeSpec moved = node;
    moved.id = old_to_new[node.id - 1];
    out.spec.nodes[moved.id - 1] = std::move(moved);
  }
  for (const Arc& a : spec.arcs) {
    out.spec.arcs.push_back({old_to_new[a.from - 1], old_to_new[a.to - 1]});
  }
  return out;
}

SupportMatrix support_matrix(const NetworkSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  SupportMatrix g{null_matrix(n), SupportKind::general};
  for (const Arc& a : spec.arcs) {
    if (a.from < 1 || a.from > n || a.to < 1 || a.to > n) {
      throw NetworkError("support_matrix: arc " + arc_name(a) +
                         " references an unknown node");
    }
    g.matrix(a.from - 1, a.to - 1) = 0.0;
  }
  return g;
}

SupportMatrix tandem_support_matrix(std::size_t n) {
  if (n == 0) throw InvalidInput("tandem_support_matrix: n must be >= 1");
  const auto size = static_cast<Eigen::Index>(n);
  SupportMatrix h{null_matrix(size), SupportKind::tandem};
  for (Eigen::Index i = 0; i + 1 < size; ++i) h.matrix(i, i + 1) = 0.0;
  return h;
}

std::size_t longest_path_length(const NetworkSpec& input) {
  const Renumbering r = topological_renumber(input);
  const NetworkSpec& spec = r.spec;
  // Arcs point forward after renumbering, so one pass in id order suffices.
  std::vector<std::size_t> depth(spec.size(), 0);
  std::vector<Arc> arcs = spec.arcs;
  std::sort(arcs.begin(), arcs.end());
  std::size_t best = 0;
  for (const Arc& a : arcs) {
    depth[a.to - 1] = std::max(depth[a.to - 1], depth[a.from - 1] + 1);
    best = std::max(best, depth[a.to - 1]);
  }
  return best;
}

NetworkSpec tandem_network(const std::vector<DistributionSpec>& timings) {
  NetworkSpec spec;
  for (std::size_t i = 0; i < timings.size(); ++i) {
    spec.nodes.push_back(
        {static_cast<int>(i) + 1, "stage " + std::to_string(i + 1), timings[i]});
    if (i > 0) {
      spec.arcs.push_back({static_cast<int>(i), static_cast<int>(i) + 1});
    }
  }
  return validate(std::move(spec));
}

}  // namespace fjn
