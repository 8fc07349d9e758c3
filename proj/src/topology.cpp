#include "jante/topology.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "jante/error.hpp"

namespace jante {

namespace {

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.u + 1) + ", " + std::to_string(e.v + 1) + ")";
}

}  // namespace

Topology Topology::cycle(std::size_t n) {
  if (n < 3) throw Error(Errc::invalid_size, "a cycle needs at least 3 nodes, got " + std::to_string(n));
  std::vector<std::size_t> offsets(n + 1);
  std::vector<Node> adjacency(2 * n);
  for (Node i = 0; i < n; ++i) {
    offsets[i] = 2 * i;
    const Node prev = (i + n - 1) % n;
    const Node next = (i + 1) % n;
    adjacency[2 * i] = std::min(prev, next);
    adjacency[2 * i + 1] = std::max(prev, next);
  }
  offsets[n] = 2 * n;
  return Topology(TopologyKind::cycle, std::move(offsets), std::move(adjacency));
}

Topology Topology::from_edge_list(std::size_t n, std::span<const Edge> edges) {
  if (n < 2) throw Error(Errc::invalid_size, "a graph needs at least 2 nodes, got " + std::to_string(n));
  std::vector<std::vector<Node>> lists(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(Errc::index_out_of_range, "edge " + edge_text(e) + " outside 1.." + std::to_string(n));
    }
    if (e.u == e.v) throw Error(Errc::self_loop, "self-loop at node " + std::to_string(e.u + 1));
    lists[e.u].push_back(e.v);
    lists[e.v].push_back(e.u);
  }
  for (Node v = 0; v < n; ++v) {
    auto& l = lists[v];
    std::sort(l.begin(), l.end());
    if (auto it = std::adjacent_find(l.begin(), l.end()); it != l.end()) {
      throw Error(Errc::duplicate_edge, "duplicate edge " + edge_text(Edge{v, *it}));
    }
  }

  // Connectivity by depth-first search from node 0.
  std::vector<char> seen(n, 0);
  std::vector<Node> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Node v = stack.back();
    stack.pop_back();
    for (Node u : lists[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != n) {
    const auto missing = static_cast<std::size_t>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
    throw Error(Errc::disconnected, "graph is disconnected; node " + std::to_string(missing + 1) +
                                        " is unreachable from node 1");
  }

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<Node> adjacency;
  adjacency.reserve(2 * edges.size());
  for (Node v = 0; v < n; ++v) {
    offsets[v] = adjacency.size();
    adjacency.insert(adjacency.end(), lists[v].begin(), lists[v].end());
  }
  offsets[n] = adjacency.size();

  // A 2-regular connected graph is a cycle; tag it so cycle-only code accepts it.
  const bool two_regular = std::all_of(lists.begin(), lists.end(),
                                       [](const auto& l) { return l.size() == 2; });
  if (two_regular && n >= 3) {
    auto c = cycle(n);
    if (c.offsets_ == offsets && c.adjacency_ == adjacency) return c;
  }
  return Topology(TopologyKind::general, std::move(offsets), std::move(adjacency));
}

Topology Topology::counterexample_graph() {
  const Edge edges[] = {{0, 1}, {1, 2}, {2, 3}, {4, 0}, {4, 1}, {5, 2}, {5, 3}};
  return from_edge_list(6, edges);
}

std::span<const Node> Topology::neighbors(Node v) const {
  if (v >= size()) {
    throw Error(Errc::index_out_of_range,
                "node " + std::to_string(v) + " out of range for " + std::to_string(size()) + " nodes");
  }
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Node v = 0; v < size(); ++v) {
    for (Node u : neighbors(v)) {
      if (v < u) out.push_back({v, u});
    }
  }
  return out;
}

std::vector<Node> Topology::leaves() const {
  std::vector<Node> out;
  for (Node v = 0; v < size(); ++v) {
    if (degree(v) == 1) out.push_back(v);
  }
  return out;
}

std::string Topology::descriptor() const {
  if (is_cycle()) return "cycle:" + std::to_string(size());
  return "graph:" + std::to_string(size()) + ":" + std::to_string(edge_count());
}

Topology read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw Error(Errc::invalid_configuration, "edge list is empty");
  std::size_t n = 0;
  std::size_t m = 0;
  {
    std::istringstream head(line);
    if (!(head >> n >> m)) throw Error(Errc::invalid_configuration, "edge list header must be \"N E\"");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!next_line()) {
      throw Error(Errc::invalid_configuration,
                  "edge list declares " + std::to_string(m) + " edges, found " + std::to_string(k));
    }
    std::istringstream row(line);
    long long u = 0;
    long long v = 0;
    if (!(row >> u >> v)) throw Error(Errc::invalid_configuration, "malformed edge line: " + line);
    if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n) {
      throw Error(Errc::index_out_of_range, "edge line " + line + " outside 1.." + std::to_string(n));
    }
    edges.push_back({static_cast<Node>(u - 1), static_cast<Node>(v - 1)});
  }
  if (next_line()) throw Error(Errc::invalid_configuration, "trailing data after the declared edges");
  return Topology::from_edge_list(n, edges);
}

void write_edge_list(std::ostream& out, const Topology& topology) {
  out << topology.size() << ' ' << topology.edge_count() << '\n';
  for (const auto& e : topology.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

}  // namespace jante
