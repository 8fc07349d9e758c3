#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace jante {

/// Node index, 0-based. Files and the CLI use 1-based indices.
using Node = std::size_t;

struct Edge {
  Node u = 0;
  Node v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class TopologyKind { cycle, general };

/// Finite connected undirected graph, the arena of the process.
///
/// Adjacency lists are sorted, symmetric and free of self-loops and
/// duplicates. Instances are immutable after construction and safe to share
/// between threads.
class Topology {
 public:
  /// Cycle on n >= 3 nodes; node i is adjacent to i-1 and i+1 (mod n).
  static Topology cycle(std::size_t n);

  /// General graph on n nodes. Rejects out-of-range indices, self-loops,
  /// duplicate edges and disconnected graphs, each with its own error code.
  static Topology from_edge_list(std::size_t n, std::span<const Edge> edges);

  /// Six-node graph on which the {0,1}-valued process never converges:
  /// path 0-1-2-3, node 4 joined to {0,1}, node 5 joined to {2,3}.
  static Topology counterexample_graph();

  std::size_t size() const noexcept { return offsets_.size() - 1; }
  TopologyKind kind() const noexcept { return kind_; }
  bool is_cycle() const noexcept { return kind_ == TopologyKind::cycle; }

  std::span<const Node> neighbors(Node v) const;
  std::size_t degree(Node v) const { return neighbors(v).size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Degree-1 nodes. Allowed, but convergence may fail on such graphs.
  std::vector<Node> leaves() const;

  /// Short human-readable tag, e.g. "cycle:8" or "graph:6:7".
  std::string descriptor() const;

  bool same_adjacency(const Topology& other) const noexcept {
    return offsets_ == other.offsets_ && adjacency_ == other.adjacency_;
  }

 private:
  Topology(TopologyKind kind, std::vector<std::size_t> offsets,
           std::vector<Node> adjacency)
      : kind_(kind), offsets_(std::move(offsets)), adjacency_(std::move(adjacency)) {}

  TopologyKind kind_;
  std::vector<std::size_t> offsets_;  // CSR row offsets, size N+1
  std::vector<Node> adjacency_;
};

/// Edge-list text format: first line "N E", then E lines "u v", 1-based.
Topology read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Topology& topology);

}  // namespace jante
