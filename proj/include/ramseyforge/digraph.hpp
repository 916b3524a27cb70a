#pragma once

#include <optional>
#include <vector>

namespace ramseyforge {

struct Arc {
  int from = 0;
  int to = 0;

  bool operator==(const Arc&) const = default;
  auto operator<=>(const Arc&) const = default;
};

// Simple digraph on {0..n-1} backed by an adjacency matrix.
class Digraph {
 public:
  explicit Digraph(int n = 0) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const noexcept { return n_; }
  void add_arc(int from, int to) { adj_[index(from, to)] = 1; }
  bool has_arc(int from, int to) const { return adj_[index(from, to)] != 0; }
  std::vector<Arc> arcs() const;

 private:
  std::size_t index(int from, int to) const {
    return static_cast<std::size_t>(from) * n_ + static_cast<std::size_t>(to);
  }

  int n_;
  std::vector<char> adj_;
};

// A shortest directed cycle, as its vertex sequence starting from its least
// vertex; among shortest cycles the lexicographically least sequence.
std::optional<std::vector<int>> shortest_cycle(const Digraph& g);

// Vertices of a shortest path from -> to (inclusive), preferring lower
// vertex indices on ties.
std::optional<std::vector<int>> shortest_path(const Digraph& g, int from, int to);

// reach[u][v] != 0 iff there is a nonempty directed path u -> v.
std::vector<std::vector<char>> reachability(const Digraph& g);

// Layered topological order: repeatedly remove every vertex with no incoming
// arc, emitting each layer in ascending index. Throws CycleError (with a
// shortest cycle) when g has a directed cycle.
std::vector<int> layered_order(const Digraph& g);

}  // namespace ramseyforge
