#include "ramseyforge/digraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "ramseyforge/error.hpp"

namespace ramseyforge {

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (has_arc(u, v)) out.push_back({u, v});
    }
  }
  return out;
}

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

std::vector<int> bfs_distances(const Digraph& g, int from) {
  std::vector<int> dist(g.size(), kUnreached);
  std::deque<int> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < g.size(); ++v) {
      if (g.has_arc(u, v) && dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

// Depth-limited search for the lex-least cycle of exactly `length` arcs
// through `start`, using only vertices above `start`.
bool cycle_from(const Digraph& g, int start, int length, std::vector<int>& path,
                std::vector<char>& on_path) {
  const int u = path.back();
  if (static_cast<int>(path.size()) == length) return g.has_arc(u, start);
  for (int v = start + 1; v < g.size(); ++v) {
    if (!g.has_arc(u, v) || on_path[v]) continue;
    path.push_back(v);
    on_path[v] = 1;
    if (cycle_from(g, start, length, path, on_path)) return true;
    on_path[v] = 0;
    path.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> shortest_cycle(const Digraph& g) {
  int girth = kUnreached;
  for (int v = 0; v < g.size(); ++v) {
    if (g.has_arc(v, v)) return std::vector<int>{v};
    const auto dist = bfs_distances(g, v);
    for (int u = 0; u < g.size(); ++u) {
      if (u != v && g.has_arc(u, v) && dist[u] != kUnreached) {
        girth = std::min(girth, dist[u] + 1);
      }
    }
  }
  if (girth == kUnreached) return std::nullopt;
  for (int start = 0; start < g.size(); ++start) {
    std::vector<int> path{start};
    std::vector<char> on_path(g.size(), 0);
    on_path[start] = 1;
    if (cycle_from(g, start, girth, path, on_path)) return path;
  }
  return std::nullopt;
}

std::optional<std::vector<int>> shortest_path(const Digraph& g, int from, int to) {
  // BFS from the target on reversed arcs, then walk forward greedily.
  std::vector<int> dist(g.size(), kUnreached);
  std::deque<int> queue{to};
  dist[to] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u = 0; u < g.size(); ++u) {
      if (g.has_arc(u, v) && dist[u] == kUnreached) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  if (dist[from] == kUnreached) return std::nullopt;
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    for (int v = 0; v < g.size(); ++v) {
      if (g.has_arc(cur, v) && dist[v] == dist[cur] - 1) {
        cur = v;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

std::vector<std::vector<char>> reachability(const Digraph& g) {
  const int n = g.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) reach[u][v] = g.has_arc(u, v) ? 1 : 0;
  }
  for (int k = 0; k < n; ++k) {
    for (int u = 0; u < n; ++u) {
      if (!reach[u][k]) continue;
      for (int v = 0; v < n; ++v) {
        if (reach[k][v]) reach[u][v] = 1;
      }
    }
  }
  return reach;
}

std::vector<int> layered_order(const Digraph& g) {
  const int n = g.size();
  std::vector<int> indegree(n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) indegree[v] += g.has_arc(u, v) ? 1 : 0;
  }
  std::vector<char> removed(n, 0);
  std::vector<int> order;
  order.reserve(n);
  while (static_cast<int>(order.size()) < n) {
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
      if (!removed[v] && indegree[v] == 0) layer.push_back(v);
    }
    if (layer.empty()) {
      auto cycle = shortest_cycle(g);
      throw CycleError(cycle.value_or(std::vector<int>{}), "digraph has a directed cycle");
    }
    for (int u : layer) {
      removed[u] = 1;
      order.push_back(u);
      for (int v = 0; v < n; ++v) indegree[v] -= g.has_arc(u, v) ? 1 : 0;
    }
  }
  return order;
}

}  // namespace ramseyforge
