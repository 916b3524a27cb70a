#include "ramseyforge/gallery.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ramseyforge/morphism.hpp"
#include "ramseyforge/parallel.hpp"

namespace ramseyforge {

Signature tournament_signature() { return Signature({{"arrow", 2}}); }
Signature corder_signature() { return Signature({{"C", 3}}); }
Signature product_signature() { return Signature({{"arrow", 2}, {"C", 3}}); }
Signature linorder_signature() { return Signature({{"lt", 2}}); }
Signature permutation_signature() { return Signature({{"lt1", 2}, {"lt2", 2}}); }

namespace {

void check_size(std::string_view what, int n, int max) {
  if (n < 1 || n > max) {
    throw Error(ErrorKind::BoundExceeded, std::string(what) + " supports sizes 1.." +
                                              std::to_string(max) + ", got " + std::to_string(n));
  }
}

std::vector<int> depths(const BinaryLeafTree& t) {
  std::vector<int> depth(t.parent.size(), -1);
  for (std::size_t v = 0; v < t.parent.size(); ++v) {
    int d = 0;
    for (int u = static_cast<int>(v); t.parent[u] >= 0; u = t.parent[u]) ++d;
    depth[v] = d;
  }
  return depth;
}

int lca(const BinaryLeafTree& t, const std::vector<int>& depth, int u, int v) {
  while (depth[u] > depth[v]) u = t.parent[u];
  while (depth[v] > depth[u]) v = t.parent[v];
  while (u != v) {
    u = t.parent[u];
    v = t.parent[v];
  }
  return u;
}

std::vector<std::pair<int, int>> arcs_of(const Structure& s) {
  std::vector<std::pair<int, int>> out;
  for (const auto& t : s.tuples(0)) out.emplace_back(t[0], t[1]);
  return out;
}

}  // namespace

bool BinaryLeafTree::valid() const {
  const int nodes = static_cast<int>(parent.size());
  if (leaves < 1 || nodes != 2 * leaves - 1) return false;
  std::vector<int> children(nodes, 0);
  int roots = 0;
  for (int v = 0; v < nodes; ++v) {
    if (parent[v] == -1) {
      ++roots;
    } else if (parent[v] < leaves || parent[v] >= nodes) {
      return false;
    } else {
      ++children[parent[v]];
    }
  }
  if (roots != 1) return false;
  for (int v = leaves; v < nodes; ++v) {
    if (children[v] != 2) return false;
  }
  // Every node reaches the root without revisiting.
  for (int v = 0; v < nodes; ++v) {
    int steps = 0;
    for (int u = v; parent[u] >= 0; u = parent[u]) {
      if (++steps > nodes) return false;
    }
  }
  return true;
}

std::vector<Tuple> BinaryLeafTree::c_relation() const {
  const auto depth = depths(*this);
  std::vector<Tuple> out;
  for (int x = 0; x < leaves; ++x) {
    for (int y = 0; y < leaves; ++y) {
      for (int z = 0; z < leaves; ++z) {
        if (x == y || y == z || x == z) continue;
        if (depth[lca(*this, depth, y, z)] > depth[lca(*this, depth, x, y)]) {
          out.push_back({x, y, z});
        }
      }
    }
  }
  return out;
}

Structure BinaryLeafTree::c_structure() const {
  return Structure(corder_signature(), leaves, {c_relation()});
}

std::vector<BinaryLeafTree> BinaryLeafTree::enumerate(int n) {
  if (n < 1) return {};
  std::vector<std::vector<int>> trees{std::vector<int>(2 * n - 1, -2)};
  trees[0][0] = -1;
  for (int k = 1; k < n; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& parent : trees) {
      // Existing nodes: leaves 0..k-1 and internals n..n+k-2.
      std::vector<int> nodes(k);
      std::iota(nodes.begin(), nodes.end(), 0);
      for (int w = n; w < n + k - 1; ++w) nodes.push_back(w);
      for (int u : nodes) {
        auto p = parent;
        const int w = n + k - 1;
        p[w] = p[u];
        p[u] = w;
        p[k] = w;
        next.push_back(std::move(p));
      }
    }
    trees = std::move(next);
  }
  std::vector<BinaryLeafTree> out;
  out.reserve(trees.size());
  for (auto& p : trees) out.push_back({n, std::move(p)});
  return out;
}

Structure tournament(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<Tuple> tuples;
  for (auto [u, v] : arcs) tuples.push_back({u, v});
  return Structure(tournament_signature(), n, {tuples});
}

Structure chain(int n) {
  std::vector<Tuple> tuples;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) tuples.push_back({i, j});
  }
  return Structure(linorder_signature(), n, {tuples});
}

std::vector<Structure> gen_tournaments(int n) {
  check_size("tournaments", n, 6);
  if (n == 1) return {tournament(1, {})};
  // Every n-tournament extends some (n-1)-type by one vertex.
  std::vector<Structure> candidates;
  for (const auto& base : gen_tournaments(n - 1)) {
    const auto arcs = arcs_of(base);
    const int v = n - 1;
    for (int pattern = 0; pattern < (1 << v); ++pattern) {
      auto extended = arcs;
      for (int u = 0; u < v; ++u) {
        if ((pattern >> u) & 1) {
          extended.emplace_back(v, u);
        } else {
          extended.emplace_back(u, v);
        }
      }
      candidates.push_back(tournament(n, extended));
    }
  }
  return distinct_up_to_isomorphism(candidates);
}

std::vector<Structure> gen_c_structures(int n) {
  check_size("C-structures", n, 7);
  std::set<std::vector<Tuple>> relations;
  for (const auto& t : BinaryLeafTree::enumerate(n)) relations.insert(t.c_relation());
  std::vector<Structure> candidates;
  candidates.reserve(relations.size());
  for (const auto& rel : relations) candidates.emplace_back(corder_signature(), n, TupleSets{rel});
  return distinct_up_to_isomorphism(candidates);
}

std::vector<Structure> gen_products(int n) {
  check_size("products", n, 5);
  // Every product is isomorphic to one whose C-part is a C-type
  // representative; pair those with every labelled tournament.
  std::vector<Structure> candidates;
  const int pairs = n * (n - 1) / 2;
  for (const auto& c_rep : gen_c_structures(n)) {
    const auto c_tuples = c_rep.tuples(0);
    for (int pattern = 0; pattern < (1 << pairs); ++pattern) {
      std::vector<Tuple> arrows;
      int bit = 0;
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++bit) {
          if ((pattern >> bit) & 1) {
            arrows.push_back({v, u});
          } else {
            arrows.push_back({u, v});
          }
        }
      }
      candidates.emplace_back(product_signature(), n, TupleSets{arrows, c_tuples});
    }
  }
  return distinct_up_to_isomorphism(candidates);
}

std::vector<Structure> gen_linear_orders(int n) {
  check_size("linear orders", n, 7);
  return {canonical(chain(n)).relabeled};
}

std::vector<Structure> gen_permutations(int n) {
  check_size("permutations", n, 5);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Structure> candidates;
  do {
    std::vector<Tuple> first;
    std::vector<Tuple> second;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        first.push_back({i, j});
        second.push_back({perm[i], perm[j]});
      }
    }
    candidates.emplace_back(permutation_signature(), n, TupleSets{first, second});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return distinct_up_to_isomorphism(candidates);
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"tournaments", "corder", "product", "linorder",
                                              "permutations"};
  return names;
}

ClassFragment builtin_fragment(std::string_view name, int max_size) {
  if (name.rfind("builtin:", 0) == 0) name.remove_prefix(8);
  std::vector<Structure> (*gen)(int) = nullptr;
  Signature sig;
  if (name == "tournaments") {
    gen = gen_tournaments;
    sig = tournament_signature();
  } else if (name == "corder") {
    gen = gen_c_structures;
    sig = corder_signature();
  } else if (name == "product") {
    gen = gen_products;
    sig = product_signature();
  } else if (name == "linorder") {
    gen = gen_linear_orders;
    sig = linorder_signature();
  } else if (name == "permutations") {
    gen = gen_permutations;
    sig = permutation_signature();
  } else {
    throw Error(ErrorKind::ParseError, "unknown builtin class '" + std::string(name) + "'");
  }
  std::vector<Structure> members;
  for (int n = 1; n <= max_size; ++n) {
    auto reps = gen(n);
    members.insert(members.end(), reps.begin(), reps.end());
  }
  return ClassFragment(sig, max_size, members);
}

DemoReport demo_section3(int max_size) {
  check_size("demo section3", max_size, 5);
  const auto triples = gen_products(3);
  auto is_cyclic = [](const Structure& s) {
    // A 3-tournament is cyclic iff every vertex has out-degree 1.
    std::vector<int> out(3, 0);
    for (const auto& t : s.tuples(0)) ++out[t[0]];
    return out == std::vector<int>{1, 1, 1};
  };
  DemoReport report{gen_products(2).front(),
                    *std::find_if(triples.begin(), triples.end(), is_cyclic), max_size, {}, false};

  std::vector<Structure> all;
  for (int n = 1; n <= max_size; ++n) {
    auto reps = gen_products(n);
    all.insert(all.end(), reps.begin(), reps.end());
  }
  std::vector<std::pair<std::size_t, std::size_t>> counts(all.size());
  parallel_for(all.size(), [&](std::size_t i) {
    for (const auto& e : embeddings(report.b, all[i])) {
      ++counts[i].first;
      // Arc u->v is red iff u < v.
      int red = 0;
      for (const auto& t : report.b.tuples(0)) {
        if (e.map[t[0]] < e.map[t[1]]) ++red;
      }
      if (red == 0 || red == 3) ++counts[i].second;
    }
  });
  for (std::size_t i = 0; i < all.size(); ++i) {
    report.entries.push_back({all[i], counts[i].first, counts[i].second});
  }
  report.verified = std::all_of(report.entries.begin(), report.entries.end(),
                                [](const DemoEntry& e) { return e.monochromatic == 0; });
  return report;
}

}  // namespace ramseyforge
