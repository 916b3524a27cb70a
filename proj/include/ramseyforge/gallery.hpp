#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ramseyforge/class_fragment.hpp"
#include "ramseyforge/structure.hpp"

namespace ramseyforge {

Signature tournament_signature();   // arrow:2
Signature corder_signature();       // C:3
Signature product_signature();      // arrow:2, C:3
Signature linorder_signature();     // lt:2
Signature permutation_signature();  // lt1:2, lt2:2

// Rooted tree whose leaves are 0..leaves-1 and whose internal nodes (ids
// leaves, leaves+1, ...) have exactly two children. parent[root] == -1.
struct BinaryLeafTree {
  int leaves = 1;
  std::vector<int> parent;

  bool valid() const;
  // Ordered triples (x, y, z) such that x splits off first on the root
  // paths, i.e. R(x | yz); both (x, y, z) and (x, z, y) are listed.
  std::vector<Tuple> c_relation() const;
  Structure c_structure() const;

  // Every leaf-labelled tree on n leaves, (2n-3)!! of them for n >= 2.
  static std::vector<BinaryLeafTree> enumerate(int n);
};

// Each returns canonical representatives of all isomorphism types of the
// given size, sorted by serialization. Throws BoundExceeded beyond the
// supported size.
std::vector<Structure> gen_tournaments(int n);     // 1 <= n <= 6
std::vector<Structure> gen_c_structures(int n);    // 1 <= n <= 7
std::vector<Structure> gen_products(int n);        // 1 <= n <= 5
std::vector<Structure> gen_linear_orders(int n);   // 1 <= n <= 7
std::vector<Structure> gen_permutations(int n);    // 1 <= n <= 5

Structure tournament(int n, const std::vector<std::pair<int, int>>& arcs);
Structure chain(int n);

const std::vector<std::string>& builtin_names();
// Fragment of sizes 1..max_size. name is one of builtin_names(), with or
// without a "builtin:" prefix.
ClassFragment builtin_fragment(std::string_view name, int max_size);

struct DemoEntry {
  Structure c;
  std::size_t copies = 0;         // embeddings of B into C
  std::size_t monochromatic = 0;  // copies that are monochromatic
};

struct DemoReport {
  Structure a;  // the unique 2-element product structure
  Structure b;  // the product structure whose tournament is a 3-cycle
  int max_size = 0;
  std::vector<DemoEntry> entries;
  bool verified = false;  // no entry has a monochromatic copy
};

// Colours every arc u->v of each product structure C (up to max_size <= 5)
// red if u < v and blue otherwise, and counts monochromatic copies of B.
DemoReport demo_section3(int max_size);

}  // namespace ramseyforge
