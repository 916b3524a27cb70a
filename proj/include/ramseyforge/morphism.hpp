#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ramseyforge/structure.hpp"

namespace ramseyforge {

// An injective map from the source universe into the target universe that
// preserves and reflects every relation. Source and target are implied by
// the call that produced it.
struct Embedding {
  std::vector<int> map;

  bool operator==(const Embedding&) const = default;
  auto operator<=>(const Embedding&) const = default;
};

struct EmbeddingConstraints {
  // fixed[i] >= 0 pins source element i to that target element.
  std::vector<int> fixed;
  // forbidden[v] excludes target v for every unpinned source element.
  std::vector<bool> forbidden;
};

// Visits embeddings in lexicographic order of the map until the visitor
// returns false. Throws SignatureMismatch.
void for_each_embedding(const Structure& source, const Structure& target,
                        const EmbeddingConstraints* constraints,
                        const std::function<bool(std::span<const int>)>& visit);

std::vector<Embedding> embeddings(const Structure& source, const Structure& target);
std::optional<Embedding> first_embedding(const Structure& source, const Structure& target,
                                         const EmbeddingConstraints* constraints = nullptr);
std::size_t count_embeddings(const Structure& source, const Structure& target);

// Direct check of the embedding condition, independent of the search.
bool is_embedding(const Structure& source, const Structure& target, std::span<const int> map);

// Lexicographically least isomorphism, if any.
std::optional<Embedding> isomorphism(const Structure& a, const Structure& b);

// The full automorphism group, identity first, in lexicographic order.
std::vector<Permutation> automorphisms(const Structure& s);
bool is_rigid(const Structure& s);

struct CanonicalForm {
  Structure relabeled;
  // witness[v] is the label of v in `relabeled`.
  Permutation witness;
};

// Lexicographically least relabeling under the serialization order.
CanonicalForm canonical(const Structure& s);

// Cheap isomorphism invariant used to bucket candidates before exact tests.
std::vector<int> invariant(const Structure& s);

// Canonical representatives of the isomorphism classes among `candidates`,
// sorted by serialization. All candidates must share one signature.
std::vector<Structure> distinct_up_to_isomorphism(std::span<const Structure> candidates);

}  // namespace ramseyforge
