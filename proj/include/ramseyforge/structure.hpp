#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramseyforge/error.hpp"

namespace ramseyforge {

struct Relation {
  std::string name;
  int arity = 0;

  bool operator==(const Relation&) const = default;
};

// Finite relational language. Relation order is significant: it fixes the
// serialization order of structures.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Relation> relations);

  const std::vector<Relation>& relations() const noexcept { return relations_; }
  std::size_t size() const noexcept { return relations_.size(); }
  const Relation& operator[](std::size_t i) const { return relations_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Relation> relations_;
};

using Tuple = std::vector<int>;
// perm[v] is the image of element v.
using Permutation = std::vector<int>;
// One tuple list per relation, in signature order.
using TupleSets = std::vector<std::vector<Tuple>>;

struct ValidationError {
  ErrorKind kind;
  std::string relation;
  Tuple tuple;
  std::string message;
};

std::optional<ValidationError> validate(const Signature& sig, int size,
                                        const TupleSets& tuples);

// A finite structure on the universe {0..size-1}. Immutable once built; every
// instance satisfies the invariants checked by validate().
//
// Tuples of a k-ary relation are stored as base-n codes
// t[0]*n^(k-1) + ... + t[k-1]. For a fixed arity, numeric order of codes is
// lexicographic order of tuples, so the sorted code lists are the
// serialization.
class Structure {
 public:
  Structure(Signature sig, int size, const TupleSets& tuples);

  // Builds from already encoded tuples; codes need not be sorted.
  static Structure from_codes(Signature sig, int size,
                              std::vector<std::vector<std::uint32_t>> codes);

  const Signature& signature() const noexcept { return sig_; }
  int size() const noexcept { return size_; }

  std::span<const std::uint32_t> codes(std::size_t rel) const {
    return codes_[rel];
  }
  std::vector<Tuple> tuples(std::size_t rel) const;
  std::size_t tuple_count(std::size_t rel) const { return codes_[rel].size(); }

  std::uint32_t encode(std::span<const int> tuple) const;
  Tuple decode(std::size_t rel, std::uint32_t code) const;

  bool holds(std::size_t rel, std::span<const int> tuple) const {
    return holds_code(rel, encode(tuple));
  }
  bool holds_code(std::size_t rel, std::uint32_t code) const;

  // Flat integer sequence: for each relation in signature order, the tuple
  // count followed by the tuples in lexicographic order.
  std::vector<int> serialize() const;

  bool operator==(const Structure& other) const;
  // Orders by size, then by serialization. Only meaningful for a common
  // signature.
  std::strong_ordering operator<=>(const Structure& other) const;

 private:
  Structure(Signature sig, int size);
  void build_index();

  Signature sig_;
  int size_ = 0;
  std::vector<std::vector<std::uint32_t>> codes_;
  // Dense membership bitmaps, present when n^k is small enough.
  std::vector<std::vector<std::uint8_t>> dense_;
};

struct InducedSubstructure {
  Structure structure;
  // element_map[i] is the element of the parent that became element i.
  std::vector<int> element_map;
};

InducedSubstructure induced(const Structure& s, std::span<const int> subset);

// Relabels every element v as perm[v].
Structure relabel(const Structure& s, std::span<const int> perm);

bool is_permutation_of(std::span<const int> perm, int n);

}  // namespace ramseyforge
