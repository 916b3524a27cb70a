#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ramseyforge/morphism.hpp"
#include "ramseyforge/orientation.hpp"
#include "ramseyforge/structure.hpp"

namespace ramseyforge {

enum class Color : unsigned char { Red, Blue };

// Red/blue colouring of the copies of a rigid 2-element structure A in a
// base structure, indexed by the 2-subsets that induce A's type. Since A is
// rigid its embeddings and these subsets correspond one to one.
struct PairColoring {
  Structure base;
  Structure colored_type;
  std::vector<std::pair<int, int>> pairs;  // x < y, lexicographic
  std::vector<Color> colors;

  std::optional<Color> color_of(int x, int y) const;
  PairColoring swapped() const;
};

// 2-subsets {x < y} of c inducing a structure isomorphic to a.
std::vector<std::pair<int, int>> type_pairs(const Structure& c, const Structure& a);

// A pair whose arc x->y (canonical, flipped for Sign::Reversed) has x before
// y in `order` is red, otherwise blue. Throws NonRigidPair if a is not rigid.
PairColoring coloring_from_order(const Structure& c, std::span<const int> order,
                                 const Structure& a, Sign sign = Sign::Canonical);
PairColoring coloring_from_order(const Structure& c, std::span<const int> order,
                                 const PairTypeTable& table, const OrientationAssignment& asg,
                                 int type_index);

// Lex-least embedding b -> c whose A-copies all share one colour.
std::optional<Embedding> find_monochromatic(const Structure& a, const Structure& b,
                                            const Structure& c, const PairColoring& coloring);

// The colouring the rule produces on c. Throws RuleInapplicable when the
// rule's digraph is cyclic on c.
PairColoring rule_coloring(const Structure& a, const Structure& c, const ColoringRule& rule);

struct WitnessCheck {
  bool verified = false;  // no monochromatic copy of b under the rule
  PairColoring coloring;
  std::optional<Embedding> monochromatic;
  std::size_t copies = 0;  // embeddings of b into c
};

WitnessCheck verify_failure_witness(const Structure& a, const Structure& b, const Structure& c,
                                    const ColoringRule& rule);

struct WitnessStatus {
  // True iff every colouring of the A-copies in c has a monochromatic b-copy.
  bool is_witness = false;
  // Lex-least defeating colouring (red < blue, pairs in lexicographic order).
  std::optional<PairColoring> defeating;
  std::size_t colored_pairs = 0;
  std::size_t copies = 0;  // distinct images of b
};

inline constexpr int kDefaultPairLimit = 20;

// Exhaustive search over all 2^m colourings. Throws SearchSpaceTooLarge when
// the number m of A-copies exceeds pair_limit.
WitnessStatus exhaustive_witness_check(const Structure& a, const Structure& b, const Structure& c,
                                       int pair_limit = kDefaultPairLimit);

}  // namespace ramseyforge
