#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ramseyforge/class_fragment.hpp"
#include "ramseyforge/digraph.hpp"
#include "ramseyforge/structure.hpp"

namespace ramseyforge {

enum class Sign { Canonical, Reversed };

std::string_view to_string(Sign s);
std::optional<Sign> parse_sign(std::string_view text);
inline Sign flip(Sign s) { return s == Sign::Canonical ? Sign::Reversed : Sign::Canonical; }

// Canonical 2-element representatives A_0..A_{s-1}, in ascending
// serialization. Each must be rigid so that its pairs can be oriented.
class PairTypeTable {
 public:
  PairTypeTable() = default;
  // Throws NonRigidPair if a type is not rigid.
  explicit PairTypeTable(std::vector<Structure> types);
  static PairTypeTable from_fragment(const ClassFragment& frag);

  const std::vector<Structure>& types() const noexcept { return types_; }
  std::size_t size() const noexcept { return types_.size(); }
  const Structure& operator[](std::size_t i) const { return types_[i]; }
  // Index of a canonical 2-element structure.
  std::optional<int> find(const Structure& canonical_pair) const;

 private:
  std::vector<Structure> types_;
  std::map<Structure, int> index_;
};

struct OrientedPair {
  int from = 0;
  int to = 0;
  // -1 when the pair's type is not in the table (lenient analysis only).
  int type = -1;
};

// Isomorphism-invariant direction of the pair {a, b}: compare the induced
// structures under the labelings a->0, b->1 and b->0, a->1; the arc starts at
// the element labeled 0 in the smaller one. Throws NonRigidPair on a tie.
Arc orient_pair(const Structure& s, int a, int b);
// Also resolves the pair's type index; throws UnknownType if absent.
OrientedPair orient_pair(const Structure& s, int a, int b, const PairTypeTable& table);

// All pairs x < y of s in lexicographic order with their canonical arcs.
// Strict analysis throws UnknownType/NonRigidPair; lenient analysis marks
// such pairs with type -1 instead.
std::vector<OrientedPair> analyze_pairs(const Structure& s, const PairTypeTable& table,
                                        bool lenient = false);

// Choice of D_i or its converse for types 0..prefix_length()-1.
struct OrientationAssignment {
  std::vector<Sign> signs;

  std::size_t prefix_length() const noexcept { return signs.size(); }
  bool operator==(const OrientationAssignment&) const = default;
};

OrientationAssignment reversed(const OrientationAssignment& asg);

struct TypedArc {
  int from = 0;
  int to = 0;
  int type = 0;

  bool operator==(const TypedArc&) const = default;
};

// E_prefix on one structure: one arc per pair whose type is below the
// assignment's prefix length.
struct TypedDigraph {
  Structure base;
  std::vector<TypedArc> arcs;
  Digraph graph;
};

TypedDigraph typed_digraph(const Structure& s, const PairTypeTable& table,
                           const OrientationAssignment& asg);

// Digraph from precomputed pairs. per_type[t] selects the sign for type t or
// excludes the type (nullopt); types beyond per_type are excluded.
Digraph oriented_digraph(int size, std::span<const OrientedPair> pairs,
                         std::span<const std::optional<Sign>> per_type);

struct TypeCycle {
  std::size_t rep_index = 0;  // position in frag.all()
  Structure structure;
  std::vector<int> cycle;
};

// First representative (by size, then serialization) whose E_prefix has a
// directed cycle, with a shortest cycle. Requires prefix_length >= 1.
std::optional<TypeCycle> find_type_cycle(const ClassFragment& frag, const PairTypeTable& table,
                                         const OrientationAssignment& asg);
// Same search over the digraph D_type alone, oriented canonically.
std::optional<TypeCycle> find_single_type_cycle(const ClassFragment& frag,
                                                const PairTypeTable& table, int type);

enum class ReachabilityCase { Case1, Case2, Case3 };

struct Reachability {
  ReachabilityCase kind = ReachabilityCase::Case3;
  // Case2 only: the sign making the next type's arc follow the path.
  Sign forced = Sign::Canonical;
  std::size_t rep_index = 0;
  int x = -1;
  int y = -1;
};

// Throws InternalCycleContradiction when a pair of the next type is joined by
// E_prefix paths in both directions.
Reachability classify_reachability(const ClassFragment& frag, const PairTypeTable& table,
                                   const OrientationAssignment& asg, int next_type);

enum class RuleKind { IndexOrder, LayeredOrder };

std::string_view to_string(RuleKind k);
std::optional<RuleKind> parse_rule(std::string_view text);

// How to colour the copies of A inside any C. IndexOrder uses ascending
// element index as the total order; LayeredOrder uses the layered order of
// the digraph built from prefix_types/prefix_signs on C. A pair of A's type
// is red iff its arc (canonical, flipped when colored_sign is Reversed)
// agrees with the order.
struct ColoringRule {
  RuleKind kind = RuleKind::IndexOrder;
  Sign colored_sign = Sign::Canonical;
  std::vector<Structure> prefix_types;
  std::vector<Sign> prefix_signs;
};

struct FailureWitness {
  Structure a;
  Structure b;
  int type_index = 0;
  // Cycles in B's labels. second_cycle is empty for single-cycle witnesses.
  std::vector<int> cycle;
  std::vector<int> second_cycle;
  ColoringRule rule;
  std::string origin;  // "type-cycle" or "double-cycle"
};

struct Inconclusive {
  std::string reason;
};

struct StepRecord {
  int type = 0;
  std::string how;  // "initial", "case2", "case3"
  Sign sign = Sign::Canonical;
};

struct ExtensionResult {
  std::variant<OrientationAssignment, FailureWitness, Inconclusive> result;
  StepRecord step;
};

// One inductive step: orient type asg.prefix_length(). Precondition: E_prefix
// acyclic on every representative.
ExtensionResult extend_assignment(const ClassFragment& frag, const PairTypeTable& table,
                                  const OrientationAssignment& asg);

struct OrderReduct {
  OrientationAssignment assignment;
  // Parallel to frag.all(): the induced total order of each representative.
  std::vector<std::vector<int>> orders;
};

struct DecisionOutcome {
  int bound = 0;
  std::vector<Structure> type_order;
  bool fully_rigid = true;
  std::vector<StepRecord> steps;
  std::variant<OrderReduct, FailureWitness, Inconclusive> result;
};

// Throws NotHereditary, or NotRigid when some 2-element type is not rigid.
DecisionOutcome decide(const ClassFragment& frag);

}  // namespace ramseyforge
