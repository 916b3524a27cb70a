#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ramseyforge/morphism.hpp"
#include "ramseyforge/structure.hpp"

namespace ramseyforge {

// Isomorphism-type representatives of a hereditary class, for every size up
// to `bound`. Representatives are canonical forms sorted by serialization.
class ClassFragment {
 public:
  // Canonicalizes and deduplicates `members`; members larger than `bound`
  // are dropped.
  ClassFragment(Signature sig, int bound, std::span<const Structure> members);

  const Signature& signature() const noexcept { return sig_; }
  int bound() const noexcept { return bound_; }

  // Representatives of size n; empty for n outside 1..bound.
  std::span<const Structure> reps(int n) const;
  // All representatives, by size then serialization.
  std::vector<const Structure*> all() const;
  std::size_t total() const;

  // True if some representative is isomorphic to s.
  bool contains_isomorphic(const Structure& s) const;

 private:
  Signature sig_;
  int bound_;
  std::vector<std::vector<Structure>> by_size_;
  std::vector<std::set<Structure>> lookup_;
};

// Throws BoundExceeded when n > frag.bound().
std::vector<Structure> iso_types(const ClassFragment& frag, int n);

enum class Property { Hereditary, Jep, Amalgamation, StrongAmalgamation, Rigid };

std::string_view to_string(Property p);
std::optional<Property> parse_property(std::string_view name);

// Counterexample data. Layout by property:
//   hereditary: structures {S}, maps {subset}
//   jep:        structures {B1, B2}
//   amalgamation (both kinds): structures {A, B1, B2}, maps {f1, f2}
//   rigid:      structures {S}, maps {non-identity automorphism}
struct PropertyWitness {
  std::vector<Structure> structures;
  std::vector<std::vector<int>> maps;
  std::string description;
};

struct PropertyReport {
  Property property;
  // Holds up to search_bound; a false value is certified by the witness.
  bool holds = true;
  std::optional<PropertyWitness> witness;
  int search_bound = 0;
  std::size_t instances_checked = 0;
};

PropertyReport check_hereditary(const ClassFragment& frag);
PropertyReport check_jep(const ClassFragment& frag);
// Instances use A, B1, B2 of size at most max_instance_size (defaults to the
// bound) with |B1| + |B2| - |A| <= bound.
PropertyReport check_amalgamation(const ClassFragment& frag, bool strong,
                                  std::optional<int> max_instance_size = std::nullopt);
PropertyReport check_rigidity(const ClassFragment& frag);

PropertyReport check_property(const ClassFragment& frag, Property p);

// Re-checks a failing report's witness by direct computation. Returns true
// for holding reports.
bool reverify(const ClassFragment& frag, const PropertyReport& report);

// A pair (g1, g2) completing the amalgamation diagram inside c, if any.
std::optional<std::pair<Embedding, Embedding>> find_amalgam_maps(
    const Structure& a, const Structure& b1, const Structure& b2, std::span<const int> f1,
    std::span<const int> f2, const Structure& c, bool strong);

}  // namespace ramseyforge
