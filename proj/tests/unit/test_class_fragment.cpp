#include <doctest.h>

#include "helpers.hpp"
#include "ramseyforge/class_fragment.hpp"
#include "ramseyforge/gallery.hpp"

using namespace ramseyforge;

namespace {

ClassFragment fragment_of(const Signature& sig, int bound, std::vector<Structure> members) {
  return ClassFragment(sig, bound, members);
}

}  // namespace

TEST_CASE("iso_types examples") {
  auto t = builtin_fragment("tournaments", 4);
  CHECK(iso_types(t, 2).size() == 1);
  CHECK(iso_types(t, 3).size() == 2);
  CHECK(iso_types(t, 3) == iso_types(t, 3));
  CHECK(iso_types(builtin_fragment("linorder", 4), 3).size() == 1);
  CHECK(th::error_kind([&] { iso_types(t, 5); }) == ErrorKind::BoundExceeded);
}

TEST_CASE("fragment canonicalizes and deduplicates members") {
  auto frag = fragment_of(th::arrow_sig(), 3,
                          {th::cycle3(), th::arcs(3, {{1, 2}, {2, 0}, {0, 1}}),
                           th::arcs(3, {{1, 0}, {2, 1}, {0, 2}}), th::arc()});
  CHECK(frag.reps(3).size() == 1);
  CHECK(frag.total() == 2);
  CHECK(frag.contains_isomorphic(th::arcs(2, {{1, 0}})));
  CHECK_FALSE(frag.contains_isomorphic(th::transitive3()));
}

TEST_CASE("hereditary examples") {
  CHECK(check_hereditary(builtin_fragment("tournaments", 4)).holds);
  auto bad = fragment_of(th::arrow_sig(), 3, {th::cycle3()});
  auto report = check_hereditary(bad);
  CHECK_FALSE(report.holds);
  REQUIRE(report.witness);
  CHECK(report.witness->maps.front() == std::vector<int>{0, 1});
  CHECK(reverify(bad, report));
  CHECK(check_hereditary(fragment_of(th::arrow_sig(), 1, {th::pure_set(1)})).holds);
}

TEST_CASE("jep examples") {
  CHECK(check_jep(builtin_fragment("tournaments", 4)).holds);
  CHECK(check_jep(builtin_fragment("linorder", 5)).holds);
  Signature sig({{"U", 1}});
  auto two_points = fragment_of(sig, 2, {Structure(sig, 1, {{}}), Structure(sig, 1, {{{0}}})});
  auto report = check_jep(two_points);
  CHECK_FALSE(report.holds);
  CHECK(reverify(two_points, report));
}

TEST_CASE("amalgamation examples") {
  auto tournaments = builtin_fragment("tournaments", 5);
  auto strong = check_amalgamation(tournaments, true, 3);
  CHECK(strong.holds);
  CHECK(strong.instances_checked > 0);
  CHECK(check_amalgamation(builtin_fragment("linorder", 3), false).holds);
  CHECK(check_amalgamation(builtin_fragment("linorder", 3), true).holds);

  // Two 2-element types and no 3-element structures.
  Signature sig({{"E", 2}});
  auto sparse = fragment_of(sig, 3,
                            {Structure(sig, 1, {{}}), Structure(sig, 2, {{}}),
                             Structure(sig, 2, {{{0, 1}}})});
  auto report = check_amalgamation(sparse, false);
  CHECK_FALSE(report.holds);
  REQUIRE(report.witness);
  CHECK(report.witness->structures.size() == 3);
  CHECK(reverify(sparse, report));
}

TEST_CASE("rigidity examples") {
  CHECK(check_rigidity(builtin_fragment("product", 4)).holds);
  auto t = check_rigidity(builtin_fragment("tournaments", 3));
  CHECK_FALSE(t.holds);
  REQUIRE(t.witness);
  CHECK(t.witness->structures.front() == canonical(th::cycle3()).relabeled);
  CHECK(t.witness->maps.front().size() == 3);
  auto pure = fragment_of(th::arrow_sig(), 2, {th::pure_set(1), th::pure_set(2)});
  auto p = check_rigidity(pure);
  CHECK_FALSE(p.holds);
  REQUIRE(p.witness);
  CHECK(p.witness->structures.front().size() == 2);
  CHECK(p.witness->maps.front() == std::vector<int>{1, 0});
  CHECK(reverify(pure, p));
}

TEST_CASE("property names round trip") {
  for (auto p : {Property::Hereditary, Property::Jep, Property::Amalgamation,
                 Property::StrongAmalgamation, Property::Rigid}) {
    CHECK(parse_property(to_string(p)) == p);
  }
  CHECK(parse_property("strong-amalgamation") == Property::StrongAmalgamation);
  CHECK_FALSE(parse_property("ramsey"));
}

TEST_CASE("two-subsets of hereditary fragments partition into 2-types") {
  for (const char* name : {"tournaments", "product", "permutations", "corder"}) {
    auto frag = builtin_fragment(name, 4);
    auto types = iso_types(frag, 2);
    for (const Structure* s : frag.all()) {
      for (int x = 0; x < s->size(); ++x) {
        for (int y = x + 1; y < s->size(); ++y) {
          const int pair[] = {x, y};
          auto sub = canonical(induced(*s, pair).structure).relabeled;
          CHECK(std::count(types.begin(), types.end(), sub) == 1);
        }
      }
    }
  }
}
