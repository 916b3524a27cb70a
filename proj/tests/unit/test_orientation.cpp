#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "helpers.hpp"
#include "ramseyforge/digraph.hpp"
#include "ramseyforge/gallery.hpp"
#include "ramseyforge/orientation.hpp"

using namespace ramseyforge;

namespace {

Digraph digraph(int n, std::vector<std::pair<int, int>> arcs) {
  Digraph g(n);
  for (auto [u, v] : arcs) g.add_arc(u, v);
  return g;
}

// Every induced substructure of s, as fragment members.
ClassFragment closure_of(const Structure& s) {
  std::vector<Structure> members;
  for (int mask = 1; mask < (1 << s.size()); ++mask) {
    std::vector<int> subset;
    for (int v = 0; v < s.size(); ++v) {
      if ((mask >> v) & 1) subset.push_back(v);
    }
    members.push_back(induced(s, subset).structure);
  }
  return ClassFragment(s.signature(), s.size(), members);
}

Signature ef_sig() { return Signature({{"E", 2}, {"F", 2}}); }

}  // namespace

TEST_CASE("layered order examples") {
  CHECK(layered_order(digraph(3, {{0, 1}, {0, 2}, {1, 2}})) == std::vector<int>{0, 1, 2});
  CHECK(layered_order(digraph(3, {})) == std::vector<int>{0, 1, 2});
  try {
    layered_order(digraph(2, {{0, 1}, {1, 0}}));
    FAIL("expected a cycle");
  } catch (const CycleError& e) {
    CHECK(e.kind() == ErrorKind::CycleDetected);
    CHECK(e.cycle() == std::vector<int>{0, 1});
  }
  // Layers: {1, 3} then {0, 2}.
  CHECK(layered_order(digraph(4, {{3, 0}, {1, 2}})) == std::vector<int>{1, 3, 0, 2});
}

TEST_CASE("layered order respects every arc of random DAGs") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<int> hidden = oracle::identity(n);
    std::shuffle(hidden.begin(), hidden.end(), rng);
    Digraph g(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 2) g.add_arc(hidden[i], hidden[j]);
      }
    }
    auto order = layered_order(g);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (const auto& a : g.arcs()) CHECK(pos[a.from] < pos[a.to]);
  }
}

TEST_CASE("shortest cycle and path") {
  auto g = digraph(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 3}, {1, 4}});
  CHECK(shortest_cycle(g) == std::vector<int>{3, 4});
  CHECK(shortest_path(g, 0, 3) == std::vector<int>{0, 1, 4, 3});
  CHECK_FALSE(shortest_path(g, 3, 0));
  CHECK_FALSE(shortest_cycle(digraph(3, {{0, 1}, {1, 2}})));
  auto reach = reachability(g);
  CHECK(reach[0][0]);
  CHECK_FALSE(reach[3][0]);
}

TEST_CASE("orient_pair examples") {
  Structure lin(linorder_signature(), 2, {{{0, 1}}});
  CHECK(orient_pair(lin, 0, 1) == Arc{0, 1});
  CHECK(orient_pair(lin, 1, 0) == Arc{0, 1});
  CHECK(th::error_kind([] { orient_pair(th::pure_set(2), 0, 1); }) == ErrorKind::NonRigidPair);
  CHECK(orient_pair(th::cycle3(), 2, 0) == Arc{2, 0});
}

TEST_CASE("orientation is invariant under isomorphism") {
  auto frag = builtin_fragment("product", 4);
  for (const Structure* s : frag.all()) {
    for (int k = 0; k < 6; ++k) {
      auto perm = oracle::identity(s->size());
      for (int r = 0; r < k; ++r) std::next_permutation(perm.begin(), perm.end());
      auto t = relabel(*s, perm);
      for (int a = 0; a < s->size(); ++a) {
        for (int b = a + 1; b < s->size(); ++b) {
          auto arc = orient_pair(*s, a, b);
          CHECK(orient_pair(t, perm[a], perm[b]) == Arc{perm[arc.from], perm[arc.to]});
        }
      }
    }
  }
}

TEST_CASE("typed digraph examples") {
  PairTypeTable lin({canonical(Structure(linorder_signature(), 2, {{{0, 1}}})).relabeled});
  auto d = typed_digraph(chain(3), lin, {{Sign::Canonical}});
  CHECK(d.graph.arcs() == std::vector<Arc>{{0, 1}, {0, 2}, {1, 2}});
  auto r = typed_digraph(chain(3), lin, {{Sign::Reversed}});
  CHECK(r.graph.arcs() == std::vector<Arc>{{1, 0}, {2, 0}, {2, 1}});

  PairTypeTable arc_table({th::arc()});
  auto c = typed_digraph(th::cycle3(), arc_table, {{Sign::Canonical}});
  CHECK(shortest_cycle(c.graph) == std::vector<int>{0, 1, 2});
  CHECK(c.arcs.size() == 3);
}

TEST_CASE("pair type table requires rigid 2-element types") {
  CHECK(th::error_kind([] { PairTypeTable({th::pure_set(2)}); }) == ErrorKind::NonRigidPair);
  PairTypeTable t({th::arc()});
  CHECK(th::error_kind([&] { orient_pair(th::pure_set(2), 0, 1, t); }) ==
        ErrorKind::UnknownType);
  auto lenient = analyze_pairs(th::pure_set(2), t, true);
  REQUIRE(lenient.size() == 1);
  CHECK(lenient[0].type == -1);
}

TEST_CASE("find_type_cycle examples") {
  auto t = builtin_fragment("tournaments", 4);
  auto table = PairTypeTable::from_fragment(t);
  auto cyc = find_type_cycle(t, table, {{Sign::Canonical}});
  REQUIRE(cyc);
  CHECK(cyc->structure == canonical(th::cycle3()).relabeled);
  CHECK(cyc->cycle.size() == 3);
  auto lin = builtin_fragment("linorder", 5);
  CHECK_FALSE(find_type_cycle(lin, PairTypeTable::from_fragment(lin), {{Sign::Canonical}}));
  auto points = ClassFragment(th::arrow_sig(), 1, std::vector<Structure>{th::pure_set(1)});
  CHECK_FALSE(find_type_cycle(points, PairTypeTable(), {{Sign::Canonical}}));
}

TEST_CASE("classify_reachability examples") {
  // F-arcs x->z->y and an E pair {x, y}.
  Structure s(ef_sig(), 3, {{{0, 2}}, {{0, 1}, {1, 2}}});
  auto frag = closure_of(s);
  auto table = PairTypeTable::from_fragment(frag);
  REQUIRE(table.size() == 2);
  CHECK(table[0].tuple_count(1) == 1);  // the F pair sorts first
  auto r = classify_reachability(frag, table, {{Sign::Canonical}}, 1);
  CHECK(r.kind == ReachabilityCase::Case2);
  CHECK(r.forced == Sign::Canonical);
  const Structure& rep = *frag.all()[r.rep_index];
  CHECK(orient_pair(rep, r.x, r.y) == Arc{r.x, r.y});

  auto perms = builtin_fragment("permutations", 4);
  auto ptable = PairTypeTable::from_fragment(perms);
  CHECK(classify_reachability(perms, ptable, {{Sign::Canonical}}, 1).kind ==
        ReachabilityCase::Case3);

  // F-cycle 0->1->2->3->0 with E pairs across it.
  Structure bad(ef_sig(), 4, {{{0, 2}, {1, 3}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}});
  auto bad_frag = closure_of(bad);
  auto bad_table = PairTypeTable::from_fragment(bad_frag);
  CHECK(th::error_kind([&] {
          classify_reachability(bad_frag, bad_table, {{Sign::Canonical}}, 1);
        }) == ErrorKind::InternalCycleContradiction);
}

TEST_CASE("extend_assignment examples") {
  auto lin = builtin_fragment("linorder", 5);
  auto ltable = PairTypeTable::from_fragment(lin);
  auto ext = extend_assignment(lin, ltable, {});
  auto* asg = std::get_if<OrientationAssignment>(&ext.result);
  REQUIRE(asg);
  CHECK(asg->signs == std::vector<Sign>{Sign::Canonical});

  auto perms = builtin_fragment("permutations", 4);
  auto ptable = PairTypeTable::from_fragment(perms);
  auto step = extend_assignment(perms, ptable, {{Sign::Canonical}});
  CHECK(step.step.how == "case3");
  auto* next = std::get_if<OrientationAssignment>(&step.result);
  REQUIRE(next);
  CHECK(next->signs == std::vector<Sign>{Sign::Canonical, Sign::Canonical});
  // E_2 is the first component order on every representative.
  for (const Structure* s : perms.all()) {
    auto d = typed_digraph(*s, ptable, *next);
    for (const auto& a : d.arcs) CHECK(s->holds(0, std::vector<int>{a.from, a.to}));
  }
}

TEST_CASE("decide examples") {
  auto lin = decide(builtin_fragment("linorder", 5));
  CHECK(std::holds_alternative<OrderReduct>(lin.result));
  CHECK(lin.bound == 5);

  auto t = decide(builtin_fragment("tournaments", 4));
  auto* w = std::get_if<FailureWitness>(&t.result);
  REQUIRE(w);
  CHECK(w->a == th::arc());
  CHECK(w->b == canonical(th::cycle3()).relabeled);
  CHECK(w->origin == "type-cycle");
  CHECK_FALSE(t.fully_rigid);

  auto p = decide(builtin_fragment("product", 3));
  auto* pw = std::get_if<FailureWitness>(&p.result);
  REQUIRE(pw);
  CHECK(pw->a.size() == 2);
  CHECK(pw->b.size() == 3);
  CHECK(automorphisms(pw->b).size() == 1);
  CHECK(shortest_cycle(typed_digraph(pw->b, PairTypeTable({pw->a}), {{Sign::Canonical}}).graph));

  CHECK(th::error_kind([] { decide(builtin_fragment("corder", 4)); }) == ErrorKind::NotRigid);
  auto cyc_only = ClassFragment(th::arrow_sig(), 3, std::vector<Structure>{th::cycle3()});
  CHECK(th::error_kind([&] { decide(cyc_only); }) == ErrorKind::NotHereditary);
}

TEST_CASE("order reducts are compatible with embeddings and reverse under flipped signs") {
  for (auto [name, bound] : {std::pair{"linorder", 5}, std::pair{"permutations", 4}}) {
    auto frag = builtin_fragment(name, bound);
    auto outcome = decide(frag);
    auto* r = std::get_if<OrderReduct>(&outcome.result);
    REQUIRE(r);
    auto table = PairTypeTable::from_fragment(frag);
    auto reps = frag.all();
    auto flipped = reversed(r->assignment);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      auto d = typed_digraph(*reps[i], table, r->assignment);
      const int n = reps[i]->size();
      CHECK(d.arcs.size() == static_cast<std::size_t>(n * (n - 1) / 2));
      CHECK(layered_order(d.graph) == r->orders[i]);
      auto rev = layered_order(typed_digraph(*reps[i], table, flipped).graph);
      CHECK(std::vector<int>(rev.rbegin(), rev.rend()) == r->orders[i]);
    }
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = 0; j < reps.size(); ++j) {
        if (reps[i]->size() >= reps[j]->size()) continue;
        std::vector<int> pos(reps[j]->size());
        for (int k = 0; k < reps[j]->size(); ++k) pos[r->orders[j][k]] = k;
        for (const auto& e : embeddings(*reps[i], *reps[j])) {
          for (int k = 0; k + 1 < reps[i]->size(); ++k) {
            CHECK(pos[e.map[r->orders[i][k]]] < pos[e.map[r->orders[i][k + 1]]]);
          }
        }
      }
    }
  }
}

TEST_CASE("sign and rule names round trip") {
  CHECK(parse_sign(to_string(Sign::Reversed)) == Sign::Reversed);
  CHECK(parse_rule(to_string(RuleKind::LayeredOrder)) == RuleKind::LayeredOrder);
  CHECK_FALSE(parse_sign("sideways"));
  CHECK(flip(Sign::Canonical) == Sign::Reversed);
}
