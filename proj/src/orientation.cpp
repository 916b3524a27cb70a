#include "ramseyforge/orientation.hpp"

#include <algorithm>
#include <set>

#include "ramseyforge/morphism.hpp"
#include "ramseyforge/parallel.hpp"

namespace ramseyforge {

std::string_view to_string(Sign s) { return s == Sign::Canonical ? "canonical" : "reversed"; }

std::optional<Sign> parse_sign(std::string_view text) {
  if (text == "canonical") return Sign::Canonical;
  if (text == "reversed") return Sign::Reversed;
  return std::nullopt;
}

std::string_view to_string(RuleKind k) {
  return k == RuleKind::IndexOrder ? "index-order" : "layered-order";
}

std::optional<RuleKind> parse_rule(std::string_view text) {
  if (text == "index-order") return RuleKind::IndexOrder;
  if (text == "layered-order") return RuleKind::LayeredOrder;
  return std::nullopt;
}

PairTypeTable::PairTypeTable(std::vector<Structure> types) : types_(std::move(types)) {
  std::sort(types_.begin(), types_.end());
  for (std::size_t i = 0; i < types_.size(); ++i) {
    if (types_[i].size() != 2) {
      throw Error(ErrorKind::UnknownType, "pair types must have two elements");
    }
    if (!is_rigid(types_[i])) {
      throw Error(ErrorKind::NonRigidPair,
                  "2-element type " + std::to_string(i) + " has a non-trivial automorphism");
    }
    index_.emplace(types_[i], static_cast<int>(i));
  }
}

PairTypeTable PairTypeTable::from_fragment(const ClassFragment& frag) {
  return PairTypeTable(frag.bound() >= 2 ? iso_types(frag, 2) : std::vector<Structure>{});
}

std::optional<int> PairTypeTable::find(const Structure& canonical_pair) const {
  auto it = index_.find(canonical_pair);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct PairLabelings {
  Structure forward;   // a -> 0, b -> 1
  Structure backward;  // b -> 0, a -> 1
};

PairLabelings labelings(const Structure& s, int a, int b) {
  if (a == b) throw Error(ErrorKind::OutOfRangeElement, "pair needs two distinct elements");
  const int fwd[2] = {a, b};
  const int bwd[2] = {b, a};
  return {induced(s, fwd).structure, induced(s, bwd).structure};
}

}  // namespace

Arc orient_pair(const Structure& s, int a, int b) {
  auto l = labelings(s, a, b);
  const auto cmp = l.forward <=> l.backward;
  if (cmp == 0) {
    throw Error(ErrorKind::NonRigidPair, "swapping " + std::to_string(a) + " and " +
                                             std::to_string(b) + " is an automorphism");
  }
  return cmp < 0 ? Arc{a, b} : Arc{b, a};
}

OrientedPair orient_pair(const Structure& s, int a, int b, const PairTypeTable& table) {
  auto l = labelings(s, a, b);
  const auto cmp = l.forward <=> l.backward;
  const Structure& least = cmp < 0 ? l.forward : l.backward;
  auto type = table.find(least);
  if (!type) {
    throw Error(ErrorKind::UnknownType, "pair {" + std::to_string(a) + "," + std::to_string(b) +
                                            "} has a 2-type outside the table");
  }
  if (cmp == 0) {
    throw Error(ErrorKind::NonRigidPair, "swapping " + std::to_string(a) + " and " +
                                             std::to_string(b) + " is an automorphism");
  }
  return cmp < 0 ? OrientedPair{a, b, *type} : OrientedPair{b, a, *type};
}

std::vector<OrientedPair> analyze_pairs(const Structure& s, const PairTypeTable& table,
                                        bool lenient) {
  std::vector<OrientedPair> out;
  for (int x = 0; x < s.size(); ++x) {
    for (int y = x + 1; y < s.size(); ++y) {
      if (!lenient) {
        out.push_back(orient_pair(s, x, y, table));
        continue;
      }
      auto l = labelings(s, x, y);
      const auto cmp = l.forward <=> l.backward;
      auto type = cmp == 0 ? std::nullopt : table.find(cmp < 0 ? l.forward : l.backward);
      if (!type) {
        out.push_back({x, y, -1});
      } else {
        out.push_back(cmp < 0 ? OrientedPair{x, y, *type} : OrientedPair{y, x, *type});
      }
    }
  }
  return out;
}

OrientationAssignment reversed(const OrientationAssignment& asg) {
  OrientationAssignment out = asg;
  for (auto& s : out.signs) s = flip(s);
  return out;
}

Digraph oriented_digraph(int size, std::span<const OrientedPair> pairs,
                         std::span<const std::optional<Sign>> per_type) {
  Digraph g(size);
  for (const auto& p : pairs) {
    if (p.type < 0 || p.type >= static_cast<int>(per_type.size()) || !per_type[p.type]) continue;
    if (*per_type[p.type] == Sign::Canonical) {
      g.add_arc(p.from, p.to);
    } else {
      g.add_arc(p.to, p.from);
    }
  }
  return g;
}

namespace {

std::vector<std::optional<Sign>> prefix_selection(const OrientationAssignment& asg) {
  return {asg.signs.begin(), asg.signs.end()};
}

// Precomputed pair analyses for every representative of a fragment.
class Engine {
 public:
  Engine(const ClassFragment& frag, const PairTypeTable& table)
      : frag_(frag), table_(table), reps_(frag.all()), pairs_(reps_.size()) {
    parallel_for(reps_.size(), [&](std::size_t i) { pairs_[i] = analyze_pairs(*reps_[i], table_); });
  }

  const std::vector<const Structure*>& reps() const { return reps_; }
  const std::vector<OrientedPair>& pairs(std::size_t i) const { return pairs_[i]; }

  Digraph graph(std::size_t i, std::span<const std::optional<Sign>> per_type) const {
    return oriented_digraph(reps_[i]->size(), pairs_[i], per_type);
  }

  std::optional<TypeCycle> find_cycle(const std::vector<std::optional<Sign>>& per_type) const {
    auto hit = parallel_find_first(reps_.size(), [&](std::size_t i) {
      return shortest_cycle(graph(i, per_type)).has_value();
    });
    if (!hit) return std::nullopt;
    return TypeCycle{*hit, *reps_[*hit], *shortest_cycle(graph(*hit, per_type))};
  }

  Reachability classify(const OrientationAssignment& asg, int next_type) const {
    const auto sel = prefix_selection(asg);
    std::optional<Reachability> first_forced;
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      const auto reach = reachability(graph(i, sel));
      for (const auto& p : pairs_[i]) {
        if (p.type != next_type) continue;
        const bool forward = reach[p.from][p.to] != 0;
        const bool backward = reach[p.to][p.from] != 0;
        if (forward && backward) {
          throw Error(ErrorKind::InternalCycleContradiction,
                      "E_prefix joins a pair of the next type in both directions; "
                      "it is not acyclic");
        }
        if ((forward || backward) && !first_forced) {
          first_forced = Reachability{ReachabilityCase::Case2,
                                      forward ? Sign::Canonical : Sign::Reversed, i,
                                      forward ? p.from : p.to, forward ? p.to : p.from};
        }
      }
    }
    if (first_forced) return *first_forced;
    return Reachability{};
  }

  ExtensionResult extend(const OrientationAssignment& asg) const {
    const int t = static_cast<int>(asg.prefix_length());
    if (t >= static_cast<int>(table_.size())) {
      throw Error(ErrorKind::UnknownType, "every type is already oriented");
    }
    StepRecord step{t, "case3", Sign::Canonical};
    std::vector<Sign> order{Sign::Canonical, Sign::Reversed};
    if (t > 0) {
      const auto r = classify(asg, t);
      if (r.kind == ReachabilityCase::Case2) {
        step.how = "case2";
        order = {r.forced, flip(r.forced)};
      }
    } else {
      step.how = "initial";
    }
    for (Sign s : order) {
      OrientationAssignment candidate = asg;
      candidate.signs.push_back(s);
      if (!find_cycle(prefix_selection(candidate))) {
        step.sign = s;
        return {candidate, step};
      }
    }
    step.sign = order.front();
    if (t == 0) {
      // Both orientations of the only type carry a cycle; the canonical one
      // yields a single-cycle witness.
      return {type_cycle_witness(*find_cycle({Sign::Canonical}), 0), step};
    }
    return {realize_double_cycle(asg, order.front()), step};
  }

  FailureWitness type_cycle_witness(const TypeCycle& c, int type) const {
    std::vector<int> vertices = c.cycle;
    std::sort(vertices.begin(), vertices.end());
    auto [b, cycles] = relabel_onto(c.structure, vertices, {c.cycle});
    FailureWitness w{table_[type], std::move(b), type, cycles[0], {}, {}, "type-cycle"};
    w.rule.kind = RuleKind::IndexOrder;
    w.rule.colored_sign = Sign::Canonical;
    return w;
  }

 private:
  // Canonical form of the substructure on `vertices`, with the given cycles
  // translated into its labels and rotated to start at their least label.
  static std::pair<Structure, std::vector<std::vector<int>>> relabel_onto(
      const Structure& s, const std::vector<int>& vertices,
      const std::vector<std::vector<int>>& cycles) {
    auto sub = induced(s, vertices);
    auto canon = canonical(sub.structure);
    std::vector<std::vector<int>> mapped;
    for (const auto& cyc : cycles) {
      std::vector<int> out;
      for (int v : cyc) {
        const auto pos = std::find(vertices.begin(), vertices.end(), v) - vertices.begin();
        out.push_back(canon.witness[pos]);
      }
      std::rotate(out.begin(), std::min_element(out.begin(), out.end()), out.end());
      mapped.push_back(std::move(out));
    }
    return {std::move(canon.relabeled), std::move(mapped)};
  }

  std::variant<OrientationAssignment, FailureWitness, Inconclusive> realize_double_cycle(
      const OrientationAssignment& asg, Sign first) const {
    const int t = static_cast<int>(asg.prefix_length());
    auto sel1 = prefix_selection(asg);
    auto sel2 = sel1;
    sel1.push_back(first);
    sel2.push_back(flip(first));
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      const Digraph g1 = graph(i, sel1);
      const Digraph g2 = graph(i, sel2);
      std::optional<std::pair<std::vector<int>, std::vector<int>>> best;
      std::size_t best_size = 0;
      for (const auto& p : pairs_[i]) {
        if (p.type != t) continue;
        // Arc p->q in g1, q->p in g2.
        const int from = first == Sign::Canonical ? p.from : p.to;
        const int to = first == Sign::Canonical ? p.to : p.from;
        auto back1 = shortest_path(g1, to, from);
        auto back2 = shortest_path(g2, from, to);
        if (!back1 || !back2) continue;
        std::vector<int> c1{from};
        c1.insert(c1.end(), back1->begin(), back1->end() - 1);
        std::vector<int> c2{to};
        c2.insert(c2.end(), back2->begin(), back2->end() - 1);
        std::set<int> vertices(c1.begin(), c1.end());
        vertices.insert(c2.begin(), c2.end());
        if (!best || vertices.size() < best_size) {
          best.emplace(std::move(c1), std::move(c2));
          best_size = vertices.size();
        }
      }
      if (!best) continue;
      std::set<int> vs(best->first.begin(), best->first.end());
      vs.insert(best->second.begin(), best->second.end());
      std::vector<int> vertices(vs.begin(), vs.end());
      auto [b, cycles] = relabel_onto(*reps_[i], vertices, {best->first, best->second});
      FailureWitness w{table_[t], std::move(b), t, cycles[0], cycles[1], {}, "double-cycle"};
      w.rule.kind = RuleKind::LayeredOrder;
      w.rule.colored_sign = first;
      w.rule.prefix_types.assign(table_.types().begin(), table_.types().begin() + t);
      w.rule.prefix_signs = asg.signs;
      return w;
    }
    return Inconclusive{"WitnessRealizationFailed: both orientations of type " + std::to_string(t) +
                        " close cycles, but no representative up to bound " +
                        std::to_string(frag_.bound()) +
                        " carries both cycles through a shared pair"};
  }

  const ClassFragment& frag_;
  const PairTypeTable& table_;
  std::vector<const Structure*> reps_;
  std::vector<std::vector<OrientedPair>> pairs_;
};

}  // namespace

TypedDigraph typed_digraph(const Structure& s, const PairTypeTable& table,
                           const OrientationAssignment& asg) {
  const auto pairs = analyze_pairs(s, table);
  TypedDigraph out{s, {}, Digraph(s.size())};
  const int prefix = static_cast<int>(asg.prefix_length());
  for (const auto& p : pairs) {
    if (p.type >= prefix) continue;
    TypedArc arc = asg.signs[p.type] == Sign::Canonical ? TypedArc{p.from, p.to, p.type}
                                                        : TypedArc{p.to, p.from, p.type};
    out.graph.add_arc(arc.from, arc.to);
    out.arcs.push_back(arc);
  }
  return out;
}

std::optional<TypeCycle> find_type_cycle(const ClassFragment& frag, const PairTypeTable& table,
                                         const OrientationAssignment& asg) {
  if (asg.prefix_length() == 0) {
    throw Error(ErrorKind::UnknownType, "cycle search needs at least one oriented type");
  }
  Engine engine(frag, table);
  return engine.find_cycle(prefix_selection(asg));
}

std::optional<TypeCycle> find_single_type_cycle(const ClassFragment& frag,
                                                const PairTypeTable& table, int type) {
  Engine engine(frag, table);
  std::vector<std::optional<Sign>> sel(type + 1);
  sel[type] = Sign::Canonical;
  return engine.find_cycle(sel);
}

Reachability classify_reachability(const ClassFragment& frag, const PairTypeTable& table,
                                   const OrientationAssignment& asg, int next_type) {
  Engine engine(frag, table);
  return engine.classify(asg, next_type);
}

ExtensionResult extend_assignment(const ClassFragment& frag, const PairTypeTable& table,
                                  const OrientationAssignment& asg) {
  Engine engine(frag, table);
  return engine.extend(asg);
}

DecisionOutcome decide(const ClassFragment& frag) {
  auto hereditary = check_hereditary(frag);
  if (!hereditary.holds) {
    throw Error(ErrorKind::NotHereditary, hereditary.witness->description);
  }
  PairTypeTable table;
  try {
    table = PairTypeTable::from_fragment(frag);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonRigidPair) throw Error(ErrorKind::NotRigid, e.what());
    throw;
  }
  DecisionOutcome out;
  out.bound = frag.bound();
  out.type_order = table.types();
  out.fully_rigid = check_rigidity(frag).holds;

  Engine engine(frag, table);
  OrientationAssignment asg;
  for (int t = 0; t < static_cast<int>(table.size()); ++t) {
    if (t > 0) {
      std::vector<std::optional<Sign>> single(t + 1);
      single[t] = Sign::Canonical;
      if (auto c = engine.find_cycle(single)) {
        out.steps.push_back({t, "type-cycle", Sign::Canonical});
        out.result = engine.type_cycle_witness(*c, t);
        return out;
      }
    } else {
      // The first type is oriented canonically; a cycle in D_0 is a witness.
      if (auto c = engine.find_cycle({Sign::Canonical})) {
        out.steps.push_back({0, "type-cycle", Sign::Canonical});
        out.result = engine.type_cycle_witness(*c, 0);
        return out;
      }
    }
    auto ext = engine.extend(asg);
    out.steps.push_back(ext.step);
    if (auto* next = std::get_if<OrientationAssignment>(&ext.result)) {
      asg = *next;
      continue;
    }
    if (auto* w = std::get_if<FailureWitness>(&ext.result)) {
      out.result = std::move(*w);
    } else {
      out.result = std::get<Inconclusive>(ext.result);
    }
    return out;
  }

  OrderReduct reduct{asg, {}};
  const auto sel = prefix_selection(asg);
  reduct.orders.resize(engine.reps().size());
  parallel_for(engine.reps().size(), [&](std::size_t i) {
    reduct.orders[i] = layered_order(engine.graph(i, sel));
  });
  out.result = std::move(reduct);
  return out;
}

}  // namespace ramseyforge
