#include "ramseyforge/class_fragment.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ramseyforge/parallel.hpp"

namespace ramseyforge {

ClassFragment::ClassFragment(Signature sig, int bound, std::span<const Structure> members)
    : sig_(std::move(sig)), bound_(bound) {
  if (bound_ < 1) throw Error(ErrorKind::BoundExceeded, "fragment bound must be positive");
  std::vector<std::vector<Structure>> grouped(bound_ + 1);
  for (const auto& m : members) {
    if (m.signature() != sig_) {
      throw Error(ErrorKind::SignatureMismatch, "fragment member has a different signature");
    }
    if (m.size() <= bound_) grouped[m.size()].push_back(m);
  }
  by_size_.resize(bound_ + 1);
  lookup_.resize(bound_ + 1);
  for (int n = 1; n <= bound_; ++n) {
    by_size_[n] = distinct_up_to_isomorphism(grouped[n]);
    lookup_[n] = std::set<Structure>(by_size_[n].begin(), by_size_[n].end());
  }
}

std::span<const Structure> ClassFragment::reps(int n) const {
  if (n < 1 || n > bound_) return {};
  return by_size_[n];
}

std::vector<const Structure*> ClassFragment::all() const {
  std::vector<const Structure*> out;
  for (int n = 1; n <= bound_; ++n) {
    for (const auto& s : by_size_[n]) out.push_back(&s);
  }
  return out;
}

std::size_t ClassFragment::total() const {
  std::size_t t = 0;
  for (const auto& v : by_size_) t += v.size();
  return t;
}

bool ClassFragment::contains_isomorphic(const Structure& s) const {
  if (s.size() < 1 || s.size() > bound_) return false;
  return lookup_[s.size()].count(canonical(s).relabeled) > 0;
}

std::vector<Structure> iso_types(const ClassFragment& frag, int n) {
  if (n > frag.bound()) {
    throw Error(ErrorKind::BoundExceeded, "size " + std::to_string(n) + " exceeds fragment bound " +
                                              std::to_string(frag.bound()));
  }
  auto reps = frag.reps(n);
  return {reps.begin(), reps.end()};
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::Hereditary: return "hereditary";
    case Property::Jep: return "jep";
    case Property::Amalgamation: return "amalgamation";
    case Property::StrongAmalgamation: return "strong";
    case Property::Rigid: return "rigid";
  }
  return "unknown";
}

std::optional<Property> parse_property(std::string_view name) {
  for (auto p : {Property::Hereditary, Property::Jep, Property::Amalgamation,
                 Property::StrongAmalgamation, Property::Rigid}) {
    if (to_string(p) == name) return p;
  }
  if (name == "strong-amalgamation") return Property::StrongAmalgamation;
  return std::nullopt;
}

namespace {

std::string join(std::span<const int> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

// Subsets of {0..n-1} of size k in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  if (k > n) return out;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

struct AmalgamationInstance {
  const Structure* a;
  const Structure* b1;
  const Structure* b2;
  std::vector<int> f1;
  std::vector<int> f2;
};

std::vector<int> compose(std::span<const int> outer, std::span<const int> inner) {
  std::vector<int> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

// Lex-least representative of (f1, f2) under Aut(B1) x Aut(B2) x Aut(A),
// also allowing the swap when B1 and B2 are the same representative.
std::vector<int> instance_key(std::span<const int> f1, std::span<const int> f2,
                              const std::vector<Permutation>& aut_a,
                              const std::vector<Permutation>& aut_b1,
                              const std::vector<Permutation>& aut_b2, bool symmetric) {
  std::vector<int> best;
  for (const auto& alpha : aut_a) {
    const auto g1 = compose(f1, alpha);
    const auto g2 = compose(f2, alpha);
    for (const auto& s1 : aut_b1) {
      const auto h1 = compose(s1, g1);
      for (const auto& s2 : aut_b2) {
        const auto h2 = compose(s2, g2);
        std::vector<int> key(h1);
        key.insert(key.end(), h2.begin(), h2.end());
        if (best.empty() || key < best) best = key;
        if (symmetric) {
          std::vector<int> swapped(h2);
          swapped.insert(swapped.end(), h1.begin(), h1.end());
          if (swapped < best) best = swapped;
        }
      }
    }
  }
  return best;
}

bool amalgam_exists(const ClassFragment& frag, const AmalgamationInstance& inst, bool strong) {
  const int a = inst.a->size();
  const int lo = strong ? inst.b1->size() + inst.b2->size() - a
                        : std::max(inst.b1->size(), inst.b2->size());
  for (int n = lo; n <= frag.bound(); ++n) {
    for (const auto& c : frag.reps(n)) {
      if (find_amalgam_maps(*inst.a, *inst.b1, *inst.b2, inst.f1, inst.f2, c, strong)) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::optional<std::pair<Embedding, Embedding>> find_amalgam_maps(
    const Structure& a, const Structure& b1, const Structure& b2, std::span<const int> f1,
    std::span<const int> f2, const Structure& c, bool strong) {
  std::optional<std::pair<Embedding, Embedding>> found;
  for_each_embedding(b1, c, nullptr, [&](std::span<const int> g1) {
    EmbeddingConstraints cons;
    cons.fixed.assign(b2.size(), -1);
    for (int x = 0; x < a.size(); ++x) cons.fixed[f2[x]] = g1[f1[x]];
    if (strong) {
      cons.forbidden.assign(c.size(), false);
      for (int v : g1) cons.forbidden[v] = true;
    }
    if (auto g2 = first_embedding(b2, c, &cons)) {
      found.emplace(Embedding{{g1.begin(), g1.end()}}, std::move(*g2));
      return false;
    }
    return true;
  });
  return found;
}

PropertyReport check_hereditary(const ClassFragment& frag) {
  PropertyReport report{Property::Hereditary, true, std::nullopt, frag.bound(), 0};
  for (const Structure* s : frag.all()) {
    if (s->size() < 2) continue;
    for (const auto& subset : subsets_of_size(s->size(), s->size() - 1)) {
      ++report.instances_checked;
      auto sub = induced(*s, subset);
      if (!frag.contains_isomorphic(sub.structure)) {
        report.holds = false;
        report.witness = PropertyWitness{
            {*s}, {subset}, "induced substructure on {" + join(subset) + "} has no representative"};
        return report;
      }
    }
  }
  return report;
}

PropertyReport check_jep(const ClassFragment& frag) {
  PropertyReport report{Property::Jep, true, std::nullopt, frag.bound(), 0};
  const auto reps = frag.all();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i; j < reps.size(); ++j) {
      const Structure& b1 = *reps[i];
      const Structure& b2 = *reps[j];
      if (b1.size() + b2.size() > frag.bound()) continue;
      ++report.instances_checked;
      bool joined = false;
      for (int n = std::max(b1.size(), b2.size()); n <= frag.bound() && !joined; ++n) {
        for (const auto& c : frag.reps(n)) {
          if (first_embedding(b1, c) && first_embedding(b2, c)) {
            joined = true;
            break;
          }
        }
      }
      if (!joined) {
        report.holds = false;
        report.witness = PropertyWitness{{b1, b2}, {}, "no representative embeds both"};
        return report;
      }
    }
  }
  return report;
}

PropertyReport check_amalgamation(const ClassFragment& frag, bool strong,
                                  std::optional<int> max_instance_size) {
  const Property prop = strong ? Property::StrongAmalgamation : Property::Amalgamation;
  const int cap = std::min(frag.bound(), max_instance_size.value_or(frag.bound()));
  PropertyReport report{prop, true, std::nullopt, frag.bound(), 0};

  std::vector<AmalgamationInstance> instances;
  const auto reps = frag.all();
  for (const Structure* a : reps) {
    if (a->size() > cap) continue;
    const auto aut_a = automorphisms(*a);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const Structure* b1 = reps[i];
      if (b1->size() <= a->size() || b1->size() > cap) continue;
      const auto emb1 = embeddings(*a, *b1);
      if (emb1.empty()) continue;
      const auto aut_b1 = automorphisms(*b1);
      for (std::size_t j = i; j < reps.size(); ++j) {
        const Structure* b2 = reps[j];
        if (b2->size() <= a->size() || b2->size() > cap) continue;
        if (b1->size() + b2->size() - a->size() > frag.bound()) continue;
        const auto emb2 = embeddings(*a, *b2);
        const auto aut_b2 = automorphisms(*b2);
        std::set<std::vector<int>> seen;
        for (const auto& f1 : emb1) {
          for (const auto& f2 : emb2) {
            auto key = instance_key(f1.map, f2.map, aut_a, aut_b1, aut_b2, i == j);
            if (!seen.insert(std::move(key)).second) continue;
            instances.push_back({a, b1, b2, f1.map, f2.map});
          }
        }
      }
    }
  }
  report.instances_checked = instances.size();
  auto failing = parallel_find_first(instances.size(), [&](std::size_t k) {
    return !amalgam_exists(frag, instances[k], strong);
  });
  if (failing) {
    const auto& inst = instances[*failing];
    report.holds = false;
    report.witness = PropertyWitness{
        {*inst.a, *inst.b1, *inst.b2},
        {inst.f1, inst.f2},
        std::string("no ") + (strong ? "strong " : "") + "amalgam within bound for f1=[" +
            join(inst.f1) + "] f2=[" + join(inst.f2) + "]"};
  }
  return report;
}

PropertyReport check_rigidity(const ClassFragment& frag) {
  PropertyReport report{Property::Rigid, true, std::nullopt, frag.bound(), 0};
  for (const Structure* s : frag.all()) {
    ++report.instances_checked;
    const auto aut = automorphisms(*s);
    if (aut.size() > 1) {
      report.holds = false;
      report.witness = PropertyWitness{
          {*s}, {aut[1]}, "automorphism group of order " + std::to_string(aut.size())};
      return report;
    }
  }
  return report;
}

PropertyReport check_property(const ClassFragment& frag, Property p) {
  switch (p) {
    case Property::Hereditary: return check_hereditary(frag);
    case Property::Jep: return check_jep(frag);
    case Property::Amalgamation: return check_amalgamation(frag, false);
    case Property::StrongAmalgamation: return check_amalgamation(frag, true);
    case Property::Rigid: return check_rigidity(frag);
  }
  throw Error(ErrorKind::ParseError, "unknown property");
}

bool reverify(const ClassFragment& frag, const PropertyReport& report) {
  if (report.holds) return true;
  if (!report.witness) return false;
  const auto& w = *report.witness;
  switch (report.property) {
    case Property::Hereditary: {
      if (w.structures.size() != 1 || w.maps.size() != 1) return false;
      const auto sub = induced(w.structures[0], w.maps[0]).structure;
      for (const auto& rep : frag.reps(sub.size())) {
        if (isomorphism(sub, rep)) return false;
      }
      return true;
    }
    case Property::Jep: {
      if (w.structures.size() != 2) return false;
      for (const Structure* c : frag.all()) {
        if (first_embedding(w.structures[0], *c) && first_embedding(w.structures[1], *c)) {
          return false;
        }
      }
      return true;
    }
    case Property::Amalgamation:
    case Property::StrongAmalgamation: {
      if (w.structures.size() != 3 || w.maps.size() != 2) return false;
      const auto& a = w.structures[0];
      const auto& b1 = w.structures[1];
      const auto& b2 = w.structures[2];
      const auto& f1 = w.maps[0];
      const auto& f2 = w.maps[1];
      if (!is_embedding(a, b1, f1) || !is_embedding(a, b2, f2)) return false;
      const bool strong = report.property == Property::StrongAmalgamation;
      // Plain product search, independent of the pinned search used above.
      for (const Structure* c : frag.all()) {
        const auto g1s = embeddings(b1, *c);
        const auto g2s = embeddings(b2, *c);
        for (const auto& g1 : g1s) {
          for (const auto& g2 : g2s) {
            bool commutes = true;
            for (int x = 0; x < a.size(); ++x) {
              if (g1.map[f1[x]] != g2.map[f2[x]]) commutes = false;
            }
            if (!commutes) continue;
            if (strong) {
              std::set<int> img1(g1.map.begin(), g1.map.end());
              int shared = 0;
              for (int v : g2.map) shared += static_cast<int>(img1.count(v));
              if (shared != a.size()) continue;
            }
            return false;
          }
        }
      }
      return true;
    }
    case Property::Rigid: {
      if (w.structures.size() != 1 || w.maps.size() != 1) return false;
      const auto& perm = w.maps[0];
      bool identity = true;
      for (std::size_t i = 0; i < perm.size(); ++i) identity = identity && perm[i] == static_cast<int>(i);
      return !identity && is_embedding(w.structures[0], w.structures[0], perm);
    }
  }
  return false;
}

}  // namespace ramseyforge
