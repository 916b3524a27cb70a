#include "ramseyforge/morphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ramseyforge {

namespace {

void require_same_signature(const Structure& a, const Structure& b) {
  if (a.signature() != b.signature()) {
    throw Error(ErrorKind::SignatureMismatch, "structures have different signatures");
  }
}

// Source tuples that become fully assigned at step i (they contain i and
// otherwise only elements < i), together with their truth value.
struct StepCheck {
  std::size_t rel;
  Tuple tuple;
  bool holds;
};

std::vector<std::vector<StepCheck>> step_checks(const Structure& source) {
  const int m = source.size();
  const auto& sig = source.signature();
  std::vector<std::vector<StepCheck>> checks(m);
  for (int i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < sig.size(); ++r) {
      const int k = sig[r].arity;
      Tuple t(k, 0);
      while (true) {
        if (std::find(t.begin(), t.end(), i) != t.end()) {
          checks[i].push_back({r, t, source.holds(r, t)});
        }
        int pos = k - 1;
        while (pos >= 0 && t[pos] == i) t[pos--] = 0;
        if (pos < 0) break;
        ++t[pos];
      }
    }
  }
  return checks;
}

// Backtracking over source elements in index order, target candidates in
// ascending order, so visits come out lexicographically sorted.
class EmbeddingSearch {
 public:
  using Allowed = std::vector<std::vector<char>>;

  EmbeddingSearch(const Structure& source, const Structure& target,
                  const EmbeddingConstraints* constraints, const Allowed* allowed)
      : source_(source),
        target_(target),
        constraints_(constraints),
        allowed_(allowed),
        checks_(step_checks(source)),
        map_(source.size(), -1),
        used_(target.size(), 0) {}

  void run(const std::function<bool(std::span<const int>)>& visit) {
    if (source_.size() > target_.size()) return;
    if (constraints_ != nullptr) {
      const auto& fixed = constraints_->fixed;
      if (!fixed.empty() && static_cast<int>(fixed.size()) != source_.size()) {
        throw Error(ErrorKind::OutOfRangeElement, "pin list length differs from source size");
      }
      std::vector<char> pinned(target_.size(), 0);
      for (int v : fixed) {
        if (v < 0) continue;
        if (v >= target_.size()) {
          throw Error(ErrorKind::OutOfRangeElement, "pinned target outside the universe");
        }
        if (pinned[v]) return;  // two source elements pinned to one target
        pinned[v] = 1;
      }
    }
    visit_ = &visit;
    stop_ = false;
    extend(0);
  }

 private:
  int pinned(int i) const {
    if (constraints_ == nullptr || constraints_->fixed.empty()) return -1;
    return constraints_->fixed[i];
  }

  bool blocked(int i, int v) const {
    if (used_[v]) return true;
    if (allowed_ != nullptr && !(*allowed_)[i][v]) return true;
    if (constraints_ != nullptr && !constraints_->forbidden.empty() && pinned(i) < 0 &&
        constraints_->forbidden[v]) {
      return true;
    }
    // A target pinned for some later source element is unavailable now.
    if (constraints_ != nullptr && !constraints_->fixed.empty()) {
      for (int j = i + 1; j < source_.size(); ++j) {
        if (constraints_->fixed[j] == v) return true;
      }
    }
    return false;
  }

  bool consistent(int i) {
    Tuple image;
    for (const auto& c : checks_[i]) {
      image.resize(c.tuple.size());
      for (std::size_t p = 0; p < c.tuple.size(); ++p) image[p] = map_[c.tuple[p]];
      if (target_.holds(c.rel, image) != c.holds) return false;
    }
    return true;
  }

  void extend(int i) {
    if (stop_) return;
    if (i == source_.size()) {
      if (!(*visit_)(map_)) stop_ = true;
      return;
    }
    const int pin = pinned(i);
    const int lo = pin >= 0 ? pin : 0;
    const int hi = pin >= 0 ? pin + 1 : target_.size();
    for (int v = lo; v < hi && !stop_; ++v) {
      if (blocked(i, v)) continue;
      map_[i] = v;
      used_[v] = 1;
      if (consistent(i)) extend(i + 1);
      used_[v] = 0;
      map_[i] = -1;
    }
  }

  const Structure& source_;
  const Structure& target_;
  const EmbeddingConstraints* constraints_;
  const Allowed* allowed_;
  std::vector<std::vector<StepCheck>> checks_;
  std::vector<int> map_;
  std::vector<char> used_;
  const std::function<bool(std::span<const int>)>* visit_ = nullptr;
  bool stop_ = false;
};

// Per-element occurrence counts by relation and position.
std::vector<std::vector<int>> element_profiles(const Structure& s) {
  const auto& sig = s.signature();
  std::size_t width = 0;
  for (const auto& r : sig.relations()) width += static_cast<std::size_t>(r.arity);
  std::vector<std::vector<int>> profiles(s.size(), std::vector<int>(width, 0));
  std::size_t offset = 0;
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for (auto code : s.codes(r)) {
      auto t = s.decode(r, code);
      for (std::size_t p = 0; p < t.size(); ++p) ++profiles[t[p]][offset + p];
    }
    offset += static_cast<std::size_t>(sig[r].arity);
  }
  return profiles;
}

}  // namespace

void for_each_embedding(const Structure& source, const Structure& target,
                        const EmbeddingConstraints* constraints,
                        const std::function<bool(std::span<const int>)>& visit) {
  require_same_signature(source, target);
  EmbeddingSearch search(source, target, constraints, nullptr);
  search.run(visit);
}

std::vector<Embedding> embeddings(const Structure& source, const Structure& target) {
  std::vector<Embedding> out;
  for_each_embedding(source, target, nullptr, [&](std::span<const int> map) {
    out.push_back({std::vector<int>(map.begin(), map.end())});
    return true;
  });
  return out;
}

std::optional<Embedding> first_embedding(const Structure& source, const Structure& target,
                                         const EmbeddingConstraints* constraints) {
  std::optional<Embedding> out;
  for_each_embedding(source, target, constraints, [&](std::span<const int> map) {
    out = Embedding{std::vector<int>(map.begin(), map.end())};
    return false;
  });
  return out;
}

std::size_t count_embeddings(const Structure& source, const Structure& target) {
  std::size_t count = 0;
  for_each_embedding(source, target, nullptr, [&](std::span<const int>) {
    ++count;
    return true;
  });
  return count;
}

bool is_embedding(const Structure& source, const Structure& target, std::span<const int> map) {
  if (source.signature() != target.signature()) return false;
  if (static_cast<int>(map.size()) != source.size()) return false;
  std::vector<char> hit(target.size(), 0);
  for (int v : map) {
    if (v < 0 || v >= target.size() || hit[v]) return false;
    hit[v] = 1;
  }
  const auto& sig = source.signature();
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const int k = sig[r].arity;
    Tuple t(k, 0);
    Tuple image(k);
    while (true) {
      for (int p = 0; p < k; ++p) image[p] = map[t[p]];
      if (source.holds(r, t) != target.holds(r, image)) return false;
      int pos = k - 1;
      while (pos >= 0 && t[pos] == source.size() - 1) t[pos--] = 0;
      if (pos < 0) break;
      ++t[pos];
    }
  }
  return true;
}

std::optional<Embedding> isomorphism(const Structure& a, const Structure& b) {
  require_same_signature(a, b);
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    if (a.tuple_count(r) != b.tuple_count(r)) return std::nullopt;
  }
  const auto pa = element_profiles(a);
  const auto pb = element_profiles(b);
  EmbeddingSearch::Allowed allowed(a.size(), std::vector<char>(b.size(), 0));
  for (int i = 0; i < a.size(); ++i) {
    for (int v = 0; v < b.size(); ++v) allowed[i][v] = pa[i] == pb[v] ? 1 : 0;
  }
  std::optional<Embedding> out;
  EmbeddingSearch search(a, b, nullptr, &allowed);
  search.run([&](std::span<const int> map) {
    out = Embedding{std::vector<int>(map.begin(), map.end())};
    return false;
  });
  return out;
}

std::vector<Permutation> automorphisms(const Structure& s) {
  std::vector<Permutation> out;
  for (auto& e : embeddings(s, s)) out.push_back(std::move(e.map));
  return out;
}

bool is_rigid(const Structure& s) {
  std::size_t count = 0;
  for_each_embedding(s, s, nullptr, [&](std::span<const int>) { return ++count < 2; });
  return count == 1;
}

namespace {

// Branch and bound over label assignments. order[j] is the element that
// receives label j. Only the first relation's leading codes 0..j, i.e. the
// tuples (0,...,0,x) with x <= j, are fixed after j+1 labels, so pruning
// compares exactly those against the incumbent.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Structure& s)
      : s_(s), n_(s.size()), order_(n_, -1), used_(n_, 0) {}

  CanonicalForm run() {
    descend(0, false);
    Permutation witness(n_);
    for (int label = 0; label < n_; ++label) witness[best_order_[label]] = label;
    return {relabel(s_, witness), witness};
  }

 private:
  bool lead_bit(int element) const {
    const int k = s_.signature()[0].arity;
    Tuple t(k, order_[0]);
    t[k - 1] = element;
    return s_.holds(0, t);
  }

  void descend(int depth, bool better) {
    if (depth == n_) {
      leaf();
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      order_[depth] = v;
      used_[v] = 1;
      bool next_better = better;
      bool pruned = false;
      if (!have_best_) {
        next_better = true;
      } else if (!better) {
        const bool mine = lead_bit(v);
        const bool theirs = best_lead_[depth] != 0;
        if (mine && !theirs) next_better = true;
        if (!mine && theirs) pruned = true;
      }
      if (!pruned) descend(depth + 1, next_better);
      used_[v] = 0;
    }
    order_[depth] = -1;
  }

  void leaf() {
    std::vector<int> label(n_);
    for (int j = 0; j < n_; ++j) label[order_[j]] = j;
    const auto& sig = s_.signature();
    std::vector<std::vector<std::uint32_t>> codes(sig.size());
    for (std::size_t r = 0; r < sig.size(); ++r) {
      codes[r].reserve(s_.tuple_count(r));
      for (auto code : s_.codes(r)) {
        auto t = s_.decode(r, code);
        for (auto& e : t) e = label[e];
        codes[r].push_back(s_.encode(t));
      }
      std::sort(codes[r].begin(), codes[r].end());
    }
    if (!have_best_ || codes < best_codes_) {
      best_codes_ = std::move(codes);
      best_order_ = order_;
      have_best_ = true;
      best_lead_.assign(n_, 0);
      // Label-space codes 0..n-1 of the first relation are (0,...,0,x).
      for (auto c : best_codes_[0]) {
        if (c < static_cast<std::uint32_t>(n_)) best_lead_[c] = 1;
      }
    }
  }

  const Structure& s_;
  int n_;
  std::vector<int> order_;
  std::vector<char> used_;
  bool have_best_ = false;
  std::vector<std::vector<std::uint32_t>> best_codes_;
  std::vector<int> best_order_;
  std::vector<char> best_lead_;
};

}  // namespace

CanonicalForm canonical(const Structure& s) { return CanonicalSearch(s).run(); }

std::vector<int> invariant(const Structure& s) {
  std::vector<int> out{s.size()};
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    out.push_back(static_cast<int>(s.tuple_count(r)));
  }
  auto profiles = element_profiles(s);
  std::sort(profiles.begin(), profiles.end());
  for (const auto& p : profiles) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<Structure> distinct_up_to_isomorphism(std::span<const Structure> candidates) {
  std::map<std::vector<int>, std::vector<std::size_t>> buckets;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto& bucket = buckets[invariant(candidates[i])];
    const bool seen = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t j) {
      return isomorphism(candidates[i], candidates[j]).has_value();
    });
    if (!seen) {
      bucket.push_back(i);
      kept.push_back(i);
    }
  }
  std::vector<Structure> reps;
  reps.reserve(kept.size());
  for (auto i : kept) reps.push_back(canonical(candidates[i]).relabeled);
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace ramseyforge
