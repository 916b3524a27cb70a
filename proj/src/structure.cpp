#include "ramseyforge/structure.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ramseyforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSignature: return "InvalidSignature";
    case ErrorKind::UnknownRelation: return "UnknownRelation";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::OutOfRangeElement: return "OutOfRangeElement";
    case ErrorKind::EmptyUniverse: return "EmptyUniverse";
    case ErrorKind::DuplicateTuple: return "DuplicateTuple";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NonRigidPair: return "NonRigidPair";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::InternalCycleContradiction: return "InternalCycleContradiction";
    case ErrorKind::WitnessRealizationFailed: return "WitnessRealizationFailed";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::RuleInapplicable: return "RuleInapplicable";
    case ErrorKind::NotRigid: return "NotRigid";
    case ErrorKind::NotHereditary: return "NotHereditary";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

constexpr std::uint64_t kMaxCodeSpace = std::uint64_t{1} << 31;
constexpr std::uint64_t kMaxDenseSpace = std::uint64_t{1} << 20;

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// n^k, saturating at kMaxCodeSpace.
std::uint64_t code_space(int n, int arity) {
  std::uint64_t total = 1;
  for (int i = 0; i < arity; ++i) {
    total *= static_cast<std::uint64_t>(n);
    if (total >= kMaxCodeSpace) return kMaxCodeSpace;
  }
  return total;
}

std::string tuple_text(const Tuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

}  // namespace

Signature::Signature(std::vector<Relation> relations) : relations_(std::move(relations)) {
  if (relations_.empty()) {
    throw Error(ErrorKind::InvalidSignature, "signature has no relations");
  }
  std::set<std::string> seen;
  for (const auto& r : relations_) {
    if (!is_identifier(r.name)) {
      throw Error(ErrorKind::InvalidSignature, "bad relation name '" + r.name + "'");
    }
    if (r.arity < 1) {
      throw Error(ErrorKind::InvalidSignature, "relation " + r.name + " has arity < 1");
    }
    if (!seen.insert(r.name).second) {
      throw Error(ErrorKind::InvalidSignature, "duplicate relation " + r.name);
    }
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<ValidationError> validate(const Signature& sig, int size,
                                        const TupleSets& tuples) {
  if (size < 1) {
    return ValidationError{ErrorKind::EmptyUniverse, "", {}, "structure has empty universe"};
  }
  if (tuples.size() != sig.size()) {
    return ValidationError{ErrorKind::SignatureMismatch, "", {},
                           "tuple sets do not match the signature's relation count"};
  }
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const auto& rel = sig[r];
    if (code_space(size, rel.arity) >= kMaxCodeSpace) {
      return ValidationError{ErrorKind::TooLarge, rel.name, {},
                             "relation " + rel.name + " too large to encode at this size"};
    }
    std::set<Tuple> seen;
    for (const auto& t : tuples[r]) {
      if (static_cast<int>(t.size()) != rel.arity) {
        return ValidationError{ErrorKind::ArityMismatch, rel.name, t,
                               "tuple " + tuple_text(t) + " of " + rel.name + " has length " +
                                   std::to_string(t.size()) + ", expected " +
                                   std::to_string(rel.arity)};
      }
      for (int e : t) {
        if (e < 0 || e >= size) {
          return ValidationError{ErrorKind::OutOfRangeElement, rel.name, t,
                                 "tuple " + tuple_text(t) + " of " + rel.name +
                                     " has element " + std::to_string(e) +
                                     " outside 0.." + std::to_string(size - 1)};
        }
      }
      if (!seen.insert(t).second) {
        return ValidationError{ErrorKind::DuplicateTuple, rel.name, t,
                               "tuple " + tuple_text(t) + " of " + rel.name + " repeated"};
      }
    }
  }
  return std::nullopt;
}

Structure::Structure(Signature sig, int size) : sig_(std::move(sig)), size_(size) {}

Structure::Structure(Signature sig, int size, const TupleSets& tuples)
    : sig_(std::move(sig)), size_(size) {
  if (auto err = validate(sig_, size_, tuples)) throw Error(err->kind, err->message);
  codes_.resize(sig_.size());
  for (std::size_t r = 0; r < sig_.size(); ++r) {
    codes_[r].reserve(tuples[r].size());
    for (const auto& t : tuples[r]) codes_[r].push_back(encode(t));
  }
  build_index();
}

Structure Structure::from_codes(Signature sig, int size,
                                std::vector<std::vector<std::uint32_t>> codes) {
  Structure s(std::move(sig), size);
  if (size < 1) throw Error(ErrorKind::EmptyUniverse, "structure has empty universe");
  if (codes.size() != s.sig_.size()) {
    throw Error(ErrorKind::SignatureMismatch, "code sets do not match the signature");
  }
  for (std::size_t r = 0; r < s.sig_.size(); ++r) {
    const std::uint64_t space = code_space(size, s.sig_[r].arity);
    if (space >= kMaxCodeSpace) {
      throw Error(ErrorKind::TooLarge, "relation " + s.sig_[r].name + " too large to encode");
    }
    for (auto c : codes[r]) {
      if (c >= space) throw Error(ErrorKind::OutOfRangeElement, "tuple code out of range");
    }
  }
  s.codes_ = std::move(codes);
  s.build_index();
  return s;
}

void Structure::build_index() {
  dense_.assign(codes_.size(), {});
  for (std::size_t r = 0; r < codes_.size(); ++r) {
    auto& c = codes_[r];
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
      throw Error(ErrorKind::DuplicateTuple, "repeated tuple in " + sig_[r].name);
    }
    const std::uint64_t space = code_space(size_, sig_[r].arity);
    if (space <= kMaxDenseSpace) {
      dense_[r].assign(space, 0);
      for (auto code : c) dense_[r][code] = 1;
    }
  }
}

std::uint32_t Structure::encode(std::span<const int> tuple) const {
  std::uint32_t code = 0;
  for (int e : tuple) code = code * static_cast<std::uint32_t>(size_) + static_cast<std::uint32_t>(e);
  return code;
}

Tuple Structure::decode(std::size_t rel, std::uint32_t code) const {
  Tuple t(sig_[rel].arity);
  for (int i = sig_[rel].arity - 1; i >= 0; --i) {
    t[i] = static_cast<int>(code % static_cast<std::uint32_t>(size_));
    code /= static_cast<std::uint32_t>(size_);
  }
  return t;
}

std::vector<Tuple> Structure::tuples(std::size_t rel) const {
  std::vector<Tuple> out;
  out.reserve(codes_[rel].size());
  for (auto c : codes_[rel]) out.push_back(decode(rel, c));
  return out;
}

bool Structure::holds_code(std::size_t rel, std::uint32_t code) const {
  if (!dense_[rel].empty()) return dense_[rel][code] != 0;
  return std::binary_search(codes_[rel].begin(), codes_[rel].end(), code);
}

std::vector<int> Structure::serialize() const {
  std::vector<int> out;
  for (std::size_t r = 0; r < codes_.size(); ++r) {
    out.push_back(static_cast<int>(codes_[r].size()));
    for (auto c : codes_[r]) {
      auto t = decode(r, c);
      out.insert(out.end(), t.begin(), t.end());
    }
  }
  return out;
}

bool Structure::operator==(const Structure& other) const {
  return size_ == other.size_ && sig_ == other.sig_ && codes_ == other.codes_;
}

std::strong_ordering Structure::operator<=>(const Structure& other) const {
  if (auto c = size_ <=> other.size_; c != 0) return c;
  const std::size_t rels = std::min(codes_.size(), other.codes_.size());
  for (std::size_t r = 0; r < rels; ++r) {
    if (auto c = codes_[r].size() <=> other.codes_[r].size(); c != 0) return c;
    for (std::size_t i = 0; i < codes_[r].size(); ++i) {
      if (auto c = codes_[r][i] <=> other.codes_[r][i]; c != 0) return c;
    }
  }
  return codes_.size() <=> other.codes_.size();
}

InducedSubstructure induced(const Structure& s, std::span<const int> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, "induced substructure needs an element");
  std::vector<int> position(s.size(), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const int e = subset[i];
    if (e < 0 || e >= s.size()) {
      throw Error(ErrorKind::OutOfRangeElement,
                  "element " + std::to_string(e) + " not in structure of size " +
                      std::to_string(s.size()));
    }
    if (position[e] != -1) {
      throw Error(ErrorKind::OutOfRangeElement, "element " + std::to_string(e) + " repeated in subset");
    }
    position[e] = static_cast<int>(i);
  }
  const int m = static_cast<int>(subset.size());
  const auto& sig = s.signature();
  std::vector<std::vector<std::uint32_t>> codes(sig.size());
  for (std::size_t r = 0; r < sig.size(); ++r) {
    for (auto code : s.codes(r)) {
      auto t = s.decode(r, code);
      std::uint32_t sub = 0;
      bool inside = true;
      for (int e : t) {
        if (position[e] < 0) {
          inside = false;
          break;
        }
        sub = sub * static_cast<std::uint32_t>(m) + static_cast<std::uint32_t>(position[e]);
      }
      if (inside) codes[r].push_back(sub);
    }
  }
  return {Structure::from_codes(sig, m, std::move(codes)),
          std::vector<int>(subset.begin(), subset.end())};
}

bool is_permutation_of(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Structure relabel(const Structure& s, std::span<const int> perm) {
  if (!is_permutation_of(perm, s.size())) {
    throw Error(ErrorKind::OutOfRangeElement, "relabeling is not a permutation of the universe");
  }
  const auto& sig = s.signature();
  std::vector<std::vector<std::uint32_t>> codes(sig.size());
  for (std::size_t r = 0; r < sig.size(); ++r) {
    codes[r].reserve(s.tuple_count(r));
    for (auto code : s.codes(r)) {
      auto t = s.decode(r, code);
      for (auto& e : t) e = perm[e];
      codes[r].push_back(s.encode(t));
    }
  }
  return Structure::from_codes(sig, s.size(), std::move(codes));
}

}  // namespace ramseyforge
