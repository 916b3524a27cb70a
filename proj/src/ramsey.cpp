#include "ramseyforge/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <set>

#include "ramseyforge/parallel.hpp"

namespace ramseyforge {

std::optional<Color> PairColoring::color_of(int x, int y) const {
  if (x > y) std::swap(x, y);
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(x, y));
  if (it == pairs.end() || *it != std::make_pair(x, y)) return std::nullopt;
  return colors[static_cast<std::size_t>(it - pairs.begin())];
}

PairColoring PairColoring::swapped() const {
  PairColoring out = *this;
  for (auto& c : out.colors) c = c == Color::Red ? Color::Blue : Color::Red;
  return out;
}

std::vector<std::pair<int, int>> type_pairs(const Structure& c, const Structure& a) {
  if (a.size() != 2) throw Error(ErrorKind::RuleInapplicable, "A must have exactly two elements");
  if (a.signature() != c.signature()) {
    throw Error(ErrorKind::SignatureMismatch, "A and C have different signatures");
  }
  const Structure target = canonical(a).relabeled;
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < c.size(); ++x) {
    for (int y = x + 1; y < c.size(); ++y) {
      const int xy[2] = {x, y};
      const int yx[2] = {y, x};
      auto f = induced(c, xy).structure;
      auto b = induced(c, yx).structure;
      if ((f < b ? f : b) == target) out.emplace_back(x, y);
    }
  }
  return out;
}

PairColoring coloring_from_order(const Structure& c, std::span<const int> order,
                                 const Structure& a, Sign sign) {
  if (!is_permutation_of(order, c.size())) {
    throw Error(ErrorKind::OutOfRangeElement, "order is not a total order of the universe");
  }
  std::vector<int> position(c.size());
  for (int i = 0; i < c.size(); ++i) position[order[i]] = i;
  PairColoring out{c, a, type_pairs(c, a), {}};
  out.colors.reserve(out.pairs.size());
  for (const auto& [x, y] : out.pairs) {
    Arc arc = orient_pair(c, x, y);
    if (sign == Sign::Reversed) std::swap(arc.from, arc.to);
    out.colors.push_back(position[arc.from] < position[arc.to] ? Color::Red : Color::Blue);
  }
  return out;
}

PairColoring coloring_from_order(const Structure& c, std::span<const int> order,
                                 const PairTypeTable& table, const OrientationAssignment& asg,
                                 int type_index) {
  if (type_index < 0 || type_index >= static_cast<int>(table.size())) {
    throw Error(ErrorKind::UnknownType, "type index outside the table");
  }
  const Sign sign = type_index < static_cast<int>(asg.prefix_length()) ? asg.signs[type_index]
                                                                       : Sign::Canonical;
  return coloring_from_order(c, order, table[type_index], sign);
}

std::optional<Embedding> find_monochromatic(const Structure& a, const Structure& b,
                                            const Structure& c, const PairColoring& coloring) {
  if (a.signature() != b.signature() || b.signature() != c.signature()) {
    throw Error(ErrorKind::SignatureMismatch, "A, B and C must share a signature");
  }
  const int n = c.size();
  std::vector<int> color(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t k = 0; k < coloring.pairs.size(); ++k) {
    const auto [x, y] = coloring.pairs[k];
    color[static_cast<std::size_t>(x) * n + y] = static_cast<int>(coloring.colors[k]);
  }
  std::optional<Embedding> found;
  for_each_embedding(b, c, nullptr, [&](std::span<const int> map) {
    std::vector<int> image(map.begin(), map.end());
    std::sort(image.begin(), image.end());
    int seen = -1;
    bool mono = true;
    for (std::size_t i = 0; i < image.size() && mono; ++i) {
      for (std::size_t j = i + 1; j < image.size(); ++j) {
        const int col = color[static_cast<std::size_t>(image[i]) * n + image[j]];
        if (col < 0) continue;
        if (seen >= 0 && col != seen) {
          mono = false;
          break;
        }
        seen = col;
      }
    }
    if (mono) {
      found = Embedding{{map.begin(), map.end()}};
      return false;
    }
    return true;
  });
  return found;
}

PairColoring rule_coloring(const Structure& a, const Structure& c, const ColoringRule& rule) {
  std::vector<int> order(c.size());
  for (int i = 0; i < c.size(); ++i) order[i] = i;
  if (rule.kind == RuleKind::LayeredOrder) {
    if (rule.prefix_types.size() != rule.prefix_signs.size()) {
      throw Error(ErrorKind::RuleInapplicable, "rule lists " +
                                                   std::to_string(rule.prefix_types.size()) +
                                                   " prefix types but " +
                                                   std::to_string(rule.prefix_signs.size()) +
                                                   " signs");
    }
    PairTypeTable table(rule.prefix_types);
    std::vector<std::optional<Sign>> selection(table.size());
    for (std::size_t k = 0; k < rule.prefix_types.size(); ++k) {
      auto idx = table.find(canonical(rule.prefix_types[k]).relabeled);
      selection[*idx] = rule.prefix_signs[k];
    }
    const auto pairs = analyze_pairs(c, table, /*lenient=*/true);
    try {
      order = layered_order(oriented_digraph(c.size(), pairs, selection));
    } catch (const CycleError& e) {
      throw Error(ErrorKind::RuleInapplicable,
                  "prefix digraph on C has a directed cycle of length " +
                      std::to_string(e.cycle().size()));
    }
  }
  return coloring_from_order(c, order, a, rule.colored_sign);
}

WitnessCheck verify_failure_witness(const Structure& a, const Structure& b, const Structure& c,
                                    const ColoringRule& rule) {
  WitnessCheck out{false, rule_coloring(a, c, rule), std::nullopt, 0};
  out.monochromatic = find_monochromatic(a, b, c, out.coloring);
  out.verified = !out.monochromatic.has_value();
  out.copies = count_embeddings(b, c);
  return out;
}

namespace {

struct CopyTable {
  std::vector<std::uint64_t> masks;
  std::vector<int> sizes;
  std::vector<std::vector<int>> copies_of_bit;
};

// Smallest defeating colouring in [base, base + 2^low_bits), visiting the
// block in Gray-code order with per-copy blue counters.
std::optional<std::uint64_t> scan_block(const CopyTable& t, std::uint64_t base, int low_bits) {
  std::vector<int> blue(t.masks.size());
  int mono = 0;
  std::uint64_t x = base;
  for (std::size_t k = 0; k < t.masks.size(); ++k) {
    blue[k] = std::popcount(t.masks[k] & x);
    if (blue[k] == 0 || blue[k] == t.sizes[k]) ++mono;
  }
  std::optional<std::uint64_t> best;
  if (mono == 0) best = x;
  const std::uint64_t steps = std::uint64_t{1} << low_bits;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int bit = std::countr_zero(i);
    const std::uint64_t flag = std::uint64_t{1} << bit;
    const bool to_blue = (x & flag) == 0;
    x ^= flag;
    for (int k : t.copies_of_bit[bit]) {
      const bool was = blue[k] == 0 || blue[k] == t.sizes[k];
      blue[k] += to_blue ? 1 : -1;
      const bool now = blue[k] == 0 || blue[k] == t.sizes[k];
      mono += static_cast<int>(now) - static_cast<int>(was);
    }
    if (mono == 0 && (!best || x < *best)) best = x;
  }
  return best;
}

}  // namespace

WitnessStatus exhaustive_witness_check(const Structure& a, const Structure& b, const Structure& c,
                                       int pair_limit) {
  const auto pairs = type_pairs(c, a);
  const int m = static_cast<int>(pairs.size());
  if (m > pair_limit || m > 62) {
    throw Error(ErrorKind::SearchSpaceTooLarge,
                std::to_string(m) + " colored pairs exceed the limit " +
                    std::to_string(std::min(pair_limit, 62)) + "; raise the limit to at least " +
                    std::to_string(m));
  }
  WitnessStatus out;
  out.colored_pairs = static_cast<std::size_t>(m);

  const int n = c.size();
  std::vector<int> pair_index(static_cast<std::size_t>(n) * n, -1);
  for (int k = 0; k < m; ++k) {
    pair_index[static_cast<std::size_t>(pairs[k].first) * n + pairs[k].second] = k;
  }
  // Pair k is bit m-1-k, so integer order is lexicographic colouring order.
  std::set<std::vector<int>> images;
  std::set<std::uint64_t> mask_set;
  for_each_embedding(b, c, nullptr, [&](std::span<const int> map) {
    std::vector<int> image(map.begin(), map.end());
    std::sort(image.begin(), image.end());
    if (!images.insert(image).second) return true;
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < image.size(); ++i) {
      for (std::size_t j = i + 1; j < image.size(); ++j) {
        const int k = pair_index[static_cast<std::size_t>(image[i]) * n + image[j]];
        if (k >= 0) mask |= std::uint64_t{1} << (m - 1 - k);
      }
    }
    mask_set.insert(mask);
    return true;
  });
  out.copies = images.size();

  auto coloring_of = [&](std::uint64_t x) {
    PairColoring col{c, a, pairs, {}};
    for (int k = 0; k < m; ++k) {
      col.colors.push_back(((x >> (m - 1 - k)) & 1) ? Color::Blue : Color::Red);
    }
    return col;
  };

  if (mask_set.count(0)) {
    // A copy without A-pairs is monochromatic under every colouring.
    out.is_witness = true;
    return out;
  }

  CopyTable table;
  table.masks.assign(mask_set.begin(), mask_set.end());
  table.copies_of_bit.resize(m);
  for (std::size_t k = 0; k < table.masks.size(); ++k) {
    table.sizes.push_back(std::popcount(table.masks[k]));
    for (int bit = 0; bit < m; ++bit) {
      if ((table.masks[k] >> bit) & 1) table.copies_of_bit[bit].push_back(static_cast<int>(k));
    }
  }

  const int high_bits = std::min(m, 6);
  const int low_bits = m - high_bits;
  const std::size_t blocks = std::size_t{1} << high_bits;
  std::vector<std::optional<std::uint64_t>> found(blocks);
  std::atomic<std::size_t> first_hit{blocks};
  parallel_for(blocks, [&](std::size_t blk) {
    if (blk > first_hit.load()) return;
    found[blk] = scan_block(table, static_cast<std::uint64_t>(blk) << low_bits, low_bits);
    if (found[blk]) {
      std::size_t cur = first_hit.load();
      while (blk < cur && !first_hit.compare_exchange_weak(cur, blk)) {
      }
    }
  });
  const std::size_t hit = first_hit.load();
  if (hit == blocks) {
    out.is_witness = true;
  } else {
    out.is_witness = false;
    out.defeating = coloring_of(*found[hit]);
  }
  return out;
}

}  // namespace ramseyforge
