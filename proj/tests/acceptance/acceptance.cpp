// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.

#include <bit>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "../oracle.hpp"
#include "ramseyforge/cli.hpp"
#include "ramseyforge/gallery.hpp"
#include "ramseyforge/parallel.hpp"
#include "ramseyforge/ramsey.hpp"
#include "ramseyforge/report.hpp"

using namespace ramseyforge;

namespace {

struct Check {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

struct CliRun {
  int code = 0;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

void set_workers(const char* n) {
  ::setenv("RAMSEYFORGE_WORKERS", n, 1);
  set_worker_count(std::atoi(n));
}

std::vector<int> order_of(const Structure& s, std::size_t rel) {
  // Elements sorted by number of predecessors in a linear order.
  std::vector<int> preds(s.size(), 0);
  for (const auto& t : s.tuples(rel)) ++preds[t[1]];
  std::vector<int> out(s.size());
  for (int v = 0; v < s.size(); ++v) out[preds[v]] = v;
  return out;
}

std::vector<int> reversed_order(std::vector<int> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

// Monochromatic copy under `colors` by brute force over oracle embeddings.
bool oracle_has_mono(const Structure& b, const Structure& c, const PairColoring& col) {
  for (const auto& e : oracle::embeddings(oracle::raw(b), oracle::raw(c))) {
    bool red = false;
    bool blue = false;
    for (int i = 0; i < b.size(); ++i) {
      for (int j = i + 1; j < b.size(); ++j) {
        if (auto k = col.color_of(e[i], e[j])) (*k == Color::Red ? red : blue) = true;
      }
    }
    if (!(red && blue)) return true;
  }
  return false;
}

// Criterion 1.
Check product_demo() {
  Check c;
  set_workers("1");
  auto run = cli({"demo", "section3", "--max-size", "4", "--format", "machine"});
  c.require(run.code == 1, "demo exit code " + std::to_string(run.code));
  c.require(has_line(run.out, "verified=true"), "demo not verified");
  c.require(has_line(run.out, "structures=46"), "expected 46 product structures up to size 4");
  auto report = demo_section3(4);
  std::size_t with_copies = 0;
  for (const auto& e : report.entries) {
    c.require(e.monochromatic == 0, "monochromatic 3-cycle copy");
    if (e.copies > 0) ++with_copies;
  }
  c.require(with_copies > 0, "no structure carries a 3-cycle copy");
  c.note = c.ok ? std::to_string(with_copies) + " of 46 structures carry 3-cycle copies" : c.note;
  return c;
}

// Criterion 2.
Check tournament_witness() {
  Check c;
  auto frag = builtin_fragment("tournaments", 4);
  auto outcome = decide(frag);
  auto* w = std::get_if<FailureWitness>(&outcome.result);
  c.require(w != nullptr, "decide did not return a failure witness");
  if (!w) return c;
  c.require(w->a.size() == 2 && w->b.size() == 3, "|A|, |B| != 2, 3");
  const Structure cycle = tournament(3, {{0, 1}, {1, 2}, {2, 0}});
  c.require(isomorphism(w->b, cycle).has_value(), "B is not the 3-cycle");
  auto run = cli({"decide", "builtin:tournaments", "--max-size", "4", "--format", "machine"});
  c.require(run.code == 1, "CLI exit code");
  c.require(has_line(run.out, "outcome=failure") && has_line(run.out, "a_size=2") &&
                has_line(run.out, "b_size=3"),
            "machine lines");
  return c;
}

// Criterion 3.
Check order_reducts() {
  Check c;
  {
    auto frag = builtin_fragment("linorder", 5);
    auto outcome = decide(frag);
    auto* r = std::get_if<OrderReduct>(&outcome.result);
    c.require(r != nullptr, "linorder did not give an order reduct");
    if (!r) return c;
    std::set<int> kinds{0, 1};
    const auto reps = frag.all();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto own = order_of(*reps[i], 0);
      if (r->orders[i] != own) kinds.erase(0);
      if (r->orders[i] != reversed_order(own)) kinds.erase(1);
    }
    c.require(!kinds.empty(), "linorder orders are not uniformly the order or its converse");
  }
  {
    auto frag = builtin_fragment("permutations", 4);
    auto outcome = decide(frag);
    auto* r = std::get_if<OrderReduct>(&outcome.result);
    c.require(r != nullptr, "permutations did not give an order reduct");
    if (!r) return c;
    std::set<int> kinds{0, 1, 2, 3};
    const auto reps = frag.all();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto first = order_of(*reps[i], 0);
      const auto second = order_of(*reps[i], 1);
      const std::vector<int>* options[] = {&first, nullptr, &second, nullptr};
      auto rf = reversed_order(first);
      auto rs = reversed_order(second);
      options[1] = &rf;
      options[3] = &rs;
      for (int k = 0; k < 4; ++k) {
        if (r->orders[i] != *options[k]) kinds.erase(k);
      }
    }
    c.require(!kinds.empty(), "permutation orders are not uniformly one component order");
  }
  auto lin = cli({"decide", "builtin:linorder", "--max-size", "5", "--format", "machine"});
  c.require(lin.code == 0 && has_line(lin.out, "outcome=order"), "CLI linorder");
  auto perm = cli({"decide", "builtin:permutations", "--max-size", "4", "--format", "machine"});
  c.require(perm.code == 0 && has_line(perm.out, "outcome=order"), "CLI permutations");
  return c;
}

// Criterion 4.
Check automorphism_orders() {
  Check c;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& t : gen_tournaments(n)) {
      const auto k = automorphisms(t).size();
      c.require(k % 2 == 1, "tournament with even |Aut|");
      c.require(k == oracle::automorphisms(oracle::raw(t)).size(), "tournament |Aut| vs oracle");
    }
  }
  for (int n = 1; n <= 6; ++n) {
    for (const auto& s : gen_c_structures(n)) {
      const auto k = automorphisms(s).size();
      c.require(std::has_single_bit(k), "C-structure |Aut| not a power of 2");
      c.require(k == oracle::automorphisms(oracle::raw(s)).size(), "C-structure |Aut| vs oracle");
    }
  }
  for (int n = 1; n <= 4; ++n) {
    for (const auto& s : gen_products(n)) {
      c.require(automorphisms(s).size() == 1, "product with non-trivial automorphism");
      c.require(oracle::automorphisms(oracle::raw(s)).size() == 1, "product |Aut| vs oracle");
    }
  }
  return c;
}

// Criterion 5.
Check chains() {
  Check c;
  const Structure a = chain(2);
  const Structure b = chain(3);
  auto six = exhaustive_witness_check(a, b, chain(6));
  c.require(six.is_witness, "6-chain is not a witness");
  c.require(six.colored_pairs == 15, "6-chain colored pairs");
  c.require(oracle::ramsey(oracle::raw(a), oracle::raw(b), oracle::raw(chain(6))).is_witness,
            "oracle disagrees on the 6-chain");
  auto five = exhaustive_witness_check(a, b, chain(5));
  c.require(!five.is_witness && five.defeating.has_value(), "5-chain is a witness");
  if (five.defeating) {
    c.require(!find_monochromatic(a, b, chain(5), *five.defeating), "defeating coloring fails");
    c.require(!oracle_has_mono(b, chain(5), *five.defeating), "oracle rejects defeating coloring");
  }
  c.require(five.colored_pairs == 10, "5-chain colored pairs");
  return c;
}

// Criterion 6.
Check oracle_agreement() {
  Check c;
  struct Case {
    Structure a;
    Structure b;
    ColoringRule rule;
    std::vector<Structure> cs;
  };
  std::vector<Case> cases;
  {
    auto demo = demo_section3(4);
    std::vector<Structure> cs;
    for (const auto& e : demo.entries) cs.push_back(e.c);
    cases.push_back({demo.a, demo.b, ColoringRule{}, cs});
  }
  for (auto [name, bound] : {std::pair{"tournaments", 4}, std::pair{"product", 4}}) {
    auto frag = builtin_fragment(name, bound);
    auto outcome = decide(frag);
    auto* w = std::get_if<FailureWitness>(&outcome.result);
    c.require(w != nullptr, std::string(name) + " gave no witness");
    if (!w) continue;
    std::vector<Structure> cs;
    for (const Structure* s : frag.all()) cs.push_back(*s);
    cases.push_back({w->a, w->b, w->rule, cs});
  }
  std::size_t checked = 0;
  for (const auto& k : cases) {
    for (const auto& cc : k.cs) {
      if (type_pairs(cc, k.a).size() > 20) continue;
      ++checked;
      auto status = exhaustive_witness_check(k.a, k.b, cc);
      c.require(!status.is_witness, "exhaustive check found a witness");
      auto rule = verify_failure_witness(k.a, k.b, cc, k.rule);
      c.require(rule.verified, "rule coloring has a monochromatic copy");
      c.require(!oracle_has_mono(k.b, cc, rule.coloring), "oracle finds a monochromatic copy");
      if (cc.size() <= 4) {
        auto brute = oracle::ramsey(oracle::raw(k.a), oracle::raw(k.b), oracle::raw(cc));
        c.require(!brute.is_witness, "plain enumeration finds a witness");
      }
    }
  }
  if (c.ok) c.note = std::to_string(checked) + " (witness, C) instances";
  return c;
}

// Criterion 7.
Check kernel() {
  Check c;
  std::vector<Structure> gallery;
  for (int n = 1; n <= 5; ++n) {
    for (auto* gen : {gen_tournaments, gen_c_structures, gen_products, gen_linear_orders,
                      gen_permutations}) {
      auto reps = gen(n);
      gallery.insert(gallery.end(), reps.begin(), reps.end());
    }
  }
  for (const auto& s : gallery) {
    c.require(count_embeddings(s, s) == automorphisms(s).size(), "embeddings(s,s) != |Aut|");
  }
  for (int n = 1; n <= 4; ++n) {
    std::vector<Structure> all;
    const int m = n * (n - 1) / 2;
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<std::pair<int, int>> arcs;
      int bit = 0;
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++bit) {
          arcs.push_back((mask >> bit) & 1 ? std::pair{v, u} : std::pair{u, v});
        }
      }
      all.push_back(tournament(n, arcs));
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i; j < all.size(); ++j) {
        const bool brute = oracle::isomorphic(oracle::raw(all[i]), oracle::raw(all[j]));
        c.require((canonical(all[i]).relabeled == canonical(all[j]).relabeled) == brute,
                  "canonical form disagrees with brute-force isomorphism");
        c.require(isomorphism(all[i], all[j]).has_value() == brute,
                  "isomorphism disagrees with brute force");
      }
    }
  }
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<int> hidden = oracle::identity(n);
    std::shuffle(hidden.begin(), hidden.end(), rng);
    Digraph g(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 2) g.add_arc(hidden[i], hidden[j]);
      }
    }
    const auto order = layered_order(g);
    c.require(is_permutation_of(order, n), "layered order is not a permutation");
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (const auto& arc : g.arcs()) c.require(pos[arc.from] < pos[arc.to], "arc violated");
  }
  if (c.ok) c.note = std::to_string(gallery.size()) + " gallery structures";
  return c;
}

// Criterion 8.
Check class_checkers() {
  Check c;
  auto strong = check_amalgamation(builtin_fragment("tournaments", 5), true, 3);
  c.require(strong.holds, "tournaments strong amalgamation fails");
  c.require(strong.instances_checked > 0, "no amalgamation instances");
  const Signature sig({{"E", 2}});
  std::vector<Structure> sets{Structure(sig, 1, {{}}), Structure(sig, 2, {{}})};
  ClassFragment pure(sig, 2, sets);
  auto rigid = check_rigidity(pure);
  c.require(!rigid.holds, "pure set reported rigid");
  if (rigid.witness) {
    c.require(rigid.witness->structures.front().size() == 2, "witness is not of size 2");
    c.require(rigid.witness->maps.front() == std::vector<int>{1, 0}, "witness is not the swap");
  }
  c.require(reverify(pure, rigid), "rigidity witness does not re-verify");
  if (c.ok) c.note = std::to_string(strong.instances_checked) + " amalgamation instances";
  return c;
}

// Criterion 9.
Check determinism() {
  Check c;
  const auto dir = std::filesystem::temp_directory_path() / "ramseyforge_acceptance";
  std::filesystem::create_directories(dir);
  const auto file = (dir / "tournaments.txt").string();
  std::ofstream(file) << "signature t\nrelation arrow 2\n"
                         "structure c3\nsize 3\ntuple arrow 0 1\ntuple arrow 1 2\ntuple arrow 2 0\nend\n"
                         "structure r3\nsize 3\ntuple arrow 1 2\ntuple arrow 2 0\ntuple arrow 0 1\nend\n";
  set_workers("1");
  const auto cert = (dir / "cert.txt").string();
  std::ofstream(cert) << cli({"decide", "builtin:tournaments", "--max-size", "4", "--format",
                              "machine"})
                             .out;
  const std::vector<std::vector<std::string>> commands{
      {"demo", "section3", "--max-size", "4"},
      {"decide", "builtin:tournaments", "--max-size", "4"},
      {"decide", "builtin:linorder", "--max-size", "5"},
      {"decide", "builtin:permutations", "--max-size", "4"},
      {"decide", "builtin:product", "--max-size", "4"},
      {"check", "builtin:tournaments", "--max-size", "5", "--properties", "strong",
       "--amalgam-size", "3"},
      {"check", "builtin:tournaments", "--max-size", "4", "--properties",
       "hereditary,jep,amalgamation,rigid"},
      {"aut", "--structure", file + "#c3"},
      {"iso", "--a", file + "#c3", "--b", file + "#r3"},
      {"ramsey", "--certificate", cert, "--exhaustive"},
      {"ramsey", "--certificate", cert, "--c", "builtin:tournaments", "--max-size", "6",
       "--exhaustive"},
  };
  for (auto args : commands) {
    args.push_back("--format");
    args.push_back("machine");
    std::vector<CliRun> runs;
    for (const char* w : {"1", "1", "4", "4"}) {
      set_workers(w);
      runs.push_back(cli(args));
    }
    for (const auto& r : runs) {
      c.require(r.out == runs[0].out && r.code == runs[0].code,
                "output differs across runs: " + args[0] + " " + args[1]);
    }
  }
  set_workers("1");
  if (c.ok) c.note = std::to_string(commands.size()) + " commands x 4 runs";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "product demo: index-order coloring defeats the 3-cycle", 60, product_demo},
      {2, "tournaments: failure witness with |A|=2, |B|=3, B the 3-cycle", 5, tournament_witness},
      {3, "linorder and permutations: order reducts", 10, order_reducts},
      {4, "automorphism orders: odd, powers of 2, trivial", 60, automorphism_orders},
      {5, "Ramsey oracle on chains: 6 is a witness, 5 is not", 10, chains},
      {6, "oracle agreement on every witness and representative", 120, oracle_agreement},
      {7, "kernel properties: |Aut|, canonical forms, layered order", 60, kernel},
      {8, "class checkers: strong amalgamation, pure-set rigidity", 30, class_checkers},
      {9, "determinism across runs and worker counts", 600, determinism},
  };
  int failures = 0;
  for (const auto& crit : criteria) {
    set_workers("1");
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = crit.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.note = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > crit.limit_s) {
      result.require(false, "exceeded time limit");
    }
    if (!result.ok) ++failures;
    std::cout << (result.ok ? "PASS" : "FAIL") << " criterion " << crit.id << ": " << crit.name
              << " (" << std::fixed << std::setprecision(2) << secs << " s)";
    if (!result.note.empty()) std::cout << " - " << result.note;
    std::cout << std::endl;
  }
  return failures;
}
