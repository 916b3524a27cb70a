#include "ramseyforge/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ramseyforge/class_fragment.hpp"
#include "ramseyforge/gallery.hpp"
#include "ramseyforge/morphism.hpp"
#include "ramseyforge/orientation.hpp"
#include "ramseyforge/parallel.hpp"
#include "ramseyforge/ramsey.hpp"
#include "ramseyforge/report.hpp"
#include "ramseyforge/structure_file.hpp"

namespace ramseyforge {

namespace {

constexpr int kDefaultMaxSize = 4;

// key=value lines in machine mode, "key: value" otherwise.
class Emitter {
 public:
  Emitter(std::ostream& out, bool machine) : out_(out), machine_(machine) {}
  void operator()(std::string_view key, std::string_view value) {
    out_ << key << (machine_ ? "=" : ": ") << value << "\n";
  }
  void operator()(std::string_view key, std::size_t value) { (*this)(key, std::to_string(value)); }
  void flag(std::string_view key, bool value) { (*this)(key, value ? "true" : "false"); }
  bool machine() const { return machine_; }

 private:
  std::ostream& out_;
  bool machine_;
};

struct Loaded {
  ClassFragment frag;
  ClassSource source;
};

bool is_builtin(const std::string& spec) { return spec.rfind("builtin:", 0) == 0; }

Loaded load_class(const std::string& spec, std::optional<int> max_size) {
  if (is_builtin(spec)) {
    const int bound = max_size.value_or(kDefaultMaxSize);
    std::string name = spec.substr(8);
    return {builtin_fragment(name, bound), {spec, name}};
  }
  auto file = read_structure_file(spec);
  int largest = 0;
  std::vector<Structure> members;
  for (const auto& ns : file.structures) {
    members.push_back(ns.structure);
    largest = std::max(largest, ns.structure.size());
  }
  const int bound = max_size.value_or(largest);
  return {ClassFragment(file.signature, bound, members), {spec, file.signature_name}};
}

struct NamedRef {
  std::string label;
  std::string signature_name;
  Structure structure;
};

// FILE#NAME, or FILE when the file holds exactly one structure.
NamedRef load_structure(const std::string& ref) {
  const auto hash = ref.rfind('#');
  const std::string path = hash == std::string::npos ? ref : ref.substr(0, hash);
  auto file = read_structure_file(path);
  if (hash == std::string::npos) {
    if (file.structures.size() != 1) {
      throw Error(ErrorKind::ParseError,
                  "'" + path + "' holds " + std::to_string(file.structures.size()) +
                      " structures; name one with FILE#NAME");
    }
    return {file.structures.front().name, file.signature_name, file.structures.front().structure};
  }
  const std::string name = ref.substr(hash + 1);
  return {name, file.signature_name, file.get(name)};
}

// FILE#NAME, FILE (every structure), or builtin:NAME (every representative).
std::vector<NamedRef> load_targets(const std::string& ref, std::optional<int> max_size) {
  std::vector<NamedRef> out;
  if (is_builtin(ref)) {
    auto loaded = load_class(ref, max_size);
    const auto reps = loaded.frag.all();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      out.push_back({"r" + std::to_string(i), loaded.source.signature_name, *reps[i]});
    }
    return out;
  }
  if (ref.find('#') != std::string::npos) return {load_structure(ref)};
  auto file = read_structure_file(ref);
  for (const auto& ns : file.structures) {
    out.push_back({ns.name, file.signature_name, ns.structure});
  }
  return out;
}

std::string inline_of(const NamedRef& r) {
  return inline_structure(r.signature_name, r.structure.signature(), r.label, r.structure);
}

std::string colors_text(const PairColoring& c) {
  std::string out;
  for (Color col : c.colors) out += col == Color::Red ? 'R' : 'B';
  return out;
}

std::string pairs_text(const PairColoring& c) {
  std::string out;
  for (std::size_t k = 0; k < c.pairs.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(c.pairs[k].first) + "-" + std::to_string(c.pairs[k].second);
  }
  return out;
}

bool machine_format(const std::string& format) { return format == "machine"; }

int cmd_decide(const std::string& cls, std::optional<int> max_size, const std::string& format,
               std::ostream& out) {
  auto loaded = load_class(cls, max_size);
  const DecisionOutcome outcome = decide(loaded.frag);
  if (machine_format(format)) {
    out << emit_certificate(outcome, loaded.frag, loaded.source);
  } else {
    out << human_decision(outcome, loaded.frag, loaded.source);
  }
  switch (outcome.result.index()) {
    case 0: return 0;
    case 1: return 1;
    default: return 2;
  }
}

int cmd_check(const std::string& cls, std::optional<int> max_size,
              const std::vector<std::string>& props, std::optional<int> amalgam_size,
              const std::string& format, std::ostream& out) {
  std::vector<Property> selected;
  for (const auto& name : props) {
    auto p = parse_property(name);
    if (!p) throw CLI::ValidationError("--properties", "unknown property '" + name + "'");
    selected.push_back(*p);
  }
  auto loaded = load_class(cls, max_size);
  Emitter emit(out, machine_format(format));
  emit("class", loaded.source.id);
  emit("bound", std::to_string(loaded.frag.bound()));
  bool all_hold = true;
  for (Property p : selected) {
    PropertyReport report;
    if (p == Property::Amalgamation || p == Property::StrongAmalgamation) {
      report = check_amalgamation(loaded.frag, p == Property::StrongAmalgamation, amalgam_size);
    } else {
      report = check_property(loaded.frag, p);
    }
    emit("property", to_string(p));
    emit.flag("holds", report.holds);
    emit("search_bound", std::to_string(report.search_bound));
    emit("instances", report.instances_checked);
    if (report.witness) {
      const auto& w = *report.witness;
      emit("witness", w.description);
      for (std::size_t i = 0; i < w.structures.size(); ++i) {
        emit("witness_structure",
             inline_structure(loaded.source.signature_name, loaded.frag.signature(),
                              "w" + std::to_string(i), w.structures[i]));
      }
      for (const auto& m : w.maps) emit("witness_map", join_ints(m));
      emit.flag("reverified", reverify(loaded.frag, report));
    }
    all_hold = all_hold && report.holds;
  }
  return all_hold ? 0 : 1;
}

int cmd_aut(const std::string& ref, const std::string& format, std::ostream& out) {
  const NamedRef s = load_structure(ref);
  const auto auts = automorphisms(s.structure);
  Emitter emit(out, machine_format(format));
  emit("structure", s.label);
  emit("size", std::to_string(s.structure.size()));
  emit("aut_order", auts.size());
  emit.flag("rigid", auts.size() == 1);
  for (const auto& g : auts) emit("automorphism", join_ints(g));
  emit("canonical", inline_structure(s.signature_name, s.structure.signature(), s.label,
                                     canonical(s.structure).relabeled));
  return 0;
}

int cmd_iso(const std::string& ref_a, const std::string& ref_b, const std::string& format,
            std::ostream& out) {
  const NamedRef a = load_structure(ref_a);
  const NamedRef b = load_structure(ref_b);
  if (a.structure.signature() != b.structure.signature()) {
    throw Error(ErrorKind::SignatureMismatch, "structures have different signatures");
  }
  const auto iso = isomorphism(a.structure, b.structure);
  Emitter emit(out, machine_format(format));
  emit.flag("isomorphic", iso.has_value());
  if (iso) emit("map", join_ints(iso->map));
  return iso ? 0 : 1;
}

struct RamseyArgs {
  std::string a;
  std::string b;
  std::string c;
  std::string certificate;
  bool exhaustive = false;
  int limit = kDefaultPairLimit;
  std::optional<int> max_size;
  std::string format;
};

int cmd_ramsey(const RamseyArgs& args, std::ostream& out) {
  std::optional<Structure> a;
  std::optional<Structure> b;
  ColoringRule rule;
  std::string c_ref = args.c;
  std::optional<int> max_size = args.max_size;
  if (!args.certificate.empty()) {
    std::ifstream in(args.certificate, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + args.certificate + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    Certificate cert = parse_certificate(buf.str());
    if (cert.outcome != "failure") {
      throw Error(ErrorKind::ParseError, "certificate outcome is '" + cert.outcome +
                                             "'; only failure certificates can be re-verified");
    }
    a = cert.a;
    b = cert.b;
    rule = cert.rule;
    if (c_ref.empty()) {
      c_ref = cert.class_id;
      if (!max_size) max_size = cert.bound;
    }
  }
  if (!args.a.empty()) a = load_structure(args.a).structure;
  if (!args.b.empty()) b = load_structure(args.b).structure;
  if (!a || !b || c_ref.empty()) {
    throw CLI::ValidationError("ramsey", "need --a, --b and --c, or a --certificate");
  }
  const auto targets = load_targets(c_ref, max_size);

  Emitter emit(out, machine_format(args.format));
  emit("rule", to_string(rule.kind));
  emit("colored_sign", to_string(rule.colored_sign));
  emit.flag("exhaustive", args.exhaustive);
  std::size_t defeated = 0;
  std::size_t witnesses = 0;
  std::size_t undetermined = 0;
  bool consistent = true;
  for (const auto& t : targets) {
    emit("c", inline_of(t));
    bool rule_defeats = false;
    try {
      const WitnessCheck check = verify_failure_witness(*a, *b, t.structure, rule);
      emit("copies", check.copies);
      emit("colored_pairs", check.coloring.pairs.size());
      emit.flag("rule_defeats", check.verified);
      if (check.monochromatic) emit("monochromatic", join_ints(check.monochromatic->map));
      rule_defeats = check.verified;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RuleInapplicable) throw;
      emit("rule_inapplicable", e.what());
    }
    std::optional<bool> is_witness;
    if (args.exhaustive) {
      try {
        const WitnessStatus status = exhaustive_witness_check(*a, *b, t.structure, args.limit);
        is_witness = status.is_witness;
        emit.flag("witness", status.is_witness);
        if (status.defeating) {
          emit("pairs", pairs_text(*status.defeating));
          emit("defeating", colors_text(*status.defeating));
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SearchSpaceTooLarge) throw;
        emit("skipped", e.what());
      }
    }
    if (is_witness && *is_witness && rule_defeats) consistent = false;
    if (is_witness && *is_witness) {
      ++witnesses;
    } else if (rule_defeats || is_witness) {
      ++defeated;
    } else {
      ++undetermined;
    }
  }
  emit("checked", targets.size());
  emit("defeated", defeated);
  emit("witnesses", witnesses);
  emit("undetermined", undetermined);
  if (!consistent) {
    emit.flag("consistent", false);
    return kExitSoftware;
  }
  if (witnesses > 0) return 0;
  if (undetermined > 0) return 2;
  return 1;
}

int cmd_demo(const std::string& name, int max_size, const std::string& format,
             std::ostream& out) {
  if (name != "section3") throw CLI::ValidationError("demo", "unknown demo '" + name + "'");
  const DemoReport report = demo_section3(max_size);
  const Signature sig = product_signature();
  Emitter emit(out, machine_format(format));
  emit("demo", name);
  emit("max_size", std::to_string(report.max_size));
  emit("a", inline_structure("product", sig, "a", report.a));
  emit("b", inline_structure("product", sig, "b", report.b));
  emit("rule", "index-order");
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    emit("c", inline_structure("product", sig, "c" + std::to_string(i), e.c));
    emit("copies", e.copies);
    emit("monochromatic", e.monochromatic);
  }
  emit("structures", report.entries.size());
  emit.flag("verified", report.verified);
  return report.verified ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (const char* env = std::getenv("RAMSEYFORGE_WORKERS")) {
    auto workers = parse_worker_count(env);
    if (!workers) {
      err << "error: RAMSEYFORGE_WORKERS must be a positive integer, got '" << env << "'\n";
      return kExitUsage;
    }
    set_worker_count(*workers);
  }

  CLI::App app{"Ramsey-property dichotomy for classes of rigid finite structures", "ramseyforge"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"human", "machine"};

  std::string cls;
  std::optional<int> max_size;
  std::string format = "human";

  auto* decide_cmd = app.add_subcommand("decide", "Orient 2-element types or find a Ramsey failure");
  decide_cmd->add_option("class,--class", cls, "builtin:NAME or a structure file")->required();
  decide_cmd->add_option("--max-size", max_size, "Largest representative size")
      ->check(CLI::PositiveNumber);
  decide_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  std::vector<std::string> props;
  std::optional<int> amalgam_size;
  auto* check_cmd = app.add_subcommand("check", "Check class properties on a fragment");
  check_cmd->add_option("class,--class", cls, "builtin:NAME or a structure file")->required();
  check_cmd->add_option("--max-size", max_size)->check(CLI::PositiveNumber);
  check_cmd->add_option("--properties", props, "hereditary,jep,amalgamation,strong,rigid")
      ->delimiter(',')
      ->required();
  check_cmd->add_option("--amalgam-size", amalgam_size, "Largest A, B1, B2 in amalgamation")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string structure_ref;
  auto* aut_cmd = app.add_subcommand("aut", "Automorphism group of a structure");
  aut_cmd->add_option("--structure", structure_ref, "FILE#NAME")->required();
  aut_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string iso_a;
  std::string iso_b;
  auto* iso_cmd = app.add_subcommand("iso", "Isomorphism test");
  iso_cmd->add_option("--a", iso_a, "FILE#NAME")->required();
  iso_cmd->add_option("--b", iso_b, "FILE#NAME")->required();
  iso_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  RamseyArgs ramsey_args;
  auto* ramsey_cmd = app.add_subcommand("ramsey", "Check colorings of A-copies in C");
  ramsey_cmd->add_option("--a", ramsey_args.a, "FILE#NAME");
  ramsey_cmd->add_option("--b", ramsey_args.b, "FILE#NAME");
  ramsey_cmd->add_option("--c", ramsey_args.c, "FILE#NAME, FILE or builtin:NAME");
  ramsey_cmd->add_option("--certificate", ramsey_args.certificate,
                         "Failure certificate from decide --format machine");
  ramsey_cmd->add_flag("--exhaustive", ramsey_args.exhaustive, "Try every coloring");
  ramsey_cmd->add_option("--limit", ramsey_args.limit, "Most colored pairs for --exhaustive")
      ->check(CLI::Range(1, 62));
  ramsey_cmd->add_option("--max-size", ramsey_args.max_size, "For builtin:NAME targets")
      ->check(CLI::PositiveNumber);
  ramsey_cmd->add_option("--format", ramsey_args.format)->check(CLI::IsMember(formats));
  ramsey_args.format = "human";

  std::string demo_name;
  int demo_size = kDefaultMaxSize;
  auto* demo_cmd = app.add_subcommand("demo", "Built-in demonstrations");
  demo_cmd->add_option("name", demo_name, "section3")->required();
  demo_cmd->add_option("--max-size", demo_size)->check(CLI::PositiveNumber);
  demo_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (decide_cmd->parsed()) return cmd_decide(cls, max_size, format, out);
    if (check_cmd->parsed()) return cmd_check(cls, max_size, props, amalgam_size, format, out);
    if (aut_cmd->parsed()) return cmd_aut(structure_ref, format, out);
    if (iso_cmd->parsed()) return cmd_iso(iso_a, iso_b, format, out);
    if (ramsey_cmd->parsed()) return cmd_ramsey(ramsey_args, out);
    if (demo_cmd->parsed()) return cmd_demo(demo_name, demo_size, format, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ramseyforge
