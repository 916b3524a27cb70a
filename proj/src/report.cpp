#include "ramseyforge/report.hpp"

#include <charconv>
#include <sstream>

#include "ramseyforge/structure_file.hpp"

namespace ramseyforge {

namespace {

struct Lines {
  std::string text;
  void add(std::string_view key, std::string_view value) {
    text.append(key).append("=").append(value).append("\n");
  }
};

std::string inline_of(const ClassSource& src, const Signature& sig, const std::string& name,
                      const Structure& s) {
  return inline_structure(src.signature_name, sig, name, s);
}

std::string signs_text(const std::vector<Sign>& signs) {
  std::string out;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i) out += ' ';
    out += to_string(signs[i]);
  }
  return out;
}

void emit_rule(Lines& out, const ColoringRule& rule, const ClassSource& src, const Signature& sig) {
  out.add("rule", to_string(rule.kind));
  out.add("colored_sign", to_string(rule.colored_sign));
  for (std::size_t k = 0; k < rule.prefix_types.size(); ++k) {
    out.add("prefix_type", inline_of(src, sig, "p" + std::to_string(k), rule.prefix_types[k]));
    out.add("prefix_sign", to_string(rule.prefix_signs[k]));
  }
}

}  // namespace

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string_view outcome_name(const DecisionOutcome& outcome) {
  switch (outcome.result.index()) {
    case 0: return "order";
    case 1: return "failure";
    default: return "inconclusive";
  }
}

std::string emit_certificate(const DecisionOutcome& outcome, const ClassFragment& frag,
                             const ClassSource& source) {
  const Signature& sig = frag.signature();
  Lines out;
  out.add("outcome", outcome_name(outcome));
  out.add("class", source.id);
  out.add("bound", std::to_string(outcome.bound));
  out.add("representatives", std::to_string(frag.total()));
  out.add("fully_rigid", outcome.fully_rigid ? "true" : "false");
  for (std::size_t t = 0; t < outcome.type_order.size(); ++t) {
    out.add("type_order", inline_of(source, sig, "t" + std::to_string(t), outcome.type_order[t]));
  }
  for (const auto& s : outcome.steps) {
    out.add("step", std::to_string(s.type) + " " + s.how + " " + std::string(to_string(s.sign)));
  }
  if (const auto* r = std::get_if<OrderReduct>(&outcome.result)) {
    out.add("assignment", signs_text(r->assignment.signs));
    const auto reps = frag.all();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      out.add("rep", inline_of(source, sig, "r" + std::to_string(i), *reps[i]));
      out.add("order", join_ints(r->orders[i]));
    }
  } else if (const auto* w = std::get_if<FailureWitness>(&outcome.result)) {
    out.add("a_size", std::to_string(w->a.size()));
    out.add("b_size", std::to_string(w->b.size()));
    out.add("a", inline_of(source, sig, "a", w->a));
    out.add("b", inline_of(source, sig, "b", w->b));
    out.add("type_index", std::to_string(w->type_index));
    out.add("origin", w->origin);
    out.add("cycle", join_ints(w->cycle));
    if (!w->second_cycle.empty()) out.add("second_cycle", join_ints(w->second_cycle));
    emit_rule(out, w->rule, source, sig);
    out.add("scope", "representatives up to bound " + std::to_string(outcome.bound));
  } else {
    out.add("reason", std::get<Inconclusive>(outcome.result).reason);
  }
  return out.text;
}

std::string human_decision(const DecisionOutcome& outcome, const ClassFragment& frag,
                           const ClassSource& source) {
  std::ostringstream out;
  out << "class " << source.id << ", bound " << outcome.bound << ", " << frag.total()
      << " representatives\n";
  out << "2-element types (processing order): " << outcome.type_order.size() << "\n";
  for (std::size_t t = 0; t < outcome.type_order.size(); ++t) {
    out << "  type " << t << ": "
        << inline_structure(source.signature_name, frag.signature(), "t" + std::to_string(t),
                            outcome.type_order[t])
        << "\n";
  }
  if (!outcome.fully_rigid) out << "note: some representatives have non-trivial automorphisms\n";
  for (const auto& s : outcome.steps) {
    out << "  step: type " << s.type << " via " << s.how << ", sign " << to_string(s.sign) << "\n";
  }
  if (const auto* r = std::get_if<OrderReduct>(&outcome.result)) {
    out << "result: total-order reduct, signs [" << signs_text(r->assignment.signs) << "]\n";
    const auto reps = frag.all();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      out << "  rep " << i << " (size " << reps[i]->size() << "): order " << join_ints(r->orders[i])
          << "\n";
    }
  } else if (const auto* w = std::get_if<FailureWitness>(&outcome.result)) {
    out << "result: Ramsey property fails (" << w->origin << ")\n";
    out << "  A (" << w->a.size() << " elements): "
        << inline_structure(source.signature_name, frag.signature(), "a", w->a) << "\n";
    out << "  B (" << w->b.size() << " elements): "
        << inline_structure(source.signature_name, frag.signature(), "b", w->b) << "\n";
    out << "  cycle: " << join_ints(w->cycle) << "\n";
    if (!w->second_cycle.empty()) out << "  second cycle: " << join_ints(w->second_cycle) << "\n";
    out << "  coloring rule: " << to_string(w->rule.kind) << ", colored sign "
        << to_string(w->rule.colored_sign) << "\n";
  } else {
    out << "result: inconclusive: " << std::get<Inconclusive>(outcome.result).reason << "\n";
  }
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  Certificate cert;
  bool have_rule = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ParseError,
                  "certificate line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = line.substr(0, eq);
    const std::string_view value = line.substr(eq + 1);
    auto structure = [&] {
      auto file = parse_inline(value);
      return file.structures.front().structure;
    };
    if (key == "outcome") {
      cert.outcome = std::string(value);
    } else if (key == "class") {
      cert.class_id = std::string(value);
    } else if (key == "bound") {
      std::from_chars(value.data(), value.data() + value.size(), cert.bound);
    } else if (key == "a") {
      cert.a = structure();
    } else if (key == "b") {
      cert.b = structure();
    } else if (key == "rule") {
      auto k = parse_rule(value);
      if (!k) throw Error(ErrorKind::ParseError, "unknown rule '" + std::string(value) + "'");
      cert.rule.kind = *k;
      have_rule = true;
    } else if (key == "colored_sign" || key == "prefix_sign") {
      auto s = parse_sign(value);
      if (!s) throw Error(ErrorKind::ParseError, "unknown sign '" + std::string(value) + "'");
      if (key == "colored_sign") {
        cert.rule.colored_sign = *s;
      } else {
        cert.rule.prefix_signs.push_back(*s);
      }
    } else if (key == "prefix_type") {
      cert.rule.prefix_types.push_back(structure());
    } else if (key == "reason") {
      cert.reason = std::string(value);
    }
  }
  if (cert.outcome == "failure" && (!cert.a || !cert.b || !have_rule)) {
    throw Error(ErrorKind::ParseError, "failure certificate lacks a, b or rule");
  }
  return cert;
}

}  // namespace ramseyforge
