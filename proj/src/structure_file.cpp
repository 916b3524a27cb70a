#include "ramseyforge/structure_file.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace ramseyforge {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view tok, int line, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0) {
    throw FileError(ErrorKind::ParseError, line,
                    "expected a non-negative integer for " + std::string(what) + ", got '" +
                        std::string(tok) + "'");
  }
  return value;
}

struct Pending {
  std::string name;
  int start_line = 0;
  std::optional<int> size;
  TupleSets tuples;
};

}  // namespace

const Structure& StructureFile::get(std::string_view name) const {
  for (const auto& s : structures) {
    if (s.name == name) return s.structure;
  }
  throw Error(ErrorKind::ParseError, "no structure named '" + std::string(name) + "'");
}

StructureFile parse_structure_file(std::string_view text) {
  StructureFile file;
  std::vector<Relation> relations;
  bool have_signature = false;
  bool relations_closed = false;
  std::optional<Pending> open;
  std::set<std::string, std::less<>> names;
  int line_no = 0;
  int last_line = 0;

  auto close_signature = [&](int line) {
    if (relations_closed) return;
    if (!have_signature) throw FileError(ErrorKind::ParseError, line, "expected 'signature'");
    try {
      file.signature = Signature(relations);
    } catch (const Error& e) {
      throw FileError(e.kind(), line, e.what());
    }
    relations_closed = true;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (nl == text.size() && line.empty()) break;
    last_line = line_no;
    auto tok = tokens(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    const std::string_view head = tok[0];

    if (head == "signature") {
      if (have_signature) throw FileError(ErrorKind::ParseError, line_no, "second 'signature'");
      if (tok.size() != 2) throw FileError(ErrorKind::ParseError, line_no, "usage: signature <name>");
      file.signature_name = std::string(tok[1]);
      have_signature = true;
    } else if (head == "relation") {
      if (!have_signature || relations_closed) {
        throw FileError(ErrorKind::ParseError, line_no, "'relation' outside the signature block");
      }
      if (tok.size() != 3) {
        throw FileError(ErrorKind::ParseError, line_no, "usage: relation <name> <arity>");
      }
      relations.push_back({std::string(tok[1]), parse_int(tok[2], line_no, "arity")});
    } else if (head == "structure") {
      close_signature(line_no);
      if (open) throw FileError(ErrorKind::ParseError, line_no, "'structure' before 'end'");
      if (tok.size() != 2) throw FileError(ErrorKind::ParseError, line_no, "usage: structure <name>");
      if (!names.insert(std::string(tok[1])).second) {
        throw FileError(ErrorKind::ParseError, line_no,
                        "duplicate structure name '" + std::string(tok[1]) + "'");
      }
      open = Pending{std::string(tok[1]), line_no, std::nullopt,
                     TupleSets(file.signature.size())};
    } else if (head == "size") {
      if (!open || open->size) {
        throw FileError(ErrorKind::ParseError, line_no, "'size' must follow 'structure' once");
      }
      if (tok.size() != 2) throw FileError(ErrorKind::ParseError, line_no, "usage: size <n>");
      const int n = parse_int(tok[1], line_no, "size");
      if (n == 0) throw FileError(ErrorKind::EmptyUniverse, line_no, "size must be positive");
      open->size = n;
    } else if (head == "tuple") {
      if (!open || !open->size) {
        throw FileError(ErrorKind::ParseError, line_no, "'tuple' outside a sized structure");
      }
      if (tok.size() < 2) throw FileError(ErrorKind::ParseError, line_no, "usage: tuple <rel> ...");
      auto rel = file.signature.find(tok[1]);
      if (!rel) {
        throw FileError(ErrorKind::UnknownRelation, line_no,
                        "unknown relation '" + std::string(tok[1]) + "'");
      }
      const int arity = file.signature[*rel].arity;
      if (static_cast<int>(tok.size()) - 2 != arity) {
        throw FileError(ErrorKind::ArityMismatch, line_no,
                        "relation '" + std::string(tok[1]) + "' has arity " +
                            std::to_string(arity) + ", got " + std::to_string(tok.size() - 2));
      }
      Tuple t;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        const int e = parse_int(tok[i], line_no, "element");
        if (e >= *open->size) {
          throw FileError(ErrorKind::OutOfRangeElement, line_no,
                          "element " + std::to_string(e) + " outside universe of size " +
                              std::to_string(*open->size));
        }
        t.push_back(e);
      }
      for (const auto& existing : open->tuples[*rel]) {
        if (existing == t) throw FileError(ErrorKind::DuplicateTuple, line_no, "duplicate tuple");
      }
      open->tuples[*rel].push_back(std::move(t));
    } else if (head == "end") {
      if (!open || !open->size) {
        throw FileError(ErrorKind::ParseError, line_no, "'end' without a sized structure");
      }
      if (tok.size() != 1) throw FileError(ErrorKind::ParseError, line_no, "'end' takes no arguments");
      try {
        file.structures.push_back({open->name, Structure(file.signature, *open->size, open->tuples)});
      } catch (const Error& e) {
        throw FileError(e.kind(), line_no, e.what());
      }
      open.reset();
    } else {
      throw FileError(ErrorKind::ParseError, line_no,
                      "unknown directive '" + std::string(head) + "'");
    }
  }
  if (open) {
    throw FileError(ErrorKind::ParseError, last_line,
                    "structure '" + open->name + "' is missing 'end'");
  }
  if (!have_signature) throw FileError(ErrorKind::ParseError, last_line, "no signature");
  if (file.structures.empty()) {
    throw FileError(ErrorKind::ParseError, last_line, "no structure blocks");
  }
  return file;
}

StructureFile read_structure_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_structure_file(buf.str());
  } catch (const FileError& e) {
    throw FileError(e.kind(), e.line(), path + ": " + e.what());
  }
}

std::string write_structure_file(const StructureFile& file) {
  std::string out = "signature " + file.signature_name + "\n";
  for (const auto& r : file.signature.relations()) {
    out += "relation " + r.name + " " + std::to_string(r.arity) + "\n";
  }
  for (const auto& [name, s] : file.structures) {
    out += "structure " + name + "\n";
    out += "size " + std::to_string(s.size()) + "\n";
    for (std::size_t rel = 0; rel < s.signature().size(); ++rel) {
      for (const auto& t : s.tuples(rel)) {
        out += "tuple " + s.signature()[rel].name;
        for (int e : t) out += " " + std::to_string(e);
        out += "\n";
      }
    }
    out += "end\n";
  }
  return out;
}

std::string inline_structure(const std::string& signature_name, const Signature& sig,
                             const std::string& name, const Structure& s) {
  std::string text = write_structure_file({signature_name, sig, {{name, s}}});
  text.pop_back();
  for (char& c : text) {
    if (c == '\n') c = ';';
  }
  return text;
}

StructureFile parse_inline(std::string_view text) {
  std::string doc(text);
  for (char& c : doc) {
    if (c == ';') c = '\n';
  }
  return parse_structure_file(doc);
}

}  // namespace ramseyforge
