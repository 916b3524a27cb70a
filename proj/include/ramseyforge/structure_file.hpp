#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ramseyforge/error.hpp"
#include "ramseyforge/structure.hpp"

namespace ramseyforge {

// Error raised while reading a structure file; line() is 1-based.
class FileError : public Error {
 public:
  FileError(ErrorKind kind, int line, const std::string& message)
      : Error(kind, "line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct NamedStructure {
  std::string name;
  Structure structure;
};

struct StructureFile {
  std::string signature_name;
  Signature signature;
  std::vector<NamedStructure> structures;

  // Throws ParseError naming the missing structure.
  const Structure& get(std::string_view name) const;
};

// Grammar:
//   # comment
//   signature <name>
//   relation <rel> <arity>        (one or more)
//   structure <name>              (one or more blocks)
//   size <n>
//   tuple <rel> <e1> ... <ek>
//   end
StructureFile parse_structure_file(std::string_view text);
StructureFile read_structure_file(const std::string& path);

// Canonical text: tuples in signature order, then ascending lexicographic
// order, no comments or blank lines. parse(write(f)) == f and
// write(parse(t)) == t for every t produced by write.
std::string write_structure_file(const StructureFile& file);

// Same document on one line, with ';' in place of newlines.
std::string inline_structure(const std::string& signature_name, const Signature& sig,
                             const std::string& name, const Structure& s);
StructureFile parse_inline(std::string_view text);

}  // namespace ramseyforge
