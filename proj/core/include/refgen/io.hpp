#pragma once
// Scene files and description renderings.
//
// Scene DSL, one declaration per line, two spaces per indentation level:
//
//   taxonomy type          values nested by indentation, `*` marks basic level
//     animal
//       dog*
//   entity Object1         one `attribute value` line per property
//     type dog
//   preferred type colour size
//   hearer depth-limited   perceptual | depth-limited | explicit
//     type: dog cat        distinguishable values
//     knows Object1 colour black false
//     basic type dog       (or: basic Object1 type dog)
//
// Blank lines and lines starting with `#` are ignored.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refgen/kb.hpp"

namespace refgen {

struct Diagnostic {
  std::size_t line = 0;    // 1-based, 0 when not tied to a line
  std::size_t column = 0;  // 1-based, 0 when not tied to a column
  std::string message;

  std::string to_string() const;
};

struct SceneDocument {
  std::string source;
  Scene scene;
  std::vector<Diagnostic> diagnostics;  // syntax errors and check_scene errors
  std::vector<Diagnostic> warnings;     // check_scene warnings

  bool ok() const { return diagnostics.empty(); }
};

// Never throws on bad input; everything lands in diagnostics.
SceneDocument load_scene_document(std::string source);

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Throws ParseError unless the text parses and passes check_scene.
Scene parse_scene(std::string_view text);
std::string serialize_scene(const Scene& scene);

// `attribute=value` per line, selection order, no trailing newline.
std::string serialize_pairs(const Description& description);

struct SplRelation {
  std::string variable;
  std::string head;
  std::string domain;
  std::string range_variable;
  std::string range_head;

  bool operator==(const SplRelation&) const = default;
};

struct SplTerm {
  std::string variable;
  std::string head;
  std::string determiner = "definite";
  std::vector<SplRelation> relations;

  bool operator==(const SplTerm&) const = default;
};

// Requires a type pair (see ensure_head_noun); throws precondition otherwise.
SplTerm to_spl_term(const Description& description);
std::string serialize_spl(const SplTerm& term);
std::string serialize_spl(const Description& description);
// Reads back what serialize_spl writes; throws syntax errors.
SplTerm parse_spl(std::string_view text);

// "the" + modifiers (latest selected first) + head noun.
std::string realize_surface(const Description& description);

}  // namespace refgen
