#include "refgen/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "refgen/error.hpp"

namespace refgen {

std::string Diagnostic::to_string() const {
  std::string out;
  if (line) {
    out += "line " + std::to_string(line);
    if (column) out += ", column " + std::to_string(column);
    out += ": ";
  }
  return out + message;
}

namespace {

std::string join(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += d.to_string();
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

// ------------------------------------------------------------------ parsing

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = offset;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

// Characters that would make a name ambiguous in one of the output formats.
bool valid_symbol(std::string_view s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ':' || c == '=' || c == '(' || c == ')' || c == '*' || c == '#' ||
           c == '/' || std::iscntrl(static_cast<unsigned char>(c));
  });
}

enum class Block { none, taxonomy, entity, hearer };

class SceneParser {
 public:
  explicit SceneParser(std::string_view text) : text_(text) {}

  SceneDocument run(std::string source) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      ++line_no;
      parse_line(line, line_no);
      if (end == text_.size()) break;
      pos = end + 1;
    }
    finish();

    SceneDocument doc;
    doc.source = std::move(source);
    doc.diagnostics = std::move(errors_);
    if (doc.diagnostics.empty()) {
      for (const auto& v : check_scene(scene_)) {
        Diagnostic d{line_for(v), 0, v.to_string()};
        (v.severity == Severity::error ? doc.diagnostics : doc.warnings).push_back(d);
      }
    }
    doc.scene = std::move(scene_);
    return doc;
  }

 private:
  void error(std::size_t line, std::size_t column, std::string message) {
    errors_.push_back({line, column, std::move(message)});
  }

  bool symbol(const Token& t, std::size_t line, const char* what) {
    if (valid_symbol(t.text)) return true;
    error(line, t.column, std::string("invalid ") + what + " '" + t.text + "'");
    return false;
  }

  void parse_line(std::string_view line, std::size_t n) {
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.remove_suffix(1);
    std::size_t indent = 0;
    while (indent < line.size() && (line[indent] == ' ' || line[indent] == '\t')) {
      if (line[indent] == '\t') {
        error(n, indent + 1, "tab character in indentation; indent with two spaces");
        return;
      }
      ++indent;
    }
    if (indent == line.size() || line[indent] == '#') return;
    if (indent % 2) {
      error(n, indent + 1, "indentation must be a multiple of two spaces");
      return;
    }
    auto tokens = split(line, indent);
    if (indent == 0)
      top_level(tokens, n);
    else
      nested(tokens, indent / 2, n);
  }

  void top_level(const std::vector<Token>& tokens, std::size_t n) {
    const std::string& kw = tokens[0].text;
    auto expect_args = [&](std::size_t count) {
      if (tokens.size() == count + 1) return true;
      std::size_t col = tokens.size() > count + 1 ? tokens[count + 1].column
                                                  : tokens.back().column + tokens.back().text.size();
      error(n, col, "expected " + std::to_string(count) + " argument(s) after '" + kw + "'");
      return false;
    };
    block_ = Block::none;
    if (kw == "taxonomy") {
      if (!expect_args(1) || !symbol(tokens[1], n, "attribute name")) return;
      AttributeName attr{tokens[1].text};
      if (declared_taxonomies_.count(attr)) {
        error(n, tokens[1].column, "taxonomy '" + attr.str() + "' declared twice");
        return;
      }
      declared_taxonomies_.insert(attr);
      taxonomy_lines_[attr.str()] = n;
      current_attribute_ = attr;
      scene_.taxonomy_for(attr);
      stack_.clear();
      block_ = Block::taxonomy;
    } else if (kw == "entity") {
      if (!expect_args(1) || !symbol(tokens[1], n, "entity id")) return;
      entities_.push_back({EntityId{tokens[1].text}, {}});
      entity_lines_[tokens[1].text] = n;
      block_ = Block::entity;
    } else if (kw == "preferred") {
      if (preferred_line_) {
        error(n, 1, "'preferred' declared twice (first on line " +
                        std::to_string(preferred_line_) + ")");
        return;
      }
      if (tokens.size() < 2) {
        error(n, kw.size() + 1, "expected at least one attribute after 'preferred'");
        return;
      }
      preferred_line_ = n;
      std::vector<AttributeName> preferred;
      for (std::size_t i = 1; i < tokens.size(); ++i)
        if (symbol(tokens[i], n, "attribute name")) preferred.emplace_back(tokens[i].text);
      scene_.set_preferred(std::move(preferred));
    } else if (kw == "hearer") {
      if (hearer_line_) {
        error(n, 1, "'hearer' declared twice (first on line " + std::to_string(hearer_line_) + ")");
        return;
      }
      if (!expect_args(1)) return;
      auto mode = parse_hearer_mode(tokens[1].text);
      if (!mode) {
        error(n, tokens[1].column,
              "unknown hearer mode '" + tokens[1].text +
                  "'; expected perceptual, depth-limited or explicit");
        return;
      }
      hearer_line_ = n;
      hearer_.mode = *mode;
      block_ = Block::hearer;
    } else {
      error(n, 1, "expected 'taxonomy', 'entity', 'preferred' or 'hearer', found '" + kw + "'");
    }
  }

  void nested(const std::vector<Token>& tokens, std::size_t level, std::size_t n) {
    switch (block_) {
      case Block::none:
        error(n, level * 2 + 1, "indented line outside a taxonomy, entity or hearer block");
        return;
      case Block::taxonomy:
        return taxonomy_line(tokens, level, n);
      case Block::entity:
        return entity_line(tokens, level, n);
      case Block::hearer:
        return hearer_line(tokens, level, n);
    }
  }

  void taxonomy_line(const std::vector<Token>& tokens, std::size_t level, std::size_t n) {
    if (tokens.size() != 1) {
      error(n, tokens[1].column, "expected one value per taxonomy line");
      return;
    }
    if (level > stack_.size() + 1) {
      error(n, tokens[0].column, "indentation skips a taxonomy level");
      return;
    }
    std::string text = tokens[0].text;
    bool basic = false;
    if (text.size() > 1 && text.back() == '*') {
      basic = true;
      text.pop_back();
    }
    if (!symbol({text, tokens[0].column}, n, "value")) return;
    ValueName value{text};
    stack_.resize(level - 1);
    std::optional<ValueName> parent;
    if (!stack_.empty()) parent = stack_.back();
    scene_.taxonomy_for(current_attribute_).add(value, parent, basic);
    stack_.push_back(value);
  }

  void entity_line(const std::vector<Token>& tokens, std::size_t level, std::size_t n) {
    if (level != 1) {
      error(n, tokens[0].column, "entity properties are indented exactly two spaces");
      return;
    }
    if (tokens.size() != 2) {
      error(n, tokens[0].column, "expected '<attribute> <value>'");
      return;
    }
    if (!symbol(tokens[0], n, "attribute name") || !symbol(tokens[1], n, "value")) return;
    entities_.back().properties.emplace_back(AttributeName{tokens[0].text},
                                             ValueName{tokens[1].text});
  }

  void hearer_line(const std::vector<Token>& tokens, std::size_t level, std::size_t n) {
    if (level != 1) {
      error(n, tokens[0].column, "hearer entries are indented exactly two spaces");
      return;
    }
    const std::string& head = tokens[0].text;
    if (head.size() > 1 && head.back() == ':') {
      std::string attr = head.substr(0, head.size() - 1);
      if (!symbol({attr, tokens[0].column}, n, "attribute name")) return;
      auto& values = hearer_.distinguishable[AttributeName{attr}];
      for (std::size_t i = 1; i < tokens.size(); ++i)
        if (symbol(tokens[i], n, "value")) values.insert(ValueName{tokens[i].text});
    } else if (head == "knows") {
      if (tokens.size() != 5 || (tokens[4].text != "true" && tokens[4].text != "false")) {
        error(n, tokens[0].column, "expected 'knows <entity> <attribute> <value> true|false'");
        return;
      }
      for (std::size_t i = 1; i < 4; ++i)
        if (!symbol(tokens[i], n, "name")) return;
      hearer_.known_facts[{EntityId{tokens[1].text}, AttributeName{tokens[2].text},
                           ValueName{tokens[3].text}}] = tokens[4].text == "true";
    } else if (head == "basic") {
      if (tokens.size() != 3 && tokens.size() != 4) {
        error(n, tokens[0].column, "expected 'basic [<entity>] <attribute> <value>'");
        return;
      }
      for (std::size_t i = 1; i < tokens.size(); ++i)
        if (!symbol(tokens[i], n, "name")) return;
      const bool scoped = tokens.size() == 4;
      EntityId id{scoped ? tokens[1].text : std::string()};
      hearer_.basic_overrides[{id, AttributeName{tokens[scoped ? 2 : 1].text}}] =
          ValueName{tokens[scoped ? 3 : 2].text};
    } else {
      error(n, tokens[0].column,
            "expected '<attribute>:', 'knows' or 'basic' in hearer block, found '" + head + "'");
    }
  }

  void finish() {
    // Attributes used without a taxonomy block get a flat one.
    for (const auto& e : entities_) {
      for (const auto& [attr, value] : e.properties) {
        if (declared_taxonomies_.count(attr)) continue;
        scene_.taxonomy_for(attr).add(value);
      }
    }
    for (auto& e : entities_) scene_.add_entity(std::move(e));
    scene_.set_hearer(std::move(hearer_));
  }

  std::size_t line_for(const Violation& v) const {
    static const std::set<std::string> kPreferred = {"empty-preferred", "duplicate-preferred",
                                                     "unknown-preferred", "preferred-missing-type"};
    if (kPreferred.count(v.code)) return preferred_line_;
    if (v.code.rfind("hearer-", 0) == 0 || v.code == "invalid-basic-override" ||
        v.code == "override-contradicts-scene")
      return hearer_line_;
    if (!v.args.empty()) {
      if (auto it = entity_lines_.find(v.args[0]); it != entity_lines_.end()) return it->second;
      if (auto it = taxonomy_lines_.find(v.args[0]); it != taxonomy_lines_.end()) return it->second;
    }
    return 0;
  }

  std::string_view text_;
  Scene scene_;
  HearerModel hearer_;
  std::vector<Entity> entities_;
  std::vector<Diagnostic> errors_;
  Block block_ = Block::none;
  AttributeName current_attribute_;
  std::vector<ValueName> stack_;
  std::set<AttributeName> declared_taxonomies_;
  std::map<std::string, std::size_t> entity_lines_;
  std::map<std::string, std::size_t> taxonomy_lines_;
  std::size_t preferred_line_ = 0;
  std::size_t hearer_line_ = 0;
};

}  // namespace

SceneDocument load_scene_document(std::string source) {
  std::string text = source;
  return SceneParser(text).run(std::move(source));
}

Scene parse_scene(std::string_view text) {
  SceneDocument doc = load_scene_document(std::string(text));
  if (!doc.ok()) throw ParseError(std::move(doc.diagnostics));
  return std::move(doc.scene);
}

// ------------------------------------------------------------ serialization

namespace {

void write_subtree(std::ostringstream& out, const Taxonomy& t, const ValueName& v,
                   std::size_t depth) {
  out << std::string(2 * depth, ' ') << v.str() << (t.is_basic(v) ? "*" : "") << '\n';
  for (const auto& c : t.children(v)) write_subtree(out, t, c, depth + 1);
}

}  // namespace

std::string serialize_scene(const Scene& scene) {
  std::ostringstream out;
  for (const auto& t : scene.taxonomies()) {
    out << "taxonomy " << t.attribute().str() << '\n';
    for (const auto& r : t.roots()) write_subtree(out, t, r, 1);
  }
  for (const auto& e : scene.entities()) {
    out << "entity " << e.id.str() << '\n';
    for (const auto& [a, v] : e.properties) out << "  " << a.str() << ' ' << v.str() << '\n';
  }
  if (!scene.preferred_attributes().empty()) {
    out << "preferred";
    for (const auto& a : scene.preferred_attributes()) out << ' ' << a.str();
    out << '\n';
  }
  const HearerModel& h = scene.hearer();
  if (h != HearerModel{}) {
    out << "hearer " << to_string(h.mode) << '\n';
    for (const auto& [attr, values] : h.distinguishable) {
      out << "  " << attr.str() << ':';
      for (const auto& v : values) out << ' ' << v.str();
      out << '\n';
    }
    for (const auto& [key, known] : h.known_facts) {
      const auto& [id, attr, value] = key;
      out << "  knows " << id.str() << ' ' << attr.str() << ' ' << value.str() << ' '
          << (known ? "true" : "false") << '\n';
    }
    for (const auto& [key, value] : h.basic_overrides) {
      out << "  basic ";
      if (!key.first.empty()) out << key.first.str() << ' ';
      out << key.second.str() << ' ' << value.str() << '\n';
    }
  }
  return out.str();
}

std::string serialize_pairs(const Description& description) {
  std::string out;
  for (const auto& p : description.pairs) {
    if (!out.empty()) out += '\n';
    out += p.attribute.str() + "=" + (p.value ? p.value->str() : std::string("no-value"));
  }
  return out;
}

// --------------------------------------------------------------------- SPL

namespace {

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// X, Y, Z, X1, Y1, Z1, X2, ...
std::string spl_variable(std::size_t index) {
  std::string name(1, "XYZ"[index % 3]);
  if (index >= 3) name += std::to_string(index / 3);
  return name;
}

const AttributeValuePair& require_type(const Description& description, const char* what) {
  const AttributeValuePair* type = description.find(kTypeAttribute);
  if (!type || type->is_no_value())
    throw Error(ErrorCode::precondition,
                std::string(what) + " needs a type pair; call ensure_head_noun first");
  return *type;
}

}  // namespace

SplTerm to_spl_term(const Description& description) {
  const AttributeValuePair& type = require_type(description, "SPL serialization");
  std::size_t next = 0;
  SplTerm term;
  term.variable = spl_variable(next++);
  term.head = capitalize(type.value->str());
  for (const auto& p : description.pairs) {
    if (p.attribute == kTypeAttribute) continue;
    SplRelation rel;
    rel.variable = spl_variable(next++);
    rel.head = capitalize(p.attribute.str());
    rel.domain = term.variable;
    rel.range_variable = spl_variable(next++);
    rel.range_head = capitalize(p.value ? p.value->str() : std::string("no-value"));
    term.relations.push_back(std::move(rel));
  }
  return term;
}

std::string serialize_spl(const SplTerm& term) {
  std::string out = "(" + term.variable + " / " + term.head + "\n    :determiner " +
                    term.determiner;
  if (!term.relations.empty()) {
    const std::string lead = "    :relations (";
    out += "\n" + lead;
    for (std::size_t i = 0; i < term.relations.size(); ++i) {
      const auto& r = term.relations[i];
      // Continuation lines sit four spaces deeper than the line the
      // relation opens on.
      const std::size_t indent = i == 0 ? 4 : lead.size();
      const std::string cont(indent + 4, ' ');
      if (i) out += "\n" + std::string(lead.size(), ' ');
      out += "(" + r.variable + " / " + r.head + "\n" + cont + ":domain " + r.domain + "\n" +
             cont + ":range (" + r.range_variable + " / " + r.range_head + "))";
    }
    out += ")";
  }
  return out + ")";
}

std::string serialize_spl(const Description& description) {
  return serialize_spl(to_spl_term(description));
}

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  SExpr read_all() {
    SExpr e = read();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::syntax, "SPL: " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    SExpr e;
    if (text_[pos_] == '(') {
      ++pos_;
      e.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) fail("unterminated list");
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (text_[pos_] == ')') fail("unexpected ')'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void spl_fail(const std::string& what) {
  throw Error(ErrorCode::syntax, "SPL: " + what);
}

const std::string& atom(const SExpr& e, const char* what) {
  if (e.is_list) spl_fail(std::string("expected ") + what);
  return e.atom;
}

// (VAR / HEAD rest...) -> rest offset
std::size_t read_head(const SExpr& e, std::string& variable, std::string& head) {
  if (!e.is_list || e.list.size() < 3 || atom(e.list[1], "'/'") != "/")
    spl_fail("expected (<variable> / <head> ...)");
  variable = atom(e.list[0], "variable");
  head = atom(e.list[2], "head");
  return 3;
}

}  // namespace

SplTerm parse_spl(std::string_view text) {
  SExpr root = SExprReader(text).read_all();
  SplTerm term;
  term.determiner.clear();
  std::size_t i = read_head(root, term.variable, term.head);
  for (; i < root.list.size(); i += 2) {
    const std::string& key = atom(root.list[i], "keyword");
    if (i + 1 >= root.list.size()) spl_fail("keyword " + key + " without value");
    const SExpr& value = root.list[i + 1];
    if (key == ":determiner") {
      term.determiner = atom(value, "determiner");
    } else if (key == ":relations") {
      if (!value.is_list) spl_fail(":relations expects a list");
      for (const auto& r : value.list) {
        SplRelation rel;
        std::size_t j = read_head(r, rel.variable, rel.head);
        for (; j < r.list.size(); j += 2) {
          const std::string& k = atom(r.list[j], "keyword");
          if (j + 1 >= r.list.size()) spl_fail("keyword " + k + " without value");
          if (k == ":domain") {
            rel.domain = atom(r.list[j + 1], "domain variable");
          } else if (k == ":range") {
            if (read_head(r.list[j + 1], rel.range_variable, rel.range_head) !=
                r.list[j + 1].list.size())
              spl_fail("range term takes no keywords");
          } else {
            spl_fail("unknown relation keyword " + k);
          }
        }
        term.relations.push_back(std::move(rel));
      }
    } else {
      spl_fail("unknown keyword " + key);
    }
  }
  return term;
}

std::string realize_surface(const Description& description) {
  const AttributeValuePair& type = require_type(description, "surface realization");
  std::string out = "the";
  for (auto it = description.pairs.rbegin(); it != description.pairs.rend(); ++it) {
    if (it->attribute == kTypeAttribute || it->is_no_value()) continue;
    out += " " + lowercase(it->value->str());
  }
  return out + " " + lowercase(type.value->str());
}

}  // namespace refgen
