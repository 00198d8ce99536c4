#pragma once

// Line-oriented text format for squares categories (`.sqcat`):
//
//   # comment
//   category finset1
//   objects: 0 1
//   basepoint: 0
//   e-morph inj_0_1 : 0 -> 1
//   e-compose h = g . f          (f first)
//   m-morph inj_0_1 : 0 -> 1
//   square <top> <left> <right> <bottom>
//
// Every object X carries an implicit identity `id_X` in both E and M, with its
// unit-law composites filled in wherever no explicit entry is given.

#include <cctype>
#include <cstddef>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqk/category.hpp"
#include "sqk/closure.hpp"
#include "sqk/error.hpp"
#include "sqk/squares.hpp"

namespace sqk {

struct Statement {
  enum class Kind { objects, basepoint, e_morph, m_morph, e_compose, m_compose, square };

  Kind kind = Kind::objects;
  // objects: names; basepoint: {obj}; *-morph: {id, src, dst};
  // *-compose: {result, second, first}; square: {top, left, right, bottom}
  std::vector<std::string> ids;

  bool operator==(const Statement&) const = default;
};

struct SqcatDocument {
  std::string name;
  std::vector<Statement> declarations;

  bool operator==(const SqcatDocument&) const = default;
};

namespace detail {

struct Token {
  enum class Kind { word, colon, arrow, equals, dot };
  Kind kind;
  std::string text;
  std::size_t column;
};

inline bool is_id_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_id_char(c)) return false;
  return true;
}

inline std::vector<Token> tokenize_line(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (is_id_char(c)) {
      std::size_t j = i;
      while (j < line.size() &&
             (is_id_char(line[j]) ||
              (line[j] == '-' && j + 1 < line.size() && std::isalpha(static_cast<unsigned char>(line[j + 1])))))
        ++j;
      out.push_back({Token::Kind::word, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (c == ':') {
      out.push_back({Token::Kind::colon, ":", col});
      ++i;
    } else if (c == '=') {
      out.push_back({Token::Kind::equals, "=", col});
      ++i;
    } else if (c == '.') {
      out.push_back({Token::Kind::dot, ".", col});
      ++i;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Token::Kind::arrow, "->", col});
      i += 2;
    } else {
      throw ParseError("parse-error", "unexpected character '" + std::string(1, c) + "'", lineno, col,
                       {"identifier", "':'", "'->'", "'='", "'.'"});
    }
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t lineno, std::size_t end_column)
      : tokens_(std::move(tokens)), lineno_(lineno), end_column_(end_column) {}

  std::size_t column() const { return pos_ < tokens_.size() ? tokens_[pos_].column : end_column_; }
  bool at_end() const { return pos_ == tokens_.size(); }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    const std::string found = at_end() ? "end of line" : "'" + tokens_[pos_].text + "'";
    throw ParseError("parse-error", what + ", found " + found, lineno_, column(), std::move(expected));
  }

  std::pair<std::string, std::size_t> identifier() {
    if (at_end() || tokens_[pos_].kind != Token::Kind::word || !is_identifier(tokens_[pos_].text))
      fail("expected an identifier", {"identifier"});
    const Token& t = tokens_[pos_++];
    return {t.text, t.column};
  }

  void expect(Token::Kind kind, const char* shown) {
    if (at_end() || tokens_[pos_].kind != kind) fail(std::string("expected ") + shown, {shown});
    ++pos_;
  }

  void skip() { ++pos_; }

  void end() {
    if (!at_end()) fail("expected end of line", {"end of line"});
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t lineno_;
  std::size_t end_column_;
};

inline const std::map<std::string_view, Statement::Kind>& statement_keywords() {
  static const std::map<std::string_view, Statement::Kind> k{
      {"objects", Statement::Kind::objects},     {"basepoint", Statement::Kind::basepoint},
      {"e-morph", Statement::Kind::e_morph},     {"m-morph", Statement::Kind::m_morph},
      {"e-compose", Statement::Kind::e_compose}, {"m-compose", Statement::Kind::m_compose},
      {"square", Statement::Kind::square}};
  return k;
}

}  // namespace detail

/// `generating` documents describe one ambient category with e-morph and
/// e-compose only; all four sides of each square name ambient morphisms.
enum class DocumentMode { category, generating };

/// Parses a `.sqcat` document, checking declaration order and uniqueness.
/// Every failure is a `ParseError`; `code()` is one of parse-error,
/// duplicate-id, unknown-id, missing-basepoint.
inline SqcatDocument parse_sqcat(std::string_view text, DocumentMode mode = DocumentMode::category) {
  using detail::Token;
  SqcatDocument doc;
  bool have_name = false;
  std::optional<std::string> basepoint;
  std::set<std::string> objects;
  std::set<std::string> e_ids, m_ids;
  std::set<std::pair<std::string, std::string>> e_pairs, m_pairs;

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    const bool last = stop == text.size();
    start = stop + 1;

    auto tokens = detail::tokenize_line(line, lineno);
    if (tokens.empty()) {
      if (last) break;
      continue;
    }
    const Token head = tokens.front();
    detail::LineParser p(std::move(tokens), lineno, line.size() + 1);
    auto dup = [&](const std::string& what, std::size_t col) {
      throw ParseError("duplicate-id", what + " declared twice", lineno, col);
    };
    auto unknown = [&](const std::string& what, std::size_t col) {
      throw ParseError("unknown-id", what + " is not declared", lineno, col);
    };

    if (!have_name) {
      if (head.kind != Token::Kind::word || head.text != "category")
        p.fail("expected the category header", {"'category'"});
      p.skip();
      doc.name = p.identifier().first;
      p.end();
      have_name = true;
      if (last) break;
      continue;
    }

    const auto& keywords = detail::statement_keywords();
    auto kw = head.kind == Token::Kind::word ? keywords.find(head.text) : keywords.end();
    if (kw == keywords.end()) {
      if (head.kind == Token::Kind::word && head.text == "category")
        throw ParseError("duplicate-id", "category header repeated", lineno, head.column);
      p.fail("expected a statement",
             {"'objects'", "'basepoint'", "'e-morph'", "'m-morph'", "'e-compose'", "'m-compose'", "'square'"});
    }
    if (mode == DocumentMode::generating &&
        (kw->second == Statement::Kind::m_morph || kw->second == Statement::Kind::m_compose))
      p.fail("generating documents declare ambient morphisms only",
             {"'objects'", "'basepoint'", "'e-morph'", "'e-compose'", "'square'"});
    p.skip();
    Statement st{kw->second, {}};
    const bool e_side = st.kind == Statement::Kind::e_morph || st.kind == Statement::Kind::e_compose;
    auto& ids = e_side ? e_ids : m_ids;

    switch (st.kind) {
      case Statement::Kind::objects: {
        p.expect(Token::Kind::colon, "':'");
        do {
          auto [name, col] = p.identifier();
          if (!objects.insert(name).second) dup("object '" + name + "'", col);
          for (auto* space : {&e_ids, &m_ids})
            if (!space->insert(identity_name(name)).second) dup("morphism '" + identity_name(name) + "'", col);
          st.ids.push_back(name);
        } while (!p.at_end());
        break;
      }
      case Statement::Kind::basepoint: {
        p.expect(Token::Kind::colon, "':'");
        auto [name, col] = p.identifier();
        if (basepoint) dup("basepoint", col);
        if (!objects.contains(name)) unknown("object '" + name + "'", col);
        basepoint = name;
        st.ids.push_back(name);
        break;
      }
      case Statement::Kind::e_morph:
      case Statement::Kind::m_morph: {
        auto [id, id_col] = p.identifier();
        p.expect(Token::Kind::colon, "':'");
        auto [src, src_col] = p.identifier();
        p.expect(Token::Kind::arrow, "'->'");
        auto [dst, dst_col] = p.identifier();
        if (!objects.contains(src)) unknown("object '" + src + "'", src_col);
        if (!objects.contains(dst)) unknown("object '" + dst + "'", dst_col);
        if (!ids.insert(id).second) dup("morphism '" + id + "'", id_col);
        st.ids = {id, src, dst};
        break;
      }
      case Statement::Kind::e_compose:
      case Statement::Kind::m_compose: {
        auto [result, rcol] = p.identifier();
        p.expect(Token::Kind::equals, "'='");
        auto [second, scol] = p.identifier();
        p.expect(Token::Kind::dot, "'.'");
        auto [first, fcol] = p.identifier();
        for (const auto& [id, col] : {std::pair{result, rcol}, std::pair{second, scol}, std::pair{first, fcol}})
          if (!ids.contains(id)) unknown("morphism '" + id + "'", col);
        auto& pairs = e_side ? e_pairs : m_pairs;
        if (!pairs.emplace(first, second).second) dup("composite " + second + " . " + first, rcol);
        st.ids = {result, second, first};
        break;
      }
      case Statement::Kind::square: {
        for (int k = 0; k < 4; ++k) {
          auto [id, col] = p.identifier();
          const auto& space = (mode == DocumentMode::category && (k == 0 || k == 3)) ? m_ids : e_ids;
          if (!space.contains(id)) unknown("morphism '" + id + "'", col);
          st.ids.push_back(id);
        }
        break;
      }
    }
    p.end();
    doc.declarations.push_back(std::move(st));
    if (last) break;
  }
  if (!have_name)
    throw ParseError("parse-error", "empty document", lineno == 0 ? 1 : lineno, 1, {"'category'"});
  if (!basepoint) throw ParseError("missing-basepoint", "no basepoint declared", lineno, 1, {"'basepoint'"});
  return doc;
}

inline SqcatDocument parse_sqcat(std::istream& in, DocumentMode mode = DocumentMode::category) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_sqcat(text, mode);
}

/// Canonical text of a document (LF line endings, one statement per line).
inline std::string serialize(const SqcatDocument& doc) {
  std::ostringstream out;
  out << "category " << doc.name << '\n';
  for (const Statement& st : doc.declarations) {
    const auto& v = st.ids;
    switch (st.kind) {
      case Statement::Kind::objects:
        out << "objects:";
        for (const auto& o : v) out << ' ' << o;
        out << '\n';
        break;
      case Statement::Kind::basepoint:
        out << "basepoint: " << v[0] << '\n';
        break;
      case Statement::Kind::e_morph:
      case Statement::Kind::m_morph:
        out << (st.kind == Statement::Kind::e_morph ? "e-morph " : "m-morph ") << v[0] << " : " << v[1] << " -> "
            << v[2] << '\n';
        break;
      case Statement::Kind::e_compose:
      case Statement::Kind::m_compose:
        out << (st.kind == Statement::Kind::e_compose ? "e-compose " : "m-compose ") << v[0] << " = " << v[1]
            << " . " << v[2] << '\n';
        break;
      case Statement::Kind::square:
        out << "square " << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << v[3] << '\n';
        break;
    }
  }
  return out.str();
}

namespace detail {

inline std::string document_basepoint(const SqcatDocument& doc) {
  for (const Statement& st : doc.declarations)
    if (st.kind == Statement::Kind::basepoint) return st.ids[0];
  throw Error("missing-basepoint", "no basepoint declared");
}

inline FiniteCategory::Builder side_builder(const SqcatDocument& doc, Statement::Kind morph,
                                            Statement::Kind compose) {
  FiniteCategory::Builder b;
  for (const Statement& st : doc.declarations) {
    if (st.kind == Statement::Kind::objects)
      for (const auto& o : st.ids) b.add_object(o);
    else if (st.kind == morph)
      b.add_morphism(st.ids[0], st.ids[1], st.ids[2]);
    else if (st.kind == compose)
      b.set_composite(st.ids[2], st.ids[1], st.ids[0]);
  }
  b.add_implicit_identities();
  return b;
}

}  // namespace detail

/// Builds the squares category a document describes. The result is not
/// validated.
inline SquaresCategory elaborate(const SqcatDocument& doc) {
  using K = Statement::Kind;
  FiniteCategory ecat = detail::side_builder(doc, K::e_morph, K::e_compose).build();
  FiniteCategory mcat = detail::side_builder(doc, K::m_morph, K::m_compose).build();
  std::vector<Square> squares;
  for (const Statement& st : doc.declarations)
    if (st.kind == K::square)
      squares.push_back({mcat.morphism(st.ids[0]), ecat.morphism(st.ids[1]), ecat.morphism(st.ids[2]),
                         mcat.morphism(st.ids[3])});
  return SquaresCategory(std::move(ecat), std::move(mcat), std::move(squares), detail::document_basepoint(doc));
}

/// Reads a generating document: `e-morph`/`e-compose` describe the ambient
/// category and each `square` is a generator whose four sides are ambient
/// morphisms.
inline GeneratingData elaborate_generating(const SqcatDocument& doc) {
  using K = Statement::Kind;
  GeneratingData g;
  for (const Statement& st : doc.declarations)
    if (st.kind == K::m_morph || st.kind == K::m_compose)
      throw Error("invalid-generating-data", "generating documents declare ambient morphisms with e-morph only");
  g.ambient = detail::side_builder(doc, K::e_morph, K::e_compose).build();
  for (const Statement& st : doc.declarations)
    if (st.kind == K::square)
      g.gens.push_back({g.ambient.morphism(st.ids[0]), g.ambient.morphism(st.ids[1]),
                        g.ambient.morphism(st.ids[2]), g.ambient.morphism(st.ids[3])});
  g.basepoint = detail::document_basepoint(doc);
  return g;
}

namespace detail {

inline void emit_side(SqcatDocument& doc, const FiniteCategory& c, Statement::Kind morph,
                      Statement::Kind compose, const char* tag) {
  for (Index o = 0; o < c.object_count(); ++o) {
    auto id = c.identity(o);
    if (!id || c.morphism_name(*id) != identity_name(c.object_name(o)))
      throw Error("unrepresentable", std::string(tag) + ": identity of '" + c.object_name(o) + "' is not named " +
                                         identity_name(c.object_name(o)));
  }
  auto implicit = [&](Index m) { return c.is_identity(m); };
  for (Index m = 0; m < c.morphism_count(); ++m)
    if (!implicit(m))
      doc.declarations.push_back(
          {morph, {c.morphism_name(m), c.object_name(c.src(m)), c.object_name(c.dst(m))}});
  for (const auto& [f, g, r] : c.composition_entries()) {
    if ((implicit(f) && c.src(g) == c.src(f) && r == g) || (implicit(g) && c.dst(f) == c.src(g) && r == f)) continue;
    doc.declarations.push_back({compose, {c.morphism_name(r), c.morphism_name(g), c.morphism_name(f)}});
  }
}

}  // namespace detail

/// Canonical document for `sq`: objects, basepoint, E, M, then squares, each
/// in canonical order. Implicit identities and unit composites are omitted.
inline SqcatDocument to_document(const SquaresCategory& sq, std::string name) {
  using K = Statement::Kind;
  if (!detail::is_identifier(name)) throw Error("invalid-name", "category name must be an identifier");
  if (!sq.same_objects()) throw Error("unrepresentable", "E and M have different objects");
  if (!sq.basepoint_name()) throw Error("no-basepoint", "category has no basepoint");
  SqcatDocument doc{std::move(name), {}};
  doc.declarations.push_back({K::objects, {sq.objects().begin(), sq.objects().end()}});
  doc.declarations.push_back({K::basepoint, {*sq.basepoint_name()}});
  detail::emit_side(doc, sq.ecat(), K::e_morph, K::e_compose, "E");
  detail::emit_side(doc, sq.mcat(), K::m_morph, K::m_compose, "M");
  for (const Square& s : sq.distinguished()) doc.declarations.push_back({K::square, sq.square_ids(s)});
  return doc;
}

}  // namespace sqk
