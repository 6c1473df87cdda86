#pragma once

// Construction language for compact manifolds.
//
//   expr   := term [ "with" "{" [ flag { "," flag } ] "}" ]
//   term   := atom
//           | "product" "(" expr "," expr ")"
//           | "connsum" "(" expr "," expr ")"
//           | "surgery" "(" expr "," int ")"
//           | "bundle"  "(" expr "," int ")"
//   atom   := "sphere" "(" int ")" | "rp" "(" int ")" | "spaceform" "(" int ")"
//           | "torus" "(" int ")" | "circle" | "cp" "(" int ")" | "hp" "(" int ")"
//   flag   := "simply_connected" | "two_connected" | "three_connected"
//           | "non_string" | "b" int
//
// Whitespace is ignored. Errors carry the byte offset of the offending token.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "curvlab/errors.hpp"

namespace curvlab::engine {

enum class AtomKind { Sphere, RP, SpaceForm, Torus, Circle, CP, HP };

/// Facts asserted by the user with a `with {...}` suffix.
struct Flags {
  bool simply_connected = false;
  bool two_connected = false;
  bool three_connected = false;
  bool non_string = false;
  std::set<int> betti_nonzero;
  std::size_t offset = 0;

  bool empty() const {
    return !simply_connected && !two_connected && !three_connected && !non_string &&
           betti_nonzero.empty();
  }
};

struct ManifoldExpr {
  enum class Kind { Atom, Product, ConnSum, Surgery, Bundle };

  Kind kind = Kind::Atom;
  AtomKind atom = AtomKind::Sphere;
  int arg = 0;  // atom parameter, surgery codimension or bundle base dimension
  std::vector<ManifoldExpr> children;
  Flags flags;
  std::size_t offset = 0;
  int dim = 0;
};

inline const char* atom_name(AtomKind a) {
  switch (a) {
    case AtomKind::Sphere: return "sphere";
    case AtomKind::RP: return "rp";
    case AtomKind::SpaceForm: return "spaceform";
    case AtomKind::Torus: return "torus";
    case AtomKind::Circle: return "circle";
    case AtomKind::CP: return "cp";
    case AtomKind::HP: return "hp";
  }
  return "?";
}

/// Canonical text of an expression; parse(to_string(e)) reproduces e.
inline std::string to_string(const ManifoldExpr& e) {
  std::string s;
  switch (e.kind) {
    case ManifoldExpr::Kind::Atom:
      s = atom_name(e.atom);
      if (e.atom != AtomKind::Circle) s += "(" + std::to_string(e.arg) + ")";
      break;
    case ManifoldExpr::Kind::Product:
      s = "product(" + to_string(e.children[0]) + ", " + to_string(e.children[1]) + ")";
      break;
    case ManifoldExpr::Kind::ConnSum:
      s = "connsum(" + to_string(e.children[0]) + ", " + to_string(e.children[1]) + ")";
      break;
    case ManifoldExpr::Kind::Surgery:
      s = "surgery(" + to_string(e.children[0]) + ", " + std::to_string(e.arg) + ")";
      break;
    case ManifoldExpr::Kind::Bundle:
      s = "bundle(" + to_string(e.children[0]) + ", " + std::to_string(e.arg) + ")";
      break;
  }
  if (!e.flags.empty()) {
    std::vector<std::string> f;
    if (e.flags.simply_connected) f.emplace_back("simply_connected");
    if (e.flags.two_connected) f.emplace_back("two_connected");
    if (e.flags.three_connected) f.emplace_back("three_connected");
    if (e.flags.non_string) f.emplace_back("non_string");
    for (int k : e.flags.betti_nonzero) f.push_back("b" + std::to_string(k));
    s += " with {";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + f[i];
    s += "}";
  }
  return s;
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ManifoldExpr parse_all() {
    ManifoldExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail({"end of input"});
    return e;
  }

 private:
  static constexpr int kMaxInt = 100000;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = pos_ < text_.size() ? "'" + std::string(peek_token()) + "'" : "end of input";
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += (i + 1 == expected.size()) ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + found;
    throw DslError(DslError::Kind::Syntax, pos_, msg, std::move(expected));
  }

  std::string_view peek_token() const {
    std::size_t end = pos_;
    if (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
    } else {
      ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            (pos_ > start && std::isdigit(static_cast<unsigned char>(text_[pos_])))))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail({std::string("'") + c + "'"});
    ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail({"integer"});
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || v > kMaxInt)
      throw DslError(DslError::Kind::InvalidDimension, start, "integer out of range");
    return v;
  }

  int paren_int() {
    expect('(');
    const int v = integer();
    expect(')');
    return v;
  }

  static std::vector<std::string> term_keywords() {
    return {"sphere", "rp", "spaceform", "torus", "circle", "cp", "hp",
            "product", "connsum", "surgery", "bundle"};
  }

  ManifoldExpr atom(AtomKind kind, std::size_t start, int minimum) {
    ManifoldExpr e;
    e.kind = ManifoldExpr::Kind::Atom;
    e.atom = kind;
    e.offset = start;
    const std::size_t arg_at = pos_;
    e.arg = kind == AtomKind::Circle ? 1 : paren_int();
    if (e.arg < minimum)
      throw DslError(DslError::Kind::InvalidDimension, arg_at,
                     std::string(atom_name(kind)) + " needs parameter >= " + std::to_string(minimum));
    switch (kind) {
      case AtomKind::CP: e.dim = 2 * e.arg; break;
      case AtomKind::HP: e.dim = 4 * e.arg; break;
      default: e.dim = e.arg; break;
    }
    return e;
  }

  ManifoldExpr term() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string_view word = identifier();
    if (word == "sphere") return atom(AtomKind::Sphere, start, 2);
    if (word == "rp") return atom(AtomKind::RP, start, 2);
    if (word == "spaceform") return atom(AtomKind::SpaceForm, start, 2);
    if (word == "torus") return atom(AtomKind::Torus, start, 1);
    if (word == "circle") return atom(AtomKind::Circle, start, 1);
    if (word == "cp") return atom(AtomKind::CP, start, 1);
    if (word == "hp") return atom(AtomKind::HP, start, 1);

    ManifoldExpr e;
    e.offset = start;
    if (word == "product" || word == "connsum") {
      e.kind = word == "product" ? ManifoldExpr::Kind::Product : ManifoldExpr::Kind::ConnSum;
      expect('(');
      e.children.push_back(expr());
      expect(',');
      e.children.push_back(expr());
      expect(')');
      const int d0 = e.children[0].dim;
      const int d1 = e.children[1].dim;
      if (e.kind == ManifoldExpr::Kind::Product) {
        e.dim = d0 + d1;
      } else {
        if (d0 != d1)
          throw DslError(DslError::Kind::DimensionMismatch, e.children[1].offset,
                         "connsum operands have dimensions " + std::to_string(d0) + " and " +
                             std::to_string(d1));
        if (d0 < 3)
          throw DslError(DslError::Kind::InvalidDimension, start,
                         "connsum needs dimension >= 3, got " + std::to_string(d0));
        e.dim = d0;
      }
      return e;
    }
    if (word == "surgery" || word == "bundle") {
      e.kind = word == "surgery" ? ManifoldExpr::Kind::Surgery : ManifoldExpr::Kind::Bundle;
      expect('(');
      e.children.push_back(expr());
      expect(',');
      skip_ws();
      const std::size_t arg_at = pos_;
      e.arg = integer();
      expect(')');
      const int d = e.children[0].dim;
      if (e.kind == ManifoldExpr::Kind::Surgery) {
        if (e.arg < 1 || e.arg > d)
          throw DslError(DslError::Kind::CodimRange, arg_at,
                         "surgery codimension " + std::to_string(e.arg) + " outside [1, " +
                             std::to_string(d) + "]");
        e.dim = d;
      } else {
        if (e.arg < 1)
          throw DslError(DslError::Kind::InvalidDimension, arg_at, "bundle base dimension must be >= 1");
        e.dim = d + e.arg;
      }
      return e;
    }
    pos_ = start;
    fail(term_keywords());
  }

  void flag(ManifoldExpr& e) {
    skip_ws();
    const std::size_t start = pos_;
    const std::string_view word = identifier();
    if (word == "simply_connected") {
      e.flags.simply_connected = true;
    } else if (word == "two_connected") {
      e.flags.two_connected = true;
    } else if (word == "three_connected") {
      e.flags.three_connected = true;
    } else if (word == "non_string") {
      e.flags.non_string = true;
    } else if (word.size() > 1 && word[0] == 'b' &&
               word.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      int k = 0;
      const auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), k);
      if (ec != std::errc() || k < 0 || k > e.dim)
        throw DslError(DslError::Kind::UnknownFlag, start,
                       "Betti flag " + std::string(word) + " outside [b0, b" + std::to_string(e.dim) + "]");
      e.flags.betti_nonzero.insert(k);
    } else {
      pos_ = start;
      if (word.empty()) fail({"flag"});
      throw DslError(DslError::Kind::UnknownFlag, start, "unknown flag '" + std::string(word) + "'",
                     {"simply_connected", "two_connected", "three_connected", "non_string", "b<k>"});
    }
  }

  ManifoldExpr expr() {
    ManifoldExpr e = term();
    skip_ws();
    const std::size_t save = pos_;
    if (identifier() == "with") {
      e.flags.offset = save;
      expect('{');
      if (!accept('}')) {
        flag(e);
        while (accept(',')) flag(e);
        expect('}');
      }
    } else {
      pos_ = save;
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ManifoldExpr parse(std::string_view text) { return detail::Parser(text).parse_all(); }

}  // namespace curvlab::engine
