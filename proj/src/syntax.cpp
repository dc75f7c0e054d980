#include "swonbt/syntax.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "swonbt/error.hpp"

namespace swonbt {

namespace {

enum class Tok {
  Ident,
  True,
  False,
  Not,
  Next,
  Yesterday,
  StrongBox,
  WeakBox,
  StrongDiamond,
  WeakDiamond,
  And,
  Or,
  Implies,
  Iff,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'~'";
    case Tok::Next: return "'X'";
    case Tok::Yesterday: return "'Y'";
    case Tok::StrongBox: return "'[S]'";
    case Tok::WeakBox: return "'[W]'";
    case Tok::StrongDiamond: return "'<S>'";
    case Tok::WeakDiamond: return "'<W>'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t i = 0;
  auto starts_with = [&](std::string_view lit) { return text.substr(i, lit.size()) == lit; };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    Token tok{Tok::End, {}, line, column};
    std::size_t len = 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + len])) || text[i + len] == '_')) {
        ++len;
      }
      tok.text = std::string(text.substr(i, len));
      if (tok.text == "X") {
        tok.kind = Tok::Next;
      } else if (tok.text == "Y") {
        tok.kind = Tok::Yesterday;
      } else if (tok.text == "true") {
        tok.kind = Tok::True;
      } else if (tok.text == "false") {
        tok.kind = Tok::False;
      } else {
        tok.kind = Tok::Ident;
      }
    } else if (starts_with("<->")) {
      tok.kind = Tok::Iff;
      len = 3;
    } else if (starts_with("->")) {
      tok.kind = Tok::Implies;
      len = 2;
    } else if (starts_with("[S]")) {
      tok.kind = Tok::StrongBox;
      len = 3;
    } else if (starts_with("[W]")) {
      tok.kind = Tok::WeakBox;
      len = 3;
    } else if (starts_with("<S>")) {
      tok.kind = Tok::StrongDiamond;
      len = 3;
    } else if (starts_with("<W>")) {
      tok.kind = Tok::WeakDiamond;
      len = 3;
    } else if (c == '~') {
      tok.kind = Tok::Not;
    } else if (c == '&') {
      tok.kind = Tok::And;
    } else if (c == '|') {
      tok.kind = Tok::Or;
    } else if (c == '(') {
      tok.kind = Tok::LParen;
    } else if (c == ')') {
      tok.kind = Tok::RParen;
    } else {
      throw SyntaxError(std::string("unknown token '") + c + "'", line, column);
    }
    out.push_back(std::move(tok));
    i += len;
    column += len;
  }
  out.push_back(Token{Tok::End, {}, line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  void expect(Tok kind) {
    if (!accept(kind)) {
      const Token& t = peek();
      throw SyntaxError(std::string("expected ") + describe(kind) + ", found " + describe(t.kind),
                        t.line, t.column);
    }
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (accept(Tok::Iff)) lhs = Formula::equivalence(lhs, parse_implies());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept(Tok::Implies)) return Formula::implication(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept(Tok::Or)) lhs = Formula::disjunction(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept(Tok::And)) lhs = Formula::conjunction(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: ++pos_; return Formula::negation(parse_unary());
      case Tok::Next: ++pos_; return Formula::next(parse_unary());
      case Tok::Yesterday: ++pos_; return Formula::yesterday(parse_unary());
      case Tok::StrongBox: ++pos_; return Formula::strong(parse_unary());
      case Tok::WeakBox: ++pos_; return Formula::weak(parse_unary());
      case Tok::StrongDiamond: ++pos_; return Formula::strong_possible(parse_unary());
      case Tok::WeakDiamond: ++pos_; return Formula::weak_possible(parse_unary());
      case Tok::True: ++pos_; return Formula::top();
      case Tok::False: ++pos_; return Formula::bottom();
      case Tok::Ident: ++pos_; return Formula::atom(t.text);
      case Tok::LParen: {
        ++pos_;
        Formula inner = parse_iff();
        expect(Tok::RParen);
        return inner;
      }
      default:
        throw SyntaxError(std::string("unexpected ") + describe(t.kind), t.line, t.column);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void print_into(const Formula& f, std::string& out);

void print_prefix(const char* op, const Formula& operand, std::string& out) {
  out += op;
  print_into(operand, out);
}

void print_binary(const Formula& a, const char* op, const Formula& b, std::string& out) {
  out += '(';
  print_into(a, out);
  out += op;
  print_into(b, out);
  out += ')';
}

void print_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom: out += f.name(); return;
    case Kind::Bottom: out += "false"; return;
    case Kind::Next: print_prefix("X ", f.operand(), out); return;
    case Kind::Yesterday: print_prefix("Y ", f.operand(), out); return;
    case Kind::StrongNec: print_prefix("[S] ", f.operand(), out); return;
    case Kind::WeakNec: print_prefix("[W] ", f.operand(), out); return;
    case Kind::And:
      if (auto eq = match_equivalence(f)) {
        print_binary(eq->first, " <-> ", eq->second, out);
      } else {
        print_binary(f.lhs(), " & ", f.rhs(), out);
      }
      return;
    case Kind::Not:
      if (is_top(f)) {
        out += "true";
      } else if (auto s = match_strong_possible(f)) {
        print_prefix("<S> ", *s, out);
      } else if (auto w = match_weak_possible(f)) {
        print_prefix("<W> ", *w, out);
      } else if (auto d = match_disjunction(f)) {
        print_binary(d->first, " | ", d->second, out);
      } else if (auto i = match_implication(f)) {
        print_binary(i->first, " -> ", i->second, out);
      } else {
        print_prefix("~", f.operand(), out);
      }
      return;
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

}  // namespace swonbt
