#include "iel/parse.hpp"

#include <cctype>
#include <vector>

namespace iel {

namespace {

enum class Tok {
  Ident, Arrow, And, Or, BoxOp, LParen, RParen, LBrack, RBrack,
  LAngle, RAngle, Comma, Lambda, Colon, Dot, Eq, FatArrow, LBrace,
  RBrace, Bar, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Token> tokens;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  char peek(size_t off = 0) const { return pos + off < src.size() ? src[pos + off] : '\0'; }

  void advance(size_t n = 1) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  void push(Tok k, std::string text, int l, int c) { tokens.push_back({k, std::move(text), l, c}); }

  void run() {
    while (pos < src.size()) {
      char c = peek();
      int l = line, cl = col;
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (std::islower(static_cast<unsigned char>(c))) {
        std::string id;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
          id += peek();
          advance();
        }
        push(Tok::Ident, id, l, cl);
        continue;
      }
      switch (c) {
        case '-':
          if (peek(1) != '>') fail("expected '->'");
          advance(2);
          push(Tok::Arrow, "->", l, cl);
          break;
        case '/':
          if (peek(1) != '\\') fail("expected '/\\'");
          advance(2);
          push(Tok::And, "/\\", l, cl);
          break;
        case '\\':
          if (peek(1) == '/') {
            advance(2);
            push(Tok::Or, "\\/", l, cl);
          } else {
            advance();
            push(Tok::Lambda, "\\", l, cl);
          }
          break;
        case '[':
          if (peek(1) == ']') {
            advance(2);
            push(Tok::BoxOp, "[]", l, cl);
          } else {
            advance();
            push(Tok::LBrack, "[", l, cl);
          }
          break;
        case ']': advance(); push(Tok::RBrack, "]", l, cl); break;
        case '(': advance(); push(Tok::LParen, "(", l, cl); break;
        case ')': advance(); push(Tok::RParen, ")", l, cl); break;
        case '<': advance(); push(Tok::LAngle, "<", l, cl); break;
        case '>': advance(); push(Tok::RAngle, ">", l, cl); break;
        case ',': advance(); push(Tok::Comma, ",", l, cl); break;
        case ':': advance(); push(Tok::Colon, ":", l, cl); break;
        case '.': advance(); push(Tok::Dot, ".", l, cl); break;
        case '=':
          if (peek(1) == '>') {
            advance(2);
            push(Tok::FatArrow, "=>", l, cl);
          } else {
            advance();
            push(Tok::Eq, "=", l, cl);
          }
          break;
        case '{': advance(); push(Tok::LBrace, "{", l, cl); break;
        case '}': advance(); push(Tok::RBrace, "}", l, cl); break;
        case '|': advance(); push(Tok::Bar, "|", l, cl); break;
        default:
          fail(std::string("unexpected character '") + c + "'");
      }
    }
    push(Tok::End, "", line, col);
  }
};

bool is_term_keyword(const std::string& id) {
  return id == "bel" || id == "in" || id == "case" || id == "of" || id == "efq" ||
         id == "unit" || id == "p1" || id == "p2" || id == "i1" || id == "i2";
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  const Token& cur() const { return toks[pos]; }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " (found '" + (cur().kind == Tok::End ? "end of input" : cur().text) + "')",
                     cur().line, cur().col);
  }

  bool at(Tok k) const { return cur().kind == k; }
  bool at_ident(const char* s) const { return at(Tok::Ident) && cur().text == s; }

  Token eat(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return toks[pos++];
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos;
    return true;
  }

  // -- formulas ------------------------------------------------------------

  FormulaPtr formula() {
    FormulaPtr lhs = formula_or();
    if (accept(Tok::Arrow)) return Formula::impl(lhs, formula());
    return lhs;
  }

  FormulaPtr formula_or() {
    FormulaPtr lhs = formula_and();
    if (accept(Tok::Or)) return Formula::disj(lhs, formula_or());
    return lhs;
  }

  FormulaPtr formula_and() {
    FormulaPtr lhs = formula_unary();
    if (accept(Tok::And)) return Formula::conj(lhs, formula_and());
    return lhs;
  }

  FormulaPtr formula_unary() {
    if (accept(Tok::BoxOp)) return Formula::box(formula_unary());
    return formula_primary();
  }

  FormulaPtr formula_primary() {
    if (accept(Tok::LParen)) {
      FormulaPtr f = formula();
      eat(Tok::RParen, "')'");
      return f;
    }
    if (at(Tok::Ident)) {
      std::string id = eat(Tok::Ident, "atom").text;
      if (id == "bot") return Formula::bot();
      if (id == "top") return Formula::top();
      return Formula::atom(id);
    }
    fail("expected formula");
  }

  // -- terms ---------------------------------------------------------------

  std::string var_name() {
    if (!at(Tok::Ident)) fail("expected variable name");
    if (is_term_keyword(cur().text) || cur().text == "bot" || cur().text == "top")
      fail("'" + cur().text + "' is reserved");
    return toks[pos++].text;
  }

  TermPtr term() {
    if (at(Tok::Lambda)) {
      ++pos;
      std::string x = var_name();
      eat(Tok::Colon, "':'");
      FormulaPtr ann = formula();
      eat(Tok::Dot, "'.'");
      return Term::lam(x, ann, term());
    }
    if (at_ident("bel")) {
      ++pos;
      std::vector<BoxBinder> binders;
      std::vector<TermPtr> args;
      if (!at_ident("in")) {
        while (true) {
          BoxBinder b;
          b.name = var_name();
          if (accept(Tok::Colon)) b.ann = formula();
          eat(Tok::Eq, "'='");
          binders.push_back(std::move(b));
          args.push_back(term());
          if (!accept(Tok::Comma)) break;
        }
      }
      if (!at_ident("in")) fail("expected 'in'");
      ++pos;
      return Term::box(std::move(binders), std::move(args), term());
    }
    return app_seq();
  }

  bool starts_unary() const {
    switch (cur().kind) {
      case Tok::LParen:
      case Tok::LAngle:
        return true;
      case Tok::Ident:
        return cur().text != "in" && cur().text != "of" && cur().text != "bel";
      default:
        return false;
    }
  }

  TermPtr app_seq() {
    TermPtr t = unary();
    while (starts_unary()) t = Term::app(t, unary());
    return t;
  }

  TermPtr unary() {
    if (at_ident("p1") || at_ident("p2")) {
      int idx = cur().text == "p1" ? 1 : 2;
      ++pos;
      return Term::proj(idx, unary());
    }
    if (at_ident("i1") || at_ident("i2")) {
      int idx = cur().text == "i1" ? 1 : 2;
      ++pos;
      eat(Tok::LBrack, "'['");
      FormulaPtr ann = formula();
      eat(Tok::RBrack, "']'");
      return Term::inj(idx, ann, unary());
    }
    if (at_ident("efq")) {
      ++pos;
      eat(Tok::LBrack, "'['");
      FormulaPtr ann = formula();
      eat(Tok::RBrack, "']'");
      return Term::efq(ann, unary());
    }
    if (at_ident("unit")) {
      ++pos;
      return Term::unit(unary());
    }
    return atom_term();
  }

  TermPtr atom_term() {
    if (accept(Tok::LParen)) {
      TermPtr t = term();
      eat(Tok::RParen, "')'");
      return t;
    }
    if (accept(Tok::LAngle)) {
      TermPtr a = term();
      eat(Tok::Comma, "','");
      TermPtr b = term();
      eat(Tok::RAngle, "'>'");
      return Term::pair(a, b);
    }
    if (at_ident("case")) {
      ++pos;
      TermPtr scrut = term();
      if (!at_ident("of")) fail("expected 'of'");
      ++pos;
      eat(Tok::LBrace, "'{'");
      std::string x = var_name();
      eat(Tok::FatArrow, "'=>'");
      TermPtr l = term();
      eat(Tok::Bar, "'|'");
      std::string y = var_name();
      eat(Tok::FatArrow, "'=>'");
      TermPtr r = term();
      eat(Tok::RBrace, "'}'");
      return Term::case_of(scrut, x, l, y, r);
    }
    if (at(Tok::Ident)) return Term::var(var_name());
    fail("expected term");
  }
};

Parser make_parser(std::string_view text) {
  Lexer lex{text};
  lex.run();
  Parser p;
  p.toks = std::move(lex.tokens);
  return p;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser p = make_parser(text);
  FormulaPtr f = p.formula();
  if (!p.at(Tok::End)) p.fail("trailing input after formula");
  return f;
}

TermPtr parse_term(std::string_view text) {
  Parser p = make_parser(text);
  TermPtr t = p.term();
  if (!p.at(Tok::End)) p.fail("trailing input after term");
  return t;
}

}  // namespace iel
