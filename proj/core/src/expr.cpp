#include "carnot/expr.hpp"

#include <cctype>

namespace carnot {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
};

std::string take_while(Cursor& c, bool (*pred)(char)) {
  c.skip_ws();
  std::string out;
  while (c.pos < c.s.size() && pred(c.s[c.pos])) out.push_back(c.s[c.pos++]);
  return out;
}

bool digit(char c) { return c >= '0' && c <= '9'; }

Rat parse_coeff(Cursor& c) {
  const std::string num = take_while(c, digit);
  if (num.empty()) throw ParseError("expected a number at position " + std::to_string(c.pos));
  std::string text = num;
  if (c.eat('/')) {
    const std::string den = take_while(c, digit);
    if (den.empty()) throw ParseError("expected a denominator");
    text += "/" + den;
  }
  return rat_parse(text);
}

/// One signed term: [c *] SYMBOL [^ SYMBOL]; returns the sign-adjusted
/// coefficient and the symbol names.
struct Term {
  Rat coeff;
  std::string sym1, sym2;  // sym2 nonempty for wedge terms
};

bool sym_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

std::vector<Term> parse_terms(Cursor& c, bool allow_wedge) {
  std::vector<Term> terms;
  bool first = true;
  while (!c.done()) {
    Rat sign(1);
    if (c.eat('+')) {
    } else if (c.eat('-')) {
      sign = -1;
    } else if (!first) {
      throw ParseError("expected + or - at position " + std::to_string(c.pos));
    }
    first = false;

    Term t;
    t.coeff = sign;
    if (digit(c.peek())) {
      t.coeff = sign * parse_coeff(c);
      if (!c.eat('*') && c.peek() != '\0' && std::isalpha(static_cast<unsigned char>(c.peek())) == 0)
        throw ParseError("expected * or a symbol after the coefficient");
      // a bare number may stand alone only as the literal 0
      if (c.done() || c.peek() == '+' || c.peek() == '-') {
        if (t.coeff != 0) throw ParseError("a bare number is only allowed as 0");
        continue;
      }
      c.eat('*');
    }
    t.sym1 = take_while(c, sym_char);
    if (t.sym1.empty()) throw ParseError("expected a basis symbol at position " + std::to_string(c.pos));
    if (allow_wedge && c.eat('^')) {
      t.sym2 = take_while(c, sym_char);
      if (t.sym2.empty()) throw ParseError("expected a symbol after ^");
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

int e_index(const std::string& sym, int r) {
  if (sym.size() < 2 || sym[0] != 'e') throw ParseError("expected e<i>, got " + sym);
  int v = 0;
  for (size_t k = 1; k < sym.size(); ++k) {
    if (!digit(sym[k])) throw ParseError("expected e<i>, got " + sym);
    v = v * 10 + (sym[k] - '0');
  }
  if (v < 1 || v > r) throw ParseError("index out of range in " + sym);
  return v - 1;
}

}  // namespace

LieElement parse_lie_element(const AlgebraPtr& alg, const std::string& text) {
  Cursor c{text};
  RatVec coeffs(alg->dim(), Rat(0));
  for (const auto& t : parse_terms(c, false)) {
    if (!t.sym2.empty()) throw ParseError("wedge is not valid in a Lie element");
    auto idx = alg->index_of(t.sym1);
    if (!idx) throw ParseError("unknown basis label " + t.sym1);
    coeffs[*idx] += t.coeff;
  }
  return LieElement(alg, std::move(coeffs));
}

Step2Point parse_step2_point(int r, const std::string& text) {
  const size_t semi = text.find(';');
  if (semi == std::string::npos) throw ParseError("expected \"v;xi\"");

  Step2Point p;
  p.v.assign(r, Rat(0));
  p.xi = Bivector(r);

  {
    const std::string vpart = text.substr(0, semi);
    Cursor c{vpart};
    for (const auto& t : parse_terms(c, false)) {
      if (!t.sym2.empty()) throw ParseError("wedge is not valid in the vector part");
      p.v[e_index(t.sym1, r)] += t.coeff;
    }
  }
  {
    const std::string xpart = text.substr(semi + 1);
    Cursor c{xpart};
    for (const auto& t : parse_terms(c, true)) {
      if (t.sym2.empty()) throw ParseError("bivector terms must be wedges ei^ej");
      const int i = e_index(t.sym1, r);
      const int j = e_index(t.sym2, r);
      if (i == j) throw ParseError("ei^ei vanishes; ill-formed term");
      if (i < j)
        p.xi.at(i, j) += t.coeff;
      else
        p.xi.at(j, i) -= t.coeff;
    }
  }
  return p;
}

}  // namespace carnot
