#pragma once

// Text input: rationals, polynomials ("x^3 - 2" or "[-2,0,0,1]"), integer
// lists, and elements of L = Q[x]/(f).

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "orbitforge/etale.hpp"
#include "orbitforge/matrix.hpp"

namespace orbitforge {

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) const { throw ParseFailure(i_, why); }
  std::size_t pos() const { return i_; }

  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  Int integer() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected digits");
    return Int(std::string(s_.substr(start, i_ - start)));
  }
  /// Unsigned rational: digits ['/' digits].
  Rat unsigned_rat() {
    Int num = integer();
    if (eat('/')) {
      std::size_t at = pos();
      Int den = integer();
      if (den == 0) throw ParseFailure(at, "zero denominator");
      return make_rat(num, den);
    }
    return Rat(num);
  }
  Rat signed_rat() {
    bool neg = false;
    while (peek() == '+' || peek() == '-') {
      if (peek() == '-') neg = !neg;
      ++i_;
    }
    Rat v = unsigned_rat();
    return neg ? Rat(-v) : v;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Rat parse_rat(std::string_view text) {
  detail::Cursor c(text);
  Rat v = c.signed_rat();
  if (!c.done()) c.fail("trailing input");
  return v;
}

inline Int parse_int(std::string_view text) {
  Rat v = parse_rat(text);
  if (v.get_den() != 1) throw ParseFailure(0, "expected an integer");
  return v.get_num();
}

/// Terms c*x^k joined by + and -, or an ascending list [c0, c1, ...].
inline Poly parse_poly(std::string_view text, char var = 'x') {
  detail::Cursor c(text);
  if (c.done()) c.fail("empty polynomial");
  if (c.eat('[')) {
    std::vector<Rat> coeffs;
    if (!c.eat(']')) {
      do coeffs.push_back(c.signed_rat());
      while (c.eat(','));
      c.expect(']');
    }
    if (!c.done()) c.fail("trailing input");
    return Poly(coeffs);
  }
  std::vector<Rat> coeffs;
  bool first = true;
  while (!c.done()) {
    bool neg = false;
    if (c.peek() == '+' || c.peek() == '-') {
      neg = c.peek() == '-';
      c.eat(c.peek());
    } else if (!first) {
      c.fail("expected '+' or '-'");
    }
    first = false;
    Rat coef = 1;
    bool have_coef = false;
    if (c.at_digit()) {
      coef = c.unsigned_rat();
      have_coef = true;
      if (c.eat('*') && c.peek() != var) c.fail(std::string("expected '") + var + "' after '*'");
    }
    std::size_t k = 0;
    if (c.eat(var)) {
      k = 1;
      if (c.eat('^')) {
        Int e = c.integer();
        if (e > 10000) c.fail("exponent too large");
        k = e.get_ui();
      }
    } else if (!have_coef) {
      c.fail(std::string("expected a coefficient or '") + var + "'");
    }
    if (coeffs.size() <= k) coeffs.resize(k + 1);
    coeffs[k] += neg ? Rat(-coef) : coef;
  }
  return Poly(coeffs);
}

inline std::vector<Int> parse_int_list(std::string_view text) {
  detail::Cursor c(text);
  std::vector<Int> out;
  bool bracket = c.eat('[');
  if (c.done()) c.fail("empty list");
  do {
    Rat v = c.signed_rat();
    if (v.get_den() != 1) c.fail("expected an integer");
    out.push_back(v.get_num());
  } while (c.eat(','));
  if (bracket) c.expect(']');
  if (!c.done()) c.fail("trailing input");
  return out;
}

inline std::vector<Rat> parse_rat_list(std::string_view text) {
  detail::Cursor c(text);
  std::vector<Rat> out;
  bool bracket = c.eat('[');
  if (c.done()) c.fail("empty list");
  do out.push_back(c.signed_rat());
  while (c.eat(','));
  if (bracket) c.expect(']');
  if (!c.done()) c.fail("trailing input");
  return out;
}

/// "[[a,b],[c,d]]" (rows) of rationals.
inline Matrix parse_matrix(std::string_view text) {
  detail::Cursor c(text);
  c.expect('[');
  std::vector<std::vector<Rat>> rows;
  do {
    c.expect('[');
    std::vector<Rat> row;
    do row.push_back(c.signed_rat());
    while (c.eat(','));
    c.expect(']');
    if (!rows.empty() && row.size() != rows.front().size()) c.fail("ragged matrix");
    rows.push_back(std::move(row));
  } while (c.eat(','));
  c.expect(']');
  if (!c.done()) c.fail("trailing input");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

/// An element of L: a rational, a polynomial in b ("3 - b"), or
/// "crt:v1,v2,..." giving values at the rational roots of f in ascending order.
inline EtaleElement parse_alpha(const AlgebraPtr& alg, std::string_view text) {
  constexpr std::string_view crt = "crt:";
  if (text.substr(0, crt.size()) == crt) {
    std::vector<Rat> vals = parse_rat_list(text.substr(crt.size()));
    require(rational_roots(alg->modulus()).size() == alg->dim(), Errc::InvalidArgument,
            "crt input needs f to split over Q");
    require(vals.size() == alg->dim(), Errc::DimensionMismatch, "crt input needs one value per root");
    return from_root_values(alg, vals);
  }
  return EtaleElement(alg, parse_poly(text, 'b'));
}

}  // namespace orbitforge
