#pragma once

// Dense univariate polynomials over Q, with resultants, discriminants and
// real-root isolation by Sturm sequences.

#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orbitforge/number_theory.hpp"

namespace orbitforge {

class Poly {
 public:
  Poly() = default;
  Poly(std::vector<Rat> ascending) : c_(std::move(ascending)) { trim(); }
  Poly(std::initializer_list<Rat> ascending) : c_(ascending) { trim(); }
  static Poly constant(const Rat& v) { return Poly(std::vector<Rat>{v}); }
  static Poly monomial(const Rat& v, std::size_t k) {
    std::vector<Rat> c(k + 1);
    c[k] = v;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  Rat lc() const { return c_.empty() ? Rat(0) : c_.back(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Rat eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(i);
    return Poly(std::move(d));
  }

  /// p(-x)
  Poly negate_variable() const {
    std::vector<Rat> d = c_;
    for (std::size_t i = 1; i < d.size(); i += 2) d[i] = -d[i];
    return Poly(std::move(d));
  }

  /// p(x^2)
  Poly compose_square() const {
    if (c_.empty()) return {};
    std::vector<Rat> d(2 * c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) d[2 * i] = c_[i];
    return Poly(std::move(d));
  }

  Poly monic() const {
    require(!is_zero(), Errc::ZeroInput, "monic() of zero polynomial");
    Rat l = lc();
    std::vector<Rat> d = c_;
    for (auto& v : d) v /= l;
    return Poly(std::move(d));
  }

  bool is_integral() const {
    for (const auto& v : c_)
      if (v.get_den() != 1) return false;
    return true;
  }

  /// Least common denominator of the coefficients.
  Int denominator_lcm() const {
    Int l = 1;
    for (const auto& v : c_) l = lcm(l, v.get_den());
    return l;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(d));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<Rat> d = a.c_;
    for (auto& v : d) v = -v;
    return Poly(std::move(d));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> d(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(d));
  }
  friend Poly operator*(const Rat& s, const Poly& a) {
    std::vector<Rat> d = a.c_;
    for (auto& v : d) v *= s;
    return Poly(std::move(d));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Euclidean division over Q.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    require(!b.is_zero(), Errc::ZeroDivisor, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<Rat> r = a.c_;
    std::vector<Rat> q(a.c_.size() - b.c_.size() + 1);
    const Rat lb = b.lc();
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      Rat t = r[k + db] / lb;
      q[k] = t;
      if (t == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] -= t * b.c_[j];
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

  std::string to_string(char var = 'x') const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline std::string Poly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rat& v = c_[k];
    if (v == 0) continue;
    Rat mag = v < 0 ? Rat(-v) : v;
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    first = false;
    bool unit = (mag == 1) && k > 0;
    if (!unit) os << orbitforge::to_string(mag);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) {
  return os << p.to_string();
}

/// Monic gcd (zero if both inputs are zero).
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

struct PolyXgcd {
  Poly g, s, t;  // s*a + t*b = g, g monic
};

inline PolyXgcd poly_xgcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b, s0 = Poly{1}, s1, t0, t1 = Poly{1};
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rat l = r0.lc();
  return {(1 / l) * r0, (1 / l) * s0, (1 / l) * t0};
}

namespace detail {

// Integer polynomial helpers for the fraction-free resultant.
using ZPoly = std::vector<Int>;

inline void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline long zdeg(const ZPoly& p) { return static_cast<long>(p.size()) - 1; }

inline Int zcontent(const ZPoly& p) {
  Int g = 0;
  for (const auto& v : p) g = gcd(g, v);
  return g;
}

// lc(b)^(deg a - deg b + 1) * a mod b
inline ZPoly zprem(ZPoly a, const ZPoly& b) {
  const long db = zdeg(b);
  const Int lb = b.back();
  long e = zdeg(a) - db + 1;
  while (zdeg(a) >= db && !a.empty()) {
    const long k = zdeg(a) - db;
    const Int la = a.back();
    for (auto& v : a) v *= lb;
    for (long j = 0; j <= db; ++j) a[k + j] -= la * b[j];
    ztrim(a);
    --e;
  }
  if (e > 0) {
    Int m = pow_int(lb, static_cast<unsigned long>(e));
    for (auto& v : a) v *= m;
  }
  return a;
}

inline ZPoly to_zpoly(const Poly& p, Int& scale) {
  scale = p.denominator_lcm();
  ZPoly z;
  for (const auto& v : p.coeffs()) {
    Rat s = v * scale;
    z.push_back(s.get_num());
  }
  return z;
}

// Subresultant pseudo-remainder sequence over Z.
inline Int zresultant(ZPoly a, ZPoly b) {
  ztrim(a);
  ztrim(b);
  if (a.empty() || b.empty()) return 0;
  Int ca = zcontent(a), cb = zcontent(b);
  for (auto& v : a) v /= ca;
  for (auto& v : b) v /= cb;
  Int t = pow_int(ca, zdeg(b)) * pow_int(cb, zdeg(a));
  int s = 1;
  if (zdeg(a) < zdeg(b)) {
    std::swap(a, b);
    if (zdeg(a) % 2 == 1 && zdeg(b) % 2 == 1) s = -1;
  }
  Int g = 1, h = 1;
  while (zdeg(b) > 0) {
    const long delta = zdeg(a) - zdeg(b);
    if (zdeg(a) % 2 == 1 && zdeg(b) % 2 == 1) s = -s;
    ZPoly r = zprem(a, b);
    if (r.empty()) return 0;
    a = std::move(b);
    Int divisor = g * pow_int(h, static_cast<unsigned long>(delta));
    for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), divisor.get_mpz_t());
    b = std::move(r);
    g = a.back();
    // h <- h^(1-delta) g^delta
    Int gd = pow_int(g, static_cast<unsigned long>(delta));
    if (delta == 0) {
      // h unchanged
    } else {
      Int hd = pow_int(h, static_cast<unsigned long>(delta - 1));
      Int num = gd;
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), hd.get_mpz_t());
    }
  }
  // deg b == 0
  const long da = zdeg(a);
  Int lb = b.back();
  Int hnew;
  if (da == 0) {
    hnew = h;  // degenerate: both constants
  } else {
    Int num = pow_int(lb, static_cast<unsigned long>(da));
    Int den = pow_int(h, static_cast<unsigned long>(da - 1));
    mpz_divexact(hnew.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return s * t * hnew;
}

}  // namespace detail

/// Res(a, b) over Q via the subresultant algorithm on cleared denominators.
inline Rat resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() == 0 && b.degree() == 0) return 1;
  if (a.degree() == 0) return pow_rat(a.lc(), b.degree());
  if (b.degree() == 0) return pow_rat(b.lc(), a.degree());
  Int sa, sb;
  detail::ZPoly za = detail::to_zpoly(a, sa), zb = detail::to_zpoly(b, sb);
  Int rz = detail::zresultant(za, zb);
  // Res(sa*a, sb*b) = sa^deg b * sb^deg a * Res(a, b)
  Int scale = pow_int(sa, b.degree()) * pow_int(sb, a.degree());
  return make_rat(rz, scale);
}

/// disc(f) = (-1)^{d(d-1)/2} Res(f, f') for monic f.
inline Rat poly_discriminant(const Poly& f) {
  require(f.is_monic(), Errc::NotMonic, "discriminant needs a monic polynomial");
  require(f.degree() >= 1, Errc::WrongDegree, "discriminant of a constant");
  const long d = f.degree();
  if (d == 1) return 1;
  Rat r = resultant(f, f.derivative());
  if ((d * (d - 1) / 2) % 2 == 1) r = -r;
  return r;
}

inline bool is_separable(const Poly& f) {
  return f.degree() >= 1 && poly_discriminant(f.monic()) != 0;
}

// ---------------------------------------------------------------------------
// Real roots

using SturmSequence = std::vector<Poly>;

inline SturmSequence sturm_sequence(const Poly& f) {
  SturmSequence s{f, f.derivative()};
  while (!s.back().is_zero()) {
    Poly r = s[s.size() - 2] % s.back();
    if (r.is_zero()) break;
    s.push_back(-r);
  }
  return s;
}

namespace detail {

inline int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int sgn(const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline int changes_at(const SturmSequence& s, const Rat& x) {
  std::vector<int> signs;
  for (const auto& p : s) signs.push_back(sgn(p.eval(x)));
  return sign_changes(signs);
}

inline int changes_at_infinity(const SturmSequence& s, bool positive) {
  std::vector<int> signs;
  for (const auto& p : s) {
    int sg = sgn(p.lc());
    if (!positive && p.degree() % 2 == 1) sg = -sg;
    signs.push_back(sg);
  }
  return sign_changes(signs);
}

}  // namespace detail

/// Number of distinct real roots of squarefree f in (lo, hi].
inline int count_real_roots(const SturmSequence& s, const Rat& lo, const Rat& hi) {
  return detail::changes_at(s, lo) - detail::changes_at(s, hi);
}

inline int count_real_roots(const Poly& f) {
  Poly sf = f / poly_gcd(f, f.derivative());
  SturmSequence s = sturm_sequence(sf);
  return detail::changes_at_infinity(s, false) - detail::changes_at_infinity(s, true);
}

/// Half-open rational interval (lo, hi] holding exactly one root.
struct RootInterval {
  Rat lo, hi;
};

/// Cauchy bound: all roots lie in (-B, B).
inline Rat root_bound(const Poly& f) {
  Rat m = 0;
  for (long i = 0; i < f.degree(); ++i) {
    Rat q = f.coeff(i) / f.lc();
    if (q < 0) q = -q;
    if (q > m) m = q;
  }
  return m + 1;
}

/// Isolating intervals for the real roots of squarefree f, ascending.
inline std::vector<RootInterval> isolate_real_roots(const Poly& f) {
  SturmSequence s = sturm_sequence(f);
  Rat b = root_bound(f);
  std::vector<RootInterval> out;
  std::vector<RootInterval> work{{-b, b}};
  while (!work.empty()) {
    RootInterval iv = work.back();
    work.pop_back();
    int k = count_real_roots(s, iv.lo, iv.hi);
    if (k == 0) continue;
    if (k == 1) {
      out.push_back(iv);
      continue;
    }
    Rat mid = (iv.lo + iv.hi) / 2;
    work.push_back({iv.lo, mid});
    work.push_back({mid, iv.hi});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

/// Halve an isolating interval of root of f, keeping the root inside.
inline RootInterval refine_root(const SturmSequence& s, RootInterval iv) {
  Rat mid = (iv.lo + iv.hi) / 2;
  if (count_real_roots(s, iv.lo, mid) == 1) return {iv.lo, mid};
  return {mid, iv.hi};
}

/// Sign of a(r) at the real root r of squarefree f isolated by iv
/// (0 when a and f share that root).
inline int sign_at_root(const Poly& a, const Poly& f, RootInterval iv) {
  if (a.is_zero()) return 0;
  SturmSequence sf = sturm_sequence(f);
  Poly g = poly_gcd(a, f);
  if (g.degree() > 0 && count_real_roots(sturm_sequence(g), iv.lo, iv.hi) > 0)
    return 0;
  Poly asq = a / poly_gcd(a, a.derivative());
  SturmSequence sa = sturm_sequence(asq);
  for (int it = 0; it < 100000; ++it) {
    if (f.eval(iv.hi) == 0) return detail::sgn(a.eval(iv.hi));
    if (count_real_roots(sa, iv.lo, iv.hi) == 0) return detail::sgn(a.eval(iv.hi));
    iv = refine_root(sf, iv);
  }
  raise(Errc::Internal, "sign_at_root failed to separate roots");
}

/// Rational roots of f (ascending, without multiplicity).
inline std::vector<Rat> rational_roots(const Poly& f_in) {
  require(!f_in.is_zero(), Errc::ZeroInput, "rational_roots(0)");
  std::vector<Rat> out;
  Poly f = f_in.monic();
  // strip zero roots
  if (f.coeff(0) == 0) {
    out.push_back(0);
    std::size_t k = 0;
    while (f.coeff(k) == 0) ++k;
    std::vector<Rat> c(f.coeffs().begin() + static_cast<long>(k), f.coeffs().end());
    f = Poly(std::move(c));
  }
  if (f.degree() <= 0) return out;
  // g(y) = D^d f(y/D) is monic integral; rational roots of f are r/D with r | g(0)
  const Int D = f.denominator_lcm();
  const long d = f.degree();
  std::vector<Rat> gc(d + 1);
  for (long i = 0; i <= d; ++i) gc[i] = f.coeff(i) * Rat(pow_int(D, d - i));
  Poly g(gc);
  Int c0 = g.coeff(0).get_num();
  std::vector<Int> divisors{1};
  for (auto& [p, e] : factorize(c0)) {
    std::size_t n = divisors.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  for (const Int& dv : divisors) {
    for (int sg : {1, -1}) {
      Int r = dv * sg;
      if (g.eval(Rat(r)) == 0) out.push_back(make_rat(r, D));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Lagrange interpolation through (x_i, y_i) with distinct x_i.
inline Poly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  require(xs.size() == ys.size(), Errc::DimensionMismatch, "interpolate sizes");
  Poly acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly basis{1};
    Rat denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * Poly{-xs[j], 1};
      denom *= xs[i] - xs[j];
    }
    acc = acc + (ys[i] / denom) * basis;
  }
  return acc;
}

}  // namespace orbitforge
