#pragma once

// The etale algebra L = Q[x]/(f) for monic separable f, its elements, the
// involution x -> -x when f is odd, and a sound semi-decision for squares.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitforge/fp_poly.hpp"
#include "orbitforge/matrix.hpp"
#include "orbitforge/poly.hpp"

namespace orbitforge {

class EtaleAlgebra;
using AlgebraPtr = std::shared_ptr<const EtaleAlgebra>;

class EtaleAlgebra {
 public:
  static AlgebraPtr make(const Poly& f) {
    require(f.is_monic(), Errc::NotMonic, "modulus must be monic");
    require(f.degree() >= 1, Errc::WrongDegree, "modulus must have degree >= 1");
    Rat d = poly_discriminant(f);
    require(d != 0, Errc::NonSeparable, "modulus " + f.to_string() + " is not separable");
    return AlgebraPtr(new EtaleAlgebra(f, d));
  }

  const Poly& modulus() const { return f_; }
  std::size_t dim() const { return static_cast<std::size_t>(f_.degree()); }
  const Rat& discriminant() const { return disc_; }
  /// f(-x) = -f(x), i.e. f = x g(x^2).
  bool is_odd() const { return f_.negate_variable() == -f_; }

  /// Reduce an arbitrary coefficient vector modulo f.
  std::vector<Rat> reduce(std::vector<Rat> c) const {
    const std::size_t n = dim();
    for (std::size_t k = c.size(); k-- > n;) {
      if (c[k] == 0) continue;
      Rat t = c[k];
      for (std::size_t j = 0; j < n; ++j) c[k - n + j] -= t * f_.coeff(j);
      c[k] = 0;
    }
    c.resize(n);
    return c;
  }

 private:
  EtaleAlgebra(Poly f, Rat d) : f_(std::move(f)), disc_(std::move(d)) {}
  Poly f_;
  Rat disc_;
};

class EtaleElement {
 public:
  EtaleElement(AlgebraPtr alg, std::vector<Rat> coeffs)
      : alg_(std::move(alg)), c_(alg_->reduce(std::move(coeffs))) {}
  EtaleElement(AlgebraPtr alg, const Poly& p) : EtaleElement(alg, p.coeffs()) {}

  static EtaleElement constant(AlgebraPtr alg, const Rat& v) {
    return EtaleElement(std::move(alg), std::vector<Rat>{v});
  }
  static EtaleElement beta(AlgebraPtr alg) {
    return EtaleElement(std::move(alg), std::vector<Rat>{0, 1});
  }
  static EtaleElement beta_power(AlgebraPtr alg, std::size_t k) {
    std::vector<Rat> c(k + 1);
    c[k] = 1;
    return EtaleElement(std::move(alg), std::move(c));
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Poly to_poly() const { return Poly(c_); }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return v == 0; });
  }
  Int denominator_lcm() const { return to_poly().denominator_lcm(); }

  friend EtaleElement operator+(const EtaleElement& a, const EtaleElement& b) {
    a.check_same(b);
    std::vector<Rat> c(a.c_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return EtaleElement(a.alg_, std::move(c));
  }
  friend EtaleElement operator-(const EtaleElement& a) {
    std::vector<Rat> c(a.c_);
    for (auto& v : c) v = -v;
    return EtaleElement(a.alg_, std::move(c));
  }
  friend EtaleElement operator-(const EtaleElement& a, const EtaleElement& b) { return a + (-b); }
  friend EtaleElement operator*(const Rat& s, const EtaleElement& a) {
    std::vector<Rat> c(a.c_);
    for (auto& v : c) v *= s;
    return EtaleElement(a.alg_, std::move(c));
  }
  friend EtaleElement operator*(const EtaleElement& a, const EtaleElement& b) {
    a.check_same(b);
    std::vector<Rat> c(2 * a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return EtaleElement(a.alg_, std::move(c));
  }
  friend bool operator==(const EtaleElement& a, const EtaleElement& b) {
    return a.alg_->modulus() == b.alg_->modulus() && a.c_ == b.c_;
  }
  friend bool operator!=(const EtaleElement& a, const EtaleElement& b) { return !(a == b); }

  std::string to_string(char var = 'b') const { return to_poly().to_string(var); }

 private:
  void check_same(const EtaleElement& o) const {
    require(alg_ == o.alg_ || alg_->modulus() == o.alg_->modulus(), Errc::DimensionMismatch,
            "elements of different algebras");
  }
  AlgebraPtr alg_;
  std::vector<Rat> c_;
};

inline EtaleElement elem_mul(const EtaleElement& a, const EtaleElement& b) { return a * b; }

inline bool is_unit(const EtaleElement& a) {
  return poly_gcd(a.to_poly(), a.algebra()->modulus()).degree() == 0;
}

inline EtaleElement elem_inv(const EtaleElement& a) {
  const Poly& f = a.algebra()->modulus();
  auto [g, s, t] = poly_xgcd(a.to_poly(), f);
  require(g.degree() == 0, Errc::ZeroDivisor, a.to_string() + " is a zero divisor");
  return EtaleElement(a.algebra(), Rat(1 / g.coeff(0)) * s);
}

inline EtaleElement elem_pow(EtaleElement a, long e) {
  if (e < 0) {
    a = elem_inv(a);
    e = -e;
  }
  EtaleElement r = EtaleElement::constant(a.algebra(), 1);
  while (e > 0) {
    if (e & 1) r = r * a;
    a = a * a;
    e >>= 1;
  }
  return r;
}

/// Matrix of multiplication by a on the basis 1, b, ..., b^(N-1).
inline Matrix mult_matrix(const EtaleElement& a) {
  const std::size_t n = a.algebra()->dim();
  Matrix m(n, n);
  EtaleElement col = a;
  const EtaleElement b = EtaleElement::beta(a.algebra());
  for (std::size_t j = 0; j < n; ++j) {
    m.set_column(j, col.coeffs());
    col = col * b;
  }
  return m;
}

inline Rat norm(const EtaleElement& a) { return det(mult_matrix(a)); }
inline Rat trace(const EtaleElement& a) { return mult_matrix(a).trace(); }

/// Coefficient of b^(N-1) in the reduced representative.
inline Rat top_coeff(const EtaleElement& a) { return a.coeffs().back(); }

inline EtaleElement apply_tau(const EtaleElement& a) {
  require(a.algebra()->is_odd(), Errc::NotOddPolynomial,
          a.algebra()->modulus().to_string() + " is not of the form x*g(x^2)");
  return EtaleElement(a.algebra(), a.to_poly().negate_variable());
}

inline bool is_tau_fixed(const EtaleElement& a) { return apply_tau(a) == a; }

/// Values of a at the rational roots of f, ascending.
inline std::vector<Rat> values_at_rational_roots(const EtaleElement& a) {
  std::vector<Rat> out;
  for (const auto& r : rational_roots(a.algebra()->modulus())) out.push_back(a.to_poly().eval(r));
  return out;
}

/// The element with prescribed values at the roots of f; requires f to split
/// over Q. Roots are taken in ascending order.
inline EtaleElement from_root_values(const AlgebraPtr& alg, const std::vector<Rat>& values) {
  auto roots = rational_roots(alg->modulus());
  require(roots.size() == alg->dim(), Errc::InvalidArgument,
          alg->modulus().to_string() + " does not split over Q");
  require(values.size() == roots.size(), Errc::DimensionMismatch,
          "expected " + std::to_string(roots.size()) + " component values");
  return EtaleElement(alg, interpolate(roots, values));
}

/// f = x g(x^2): K = Q[y]/(g), E = Q[x]/(g(x^2)), L = E + Q.
struct SkewAlgebraData {
  Poly g;
  Poly h;
};

inline SkewAlgebraData skew_data(const Poly& f) {
  require(f.negate_variable() == -f, Errc::NotOddPolynomial,
          f.to_string() + " is not of the form x*g(x^2)");
  std::vector<Rat> g;
  for (std::size_t k = 1; k < f.coeffs().size(); k += 2) g.push_back(f.coeff(k));
  Poly gp(g);
  return {gp, gp.compose_square()};
}

/// The tau-fixed element (kappa, 1) of L = E + Q for kappa in K, given as a
/// polynomial in y = x^2.
inline EtaleElement embed_kappa(const AlgebraPtr& alg, const Poly& kappa) {
  SkewAlgebraData s = skew_data(alg->modulus());
  require(s.g.coeff(0) != 0, Errc::NonSeparable, "g(0) = 0");
  Rat t = (1 - kappa.coeff(0)) / s.g.coeff(0);
  return EtaleElement(alg, kappa.compose_square() + t * s.h);
}

// ---------------------------------------------------------------------------
// Squares.

struct SquareOptions {
  unsigned precision = 40;
  unsigned raises = 2;
  unsigned local_primes = 12;
  unsigned max_patterns = 1u << 12;
};

enum class Decision { True, False, Unknown };

inline const char* decision_name(Decision d) {
  switch (d) {
    case Decision::True: return "True";
    case Decision::False: return "False";
    case Decision::Unknown: return "Unknown";
  }
  return "Unknown";
}

struct SquareCertificate {
  enum class Kind { Norm, Real, Local } kind = Kind::Norm;
  Int prime;          // Local
  std::string factor; // Local: residue factor of f mod p
  Rat root_lo, root_hi;  // Real: isolating interval of the root
  std::string detail;
};

struct SquareResult {
  Decision decision = Decision::Unknown;
  std::optional<EtaleElement> witness;
  std::optional<SquareCertificate> certificate;
  std::string note;
};

namespace detail {

using ZmPoly = std::vector<Int>;

inline Int rat_mod(const Rat& v, const Int& m) {
  auto inv = invmod(v.get_den(), m);
  require(inv.has_value(), Errc::Internal, "denominator not invertible");
  return mod_floor(Int(v.get_num() * *inv), m);
}

inline ZmPoly zm_reduce(const std::vector<Rat>& c, const Int& m) {
  ZmPoly r;
  for (const auto& v : c) r.push_back(rat_mod(v, m));
  return r;
}

/// a*b mod (f, m) with f monic of degree n.
inline ZmPoly zm_mulmod(const ZmPoly& a, const ZmPoly& b, const ZmPoly& f, const Int& m) {
  const std::size_t n = f.size() - 1;
  std::vector<Int> c(2 * n, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  for (std::size_t k = c.size(); k-- > n;) {
    Int t = mod_floor(c[k], m);
    if (t == 0) continue;
    for (std::size_t j = 0; j < n; ++j) c[k - n + j] -= t * f[j];
  }
  c.resize(n);
  for (auto& v : c) v = mod_floor(v, m);
  return c;
}

inline ZmPoly zm_sub(const ZmPoly& a, const ZmPoly& b, const Int& m) {
  ZmPoly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = mod_floor(Int(a[i] - b[i]), m);
  return c;
}

inline ZmPoly from_fp(const FpPoly& a, std::size_t n) {
  ZmPoly r(n, 0);
  for (std::size_t i = 0; i < a.coeffs().size() && i < n; ++i)
    r[i] = Int(static_cast<unsigned long>(a.coeffs()[i]));
  return r;
}

/// Chinese remainder idempotents for F = prod g_i over F_p.
inline std::vector<FpPoly> crt_idempotents(const FpPoly& F, const std::vector<FpPoly>& gs) {
  std::vector<FpPoly> e;
  for (const auto& g : gs) {
    FpPoly co = F / g;
    FpXgcd x = fp_xgcd(co % g, g);
    e.push_back((co * x.s) % F);
  }
  return e;
}

struct LocalData {
  std::uint64_t p = 0;
  std::vector<FpPoly> factors;
};

}  // namespace detail

/// Is the unit a a square in L? Sound in both decided directions: a True
/// witness r satisfies r*r == a exactly; False carries a norm, real or local
/// obstruction.
inline SquareResult is_square(const EtaleElement& a, const SquareOptions& opt = {}) {
  require(is_unit(a), Errc::NonUnit, a.to_string() + " is not a unit");
  const AlgebraPtr& alg = a.algebra();
  const Poly& f = alg->modulus();
  const std::size_t n = alg->dim();
  SquareResult res;

  Rat na = norm(a);
  if (!is_rational_square(na)) {
    res.decision = Decision::False;
    res.certificate = SquareCertificate{SquareCertificate::Kind::Norm, 0, "", 0, 0,
                                        "norm " + to_string(na) + " is not a square"};
    return res;
  }
  if (n == 1) {
    res.decision = Decision::True;
    res.witness = EtaleElement::constant(alg, *rational_sqrt(a.coeffs()[0]));
    return res;
  }

  for (const auto& iv : isolate_real_roots(f)) {
    if (sign_at_root(a.to_poly(), f, iv) < 0) {
      res.decision = Decision::False;
      res.certificate = SquareCertificate{SquareCertificate::Kind::Real, 0, "", iv.lo, iv.hi,
                                          "negative at the real root in (" + to_string(iv.lo) +
                                              ", " + to_string(iv.hi) + "]"};
      return res;
    }
  }

  Int bad = 2 * abs_int(alg->discriminant().get_num()) * alg->discriminant().get_den() *
            a.denominator_lcm() * f.denominator_lcm() * abs_int(na.get_num()) * na.get_den();
  std::vector<detail::LocalData> locals;
  std::uint64_t p = 2;
  while (locals.size() < opt.local_primes && p < (1ull << 31)) {
    p = next_prime(Int(static_cast<unsigned long>(p))).get_ui();
    if (mpz_divisible_ui_p(bad.get_mpz_t(), p) != 0) continue;
    FpPoly fp = FpPoly::reduce(f, p);
    FpPoly ap = FpPoly::reduce(a.to_poly(), p);
    auto factors = factor_squarefree_fp(fp, p);
    for (const auto& g : factors) {
      if (!fq_is_square(ap % g, g)) {
        res.decision = Decision::False;
        res.certificate = SquareCertificate{SquareCertificate::Kind::Local, Int(static_cast<unsigned long>(p)),
                                            g.to_string(), 0, 0,
                                            "non-square modulo " + std::to_string(p) + " in the residue field of " +
                                                g.to_string()};
        return res;
      }
    }
    locals.push_back({p, std::move(factors)});
  }
  if (locals.empty()) {
    res.note = "no good prime found";
    return res;
  }
  auto best = std::min_element(locals.begin(), locals.end(), [](const auto& x, const auto& y) {
    return x.factors.size() < y.factors.size();
  });
  p = best->p;
  const auto& gs = best->factors;
  const std::size_t s = gs.size();
  if (s > 1 && (s - 1) >= 31) {
    res.note = "too many residue factors";
    return res;
  }
  const std::uint64_t patterns = 1ull << (s - 1);
  if (patterns > opt.max_patterns) {
    res.note = "too many sign patterns";
    return res;
  }

  FpPoly fp = FpPoly::reduce(f, p);
  FpPoly ap = FpPoly::reduce(a.to_poly(), p);
  std::vector<FpPoly> roots;
  for (const auto& g : gs) {
    auto r = fq_sqrt(ap % g, g);
    if (!r) raise(Errc::Internal, "residue square root failed");
    roots.push_back(*r);
  }
  auto idem = detail::crt_idempotents(fp, gs);
  const Int P = Int(static_cast<unsigned long>(p));

  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    FpPoly r0(p, {});
    for (std::size_t i = 0; i < s; ++i) {
      bool neg = i > 0 && ((mask >> (i - 1)) & 1);
      FpPoly ri = neg ? FpPoly(p, {}) - roots[i] : roots[i];
      r0 = r0 + ((ri * idem[i]) % fp);
    }
    FpPoly two_r = (2 * r0) % fp;
    FpXgcd inv = fp_xgcd(two_r, fp);
    if (inv.g.degree() != 0) continue;
    detail::ZmPoly r = detail::from_fp(r0, n);
    detail::ZmPoly z = detail::from_fp(inv.s % fp, n);
    Int m = P;
    unsigned long prec = 1;
    unsigned target = opt.precision;
    for (unsigned attempt = 0; attempt <= opt.raises; ++attempt, target *= 2) {
      while (prec < target) {
        prec *= 2;
        m = m * m;
        detail::ZmPoly fm = detail::zm_reduce(f.coeffs(), m);
        detail::ZmPoly am = detail::zm_reduce(a.coeffs(), m);
        // r <- r - z (r^2 - a);  z <- z (2 - 2 r z)
        detail::ZmPoly err = detail::zm_sub(detail::zm_mulmod(r, r, fm, m), am, m);
        r = detail::zm_sub(r, detail::zm_mulmod(z, err, fm, m), m);
        detail::ZmPoly tz = detail::zm_mulmod(r, z, fm, m);
        for (auto& v : tz) v = mod_floor(Int(-2 * v), m);
        tz[0] = mod_floor(Int(tz[0] + 2), m);
        z = detail::zm_mulmod(z, tz, fm, m);
      }
      std::vector<Rat> cand;
      bool ok = true;
      for (const auto& v : r) {
        auto q = rational_reconstruct(v, m);
        if (!q) {
          ok = false;
          break;
        }
        cand.push_back(*q);
      }
      if (!ok) continue;
      EtaleElement w(alg, cand);
      if (w * w == a) {
        res.decision = Decision::True;
        res.witness = w;
        return res;
      }
    }
  }
  res.note = "p-adic lift did not reconstruct a rational square root";
  return res;
}

}  // namespace orbitforge
