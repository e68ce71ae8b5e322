#pragma once

// Hyperelliptic curves d*y^2 = f(x) with a rational Weierstrass point at
// infinity, the x - beta descent map, and the pencil-of-quadrics identity.

#include <string>
#include <vector>

#include "orbitforge/orbit.hpp"

namespace orbitforge {

struct HyperCurve {
  Poly f;
  Rat d = 1;

  HyperCurve() = default;
  HyperCurve(Poly f_in, Rat d_in = 1) : f(std::move(f_in)), d(std::move(d_in)) {
    require(d != 0, Errc::ZeroInput, "twist d must be nonzero");
    require(f.is_monic(), Errc::NotMonic, f.to_string() + " is not monic");
    require(f.degree() >= 1 && f.degree() % 2 == 1, Errc::WrongDegree, "deg f must be odd");
    require(is_separable(f), Errc::NonSeparable, f.to_string() + " is not separable");
  }
  long genus() const { return (f.degree() - 1) / 2; }
  std::string to_string() const {
    std::string lhs = d == 1 ? "y^2" : orbitforge::to_string(d) + "*y^2";
    return lhs + " = " + f.to_string();
  }
};

struct CurvePoint {
  bool infinity = false;
  Rat x, y;

  static CurvePoint at_infinity() {
    CurvePoint p;
    p.infinity = true;
    return p;
  }
  static CurvePoint affine(Rat x, Rat y) {
    CurvePoint p;
    p.x = std::move(x);
    p.y = std::move(y);
    return p;
  }
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
  std::string to_string() const {
    if (infinity) return "Infinity";
    return "(" + orbitforge::to_string(x) + ", " + orbitforge::to_string(y) + ")";
  }
};

inline bool on_curve(const HyperCurve& c, const CurvePoint& p) {
  return p.infinity || c.d * p.y * p.y == c.f.eval(p.x);
}

/// alpha = d*(x0 - beta); 1 at infinity.
inline EtaleElement descent_class(const HyperCurve& c, const CurvePoint& p) {
  AlgebraPtr alg = EtaleAlgebra::make(c.f);
  if (p.infinity) return EtaleElement::constant(alg, 1);
  require(on_curve(c, p), Errc::NotOnCurve, p.to_string() + " is not on " + c.to_string());
  require(p.y != 0, Errc::WeierstrassPoint, p.to_string() + " is a Weierstrass point");
  EtaleElement a = c.d * (EtaleElement::constant(alg, p.x) - EtaleElement::beta(alg));
  Rat expect = pow_rat(c.d, c.f.degree() + 1) * p.y * p.y;
  require(norm(a) == expect, Errc::Internal, "descent class norm identity failed");
  return a;
}

inline bool kernel_check(const HyperCurve& c, const CurvePoint& p) {
  return in_kernel_gamma(c.f, descent_class(c, p), Rep::Sym2);
}

// -- genus one group law ----------------------------------------------------

namespace detail {

inline void require_genus_one(const HyperCurve& c) {
  require(c.f.degree() == 3 && c.d == 1, Errc::NotGenusOne, "group law needs y^2 = cubic");
}

}  // namespace detail

inline CurvePoint ec_neg(const HyperCurve& c, const CurvePoint& p) {
  detail::require_genus_one(c);
  require(on_curve(c, p), Errc::NotOnCurve, p.to_string() + " is not on " + c.to_string());
  if (p.infinity) return p;
  return CurvePoint::affine(p.x, -p.y);
}

inline CurvePoint ec_add(const HyperCurve& c, const CurvePoint& p, const CurvePoint& q) {
  detail::require_genus_one(c);
  require(on_curve(c, p), Errc::NotOnCurve, p.to_string() + " is not on " + c.to_string());
  require(on_curve(c, q), Errc::NotOnCurve, q.to_string() + " is not on " + c.to_string());
  if (p.infinity) return q;
  if (q.infinity) return p;
  Rat lambda;
  if (p.x == q.x) {
    if (p.y != q.y || p.y == 0) return CurvePoint::at_infinity();
    lambda = c.f.derivative().eval(p.x) / (2 * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  Rat x3 = lambda * lambda - c.f.coeff(2) - p.x - q.x;
  Rat y3 = -(p.y + lambda * (x3 - p.x));
  CurvePoint r = CurvePoint::affine(x3, y3);
  require(on_curve(c, r), Errc::Internal, "chord-tangent result is off the curve");
  return r;
}

inline CurvePoint ec_mul(const HyperCurve& c, long k, CurvePoint p) {
  if (k < 0) {
    p = ec_neg(c, p);
    k = -k;
  }
  CurvePoint acc = CurvePoint::at_infinity();
  while (k > 0) {
    if (k & 1) acc = ec_add(c, acc, p);
    p = ec_add(c, p, p);
    k >>= 1;
  }
  return acc;
}

// -- pencil of quadrics ------------------------------------------------------

struct PencilCheck {
  Rat c;             // det(u G_Q - v G_Q') = c * v^(2n+2) f(u/v)
  bool pass = false;
  Int square_class;  // squarefree representative of c
  Poly dehomogenized;
};

/// Q(l, a) = <l, l>_alpha and Q'(l, a) = <beta l, l>_alpha + d a^2 on L + k.
inline PencilCheck pencil_discriminant_check(const Poly& f, const EtaleElement& alpha, const Rat& d = 1) {
  require(d != 0, Errc::ZeroInput, "twist d must be nonzero");
  gram_alpha(f, alpha, Rep::Sym2);
  const std::size_t N = static_cast<std::size_t>(f.degree());
  Matrix gq(N + 1, N + 1), gq2(N + 1, N + 1);
  Matrix ga = pairing_gram(alpha, Rep::Sym2);
  Matrix gb = pairing_gram(alpha * EtaleElement::beta(alpha.algebra()), Rep::Sym2);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      gq(i, j) = ga(i, j);
      gq2(i, j) = gb(i, j);
    }
  gq2(N, N) = d;
  // Binary form of degree N+1; its u^(N+1) coefficient is det(G_Q).
  std::vector<Rat> xs, ys;
  for (std::size_t k = 0; k <= N + 1; ++k) {
    Rat u(static_cast<long>(k));
    xs.push_back(u);
    ys.push_back(det(u * gq - gq2));
  }
  PencilCheck out;
  out.dehomogenized = interpolate(xs, ys);
  out.c = out.dehomogenized.coeff(N);
  out.pass = det(gq) == 0 && out.c != 0 && out.dehomogenized == out.c * f;
  if (out.c != 0) out.square_class = squarefree_part(out.c);
  return out;
}

}  // namespace orbitforge
