#pragma once

// Orbits of SO(W) on W, so(W) and self-adjoint operators: distinguished
// representatives, twisted pairings, recovery of the twisting class, and
// orbit comparison.
//
// Rational pairings use alpha in the numerator: <l, m>_alpha = top(alpha l m)
// (or (-1)^n top(alpha l tau(m)) in the skew case). The integral module uses
// alpha^{-1}; over a field the two differ by the square alpha^2.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orbitforge/etale.hpp"
#include "orbitforge/quad_forms.hpp"

namespace orbitforge {

enum class Rep { Standard, Adjoint, Sym2 };

inline const char* rep_name(Rep r) {
  switch (r) {
    case Rep::Standard: return "standard";
    case Rep::Adjoint: return "adjoint";
    case Rep::Sym2: return "sym2";
  }
  return "?";
}

struct StandardSpace {
  std::size_t n = 1;
  Matrix gram;
  std::size_t dim() const { return 2 * n + 1; }
};

inline StandardSpace standard_space(std::size_t n) {
  require(n >= 1, Errc::InvalidArgument, "n must be at least 1");
  return {n, standard_gram(n)};
}

/// T* = gram^{-1} T^T gram.
inline Matrix adjoint_op(const Matrix& t, const StandardSpace& w) {
  require(t.is_square() && t.rows() == w.dim(), Errc::DimensionMismatch,
          "operator does not act on a space of dimension " + std::to_string(w.dim()));
  return inverse(w.gram) * t.transpose() * w.gram;
}

inline bool is_self_adjoint(const Matrix& t, const Matrix& gram) {
  return gram * t == t.transpose() * gram;
}
inline bool is_skew_adjoint(const Matrix& t, const Matrix& gram) {
  return gram * t == -(t.transpose() * gram);
}

struct OrbitRepresentative {
  Rep rep = Rep::Sym2;
  StandardSpace space;
  Matrix T;               // Adjoint / Sym2
  Poly f;                 // Adjoint / Sym2
  std::vector<Rat> w;     // Standard
  Rat q;                  // Standard: q2(w)
};

namespace detail {

inline void check_orbit_poly(const Poly& f, Rep rep) {
  require(rep != Rep::Standard, Errc::InvalidArgument, "operator representation required");
  require(f.is_monic(), Errc::NotMonic, f.to_string() + " is not monic");
  require(f.degree() >= 3 && f.degree() % 2 == 1, Errc::WrongDegree,
          "degree must be odd and at least 3, got " + std::to_string(f.degree()));
  require(poly_discriminant(f) != 0, Errc::NonSeparable, f.to_string() + " is not separable");
  if (rep == Rep::Adjoint)
    require(f.negate_variable() == -f, Errc::NotOddPolynomial,
            f.to_string() + " is not of the form x*g(x^2)");
}

}  // namespace detail

/// Gram of <l, m>_alpha on the basis 1, b, ..., b^{2n}, without validity checks.
inline Matrix pairing_gram(const EtaleElement& alpha, Rep rep) {
  const std::size_t N = alpha.algebra()->dim();
  const std::size_t n = N / 2;
  std::vector<Rat> tops(2 * N - 1);
  EtaleElement x = alpha;
  const EtaleElement b = EtaleElement::beta(alpha.algebra());
  for (std::size_t k = 0; k < tops.size(); ++k) {
    tops[k] = top_coeff(x);
    x = x * b;
  }
  Matrix g(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      Rat v = tops[i + j];
      if (rep == Rep::Adjoint && (n + j) % 2 == 1) v = -v;
      g(i, j) = v;
    }
  return g;
}

inline QuadSpace gram_alpha(const Poly& f, const EtaleElement& alpha, Rep rep) {
  detail::check_orbit_poly(f, rep);
  require(alpha.algebra()->modulus() == f, Errc::DimensionMismatch, "alpha lives in another algebra");
  require(is_unit(alpha), Errc::NonUnit, alpha.to_string() + " is not a unit");
  if (rep == Rep::Adjoint)
    require(is_tau_fixed(alpha), Errc::NotTauFixed, alpha.to_string() + " is not tau-fixed");
  Rat na = norm(alpha);
  require(is_rational_square(na), Errc::NormNotSquare, "N(alpha) = " + to_string(na) + " is not a square");
  return QuadSpace(pairing_gram(alpha, rep));
}

inline bool in_kernel_gamma(const Poly& f, const EtaleElement& alpha, Rep rep) {
  return is_split_odd(gram_alpha(f, alpha, rep));
}

/// The operator attached to alpha: multiplication by b on (L, <,>_alpha),
/// carried to W by a hyperbolic basis. Requires the twisted space to be split.
inline OrbitRepresentative construct_twisted(const Poly& f, const EtaleElement& alpha, Rep rep,
                                             std::uint64_t seed = 1) {
  QuadSpace g = gram_alpha(f, alpha, rep);
  const std::size_t N = g.dim(), n = N / 2;
  Matrix m(N, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  bool trivial = (m.transpose() * g.gram() * m).is_zero();
  if (!trivial) {
    require(is_split_odd(g), Errc::NotIsotropic, "the twisted space is not split");
    m = maximal_isotropic_subspace(g, n, seed);
  }
  Matrix u = hyperbolic_completion(g, m);
  Matrix b = mult_matrix(EtaleElement::beta(alpha.algebra()));
  OrbitRepresentative r;
  r.rep = rep;
  r.space = standard_space(n);
  r.T = inverse(u) * b * u;
  r.f = f;
  bool ok = rep == Rep::Sym2 ? is_self_adjoint(r.T, r.space.gram) : is_skew_adjoint(r.T, r.space.gram);
  require(ok && charpoly(r.T) == f, Errc::Internal, "constructed operator failed verification");
  return r;
}

inline OrbitRepresentative construct_representative(const Poly& f, Rep rep) {
  detail::check_orbit_poly(f, rep);
  return construct_twisted(f, EtaleElement::constant(EtaleAlgebra::make(f), 1), rep);
}

/// v = e_1 + (d/2) f_1, a representative of the vectors with q2(v) = <v, v> = d.
inline OrbitRepresentative standard_representative(std::size_t n, const Rat& d) {
  OrbitRepresentative r;
  r.rep = Rep::Standard;
  r.space = standard_space(n);
  r.w.assign(r.space.dim(), 0);
  r.w.front() = 1;
  r.w.back() = d / 2;
  r.q = pairing(r.space.gram, r.w, r.w);
  return r;
}

struct RecoveredAlpha {
  EtaleElement alpha;
  Matrix krylov;  // columns T^k w
  std::vector<Rat> cyclic_vector;
};

inline RecoveredAlpha recover_alpha(const Matrix& t, Rep rep, std::uint64_t seed = 1) {
  require(rep != Rep::Standard, Errc::InvalidArgument, "operator representation required");
  require(t.is_square() && t.rows() % 2 == 1 && t.rows() >= 3, Errc::WrongDimension,
          "operator must act on an odd-dimensional space of dimension >= 3");
  const std::size_t N = t.rows(), n = N / 2;
  const Matrix J = standard_gram(n);
  Poly f = charpoly(t);
  require(poly_discriminant(f) != 0, Errc::NonSeparable, "characteristic polynomial " + f.to_string() +
                                                           " is not separable");
  auto krylov = [&](const std::vector<Rat>& w) {
    Matrix k(N, N);
    std::vector<Rat> v = w;
    for (std::size_t j = 0; j < N; ++j) {
      k.set_column(j, v);
      v = t * v;
    }
    return k;
  };
  std::vector<Rat> w;
  Matrix k;
  bool found = false;
  for (std::size_t i = 0; i < N && !found; ++i) {
    w.assign(N, 0);
    w[i] = 1;
    k = krylov(w);
    found = det(k) != 0;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
    for (auto& v : w) v = dist(rng);
    k = krylov(w);
    found = det(k) != 0;
  }
  require(found, Errc::NoCyclicVector, "no cyclic vector found");

  AlgebraPtr alg = EtaleAlgebra::make(f);
  std::vector<Rat> ell(N);
  {
    std::vector<Rat> v = w;
    std::vector<Rat> jw = J * w;
    for (std::size_t j = 0; j < N; ++j) {
      Rat s = 0;
      for (std::size_t r = 0; r < N; ++r) s += jw[r] * v[r];
      ell[j] = s;
      v = t * v;
    }
  }
  Matrix g0 = pairing_gram(EtaleElement::constant(alg, 1), Rep::Sym2);
  std::vector<Rat> a = linear_solve(g0, ell);
  if (rep == Rep::Adjoint && n % 2 == 1)
    for (auto& v : a) v = -v;
  EtaleElement alpha(alg, a);
  require(pairing_gram(alpha, rep) == k.transpose() * J * k, Errc::Internal,
          "recovered alpha does not reproduce the pulled-back form");
  return {alpha, k, w};
}

enum class OrbitRelation { Equal, Distinct, Unknown };

inline const char* relation_name(OrbitRelation r) {
  switch (r) {
    case OrbitRelation::Equal: return "Equal";
    case OrbitRelation::Distinct: return "Distinct";
    case OrbitRelation::Unknown: return "Unknown";
  }
  return "Unknown";
}

struct OrbitComparison {
  OrbitRelation relation = OrbitRelation::Unknown;
  std::string reason;
  std::optional<Matrix> witness;  // g in SO(W)(Q) with g T1 g^{-1} = T2
  std::optional<SquareCertificate> certificate;
};

inline OrbitComparison same_orbit(const Matrix& t1, const Matrix& t2, Rep rep, std::uint64_t seed = 1) {
  require(t1.rows() == t2.rows() && t1.is_square() && t2.is_square(), Errc::DimensionMismatch,
          "operators act on spaces of different dimension");
  OrbitComparison out;
  Poly f1 = charpoly(t1), f2 = charpoly(t2);
  if (f1 != f2) {
    out.relation = OrbitRelation::Distinct;
    out.reason = "charpoly";
    return out;
  }
  RecoveredAlpha r1 = recover_alpha(t1, rep, seed), r2 = recover_alpha(t2, rep, seed);
  EtaleElement prod = r1.alpha * r2.alpha;
  SquareResult sq = is_square(prod);
  if (sq.decision == Decision::True) {
    const EtaleElement& root = *sq.witness;
    if (rep == Rep::Sym2 || is_tau_fixed(root)) {
      EtaleElement c = root * elem_inv(r2.alpha);
      Matrix g = r2.krylov * mult_matrix(c) * inverse(r1.krylov);
      if (det(g) < 0) g = -g;
      require(g * t1 == t2 * g, Errc::Internal, "orbit witness does not intertwine");
      out.relation = OrbitRelation::Equal;
      out.reason = "square";
      out.witness = g;
      return out;
    }
  } else if (sq.decision == Decision::False && rep == Rep::Sym2) {
    out.relation = OrbitRelation::Distinct;
    out.reason = "square class";
    out.certificate = sq.certificate;
    return out;
  }
  if (rep == Rep::Adjoint) {
    // Norms from L to its tau-fixed part are positive at every negative real
    // root of g, where E is complex over K.
    SkewAlgebraData sd = skew_data(f1);
    std::vector<Rat> even;
    for (std::size_t k = 0; k < prod.coeffs().size(); k += 2) even.push_back(prod.coeffs()[k]);
    Poly kappa(even);
    for (const auto& iv : isolate_real_roots(sd.g)) {
      if (iv.hi > 0 && iv.lo >= 0) continue;
      RootInterval r = iv;
      while (r.hi > 0) r = refine_root(sturm_sequence(sd.g), r);
      if (sign_at_root(kappa, sd.g, r) < 0) {
        out.relation = OrbitRelation::Distinct;
        out.reason = "real sign";
        SquareCertificate c;
        c.kind = SquareCertificate::Kind::Real;
        c.root_lo = r.lo;
        c.root_hi = r.hi;
        c.detail = "norm class negative at a negative real root of g";
        out.certificate = c;
        return out;
      }
    }
  }
  out.relation = OrbitRelation::Unknown;
  out.reason = sq.decision == Decision::Unknown ? "square test inconclusive" : "norm class undecided";
  return out;
}

struct VectorLabel {
  enum class Kind { Value, NullNonzero, Zero } kind = Kind::Zero;
  Rat d;
  std::string to_string() const {
    switch (kind) {
      case Kind::Value: return orbitforge::to_string(d);
      case Kind::NullNonzero: return "NullNonzero";
      case Kind::Zero: return "Zero";
    }
    return "?";
  }
};

/// q2(w) = <w, w> labels the SO(W)(Q)-orbit of a vector.
inline VectorLabel classify_vector(const std::vector<Rat>& w, const StandardSpace& s) {
  require(w.size() == s.dim(), Errc::DimensionMismatch, "vector has the wrong length");
  bool zero = std::all_of(w.begin(), w.end(), [](const Rat& v) { return v == 0; });
  if (zero) return {VectorLabel::Kind::Zero, 0};
  Rat q = pairing(s.gram, w, w);
  if (q == 0) return {VectorLabel::Kind::NullNonzero, 0};
  return {VectorLabel::Kind::Value, q};
}

struct StabilizerInfo {
  Rep rep = Rep::Sym2;
  std::size_t n = 1;
  Int disc_class;     // Standard: SO(U), dim U = 2n
  Poly k_mod, e_mod;  // Adjoint: Res_{K/Q} U_1(E/K)
  Poly l_mod;         // Sym2: (Res_{L/Q} mu_2)_{N=1}
  std::size_t dimension = 0;
  Int order;          // Sym2
  std::string description;
};

inline StabilizerInfo stabilizer_info(const Poly& f, Rep rep) {
  detail::check_orbit_poly(f, rep);
  StabilizerInfo s;
  s.rep = rep;
  s.n = static_cast<std::size_t>(f.degree() / 2);
  if (rep == Rep::Adjoint) {
    SkewAlgebraData sd = skew_data(f);
    s.k_mod = sd.g;
    s.e_mod = sd.h;
    s.dimension = s.n;
    s.description = "torus Res_{K/Q} U_1(E/K), K = Q[x]/(" + sd.g.to_string() + "), E = Q[x]/(" +
                    sd.h.to_string() + ")";
  } else {
    s.l_mod = f;
    s.dimension = 0;
    s.order = pow_int(2, 2 * s.n);
    s.description = "finite group scheme (Res_{L/Q} mu_2)_{N=1}, L = Q[x]/(" + f.to_string() +
                    "), order " + s.order.get_str();
  }
  return s;
}

inline StabilizerInfo stabilizer_info_standard(std::size_t n, const Rat& d) {
  require(n >= 1, Errc::InvalidArgument, "n must be at least 1");
  require(d != 0, Errc::ZeroDiscriminant, "q2 = 0 has no reductive stabilizer");
  StabilizerInfo s;
  s.rep = Rep::Standard;
  s.n = n;
  s.disc_class = squarefree_part(d);
  s.dimension = n * (2 * n - 1);
  s.description = "SO(U), U of dimension " + std::to_string(2 * n) + " and discriminant class " +
                  s.disc_class.get_str();
  return s;
}

// ---------------------------------------------------------------------------
// Elements of SO(W)(Q).

/// Reflection in the hyperplane orthogonal to the anisotropic vector v.
inline Matrix reflection(const Matrix& gram, const std::vector<Rat>& v) {
  Rat q = pairing(gram, v, v);
  require(q != 0, Errc::NotIsotropic, "reflection vector is isotropic");
  const std::size_t N = gram.rows();
  std::vector<Rat> gv = gram * v;
  Matrix r = Matrix::identity(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) -= 2 * v[i] * gv[j] / q;
  return r;
}

/// The hyperbolic rotation e_i -> t e_i, f_i -> f_i / t.
inline Matrix hyperbolic_rotation(const StandardSpace& s, std::size_t i, const Rat& t) {
  require(t != 0 && i < s.n, Errc::InvalidArgument, "bad hyperbolic rotation");
  Matrix g = Matrix::identity(s.dim());
  g(i, i) = t;
  g(s.dim() - 1 - i, s.dim() - 1 - i) = 1 / t;
  return g;
}

/// Product of `pairs` pairs of reflections in random small anisotropic vectors.
inline Matrix random_so_element(const StandardSpace& s, std::mt19937_64& rng, unsigned pairs = 2) {
  std::uniform_int_distribution<int> dist(-2, 2);
  Matrix g = Matrix::identity(s.dim());
  for (unsigned k = 0; k < 2 * pairs;) {
    std::vector<Rat> v(s.dim());
    for (auto& x : v) x = dist(rng);
    if (pairing(s.gram, v, v) == 0) continue;
    g = reflection(s.gram, v) * g;
    ++k;
  }
  return g;
}

}  // namespace orbitforge
