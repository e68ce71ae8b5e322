#pragma once

// Integral models: the odd unimodular lattice W, orthogonal complements of
// vectors, fractional ideals of R = Z[x]/(f), and pairs (I, alpha).

#include <optional>
#include <string>
#include <vector>

#include "orbitforge/orbit.hpp"

namespace orbitforge {

struct ComplementLattice {
  Matrix basis;  // columns in the standard basis, HNF
  Matrix gram;
  Int q2;
  Rat det;
  bool even = false;
};

inline ComplementLattice complement_lattice(const std::vector<Int>& w, std::size_t n) {
  StandardSpace s = standard_space(n);
  require(w.size() == s.dim(), Errc::DimensionMismatch, "w must have length 2n+1");
  Int g = 0;
  for (const auto& v : w) g = gcd(g, v);
  require(g == 1, Errc::NotPrimitive, "w is not primitive");
  std::vector<Rat> wr(w.begin(), w.end());
  ComplementLattice out;
  out.q2 = pairing(s.gram, wr, wr).get_num();
  require(out.q2 != 0, Errc::NullVector, "q2(w) = 0");
  std::vector<Int> row(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) row[j] = w[w.size() - 1 - j];  // J w
  out.basis = integer_kernel(row);
  out.gram = out.basis.transpose() * s.gram * out.basis;
  out.det = orbitforge::det(out.gram);
  out.even = true;
  for (std::size_t i = 0; i < out.gram.rows(); ++i)
    if (mpz_odd_p(out.gram(i, i).get_num().get_mpz_t())) out.even = false;
  return out;
}

// ---------------------------------------------------------------------------
// Fractional ideals of R = Z[beta], as Z-lattices in L.

class FracIdeal {
 public:
  /// Z-lattice spanned by the given columns (power-basis coordinates);
  /// must have full rank and be stable under multiplication by beta.
  static FracIdeal from_lattice(AlgebraPtr alg, const Matrix& gens) {
    check_ring(*alg);
    FracIdeal I(std::move(alg), gens);
    require(I.basis_.cols() == I.alg_->dim(), Errc::NotAnIdeal, "lattice does not have full rank");
    Matrix img = mult_matrix(EtaleElement::beta(I.alg_)) * I.basis_;
    require(I.contains_lattice(img), Errc::NotAnIdeal, "lattice is not stable under beta");
    return I;
  }
  /// The R-module generated by the given elements.
  static FracIdeal generated(AlgebraPtr alg, const std::vector<EtaleElement>& gens) {
    check_ring(*alg);
    require(!gens.empty(), Errc::ZeroInput, "no generators");
    const std::size_t N = alg->dim();
    std::vector<std::vector<Rat>> cols;
    for (const auto& g : gens)
      for (std::size_t k = 0; k < N; ++k) cols.push_back((g * EtaleElement::beta_power(alg, k)).coeffs());
    return from_lattice(alg, Matrix::from_columns(cols));
  }
  static FracIdeal unit(AlgebraPtr alg) { return generated(alg, {EtaleElement::constant(alg, 1)}); }
  static FracIdeal principal(const EtaleElement& a) { return generated(a.algebra(), {a}); }

  const AlgebraPtr& algebra() const { return alg_; }
  const Matrix& basis() const { return basis_; }
  EtaleElement element(std::size_t j) const { return EtaleElement(alg_, basis_.column(j)); }

  bool contains_lattice(const Matrix& cols) const {
    return (inverse(basis_) * cols).is_integral();
  }
  bool contains(const FracIdeal& o) const { return contains_lattice(o.basis_); }
  friend bool operator==(const FracIdeal& a, const FracIdeal& b) {
    return a.alg_->modulus() == b.alg_->modulus() && a.basis_ == b.basis_;
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t j = 0; j < basis_.cols(); ++j) {
      if (j) s += ", ";
      s += element(j).to_string();
    }
    return s + ">";
  }

 private:
  FracIdeal(AlgebraPtr alg, const Matrix& gens) : alg_(std::move(alg)), basis_(canonical(gens)) {}
  // HNF of the lattice with the smallest common denominator.
  static Matrix canonical(const Matrix& b) {
    Int den = 1;
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) den = lcm(den, b(i, j).get_den());
    return Rat(1) / Rat(den) * hnf(Rat(den) * b);
  }
  static void check_ring(const EtaleAlgebra& alg) {
    require(alg.modulus().is_integral(), Errc::NonIntegral, "R = Z[x]/(f) needs integral f");
  }
  AlgebraPtr alg_;
  Matrix basis_;
};

inline void check_same_ring(const FracIdeal& a, const FracIdeal& b) {
  require(a.algebra()->modulus() == b.algebra()->modulus(), Errc::RingMismatch, "ideals of different rings");
}

inline FracIdeal ideal_mul(const FracIdeal& a, const FracIdeal& b) {
  check_same_ring(a, b);
  std::vector<std::vector<Rat>> cols;
  for (std::size_t i = 0; i < a.basis().cols(); ++i)
    for (std::size_t j = 0; j < b.basis().cols(); ++j) cols.push_back((a.element(i) * b.element(j)).coeffs());
  return FracIdeal::from_lattice(a.algebra(), Matrix::from_columns(cols));
}

/// Generalized index [R : I].
inline Rat ideal_norm(const FracIdeal& a) {
  Rat d = det(a.basis());
  return d < 0 ? Rat(-d) : d;
}

inline FracIdeal ideal_scale(const EtaleElement& c, const FracIdeal& a) {
  require(c.algebra()->modulus() == a.algebra()->modulus(), Errc::RingMismatch, "element of another ring");
  std::vector<std::vector<Rat>> cols;
  for (std::size_t j = 0; j < a.basis().cols(); ++j) cols.push_back((c * a.element(j)).coeffs());
  return FracIdeal::from_lattice(a.algebra(), Matrix::from_columns(cols));
}

inline FracIdeal ideal_tau(const FracIdeal& a) {
  std::vector<std::vector<Rat>> cols;
  for (std::size_t j = 0; j < a.basis().cols(); ++j) cols.push_back(apply_tau(a.element(j)).coeffs());
  return FracIdeal::from_lattice(a.algebra(), Matrix::from_columns(cols));
}

// ---------------------------------------------------------------------------
// Pairs (I, alpha).

struct IdealPair {
  FracIdeal ideal;
  EtaleElement alpha;
  Rep rep = Rep::Sym2;
};

struct PairVerdict {
  bool valid = false;
  std::string reason;  // failed condition when invalid
  Matrix gram;         // form on the Z-basis of I
  Matrix op;           // multiplication by beta on that basis
  int pos = 0, neg = 0;
};

/// Gram of coeff_{beta^{2n}}(alpha^{-1} x y) (Sym2) or of
/// coeff_{beta^{2n}}((-1)^n alpha^{-1} x tau(y)) (Adjoint) on the basis of I.
inline Matrix pair_gram(const IdealPair& P) {
  const FracIdeal& I = P.ideal;
  const std::size_t N = I.algebra()->dim();
  const long n = static_cast<long>(N / 2);
  EtaleElement ainv = elem_inv(P.alpha);
  Matrix g(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      EtaleElement y = P.rep == Rep::Adjoint ? apply_tau(I.element(j)) : I.element(j);
      Rat v = top_coeff(ainv * I.element(i) * y);
      g(i, j) = (P.rep == Rep::Adjoint && n % 2 == 1) ? Rat(-v) : v;
    }
  return g;
}

inline PairVerdict verify_pair(const IdealPair& P) {
  PairVerdict out;
  auto fail = [&out](std::string why) {
    out.valid = false;
    out.reason = std::move(why);
    return out;
  };
  const FracIdeal& I = P.ideal;
  const Poly& f = I.algebra()->modulus();
  if (P.alpha.algebra()->modulus() != f) return fail("ring: alpha lies in another algebra");
  if (P.rep == Rep::Standard) return fail("rep: pairs describe adjoint or sym2 orbits");
  if (f.degree() % 2 == 0) return fail("degree: deg f must be odd");
  if (!is_unit(P.alpha)) return fail("unit: alpha is not invertible");
  const std::size_t N = static_cast<std::size_t>(f.degree());
  const long n = static_cast<long>(N / 2);
  Rat nI = ideal_norm(I);
  Rat na = norm(P.alpha);
  if (P.rep == Rep::Adjoint) {
    if (!I.algebra()->is_odd()) return fail("shape: f is not of the form x*g(x^2)");
    if (!is_tau_fixed(P.alpha)) return fail("tau: alpha is not tau-fixed");
    Rat nt = ideal_norm(ideal_tau(I));
    if (nI * nt != na)
      return fail("norm: N(I)N(I^tau) = " + to_string(Rat(nI * nt)) + " != " + to_string(na) + " = N(alpha)");
  } else if (nI * nI != na) {
    return fail("norm: N(I)^2 = " + to_string(Rat(nI * nI)) + " != " + to_string(na) + " = N(alpha)");
  }
  out.gram = pair_gram(P);
  if (!out.gram.is_integral()) return fail("integrality: Gram has non-integral entries");
  FracIdeal prod = P.rep == Rep::Adjoint ? ideal_mul(I, ideal_tau(I)) : ideal_mul(I, I);
  if (!FracIdeal::principal(P.alpha).contains(prod)) return fail("containment: product not inside (alpha)");
  Rat d = det(out.gram);
  Rat want = n % 2 ? Rat(-1) : Rat(1);
  if (d != want) return fail("determinant: " + to_string(d) + " != " + to_string(want));
  Diagonalization dg = diagonalize(QuadSpace(out.gram));
  for (const auto& v : dg.d) (v > 0 ? out.pos : out.neg)++;
  if (out.pos != n + 1 || out.neg != n)
    return fail("signature: (" + std::to_string(out.pos) + "," + std::to_string(out.neg) + ") != (" +
                std::to_string(n + 1) + "," + std::to_string(n) + ")");
  out.op = inverse(I.basis()) * mult_matrix(EtaleElement::beta(I.algebra())) * I.basis();
  bool adj = P.rep == Rep::Adjoint ? is_skew_adjoint(out.op, out.gram) : is_self_adjoint(out.op, out.gram);
  require(adj && out.op.is_integral(), Errc::Internal, "pair operator is not an integral (skew-)adjoint");
  out.valid = true;
  return out;
}

/// I' = cI and alpha' = c^2 alpha (Sym2) or c tau(c) alpha (Adjoint).
inline bool pair_equivalence_check(const IdealPair& a, const IdealPair& b, const EtaleElement& c) {
  check_same_ring(a.ideal, b.ideal);
  require(c.algebra()->modulus() == a.ideal.algebra()->modulus(), Errc::RingMismatch, "c lies in another ring");
  require(a.rep == b.rep, Errc::InvalidArgument, "pairs for different representations");
  if (c.is_zero()) return false;
  EtaleElement factor = a.rep == Rep::Adjoint ? c * apply_tau(c) : c * c;
  return ideal_scale(c, a.ideal) == b.ideal && factor * a.alpha == b.alpha;
}

}  // namespace orbitforge
