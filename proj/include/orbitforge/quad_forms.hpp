#pragma once

// Quadratic spaces over Q: diagonalization, Hilbert symbols, the complete
// invariant set, conic solving, and hyperbolic bases.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbitforge/matrix.hpp"

namespace orbitforge {

class QuadSpace {
 public:
  explicit QuadSpace(Matrix gram) : g_(std::move(gram)) {
    require(g_.is_square(), Errc::NotSquare, "Gram matrix must be square");
    require(g_.is_symmetric(), Errc::InvalidArgument, "Gram matrix must be symmetric");
    require(det(g_) != 0, Errc::Degenerate, "Gram matrix is degenerate");
  }
  const Matrix& gram() const { return g_; }
  std::size_t dim() const { return g_.rows(); }

 private:
  Matrix g_;
};

/// Anti-diagonal Gram of the split space of dimension 2n+1.
inline Matrix standard_gram(std::size_t n) {
  const std::size_t N = 2 * n + 1;
  Matrix j(N, N);
  for (std::size_t i = 0; i < N; ++i) j(i, N - 1 - i) = 1;
  return j;
}

struct Diagonalization {
  std::vector<Rat> d;
  Matrix u;
};

/// U^T S U = diag(d). Columns of U are primitive integer vectors whose first
/// nonzero entry is positive.
inline Diagonalization diagonalize(const QuadSpace& s) {
  const std::size_t n = s.dim();
  Matrix a = s.gram();
  Matrix u = Matrix::identity(n);
  auto add_to = [&](std::size_t i, std::size_t j, const Rat& c) {  // e_i += c e_j
    for (std::size_t k = 0; k < n; ++k) a(i, k) += c * a(j, k);
    for (std::size_t k = 0; k < n; ++k) a(k, i) += c * a(k, j);
    for (std::size_t k = 0; k < n; ++k) u(k, i) += c * u(k, j);
  };
  auto swap_basis = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < n; ++k) std::swap(u(k, i), u(k, j));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0) {
      std::size_t j = i + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        swap_basis(i, j);
      } else {
        j = i + 1;
        while (j < n && a(i, j) == 0) ++j;
        require(j < n, Errc::Degenerate, "degenerate form");
        add_to(i, j, 1);
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(j, i) == 0) continue;
      add_to(j, i, Rat(-a(j, i) / a(i, i)));
    }
  }
  std::vector<Rat> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    Int den = 1, g = 0;
    for (std::size_t k = 0; k < n; ++k) den = lcm(den, u(k, j).get_den());
    for (std::size_t k = 0; k < n; ++k) g = gcd(g, Int(u(k, j).get_num() * (den / u(k, j).get_den())));
    Rat scale = make_rat(den, g);
    for (std::size_t k = 0; k < n; ++k) {
      if (u(k, j) != 0) {
        if (u(k, j) < 0) scale = -scale;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) u(k, j) *= scale;
    d[j] = a(j, j) * scale * scale;
  }
  return {d, u};
}

/// Place p: a prime, or 0 for the real place.
inline int hilbert_symbol(const Rat& a_in, const Rat& b_in, const Int& p) {
  require(a_in != 0 && b_in != 0, Errc::ZeroArgument, "Hilbert symbol of zero");
  if (p == 0) return (a_in < 0 && b_in < 0) ? -1 : 1;
  Int a = a_in.get_num() * a_in.get_den();
  Int b = b_in.get_num() * b_in.get_den();
  unsigned long al = valuation(a, p), be = valuation(b, p);
  Int pa = pow_int(p, al), pb = pow_int(p, be);
  Int u = a / pa, v = b / pb;
  if (p == 2) {
    auto eps = [](const Int& x) { return mod_floor(Int((x - 1) / 2), Int(2)).get_ui(); };
    auto omega = [](const Int& x) { return mod_floor(Int((x * x - 1) / 8), Int(2)).get_ui(); };
    unsigned long e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
    return (e % 2) ? -1 : 1;
  }
  int s = 1;
  if ((al * be) % 2 == 1 && mod_floor(p, Int(4)) == 3) s = -s;
  if (be % 2 == 1) s *= legendre(u, p);
  if (al % 2 == 1) s *= legendre(v, p);
  return s;
}

struct FormInvariants {
  std::size_t dim = 0;
  Int disc_class;
  std::size_t pos = 0, neg = 0;
  /// Key 0 is the real place; omitted primes carry +1.
  std::map<Int, int> hasse;

  int hasse_at(const Int& p) const {
    auto it = hasse.find(p);
    return it == hasse.end() ? 1 : it->second;
  }
};

inline std::set<Int> relevant_primes(const std::vector<Rat>& d) {
  std::set<Int> ps{2};
  for (const auto& v : d) {
    for (const auto& p : prime_divisors(abs_int(v.get_num()))) ps.insert(p);
    for (const auto& p : prime_divisors(v.get_den())) ps.insert(p);
  }
  return ps;
}

inline int hasse_of_diagonal(const std::vector<Rat>& d, const Int& p) {
  int h = 1;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) h *= hilbert_symbol(d[i], d[j], p);
  return h;
}

inline FormInvariants invariants(const QuadSpace& s) {
  Diagonalization dg = diagonalize(s);
  FormInvariants inv;
  inv.dim = s.dim();
  Rat prod = 1;
  for (const auto& v : dg.d) {
    prod *= v;
    (v > 0 ? inv.pos : inv.neg) += 1;
  }
  inv.disc_class = squarefree_part(prod);
  int total = hasse_of_diagonal(dg.d, 0);
  inv.hasse[0] = total;
  for (const auto& p : relevant_primes(dg.d)) {
    int h = hasse_of_diagonal(dg.d, p);
    inv.hasse[p] = h;
    total *= h;
  }
  require(total == 1, Errc::Internal, "Hasse product formula violated");
  return inv;
}

inline bool same_invariants(const FormInvariants& a, const FormInvariants& b) {
  if (a.dim != b.dim || a.disc_class != b.disc_class || a.pos != b.pos || a.neg != b.neg)
    return false;
  std::set<Int> places;
  for (const auto& kv : a.hasse) places.insert(kv.first);
  for (const auto& kv : b.hasse) places.insert(kv.first);
  for (const auto& p : places)
    if (a.hasse_at(p) != b.hasse_at(p)) return false;
  return true;
}

inline bool is_isometric(const QuadSpace& a, const QuadSpace& b) {
  if (a.dim() != b.dim()) return false;
  return same_invariants(invariants(a), invariants(b));
}

inline bool is_split_odd(const QuadSpace& s) {
  require(s.dim() % 2 == 1 && s.dim() >= 3, Errc::WrongDimension,
          "split test needs odd dimension >= 3");
  return same_invariants(invariants(s), invariants(QuadSpace(standard_gram(s.dim() / 2))));
}

// ---------------------------------------------------------------------------
// Conics.

namespace detail {

/// Nontrivial integer solution of x^2 = A y^2 + B z^2, A and B squarefree
/// nonzero integers, by Lagrange descent.
inline std::optional<std::vector<Int>> lagrange(const Int& A, const Int& B, int depth = 0) {
  if (depth > 400) return std::nullopt;
  if (A == 1) return std::vector<Int>{1, 1, 0};
  if (B == 1) return std::vector<Int>{1, 0, 1};
  if (abs_int(A) > abs_int(B)) {
    auto r = lagrange(B, A, depth + 1);
    if (!r) return std::nullopt;
    return std::vector<Int>{(*r)[0], (*r)[2], (*r)[1]};
  }
  if (A == -B) return std::vector<Int>{0, 1, 1};
  const Int absb = abs_int(B);
  auto t0 = sqrt_mod_squarefree(mod_floor(A, absb), absb);
  if (!t0) return std::nullopt;
  Int t = *t0;
  if (2 * t > absb) t -= absb;
  Int k = (t * t - A) / B;
  if (k == 0) return std::nullopt;
  Int kp = squarefree_part(Rat(k));
  Int s2 = k / kp;
  auto s = integer_sqrt_exact(s2);
  if (!s) return std::nullopt;
  auto r = lagrange(A, kp, depth + 1);
  if (!r) return std::nullopt;
  const Int& X = (*r)[0];
  const Int& Y = (*r)[1];
  const Int& Z = (*r)[2];
  return std::vector<Int>{X * t + A * Y, X + t * Y, kp * *s * Z};
}

}  // namespace detail

/// Is a x^2 + b y^2 + c z^2 isotropic over Q (local test at all places)?
inline bool ternary_isotropic(const Rat& a, const Rat& b, const Rat& c) {
  std::vector<Rat> d{a, b, c};
  if ((a > 0 && b > 0 && c > 0) || (a < 0 && b < 0 && c < 0)) return false;
  Rat A = -a * b, B = -a * c;
  for (const auto& p : relevant_primes(d))
    if (hilbert_symbol(A, B, p) != 1) return false;
  return true;
}

/// Nontrivial rational zero of a x^2 + b y^2 + c z^2, or nullopt if anisotropic.
inline std::optional<std::vector<Rat>> solve_conic(const Rat& a, const Rat& b, const Rat& c) {
  require(a != 0 && b != 0 && c != 0, Errc::ZeroArgument, "conic coefficient is zero");
  if (!ternary_isotropic(a, b, c)) return std::nullopt;
  // a x^2 + b y^2 + c z^2 = 0  <=>  (a x)^2 = (-ab) y^2 + (-ac) z^2.
  Rat A = -a * b, B = -a * c;
  Int sa = squarefree_part(A), sb = squarefree_part(B);
  Rat ka = *rational_sqrt(A / sa), kb = *rational_sqrt(B / sb);
  auto r = detail::lagrange(sa, sb);
  if (!r) return std::nullopt;
  // X^2 = sa Y^2 + sb Z^2 with y = Y / ka, z = Z / kb, x = X / a.
  std::vector<Rat> sol{Rat((*r)[0]) / a, Rat((*r)[1]) / ka, Rat((*r)[2]) / kb};
  require(a * sol[0] * sol[0] + b * sol[1] * sol[1] + c * sol[2] * sol[2] == 0, Errc::Internal,
          "conic solution failed verification");
  return sol;
}

/// Isotropic vector of S, or nullopt if none was found.
inline std::optional<std::vector<Rat>> find_isotropic_vector(const QuadSpace& s, std::uint64_t seed = 1,
                                                            unsigned attempts = 4000) {
  const std::size_t n = s.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (s.gram()(i, i) == 0) {
      std::vector<Rat> v(n);
      v[i] = 1;
      return v;
    }
  Diagonalization dg = diagonalize(s);
  const auto& d = dg.d;
  auto lift = [&](const std::vector<std::pair<std::size_t, Rat>>& coords) {
    std::vector<Rat> v(n);
    for (const auto& [j, x] : coords)
      for (std::size_t k = 0; k < n; ++k) v[k] += x * dg.u(k, j);
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (auto r = rational_sqrt(Rat(-d[i] * d[j]))) return lift({{i, *r}, {j, d[i]}});
  if (n < 3) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (auto r = solve_conic(d[i], d[j], d[k])) return lift({{i, (*r)[0]}, {j, (*r)[1]}, {k, (*r)[2]}});
  if (n < 4) return std::nullopt;
  // Random ternary sections.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (unsigned it = 0; it < attempts; ++it) {
    Matrix b(n, 3);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < 3; ++c) b(r, c) = dist(rng);
    Matrix g = b.transpose() * s.gram() * b;
    if (det(g) == 0) continue;
    Diagonalization dd = diagonalize(QuadSpace(g));
    auto r = solve_conic(dd.d[0], dd.d[1], dd.d[2]);
    if (!r) continue;
    std::vector<Rat> w = b * (dd.u * *r);
    return w;
  }
  return std::nullopt;
}

/// Columns span a totally isotropic subspace of dimension `target` (default:
/// the largest possible for a split space, floor(dim/2)).
inline Matrix maximal_isotropic_subspace(const QuadSpace& s, std::size_t target = 0,
                                         std::uint64_t seed = 1) {
  const std::size_t n = s.dim();
  if (target == 0) target = n / 2;
  std::vector<std::vector<Rat>> found;
  Matrix basis = Matrix::identity(n);  // columns span the current complement
  while (found.size() < target) {
    Matrix g = basis.transpose() * s.gram() * basis;
    auto v_local = find_isotropic_vector(QuadSpace(g), seed + found.size());
    require(v_local.has_value(), Errc::IsotropicSearchFailed,
            "no isotropic vector found in a subspace of dimension " + std::to_string(g.rows()));
    std::vector<Rat> v = basis * *v_local;
    found.push_back(v);
    // Partner w with <v, w> != 0, then pass to the orthogonal complement of span(v, w).
    std::vector<Rat> sv = s.gram() * v;
    std::vector<Rat> w;
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      std::vector<Rat> c = basis.column(j);
      Rat p = 0;
      for (std::size_t k = 0; k < n; ++k) p += sv[k] * c[k];
      if (p != 0) {
        w = c;
        break;
      }
    }
    require(!w.empty(), Errc::Degenerate, "degenerate subspace");
    std::vector<Rat> sw = s.gram() * w;
    Matrix cond(2, basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      std::vector<Rat> c = basis.column(j);
      for (std::size_t k = 0; k < n; ++k) {
        cond(0, j) += sv[k] * c[k];
        cond(1, j) += sw[k] * c[k];
      }
    }
    Matrix ker = kernel(cond);
    basis = basis * ker;
  }
  return Matrix::from_columns(found);
}

/// U with U^T S U = standard_gram(n), where the columns of M (an isotropic
/// n-dimensional subspace) become the first n basis vectors.
inline Matrix hyperbolic_completion(const QuadSpace& s, const Matrix& m) {
  const std::size_t N = s.dim();
  require(N % 2 == 1, Errc::WrongDimension, "ambient dimension must be odd");
  const std::size_t n = N / 2;
  require(m.rows() == N && m.cols() == n, Errc::WrongDimension,
          "isotropic subspace must have dimension " + std::to_string(n));
  require(rank(m) == n, Errc::WrongDimension, "isotropic basis is not linearly independent");
  const Matrix& S = s.gram();
  Matrix mts = m.transpose() * S;
  require((mts * m).is_zero(), Errc::NotIsotropic, "subspace is not totally isotropic");
  Matrix y = linear_solve(mts, Matrix::identity(n)).particular;
  Matrix yty = y.transpose() * S * y;
  y = y - Rat(1, 2) * (m * yty);
  Matrix both(N, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    both.set_column(j, m.column(j));
    both.set_column(n + j, y.column(j));
  }
  Matrix k = kernel(both.transpose() * S);
  require(k.cols() == 1, Errc::Internal, "complement is not a line");
  std::vector<Rat> u = k.column(0);
  Rat c = pairing(S, u, u);
  auto r = rational_sqrt(c);
  require(r.has_value(), Errc::NonSquareComplement,
          "complement norm " + to_string(c) + " is not a square");
  Matrix out(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    out.set_column(i, m.column(i));
    out.set_column(N - 1 - i, y.column(i));
  }
  for (auto& v : u) v /= *r;
  out.set_column(n, u);
  return out;
}

}  // namespace orbitforge
