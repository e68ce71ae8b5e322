#pragma once

// Seeded generators and brute-force oracles shared by the unit and
// acceptance tests. Oracles avoid the library code they check.

#include <cstdint>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "orbitforge.hpp"

namespace testsupport {

using orbitforge::Int;
using orbitforge::Matrix;
using orbitforge::Poly;
using orbitforge::Rat;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  Int integer(long h) { return Int(range(-h, h)); }
  Rat rational(long h) {
    long den = range(1, h);
    return orbitforge::make_rat(Int(range(-h, h)), Int(den));
  }
  Rat nonzero_rational(long h) {
    for (;;) {
      Rat r = rational(h);
      r.canonicalize();
      if (r != 0) return r;
    }
  }
  std::mt19937_64& engine() { return rng_; }

  /// Monic separable integral polynomial of the given degree.
  Poly monic_separable(long degree, long height) {
    for (;;) {
      std::vector<Rat> c(static_cast<std::size_t>(degree) + 1);
      for (long i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = integer(height);
      c.back() = 1;
      Poly f(c);
      if (orbitforge::is_separable(f)) return f;
    }
  }
  /// f = x g(x^2) with g monic integral of degree n and f separable.
  Poly odd_separable(long n, long height) {
    for (;;) {
      std::vector<Rat> g(static_cast<std::size_t>(n) + 1);
      for (long i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = integer(height);
      g.back() = 1;
      std::vector<Rat> c(static_cast<std::size_t>(2 * n + 2));
      for (long i = 0; i <= n; ++i) c[static_cast<std::size_t>(2 * i + 1)] = g[static_cast<std::size_t>(i)];
      Poly f(c);
      if (orbitforge::is_separable(f)) return f;
    }
  }
  Matrix integer_matrix(std::size_t n, long h) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) m(i, k) = integer(h);
    return m;
  }
  Matrix unimodular_ish(std::size_t n, long h) {
    for (;;) {
      Matrix m = integer_matrix(n, h);
      if (orbitforge::det(m) != 0) return m;
    }
  }
  /// Product of a few elementary column operations: det 1, small entries.
  Matrix elementary(std::size_t n, int steps) {
    Matrix u = Matrix::identity(n);
    for (int k = 0; k < steps; ++k) {
      auto i = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
      auto j = static_cast<std::size_t>(range(0, static_cast<long>(n) - 1));
      if (i == j) continue;
      Rat c(range(-2, 2));
      for (std::size_t r = 0; r < n; ++r) u(r, i) += c * u(r, j);
    }
    return u;
  }

 private:
  std::mt19937_64 rng_;
};

// -- oracles ------------------------------------------------------------------

/// Leibniz expansion.
inline Rat leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Rat total = 0;
  do {
    Rat term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k)
        if (perm[i] > perm[k]) ++inv;
    total += inv % 2 ? Rat(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Lagrange interpolation of det(xI - m) at 0..n.
inline Poly charpoly_by_points(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Rat> xs, ys;
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix a = Rat(static_cast<long>(k)) * Matrix::identity(n) - m;
    xs.push_back(Rat(static_cast<long>(k)));
    ys.push_back(leibniz_det(a));
  }
  Poly out;
  for (std::size_t i = 0; i <= n; ++i) {
    Poly basis(std::vector<Rat>{1});
    Rat den = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == i) continue;
      basis = basis * Poly(std::vector<Rat>{-xs[k], 1});
      den *= xs[i] - xs[k];
    }
    out = out + Rat(ys[i] / den) * basis;
  }
  return out;
}

/// Monic polynomials mod p as ascending coefficient vectors.
inline std::vector<std::vector<long>> monic_polys_mod(long p, long degree) {
  std::vector<std::vector<long>> out;
  long total = 1;
  for (long i = 0; i < degree; ++i) total *= p;
  for (long idx = 0; idx < total; ++idx) {
    std::vector<long> c(static_cast<std::size_t>(degree) + 1);
    long t = idx;
    for (long i = 0; i < degree; ++i) {
      c[static_cast<std::size_t>(i)] = t % p;
      t /= p;
    }
    c.back() = 1;
    out.push_back(c);
  }
  return out;
}

/// Remainder of a by monic b mod p (ascending vectors).
inline std::vector<long> rem_mod(std::vector<long> a, const std::vector<long>& b, long p) {
  while (a.size() >= b.size()) {
    long lead = ((a.back() % p) + p) % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    while (!a.empty() && a.back() % p == 0) a.pop_back();
  }
  return a;
}

inline bool divides_mod(const std::vector<long>& d, const std::vector<long>& a, long p) {
  return rem_mod(a, d, p).empty();
}

/// Irreducibility by trial division with every monic polynomial of lower degree.
inline bool irreducible_mod(const std::vector<long>& f, long p) {
  long deg = static_cast<long>(f.size()) - 1;
  for (long d = 1; 2 * d <= deg; ++d)
    for (const auto& g : monic_polys_mod(p, d))
      if (divides_mod(g, f, p)) return false;
  return true;
}

/// Number of distinct monic irreducible factors of f mod p, by brute force.
inline long brute_factor_count(const Poly& f, long p) {
  std::vector<long> fc;
  for (const auto& c : f.coeffs()) {
    Int num = c.get_num(), den = c.get_den();
    Int inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Int(p).get_mpz_t());
    Int r = num * inv;
    mpz_fdiv_r_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(p));
    fc.push_back(r.get_si());
  }
  long deg = static_cast<long>(fc.size()) - 1;
  long count = 0;
  for (long d = 1; d <= deg; ++d)
    for (const auto& g : monic_polys_mod(p, d))
      if (divides_mod(g, fc, p) && irreducible_mod(g, p)) ++count;
  return count;
}

/// Reduced positive definite forms of discriminant d, straight from the
/// inequalities |b| <= a <= c over a box, without sqrt bounds.
inline std::vector<std::vector<long>> reduced_forms_box(long d) {
  std::vector<std::vector<long>> out;
  long lim = -d;
  for (long a = 1; a <= lim; ++a)
    for (long b = -a; b <= a; ++b) {
      long num = b * b - d;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if ((b < 0) && (-b == a || a == c)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  return out;
}

/// Proper equivalence by search over SL2(Z) matrices with entries in [-h, h].
inline bool properly_equivalent(const std::vector<long>& f, const std::vector<long>& g, long h) {
  for (long p = -h; p <= h; ++p)
    for (long q = -h; q <= h; ++q)
      for (long r = -h; r <= h; ++r)
        for (long s = -h; s <= h; ++s) {
          if (p * s - q * r != 1) continue;
          long a = f[0] * p * p + f[1] * p * r + f[2] * r * r;
          long b = 2 * f[0] * p * q + f[1] * (p * s + q * r) + 2 * f[2] * r * s;
          long c = f[0] * q * q + f[1] * q * s + f[2] * s * s;
          if (a == g[0] && b == g[1] && c == g[2]) return true;
        }
  return false;
}

/// |SO(3)(F_p)| with the anti-diagonal form, by enumerating all p^9 matrices.
inline long so3_order_blind(long p) {
  long count = 0;
  std::vector<long> m(9);
  long total = 1;
  for (int i = 0; i < 9; ++i) total *= p;
  for (long idx = 0; idx < total; ++idx) {
    long t = idx;
    for (int i = 0; i < 9; ++i) {
      m[static_cast<std::size_t>(i)] = t % p;
      t /= p;
    }
    auto at = [&](int i, int k) { return m[static_cast<std::size_t>(3 * i + k)]; };
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i)
      for (int k = 0; k < 3 && ok; ++k) {
        // (M^T J M)_{ik} = sum_r M_{r i} M_{2-r, k}
        long s = 0;
        for (int r = 0; r < 3; ++r) s += at(r, i) * at(2 - r, k);
        ok = ((s % p) + p) % p == (i + k == 2 ? 1 : 0);
      }
    if (!ok) continue;
    long d = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    if (((d % p) + p) % p == 1) ++count;
  }
  return count;
}

/// Skew-adjoint 3x3 operators mod 3 with charpoly x^3 + c x (c = 1 or 2),
/// counted directly: T = J A with A skew, charpoly x^3 + (a01^2 ... ) x.
inline long adjoint_count_mod3(long c) {
  long count = 0;
  for (long a01 = 0; a01 < 3; ++a01)
    for (long a02 = 0; a02 < 3; ++a02)
      for (long a12 = 0; a12 < 3; ++a12) {
        long A[3][3] = {{0, a01, a02}, {-a01, 0, a12}, {-a02, -a12, 0}};
        long T[3][3];
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k < 3; ++k) T[i][k] = A[2 - i][k];
        long tr = T[0][0] + T[1][1] + T[2][2];
        long m2 = T[0][0] * T[1][1] - T[0][1] * T[1][0] + T[0][0] * T[2][2] - T[0][2] * T[2][0] +
                  T[1][1] * T[2][2] - T[1][2] * T[2][1];
        long d = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) -
                 T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
                 T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
        auto md = [](long v) { return ((v % 3) + 3) % 3; };
        if (md(tr) == 0 && md(m2) == c && md(d) == 0) ++count;
      }
  return count;
}

}  // namespace testsupport
