#pragma once

// Integer and rational primitives: factorization, square classes, modular
// square roots. Int/Rat are GMP's C++ wrappers.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitforge/error.hpp"

namespace orbitforge {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Int& v) { return v.get_str(); }

/// Canonical rendering: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

struct Xgcd {
  Int g, s, t;  // s*a + t*b = g >= 0
};

inline Xgcd xgcd(const Int& a, const Int& b) {
  Xgcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e < 0) {
    require(base != 0, Errc::ZeroDivisor, "negative power of zero");
    Rat inv = 1 / base;
    return pow_rat(inv, -e);
  }
  Int n = pow_int(base.get_num(), static_cast<unsigned long>(e));
  Int d = pow_int(base.get_den(), static_cast<unsigned long>(e));
  return make_rat(n, d);
}

inline Int powmod(const Int& base, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::optional<Int> invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    return std::nullopt;
  return r;
}

inline bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

inline Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline unsigned long valuation(Int n, const Int& p) {
  if (n == 0) return 0;
  unsigned long v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

/// Kronecker/Legendre symbol (a|p).
inline int legendre(const Int& a, const Int& p) {
  return mpz_kronecker(a.get_mpz_t(), p.get_mpz_t());
}

inline std::optional<Int> integer_sqrt_exact(const Int& n) {
  if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Nonnegative rational square root, if the argument is a square in Q.
inline std::optional<Rat> rational_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  auto n = integer_sqrt_exact(q.get_num());
  auto d = integer_sqrt_exact(q.get_den());
  if (!n || !d) return std::nullopt;
  return make_rat(*n, *d);
}

inline bool is_rational_square(const Rat& q) {
  return q != 0 && rational_sqrt(q).has_value();
}

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1000000;
    std::vector<bool> sieve(limit + 1, true);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
        sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or nullopt
// when the iteration budget runs out.
inline std::optional<Int> pollard_brent(const Int& n, unsigned long c0,
                                        unsigned long budget) {
  if (mpz_even_p(n.get_mpz_t()) != 0) return Int(2);
  for (unsigned long c = c0; c < c0 + 20; ++c) {
    Int y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128, spent = 0;
    auto step = [&](const Int& v) {
      Int w = v * v + c;
      return mod_floor(w, n);
    };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = step(y);
          Int diff = abs_int(Int(x - y));
          q = mod_floor(Int(q * diff), n);
        }
        g = gcd(q, n);
        k += m;
        spent += lim;
      }
      r *= 2;
      if (spent > budget) return std::nullopt;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs_int(Int(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

inline void factor_rec(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  if (auto sq = integer_sqrt_exact(n)) {
    factor_rec(*sq, out);
    factor_rec(*sq, out);
    return;
  }
  auto d = pollard_brent(n, 1, 50'000'000);
  if (!d) raise(Errc::FactorizationTimeout, "cannot factor " + n.get_str());
  Int rest = n / *d;
  factor_rec(*d, out);
  factor_rec(rest, out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), primes ascending with multiplicity.
/// Trial division to 10^6, then Pollard rho.
inline std::vector<std::pair<Int, unsigned>> factorize(const Int& n_in) {
  require(n_in != 0, Errc::ZeroInput, "factorize(0)");
  Int n = abs_int(n_in);
  std::vector<std::pair<Int, unsigned>> out;
  for (std::uint32_t p : detail::small_primes()) {
    Int pp = p;
    if (pp * pp > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    out.emplace_back(pp, e);
    if (n > 1 && is_probable_prime(n)) break;
  }
  if (n > 1) {
    std::vector<Int> big;
    detail::factor_rec(n, big);
    std::sort(big.begin(), big.end());
    for (const Int& p : big) {
      if (!out.empty() && out.back().first == p)
        ++out.back().second;
      else
        out.emplace_back(p, 1);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

inline std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> ps;
  for (auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

/// The squarefree integer s with n/s a nonzero rational square; sign kept.
inline Int squarefree_part(const Rat& n) {
  require(n != 0, Errc::ZeroInput, "squarefree_part(0)");
  Int prod = n.get_num() * n.get_den();
  Int s = prod < 0 ? Int(-1) : Int(1);
  for (auto& [p, e] : factorize(prod))
    if (e % 2 == 1) s *= p;
  return s;
}

/// Square root of a modulo an odd prime p (a must be a residue).
inline std::optional<Int> sqrt_mod_prime(const Int& a_in, const Int& p) {
  Int a = mod_floor(a_in, p);
  if (a == 0) return Int(0);
  if (p == 2) return a;
  if (legendre(a, p) != 1) return std::nullopt;
  Int q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t()) != 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (legendre(z, p) != -1) ++z;
  Int m = s, c = powmod(z, q, p), t = powmod(a, q, p);
  Int r = powmod(a, Int((q + 1) / 2), p);
  while (t != 1) {
    unsigned long i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = mod_floor(Int(tt * tt), p);
      ++i;
    }
    Int b = c;
    for (unsigned long j = 0; j + i + 1 < m.get_ui(); ++j)
      b = mod_floor(Int(b * b), p);
    m = i;
    c = mod_floor(Int(b * b), p);
    t = mod_floor(Int(t * c), p);
    r = mod_floor(Int(r * b), p);
  }
  return r;
}

/// Square root of a modulo a squarefree odd |m| (CRT over the prime factors).
inline std::optional<Int> sqrt_mod_squarefree(const Int& a, const Int& m_in) {
  Int m = abs_int(m_in);
  if (m == 1) return Int(0);
  Int acc = 0, mod = 1;
  for (auto& [p, e] : factorize(m)) {
    if (e != 1) raise(Errc::InvalidArgument, "modulus not squarefree");
    std::optional<Int> r;
    if (p == 2)
      r = mod_floor(a, Int(2));
    else
      r = sqrt_mod_prime(a, p);
    if (!r) return std::nullopt;
    // combine acc mod `mod` with r mod p
    Int inv = *invmod(mod, p);
    Int t = mod_floor(Int((*r - acc) * inv), p);
    acc += mod * t;
    mod *= p;
  }
  return mod_floor(acc, mod);
}

/// Rational reconstruction of x mod m: u/v with |u|,|v| <= sqrt(m/2).
inline std::optional<Rat> rational_reconstruct(const Int& x, const Int& m) {
  Int bound;
  Int half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Int r0 = m, r1 = mod_floor(x, m), t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = floor_div(r0, r1);
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs_int(t1) > bound) return std::nullopt;
  if (gcd(t1, m) != 1) return std::nullopt;
  return make_rat(r1, t1);
}

/// Binomial coefficient C(n, k).
inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace orbitforge
