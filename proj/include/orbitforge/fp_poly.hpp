#pragma once

// Polynomials over a prime field F_p (p odd, word sized): distinct-degree and
// equal-degree factorization, and square roots in F_p[x]/(g) for irreducible g.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orbitforge/poly.hpp"

namespace orbitforge {

class FpPoly {
 public:
  using u64 = std::uint64_t;

  FpPoly() = default;
  FpPoly(u64 p, std::vector<u64> ascending) : p_(p), c_(std::move(ascending)) {
    for (auto& v : c_) v %= p_;
    trim();
  }
  static FpPoly from_ints(u64 p, const std::vector<long long>& ascending) {
    std::vector<u64> c;
    for (long long v : ascending) {
      long long r = v % static_cast<long long>(p);
      if (r < 0) r += static_cast<long long>(p);
      c.push_back(static_cast<u64>(r));
    }
    return FpPoly(p, std::move(c));
  }
  /// Reduction of a rational polynomial; p must not divide any denominator.
  static FpPoly reduce(const Poly& f, u64 p) {
    Int pp = p;
    std::vector<u64> c;
    for (const auto& v : f.coeffs()) {
      auto inv = invmod(v.get_den(), pp);
      require(inv.has_value(), Errc::BadPrime, "p divides a denominator");
      Int r = mod_floor(Int(v.get_num() * *inv), pp);
      c.push_back(r.get_ui());
    }
    return FpPoly(p, std::move(c));
  }
  static FpPoly one(u64 p) { return FpPoly(p, {1}); }
  static FpPoly x(u64 p) { return FpPoly(p, {0, 1}); }

  u64 prime() const { return p_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  u64 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  u64 lc() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<u64>& coeffs() const { return c_; }

  static u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
  }
  static u64 powmod_u(u64 b, u64 e, u64 p) {
    u64 r = 1 % p;
    b %= p;
    while (e) {
      if (e & 1) r = mulmod(r, b, p);
      b = mulmod(b, b, p);
      e >>= 1;
    }
    return r;
  }
  static u64 inv_u(u64 a, u64 p) { return powmod_u(a, p - 2, p); }

  FpPoly monic() const {
    if (c_.empty()) return *this;
    u64 inv = inv_u(lc(), p_);
    std::vector<u64> d = c_;
    for (auto& v : d) v = mulmod(v, inv, p_);
    return FpPoly(p_, std::move(d));
  }

  FpPoly derivative() const {
    if (c_.size() <= 1) return FpPoly(p_, {});
    std::vector<u64> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = mulmod(c_[i], i % p_, p_);
    return FpPoly(p_, std::move(d));
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<u64> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
    return FpPoly(a.p_, std::move(d));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<u64> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (a.coeff(i) + a.p_ - b.coeff(i)) % a.p_;
    return FpPoly(a.p_, std::move(d));
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
    std::vector<u64> d(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        d[i + j] = (d[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
    }
    return FpPoly(a.p_, std::move(d));
  }
  friend FpPoly operator*(u64 s, const FpPoly& a) {
    std::vector<u64> d = a.c_;
    for (auto& v : d) v = mulmod(v, s % a.p_, a.p_);
    return FpPoly(a.p_, std::move(d));
  }
  friend bool operator==(const FpPoly& a, const FpPoly& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    require(!b.is_zero(), Errc::ZeroDivisor, "F_p polynomial division by zero");
    const u64 p = a.p_;
    if (a.degree() < b.degree()) return {FpPoly(p, {}), a};
    std::vector<u64> r = a.c_;
    std::vector<u64> q(a.c_.size() - b.c_.size() + 1);
    const u64 inv = inv_u(b.lc(), p);
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      u64 t = mulmod(r[k + db], inv, p);
      q[k] = t;
      if (!t) continue;
      for (std::size_t j = 0; j <= db; ++j)
        r[k + j] = (r[k + j] + p - mulmod(t, b.c_[j], p)) % p;
    }
    r.resize(db);
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
  }
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
  friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

  std::string to_string() const {
    std::vector<Rat> c;
    for (u64 v : c_) c.emplace_back(static_cast<unsigned long>(v));
    return Poly(c).to_string();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  u64 p_ = 3;
  std::vector<u64> c_;
};

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

struct FpXgcd {
  FpPoly g, s, t;
};

inline FpXgcd fp_xgcd(const FpPoly& a, const FpPoly& b) {
  const auto p = a.prime();
  FpPoly r0 = a, r1 = b, s0 = FpPoly::one(p), s1(p, {}), t0(p, {}), t1 = FpPoly::one(p);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  auto inv = FpPoly::inv_u(r0.lc(), p);
  return {inv * r0, inv * s0, inv * t0};
}

/// base^e mod m.
inline FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& m) {
  FpPoly r = FpPoly::one(base.prime()) % m;
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

inline bool fp_is_squarefree(const FpPoly& f) {
  if (f.degree() <= 0) return true;
  return fp_gcd(f, f.derivative()).degree() == 0;
}

/// Distinct-degree factorization of a monic squarefree f: pairs (d, product
/// of all irreducible factors of degree d).
inline std::vector<std::pair<long, FpPoly>> distinct_degree_factor(const FpPoly& f_in) {
  const auto p = f_in.prime();
  FpPoly f = f_in.monic();
  std::vector<std::pair<long, FpPoly>> out;
  FpPoly h = FpPoly::x(p) % f;
  FpPoly xp = FpPoly::x(p);
  for (long d = 1; 2 * d <= f.degree(); ++d) {
    h = fp_powmod(h, Int(static_cast<unsigned long>(p)), f);
    FpPoly g = fp_gcd(f, h - xp);
    if (g.degree() > 0) {
      out.emplace_back(d, g);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.degree(), f);
  return out;
}

/// Number of irreducible factors of a squarefree f over F_p.
inline long count_factors_fp(const FpPoly& f) {
  require(f.degree() >= 1, Errc::InvalidArgument, "constant polynomial");
  require(fp_is_squarefree(f), Errc::NonSeparableModP, "f is not squarefree mod p");
  long count = 0;
  for (auto& [d, g] : distinct_degree_factor(f)) count += g.degree() / d;
  return count;
}

/// Cantor-Zassenhaus equal-degree splitting of g (product of degree-d
/// irreducibles), p odd.
inline void equal_degree_split(const FpPoly& g, long d, std::mt19937_64& rng,
                               std::vector<FpPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const auto p = g.prime();
  Int q = pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
  Int e = (q - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  for (;;) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(g.degree()));
    for (auto& v : c) v = dist(rng);
    FpPoly a(p, c);
    if (a.degree() <= 0) continue;
    FpPoly h = fp_gcd(g, a);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(g / h, d, rng, out);
      return;
    }
    FpPoly b = fp_powmod(a, e, g) - FpPoly::one(p);
    h = fp_gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(g / h, d, rng, out);
      return;
    }
  }
}

/// Monic irreducible factors of a squarefree f over F_p, sorted by (degree,
/// coefficients) so the result does not depend on the random splitting.
inline std::vector<FpPoly> factor_squarefree_fp(const FpPoly& f, std::uint64_t seed = 1) {
  require(fp_is_squarefree(f), Errc::NonSeparableModP, "f is not squarefree mod p");
  std::mt19937_64 rng(seed);
  std::vector<FpPoly> out;
  for (auto& [d, g] : distinct_degree_factor(f)) equal_degree_split(g, d, rng, out);
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
  });
  return out;
}

/// Euler criterion in F_p[x]/(g), g irreducible: is a a square?
inline bool fq_is_square(const FpPoly& a, const FpPoly& g) {
  const auto p = g.prime();
  Int q = pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(g.degree()));
  FpPoly r = fp_powmod(a, (q - 1) / 2, g);
  return r == FpPoly::one(p);
}

/// Square root in F_q = F_p[x]/(g) by Tonelli-Shanks; nullopt for non-squares.
inline std::optional<FpPoly> fq_sqrt(const FpPoly& a_in, const FpPoly& g, std::uint64_t seed = 7) {
  const auto p = g.prime();
  FpPoly a = a_in % g;
  if (a.is_zero()) return a;
  if (!fq_is_square(a, g)) return std::nullopt;
  Int q = pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(g.degree()));
  Int t = q - 1;
  unsigned long s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t >>= 1;
    ++s;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  FpPoly z;
  for (;;) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(g.degree()));
    for (auto& v : c) v = dist(rng);
    z = FpPoly(p, c);
    if (!z.is_zero() && !fq_is_square(z, g)) break;
  }
  const FpPoly one = FpPoly::one(p);
  unsigned long m = s;
  FpPoly c = fp_powmod(z, t, g);
  FpPoly tt = fp_powmod(a, t, g);
  FpPoly r = fp_powmod(a, (t + 1) / 2, g);
  while (!(tt == one)) {
    unsigned long i = 0;
    FpPoly w = tt;
    while (!(w == one)) {
      w = (w * w) % g;
      ++i;
    }
    FpPoly b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % g;
    m = i;
    c = (b * b) % g;
    tt = (tt * c) % g;
    r = (r * b) % g;
  }
  return r;
}

}  // namespace orbitforge
