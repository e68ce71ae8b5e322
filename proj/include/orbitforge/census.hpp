#pragma once

// Orbit counts: SO(W)(F_q) orders, brute-force censuses over small prime
// fields, and the orbit-count formulas over Q_p (good p) and R.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "orbitforge/fp_poly.hpp"
#include "orbitforge/orbit.hpp"

namespace orbitforge {

inline Int so_order(unsigned long n, const Int& q) {
  require(n >= 1, Errc::InvalidArgument, "n must be at least 1");
  require(q >= 2, Errc::InvalidArgument, "q must be a prime power");
  require(mpz_odd_p(q.get_mpz_t()) != 0, Errc::EvenQ, "q must be odd");
  Int r = pow_int(q, n * n);
  for (unsigned long i = 1; i <= n; ++i) r *= pow_int(q, 2 * i) - 1;
  return r;
}

/// m + 1 for f reduced mod p.
inline long count_factors_mod_p(const Poly& f, std::uint64_t p) {
  return count_factors_fp(FpPoly::reduce(f, p));
}

// ---------------------------------------------------------------------------
// Dense matrices over F_p for small p.

class FpMat {
 public:
  using u32 = std::uint32_t;
  FpMat() = default;
  FpMat(std::size_t rows, std::size_t cols, u32 p) : r_(rows), c_(cols), p_(p), a_(rows * cols, 0) {}
  static FpMat identity(std::size_t n, u32 p) {
    FpMat m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
    return m;
  }
  static FpMat anti_identity(std::size_t n, u32 p) {
    FpMat m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = 1;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  u32 prime() const { return p_; }
  u32& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  u32 operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  FpMat transpose() const {
    FpMat t(c_, r_, p_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  std::vector<u32> column(std::size_t j) const {
    std::vector<u32> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, const std::vector<u32>& v) {
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }

  friend FpMat operator*(const FpMat& a, const FpMat& b) {
    FpMat c(a.r_, b.c_, a.p_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        std::uint64_t x = a(i, k);
        if (!x) continue;
        for (std::size_t j = 0; j < b.c_; ++j) c.a_[i * b.c_ + j] += static_cast<u32>(x * b(k, j) % a.p_);
      }
    for (auto& v : c.a_) v %= a.p_;
    return c;
  }
  friend std::vector<u32> operator*(const FpMat& a, const std::vector<u32>& v) {
    std::vector<u32> out(a.r_);
    for (std::size_t i = 0; i < a.r_; ++i) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < a.c_; ++k) s += static_cast<std::uint64_t>(a(i, k)) * v[k];
      out[i] = static_cast<u32>(s % a.p_);
    }
    return out;
  }
  friend FpMat operator+(const FpMat& a, const FpMat& b) {
    FpMat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = (a.a_[i] + b.a_[i]) % a.p_;
    return c;
  }
  FpMat scaled(u32 s) const {
    FpMat c = *this;
    for (auto& v : c.a_) v = static_cast<u32>(static_cast<std::uint64_t>(v) * s % p_);
    return c;
  }
  friend bool operator==(const FpMat& a, const FpMat& b) { return a.a_ == b.a_; }

  /// Base-p digits of the entries; injective while p^(rows*cols) < 2^64.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (u32 v : a_) k = k * p_ + v;
    return k;
  }
  const std::vector<u32>& data() const { return a_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  u32 p_ = 3;
  std::vector<u32> a_;
};

namespace detail {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u32 fp_inv(u32 a, u32 p) { return static_cast<u32>(FpPoly::powmod_u(a, p - 2, p)); }
inline u32 fp_neg(u32 a, u32 p) { return a ? p - a : 0; }

inline u64 vec_key(const std::vector<u32>& v, u32 p) {
  u64 k = 0;
  for (u32 x : v) k = k * p + x;
  return k;
}

inline u32 fp_pair(const FpMat& gram, const std::vector<u32>& x, const std::vector<u32>& y) {
  std::vector<u32> gy = gram * y;
  u64 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<u64>(x[i]) * gy[i];
  return static_cast<u32>(s % gram.prime());
}

/// Row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> fp_rref(FpMat& m) {
  const u32 p = m.prime();
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(sel, j));
    u32 inv = fp_inv(m(row, col), p);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = static_cast<u32>(static_cast<u64>(m(row, j)) * inv % p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      u64 c = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j)
        m(i, j) = static_cast<u32>((m(i, j) + static_cast<u64>(p - m(row, j)) * c) % p);
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

inline FpMat fp_kernel(const FpMat& a) {
  FpMat r = a;
  auto piv = fp_rref(r);
  const u32 p = a.prime();
  std::vector<std::vector<u32>> basis;
  for (std::size_t fr = 0; fr < a.cols(); ++fr) {
    if (std::find(piv.begin(), piv.end(), fr) != piv.end()) continue;
    std::vector<u32> v(a.cols(), 0);
    v[fr] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = fp_neg(r(i, fr), p);
    basis.push_back(v);
  }
  FpMat k(a.cols(), basis.size(), p);
  for (std::size_t j = 0; j < basis.size(); ++j) k.set_column(j, basis[j]);
  return k;
}

/// Some solution X of A X = B; nullopt if inconsistent.
inline std::optional<FpMat> fp_solve(const FpMat& a, const FpMat& b) {
  const std::size_t n = a.cols(), k = b.cols();
  FpMat aug(a.rows(), n + k, a.prime());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  auto piv = fp_rref(aug);
  FpMat x(n, k, a.prime());
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] >= n) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) x(piv[r], j) = aug(r, n + j);
  }
  return x;
}

inline u32 fp_det(FpMat m) {
  const u32 p = m.prime();
  const std::size_t n = m.rows();
  u64 d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m(sel, c) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(sel, j));
      d = fp_neg(static_cast<u32>(d), p);
    }
    d = d * m(c, c) % p;
    u32 inv = fp_inv(m(c, c), p);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      u64 f = static_cast<u64>(m(i, c)) * inv % p;
      for (std::size_t j = c; j < n; ++j) m(i, j) = static_cast<u32>((m(i, j) + (p - m(c, j)) * f) % p);
    }
  }
  return static_cast<u32>(d);
}

/// Monic characteristic polynomial, ascending coefficients (Hessenberg).
inline std::vector<u32> fp_charpoly(const FpMat& m) {
  const u32 p = m.prime();
  const std::size_t n = m.rows();
  if (n == 3) {
    auto at = [&](std::size_t i, std::size_t j) -> u64 { return m(i, j); };
    u64 tr = (at(0, 0) + at(1, 1) + at(2, 2)) % p;
    u64 m2 = (at(0, 0) * at(1, 1) % p + p * p - at(0, 1) * at(1, 0) % p + at(0, 0) * at(2, 2) % p +
              p * p - at(0, 2) * at(2, 0) % p + at(1, 1) * at(2, 2) % p + p * p - at(1, 2) * at(2, 1) % p) % p;
    u64 d = fp_det(m);
    return {static_cast<u32>((p - d) % p), static_cast<u32>(m2), static_cast<u32>((p - tr) % p), 1};
  }
  FpMat h = m;
  auto mul = [p](u64 a, u64 b) { return static_cast<u32>(a * b % p); };
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t i = k;
    while (i < n && h(i, k - 1) == 0) ++i;
    if (i == n) continue;
    if (i != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(k, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, k));
    }
    u32 inv = fp_inv(h(k, k - 1), p);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (h(j, k - 1) == 0) continue;
      u32 u = mul(h(j, k - 1), inv);
      for (std::size_t c = 0; c < n; ++c) h(j, c) = (h(j, c) + p - mul(u, h(k, c))) % p;
      for (std::size_t r = 0; r < n; ++r) h(r, k) = (h(r, k) + mul(u, h(r, j))) % p;
    }
  }
  std::vector<std::vector<u32>> ps{{1}};
  for (std::size_t mm = 1; mm <= n; ++mm) {
    std::vector<u32> cur(mm + 1, 0);
    const auto& prev = ps[mm - 1];
    u32 hmm = h(mm - 1, mm - 1);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = (cur[i + 1] + prev[i]) % p;
      cur[i] = (cur[i] + p - mul(hmm, prev[i])) % p;
    }
    u32 t = 1;
    for (std::size_t i = 1; i < mm; ++i) {
      t = mul(t, h(mm - i, mm - i - 1));
      u32 c = mul(h(mm - i - 1, mm - 1), t);
      const auto& q = ps[mm - i - 1];
      for (std::size_t j = 0; j < q.size(); ++j) cur[j] = (cur[j] + p - mul(c, q[j])) % p;
    }
    ps.push_back(cur);
  }
  return ps[n];
}

inline FpMat fp_reflection(const FpMat& gram, const std::vector<u32>& v) {
  const u32 p = gram.prime();
  const std::size_t n = gram.rows();
  u32 q = fp_pair(gram, v, v);
  u32 c = static_cast<u32>(2ull * fp_inv(q, p) % p);
  std::vector<u32> gv = gram * v;
  FpMat r = FpMat::identity(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r(i, j) = (r(i, j) + p - static_cast<u32>(static_cast<u64>(v[i]) * gv[j] % p * c % p)) % p;
  return r;
}

/// Products of pairs of reflections in seeded random anisotropic vectors of
/// both square classes.
inline std::vector<FpMat> so_generators(std::size_t n, u32 p, u64 seed, std::size_t count = 10) {
  const std::size_t N = 2 * n + 1;
  FpMat J = FpMat::anti_identity(N, p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u32> dist(0, p - 1);
  std::vector<std::vector<u32>> sq, nsq;
  while (sq.size() + nsq.size() < count + 1 || sq.empty() || nsq.empty()) {
    std::vector<u32> v(N);
    for (auto& x : v) x = dist(rng);
    u32 q = fp_pair(J, v, v);
    if (q == 0) continue;
    bool square = FpPoly::powmod_u(q, (p - 1) / 2, p) == 1;
    auto& bucket = square ? sq : nsq;
    if (bucket.size() < count) bucket.push_back(v);
  }
  std::vector<std::vector<u32>> all = sq;
  all.insert(all.end(), nsq.begin(), nsq.end());
  std::vector<FpMat> gens;
  FpMat r0 = fp_reflection(J, all[0]);
  for (std::size_t i = 1; i < all.size(); ++i) gens.push_back(r0 * fp_reflection(J, all[i]));
  gens.push_back(fp_reflection(J, all[1]) * fp_reflection(J, all.back()));
  return gens;
}

/// SO(W)(F_p) by column backtracking against the Gram conditions.
inline std::vector<FpMat> enumerate_so(std::size_t n, u32 p) {
  const std::size_t N = 2 * n + 1;
  FpMat J = FpMat::anti_identity(N, p);
  std::vector<std::vector<u32>> vecs;
  {
    std::vector<u32> v(N, 0);
    u64 total = 1;
    for (std::size_t i = 0; i < N; ++i) total *= p;
    for (u64 k = 0; k < total; ++k) {
      u64 x = k;
      for (std::size_t i = N; i-- > 0;) {
        v[i] = static_cast<u32>(x % p);
        x /= p;
      }
      vecs.push_back(v);
    }
  }
  std::vector<FpMat> out;
  std::vector<std::vector<u32>> cols;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == N) {
      FpMat g(N, N, p);
      for (std::size_t j = 0; j < N; ++j) g.set_column(j, cols[j]);
      if (fp_det(g) == 1) out.push_back(g);
      return;
    }
    for (const auto& v : vecs) {
      if (fp_pair(J, v, v) != J(k, k)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) ok = fp_pair(J, cols[i], v) == J(i, k);
      if (!ok) continue;
      cols.push_back(v);
      rec(k + 1);
      cols.pop_back();
    }
  };
  rec(0);
  return out;
}

inline u64 closure_size(const std::vector<FpMat>& gens) {
  const std::size_t N = gens.front().rows();
  const u32 p = gens.front().prime();
  FpMat id = FpMat::identity(N, p);
  std::unordered_set<u64> seen{id.key()};
  std::vector<FpMat> queue{id};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      FpMat h = g * queue[i];
      if (seen.insert(h.key()).second) queue.push_back(h);
    }
  return seen.size();
}

/// Conjugation orbit of t under the group generated by gens.
inline std::vector<u64> operator_orbit(const FpMat& t, const std::vector<FpMat>& gens,
                                       const std::vector<FpMat>& gens_inv) {
  std::unordered_set<u64> seen{t.key()};
  std::vector<FpMat> queue{t};
  std::vector<u64> keys{t.key()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      FpMat h = gens[g] * queue[i] * gens_inv[g];
      if (seen.insert(h.key()).second) {
        queue.push_back(h);
        keys.push_back(h.key());
      }
    }
  return keys;
}

inline std::vector<u64> vector_orbit(const std::vector<u32>& v, const std::vector<FpMat>& gens) {
  const u32 p = gens.front().prime();
  std::unordered_set<u64> seen{vec_key(v, p)};
  std::vector<std::vector<u32>> queue{v};
  std::vector<u64> keys{vec_key(v, p)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      std::vector<u32> w = g * queue[i];
      u64 k = vec_key(w, p);
      if (seen.insert(k).second) {
        queue.push_back(w);
        keys.push_back(k);
      }
    }
  return keys;
}

/// Number of lambda(T) in SO(W)(F_p), lambda in F_p[T]; the full stabilizer
/// when T is regular.
inline u64 centralizer_stabilizer(const FpMat& t) {
  const std::size_t N = t.rows();
  const u32 p = t.prime();
  FpMat J = FpMat::anti_identity(N, p);
  std::vector<FpMat> pw{FpMat::identity(N, p)};
  for (std::size_t k = 1; k < N; ++k) pw.push_back(pw.back() * t);
  u64 total = 1;
  for (std::size_t i = 0; i < N; ++i) total *= p;
  u64 count = 0;
  for (u64 k = 0; k < total; ++k) {
    u64 x = k;
    FpMat m(N, N, p);
    for (std::size_t i = 0; i < N; ++i) {
      u32 c = static_cast<u32>(x % p);
      x /= p;
      if (c) m = m + pw[i].scaled(c);
    }
    if (m.transpose() * J * m == J && fp_det(m) == 1) ++count;
  }
  return count;
}

inline std::string fp_label(const std::vector<u32>& coeffs, u32 p) {
  return FpPoly(p, std::vector<std::uint64_t>(coeffs.begin(), coeffs.end())).to_string();
}

}  // namespace detail

struct CensusRow {
  std::vector<std::uint32_t> key;  // charpoly mod p (ascending) or {q2} for vectors
  std::string label;
  bool separable = false;
  long factor_count = 0;  // m + 1, separable operator rows
  std::uint64_t operator_count = 0;
  std::vector<std::uint64_t> orbit_sizes;
  std::vector<std::uint64_t> stabilizer_orders;  // empty when not computed
  std::uint64_t orbit_count() const { return orbit_sizes.size(); }
};

struct CensusCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct FiniteCensusReport {
  std::uint64_t p = 3;
  unsigned n = 1;
  Rep rep = Rep::Sym2;
  std::string mode;  // "full" or "generation"
  Int group_order;
  std::uint64_t group_order_enumerated = 0;
  std::uint64_t group_order_closure = 0;
  std::uint64_t space_size = 0;
  std::uint64_t total_operators = 0;
  std::vector<CensusRow> rows;
  std::vector<CensusCheck> checks;

  bool all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CensusCheck& c) { return c.pass; });
  }
  const CensusRow* find(const std::vector<std::uint32_t>& key) const {
    for (const auto& r : rows)
      if (r.key == key) return &r;
    return nullptr;
  }
};

struct CensusOptions {
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t budget = 20'000'000;
  /// Generation mode: characteristic polynomials (monic, ascending mod p) to
  /// census; empty selects one per realizable factorization pattern.
  std::vector<std::vector<std::uint32_t>> selected;
};

namespace detail {

inline void add_check(FiniteCensusReport& r, std::string name, bool pass, std::string detail = {}) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += jobs) fn(i);
    });
  for (auto& th : pool) th.join();
}

/// Operators of the given representation, parametrized by free entries:
/// Sym2 T = J S (S symmetric), Adjoint T = J A (A skew).
inline std::size_t free_entries(std::size_t N, Rep rep) {
  return rep == Rep::Sym2 ? N * (N + 1) / 2 : N * (N - 1) / 2;
}

inline FpMat operator_from_index(u64 idx, std::size_t N, Rep rep, u32 p) {
  FpMat s(N, N, p);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = (rep == Rep::Sym2 ? i : i + 1); j < N; ++j) {
      u32 v = static_cast<u32>(idx % p);
      idx /= p;
      s(i, j) = v;
      s(j, i) = rep == Rep::Sym2 ? v : fp_neg(v, p);
    }
  return FpMat::anti_identity(N, p) * s;
}

inline bool fp_separable(const std::vector<u32>& c, u32 p) {
  return fp_is_squarefree(FpPoly(p, std::vector<std::uint64_t>(c.begin(), c.end())));
}

inline long fp_factor_count(const std::vector<u32>& c, u32 p) {
  return count_factors_fp(FpPoly(p, std::vector<std::uint64_t>(c.begin(), c.end())));
}

// -- representatives over F_p for generation mode --------------------------

inline std::optional<FpMat> fp_isotropic_basis(const FpMat& S, std::size_t target) {
  const u32 p = S.prime();
  const std::size_t N = S.rows();
  FpMat basis = FpMat::identity(N, p);
  std::vector<std::vector<u32>> found;
  while (found.size() < target) {
    const std::size_t k = basis.cols();
    FpMat g = basis.transpose() * S * basis;
    u64 total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= p;
    std::optional<std::vector<u32>> x;
    for (u64 idx = 1; idx < total && !x; ++idx) {
      std::vector<u32> c(k);
      u64 t = idx;
      for (std::size_t i = 0; i < k; ++i) {
        c[i] = static_cast<u32>(t % p);
        t /= p;
      }
      if (fp_pair(g, c, c) == 0) x = c;
    }
    if (!x) return std::nullopt;
    std::vector<u32> v = basis * *x;
    found.push_back(v);
    std::vector<u32> w;
    for (std::size_t j = 0; j < k && w.empty(); ++j)
      if (fp_pair(S, v, basis.column(j)) != 0) w = basis.column(j);
    if (w.empty()) return std::nullopt;
    FpMat cond(2, k, p);
    for (std::size_t j = 0; j < k; ++j) {
      cond(0, j) = fp_pair(S, v, basis.column(j));
      cond(1, j) = fp_pair(S, w, basis.column(j));
    }
    basis = basis * fp_kernel(cond);
  }
  FpMat m(N, target, p);
  for (std::size_t j = 0; j < target; ++j) m.set_column(j, found[j]);
  return m;
}

inline std::optional<FpMat> fp_hyperbolic_completion(const FpMat& S, const FpMat& M) {
  const u32 p = S.prime();
  const std::size_t N = S.rows(), n = M.cols();
  FpMat mts = M.transpose() * S;
  auto y = fp_solve(mts, FpMat::identity(n, p));
  if (!y) return std::nullopt;
  FpMat yty = y->transpose() * S * *y;
  u32 half = fp_inv(2, p);
  FpMat corr = (M * yty).scaled(fp_neg(half, p));
  FpMat Y = *y + corr;
  FpMat both(N, 2 * n, p);
  for (std::size_t j = 0; j < n; ++j) {
    both.set_column(j, M.column(j));
    both.set_column(n + j, Y.column(j));
  }
  FpMat k = fp_kernel(both.transpose() * S);
  if (k.cols() != 1) return std::nullopt;
  std::vector<u32> u = k.column(0);
  u32 c = fp_pair(S, u, u);
  auto r = sqrt_mod_prime(Int(c), Int(p));
  if (!r || *r == 0) return std::nullopt;
  u32 inv = fp_inv(static_cast<u32>(r->get_ui()), p);
  for (auto& x : u) x = static_cast<u32>(static_cast<u64>(x) * inv % p);
  FpMat out(N, N, p);
  for (std::size_t i = 0; i < n; ++i) {
    out.set_column(i, M.column(i));
    out.set_column(N - 1 - i, Y.column(i));
  }
  out.set_column(n, u);
  return out;
}

/// Self-adjoint representatives of the 2^m classes of (L*/L*^2)_{N=1} over F_p.
inline std::vector<FpMat> sym2_class_representatives(const FpPoly& f, u64 seed) {
  const u32 p = static_cast<u32>(f.prime());
  const std::size_t N = static_cast<std::size_t>(f.degree()), n = N / 2;
  auto factors = factor_squarefree_fp(f, seed);
  auto idem = crt_idempotents(f, factors);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  std::vector<FpPoly> nonsq;
  for (const auto& g : factors) {
    for (;;) {
      std::vector<std::uint64_t> c(static_cast<std::size_t>(g.degree()));
      for (auto& v : c) v = dist(rng);
      FpPoly z(p, c);
      if (!z.is_zero() && !fq_is_square(z, g)) {
        nonsq.push_back(z);
        break;
      }
    }
  }
  FpMat B(N, N, p);
  for (std::size_t j = 0; j < N; ++j) {
    std::vector<std::uint64_t> mono(j + 2, 0);
    mono[j + 1] = 1;
    FpPoly col = FpPoly(p, mono) % f;
    for (std::size_t i = 0; i < N; ++i) B(i, j) = static_cast<u32>(col.coeff(i));
  }
  const std::size_t s = factors.size();
  std::vector<FpMat> reps;
  for (u64 mask = 0; mask < (1ull << s); ++mask) {
    if (__builtin_popcountll(mask) % 2 != 0) continue;
    FpPoly alpha(p, {});
    for (std::size_t i = 0; i < s; ++i) {
      FpPoly comp = ((mask >> i) & 1) ? nonsq[i] : FpPoly::one(p);
      alpha = alpha + (comp * idem[i]) % f;
    }
    std::vector<u32> tops(2 * N - 1);
    FpPoly x = alpha;
    for (std::size_t k = 0; k < tops.size(); ++k) {
      tops[k] = static_cast<u32>(x.coeff(N - 1));
      x = (x * FpPoly::x(p)) % f;
    }
    FpMat S(N, N, p);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) S(i, j) = tops[i + j];
    auto M = fp_isotropic_basis(S, n);
    require(M.has_value(), Errc::Internal, "no isotropic subspace over F_p");
    auto U = fp_hyperbolic_completion(S, *M);
    require(U.has_value(), Errc::Internal, "hyperbolic completion over F_p failed");
    auto Uinv = fp_solve(*U, FpMat::identity(N, p));
    require(Uinv.has_value(), Errc::Internal, "singular completion over F_p");
    reps.push_back(*Uinv * B * *U);
  }
  return reps;
}

/// Lexicographically first separable monic polynomial of each factorization
/// pattern realizable over F_p.
inline std::vector<std::vector<u32>> default_selection(std::size_t N, u32 p) {
  std::map<std::vector<long>, std::vector<u32>> by_pattern;
  u64 total = 1;
  for (std::size_t i = 0; i < N; ++i) total *= p;
  for (u64 idx = 0; idx < total; ++idx) {
    std::vector<u32> c(N + 1);
    u64 t = idx;
    for (std::size_t i = 0; i < N; ++i) {
      c[i] = static_cast<u32>(t % p);
      t /= p;
    }
    c[N] = 1;
    FpPoly fp(p, std::vector<std::uint64_t>(c.begin(), c.end()));
    if (!fp_is_squarefree(fp)) continue;
    std::vector<long> pattern;
    for (const auto& g : factor_squarefree_fp(fp)) pattern.push_back(g.degree());
    by_pattern.emplace(pattern, c);
  }
  std::vector<std::vector<u32>> out;
  for (auto& kv : by_pattern) out.push_back(kv.second);
  return out;
}

}  // namespace detail

inline FiniteCensusReport finite_census(std::uint64_t p, unsigned n, Rep rep, const CensusOptions& opt = {}) {
  using detail::u32;
  using detail::u64;
  require(p >= 3, Errc::EvenPrime, "census needs an odd prime");
  require(p % 2 == 1, Errc::EvenPrime, "census needs an odd prime");
  require(is_probable_prime(Int(static_cast<unsigned long>(p))), Errc::InvalidArgument,
          std::to_string(p) + " is not prime");
  require(n == 1 || n == 2, Errc::BudgetExceeded, "censuses cover dimensions 3 and 5 only");
  require(n == 1 || p == 3, Errc::BudgetExceeded, "dimension-5 censuses run at p = 3 only");
  const u32 P = static_cast<u32>(p);
  const std::size_t N = 2 * n + 1;
  FiniteCensusReport rep_out;
  FiniteCensusReport& R = rep_out;
  R.p = p;
  R.n = n;
  R.rep = rep;
  R.group_order = so_order(n, Int(static_cast<unsigned long>(p)));
  const u64 G = R.group_order.get_ui();

  std::vector<FpMat> gens = detail::so_generators(n, P, opt.seed);
  FpMat J = FpMat::anti_identity(N, P);
  std::vector<FpMat> gens_inv;
  for (const auto& g : gens) gens_inv.push_back(J * g.transpose() * J);

  std::vector<FpMat> group;
  if (n == 1) {
    group = detail::enumerate_so(n, P);
    R.group_order_enumerated = group.size();
    R.group_order_closure = detail::closure_size(gens);
    detail::add_check(R, "enumerated |SO(W)(F_p)| equals the order formula", R.group_order_enumerated == G,
                      std::to_string(R.group_order_enumerated) + " vs " + R.group_order.get_str());
    detail::add_check(R, "generated |SO(W)(F_p)| equals the order formula", R.group_order_closure == G,
                      std::to_string(R.group_order_closure) + " vs " + R.group_order.get_str());
  }

  if (rep == Rep::Standard) {
    u64 total = 1;
    for (std::size_t i = 0; i < N; ++i) total *= P;
    require(total <= opt.budget, Errc::BudgetExceeded, "vector space exceeds the census budget");
    R.mode = "full";
    R.space_size = total;
    std::map<std::vector<u32>, std::vector<std::vector<u32>>> buckets;
    for (u64 idx = 0; idx < total; ++idx) {
      std::vector<u32> v(N);
      u64 t = idx;
      for (std::size_t i = N; i-- > 0;) {
        v[i] = static_cast<u32>(t % P);
        t /= P;
      }
      bool zero = std::all_of(v.begin(), v.end(), [](u32 x) { return x == 0; });
      std::vector<u32> key = zero ? std::vector<u32>{} : std::vector<u32>{detail::fp_pair(J, v, v)};
      buckets[key].push_back(v);
    }
    for (auto& [key, vs] : buckets) {
      CensusRow row;
      row.key = key;
      row.label = key.empty() ? "zero" : (key[0] == 0 ? "null" : "q2=" + std::to_string(key[0]));
      row.operator_count = vs.size();
      std::unordered_set<u64> seen;
      for (const auto& v : vs) {
        if (seen.count(detail::vec_key(v, P))) continue;
        auto orbit = detail::vector_orbit(v, gens);
        for (u64 k : orbit) seen.insert(k);
        row.orbit_sizes.push_back(orbit.size());
        if (!group.empty()) {
          u64 stab = 0;
          for (const auto& g : group)
            if (g * v == v) ++stab;
          row.stabilizer_orders.push_back(stab);
        }
      }
      R.total_operators += row.operator_count;
      R.rows.push_back(std::move(row));
    }
    for (const auto& row : R.rows) {
      if (row.label == "zero") continue;
      detail::add_check(R, "single orbit for " + row.label, row.orbit_count() == 1,
                        std::to_string(row.orbit_count()) + " orbits");
    }
  } else if (n == 1 || rep == Rep::Adjoint) {
    const std::size_t free = detail::free_entries(N, rep);
    u64 total = 1;
    for (std::size_t i = 0; i < free; ++i) {
      total *= P;
      require(total <= opt.budget, Errc::BudgetExceeded, "operator space exceeds the census budget");
    }
    R.mode = "full";
    R.space_size = total;
    // Partition by the leading free entry: idx mod p.
    std::vector<std::map<std::vector<u32>, std::vector<u64>>> parts(P);
    detail::parallel_for(P, opt.jobs, [&](std::size_t lead) {
      auto& b = parts[lead];
      for (u64 rest = 0; rest * P < total; ++rest) {
        u64 idx = rest * P + lead;
        FpMat t = detail::operator_from_index(idx, N, rep, P);
        b[detail::fp_charpoly(t)].push_back(idx);
      }
    });
    std::map<std::vector<u32>, std::vector<u64>> buckets;
    for (auto& b : parts)
      for (auto& [k, v] : b) {
        auto& dst = buckets[k];
        dst.insert(dst.end(), v.begin(), v.end());
      }
    std::vector<std::pair<std::vector<u32>, std::vector<u64>>> items(buckets.begin(), buckets.end());
    std::vector<CensusRow> rows(items.size());
    detail::parallel_for(items.size(), opt.jobs, [&](std::size_t i) {
      const auto& [key, idxs] = items[i];
      CensusRow row;
      row.key = key;
      row.label = detail::fp_label(key, P);
      row.separable = detail::fp_separable(key, P);
      if (row.separable) row.factor_count = detail::fp_factor_count(key, P);
      row.operator_count = idxs.size();
      std::unordered_set<u64> seen;
      for (u64 idx : idxs) {
        FpMat t = detail::operator_from_index(idx, N, rep, P);
        if (seen.count(t.key())) continue;
        auto orbit = detail::operator_orbit(t, gens, gens_inv);
        for (u64 k : orbit) seen.insert(k);
        row.orbit_sizes.push_back(orbit.size());
        if (!group.empty()) {
          u64 stab = 0;
          for (const auto& g : group)
            if (g * t == t * g) ++stab;
          row.stabilizer_orders.push_back(stab);
        } else if (row.separable) {
          row.stabilizer_orders.push_back(detail::centralizer_stabilizer(t));
        }
      }
      rows[i] = std::move(row);
    });
    R.rows = std::move(rows);
    for (const auto& row : R.rows) R.total_operators += row.operator_count;
    for (const auto& row : R.rows) {
      if (!row.separable) continue;
      if (rep == Rep::Sym2) {
        detail::add_check(R, "operator count = |SO| for " + row.label, row.operator_count == G,
                          std::to_string(row.operator_count));
        u64 expect = 1ull << (row.factor_count - 1);
        detail::add_check(R, "2^m orbits for " + row.label, row.orbit_count() == expect,
                          std::to_string(row.orbit_count()) + " vs " + std::to_string(expect));
      } else {
        detail::add_check(R, "unique orbit for " + row.label, row.orbit_count() == 1,
                          std::to_string(row.orbit_count()) + " orbits");
      }
    }
  } else {
    // n = 2, Sym2, p = 3: orbit generation from class representatives.
    R.mode = "generation";
    u64 total = 1;
    for (std::size_t i = 0; i < detail::free_entries(N, rep); ++i) total *= P;
    R.space_size = total;
    auto selected = opt.selected.empty() ? detail::default_selection(N, P) : opt.selected;
    std::vector<CensusRow> rows(selected.size());
    detail::parallel_for(selected.size(), opt.jobs, [&](std::size_t i) {
      const auto& key = selected[i];
      require(key.size() == N + 1 && key.back() == 1, Errc::InvalidArgument,
              "selected polynomial must be monic of degree " + std::to_string(N));
      CensusRow row;
      row.key = key;
      row.label = detail::fp_label(key, P);
      row.separable = detail::fp_separable(key, P);
      require(row.separable, Errc::NonSeparableModP, row.label + " is not separable mod p");
      row.factor_count = detail::fp_factor_count(key, P);
      FpPoly fp(P, std::vector<std::uint64_t>(key.begin(), key.end()));
      auto reps = detail::sym2_class_representatives(fp, opt.seed);
      std::unordered_set<u64> seen;
      for (const auto& t : reps) {
        if (detail::fp_charpoly(t) != key) raise(Errc::Internal, "representative has the wrong charpoly");
        if (seen.count(t.key())) continue;
        auto orbit = detail::operator_orbit(t, gens, gens_inv);
        for (u64 k : orbit) seen.insert(k);
        row.orbit_sizes.push_back(orbit.size());
        row.stabilizer_orders.push_back(detail::centralizer_stabilizer(t));
      }
      for (u64 s : row.orbit_sizes) row.operator_count += s;
      rows[i] = std::move(row);
    });
    R.rows = std::move(rows);
    for (const auto& row : R.rows) {
      R.total_operators += row.operator_count;
      u64 expect = 1ull << (row.factor_count - 1);
      detail::add_check(R, "2^m distinct orbits for " + row.label, row.orbit_count() == expect,
                        std::to_string(row.orbit_count()) + " vs " + std::to_string(expect));
      detail::add_check(R, "orbits fill |SO| operators for " + row.label, row.operator_count == G,
                        std::to_string(row.operator_count));
    }
  }

  for (const auto& row : R.rows) {
    u64 sum = 0;
    for (u64 s : row.orbit_sizes) sum += s;
    if (sum != row.operator_count)
      detail::add_check(R, "orbit sizes sum to the count for " + row.label, false);
    for (std::size_t i = 0; i < row.stabilizer_orders.size(); ++i)
      if (row.orbit_sizes[i] * row.stabilizer_orders[i] != G)
        detail::add_check(R, "orbit-stabilizer for " + row.label, false,
                          std::to_string(row.orbit_sizes[i]) + " x " + std::to_string(row.stabilizer_orders[i]));
  }
  bool stabs = std::all_of(R.rows.begin(), R.rows.end(), [&](const CensusRow& row) {
    for (std::size_t i = 0; i < row.stabilizer_orders.size(); ++i)
      if (row.orbit_sizes[i] * row.stabilizer_orders[i] != G) return false;
    return true;
  });
  detail::add_check(R, "orbit size x stabilizer = |SO| for every computed stabilizer", stabs);
  bool sums = std::all_of(R.rows.begin(), R.rows.end(), [](const CensusRow& row) {
    u64 s = 0;
    for (u64 x : row.orbit_sizes) s += x;
    return s == row.operator_count;
  });
  detail::add_check(R, "orbit sizes sum to operator counts", sums);
  if (R.mode == "full")
    detail::add_check(R, "rows cover the whole space", R.total_operators == R.space_size,
                      std::to_string(R.total_operators) + " vs " + std::to_string(R.space_size));
  return rep_out;
}

// ---------------------------------------------------------------------------
// Orbit-count formulas.

namespace detail {

inline void check_good_prime(const Poly& f, const Int& p) {
  require(p > 0 && is_probable_prime(p), Errc::InvalidArgument, p.get_str() + " is not prime");
  require(p != 2, Errc::BadPrime, "p = 2 is not a good prime");
  require(f.is_monic(), Errc::NotMonic, f.to_string() + " is not monic");
  for (const auto& c : f.coeffs())
    require(mpz_divisible_p(c.get_den().get_mpz_t(), p.get_mpz_t()) == 0, Errc::BadPrime,
            "p divides a coefficient denominator");
  Rat d = poly_discriminant(f);
  require(d != 0, Errc::NonSeparable, f.to_string() + " is not separable");
  require(mpz_divisible_p(d.get_num().get_mpz_t(), p.get_mpz_t()) == 0, Errc::BadPrime,
          "p divides disc(f)");
}

}  // namespace detail

/// Number of SO(W)(Q_p)-orbits with characteristic polynomial f, p good.
inline Int orbit_count_local(const Poly& f, const Int& p, Rep rep) {
  require(rep != Rep::Standard, Errc::InvalidArgument, "operator representation required");
  detail::check_good_prime(f, p);
  const std::uint64_t pp = p.get_ui();
  if (rep == Rep::Sym2) {
    long m = count_factors_mod_p(f, pp) - 1;
    if (m == 0) return 1;
    return pow_int(2, static_cast<unsigned long>(2 * m - 1)) + pow_int(2, static_cast<unsigned long>(m - 1));
  }
  SkewAlgebraData sd = skew_data(f);
  FpPoly g = FpPoly::reduce(sd.g, pp);
  long m = 0;
  for (const auto& gi : factor_squarefree_fp(g)) {
    std::vector<std::uint64_t> c(2 * gi.coeffs().size() - 1, 0);
    for (std::size_t k = 0; k < gi.coeffs().size(); ++k) c[2 * k] = gi.coeffs()[k];
    if (count_factors_fp(FpPoly(pp, c)) == 1) ++m;
  }
  if (m == 0) return 1;
  return pow_int(2, static_cast<unsigned long>(m - 1));
}

struct RealCount {
  Int kernel;
  std::vector<std::pair<unsigned long, Int>> fibers;  // (k, fiber size)
  Int fiber_total;
};

/// Orbits over R in the maximal-rank case.
inline RealCount orbit_count_real(const Poly& f, Rep rep) {
  detail::check_orbit_poly(f, rep);
  const unsigned long n = static_cast<unsigned long>(f.degree() / 2);
  RealCount out;
  if (rep == Rep::Sym2) {
    require(count_real_roots(f) == f.degree(), Errc::MaximalRankHypothesisFails,
            f.to_string() + " is not totally real");
    out.kernel = binomial(2 * n + 1, n);
    for (unsigned long k = 0; k <= 2 * n + 1; ++k)
      if (k % 2 == n % 2) out.fibers.emplace_back(k, binomial(2 * n + 1, k));
  } else {
    SkewAlgebraData sd = skew_data(f);
    bool ok = sd.g.coeff(0) != 0 &&
              count_real_roots(sturm_sequence(sd.g), -root_bound(sd.g), Rat(0)) == sd.g.degree();
    require(ok, Errc::MaximalRankHypothesisFails,
            "g = " + sd.g.to_string() + " does not have only negative real roots");
    out.kernel = binomial(n, n / 2);
    for (unsigned long k = 0; k <= n; ++k) out.fibers.emplace_back(k, binomial(n, k));
  }
  out.fiber_total = 0;
  for (const auto& kv : out.fibers) out.fiber_total += kv.second;
  return out;
}

}  // namespace orbitforge
