#pragma once

// Positive definite binary quadratic forms a x^2 + b xy + c y^2: reduction,
// the class group of discriminant d < 0, and a bounded orbit census.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "orbitforge/number_theory.hpp"

namespace orbitforge {

struct BQForm {
  Int a, b, c;

  Int disc() const { return b * b - 4 * a * c; }
  Int content() const { return gcd(gcd(a, b), c); }
  friend bool operator==(const BQForm& x, const BQForm& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
  friend bool operator<(const BQForm& x, const BQForm& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  }
  std::string to_string() const { return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")"; }
};

inline bool is_reduced(const BQForm& f) {
  Int ab = abs_int(f.b);
  if (!(ab <= f.a && f.a <= f.c)) return false;
  if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

inline BQForm bqf_reduce(BQForm f) {
  require(f.disc() < 0, Errc::NotNegativeDiscriminant, "discriminant must be negative");
  require(f.a > 0, Errc::NotPositiveDefinite, f.to_string() + " is not positive definite");
  for (;;) {
    // b into (-a, a] by x -> x + k y
    Int k = floor_div(f.a - f.b, 2 * f.a);
    if (k != 0) {
      f.c = f.a * k * k + f.b * k + f.c;
      f.b = f.b + 2 * f.a * k;
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

inline void check_discriminant(const Int& d) {
  require(d < 0, Errc::NotNegativeDiscriminant, "discriminant must be negative");
  Int r = mod_floor(d, 4);
  require(r == 0 || r == 1, Errc::InvalidDiscriminant, d.get_str() + " is not 0 or 1 mod 4");
}

/// Dirichlet composition of primitive forms of equal discriminant, reduced.
inline BQForm bqf_compose(const BQForm& f, const BQForm& g) {
  const Int d = f.disc();
  require(g.disc() == d, Errc::InvalidDiscriminant, "composition needs equal discriminants");
  Int s = (f.b + g.b) / 2;
  Xgcd x1 = xgcd(f.a, g.a);
  Xgcd x2 = xgcd(x1.g, s);
  Int e = x2.g;
  // u a1 + v a2 + w s = e
  Int u = x2.s * x1.s, v = x2.s * x1.t, w = x2.t;
  Int a3 = f.a * g.a / (e * e);
  Int num = u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + d) / 2;
  Int b3 = mod_floor(Int(num / e), Int(2 * a3));
  Int c3 = (b3 * b3 - d) / (4 * a3);
  BQForm h{a3, b3, c3};
  require(h.disc() == d, Errc::Internal, "composition broke the discriminant");
  return bqf_reduce(h);
}

inline BQForm bqf_identity(const Int& d) {
  check_discriminant(d);
  Int r = mod_floor(d, 4);
  return bqf_reduce({1, r, (r - d) / 4});
}

inline BQForm bqf_inverse(const BQForm& f) { return bqf_reduce({f.a, -f.b, f.c}); }

struct ClassGroup {
  Int d;
  std::vector<BQForm> forms;                 // reduced primitive, sorted
  std::vector<std::vector<std::size_t>> table;  // forms[i] * forms[j] = forms[table[i][j]]
  std::size_t identity = 0;
  std::size_t order() const { return forms.size(); }
};

inline std::vector<BQForm> reduced_forms(const Int& d) {
  check_discriminant(d);
  std::vector<BQForm> out;
  Int absd = -d;
  for (Int a = 1; 3 * a * a <= absd; ++a)
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b - d;
      if (mpz_divisible_p(num.get_mpz_t(), Int(4 * a).get_mpz_t()) == 0) continue;
      BQForm f{a, b, num / (4 * a)};
      if (is_reduced(f) && f.content() == 1) out.push_back(f);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline ClassGroup bqf_class_group(const Int& d) {
  ClassGroup G;
  G.d = d;
  G.forms = reduced_forms(d);
  const std::size_t h = G.forms.size();
  auto index = [&](const BQForm& f) {
    auto it = std::lower_bound(G.forms.begin(), G.forms.end(), f);
    require(it != G.forms.end() && *it == f, Errc::Internal, "composition left the reduced set");
    return static_cast<std::size_t>(it - G.forms.begin());
  };
  G.identity = index(bqf_identity(d));
  G.table.assign(h, std::vector<std::size_t>(h));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) G.table[i][j] = index(bqf_compose(G.forms[i], G.forms[j]));
  for (std::size_t i = 0; i < h; ++i) {
    require(G.table[i][G.identity] == i, Errc::Internal, "identity axiom failed");
    require(G.table[i][index(bqf_inverse(G.forms[i]))] == G.identity, Errc::Internal, "inverse axiom failed");
    for (std::size_t j = 0; j < h; ++j) {
      require(G.table[i][j] == G.table[j][i], Errc::Internal, "commutativity failed");
      for (std::size_t k = 0; k < h; ++k)
        require(G.table[G.table[i][j]][k] == G.table[i][G.table[j][k]], Errc::Internal,
                "associativity failed");
    }
  }
  return G;
}

struct BqfCensus {
  Int d;
  Int bound;
  std::size_t forms = 0;            // primitive positive definite forms in the box
  std::size_t proper_orbits = 0;    // components under S, T
  std::size_t improper_orbits = 0;  // components once (a,b,c) ~ (a,-b,c) is added
  std::size_t class_number = 0;
  bool matches = false;             // proper_orbits == class_number
  std::vector<std::string> discrepancies;
  std::string convention_note;  // set when GL2(Z) orbits differ from h
};

/// Union-find over primitive positive definite forms with |a|,|b|,|c| <= bound
/// under S: (a,b,c) -> (c,-b,a) and T: (a,b,c) -> (a, b+2a, a+b+c).
inline BqfCensus bqf_orbit_census(const Int& d, const Int& bound) {
  check_discriminant(d);
  require(bound >= 1, Errc::InvalidArgument, "bound must be positive");
  BqfCensus out;
  out.d = d;
  out.bound = bound;
  std::vector<BQForm> forms;
  for (Int a = 1; a <= bound; ++a)
    for (Int b = -bound; b <= bound; ++b) {
      Int num = b * b - d;
      if (mpz_divisible_p(num.get_mpz_t(), Int(4 * a).get_mpz_t()) == 0) continue;
      Int c = num / (4 * a);
      if (c > bound) continue;
      BQForm f{a, b, c};
      if (f.content() == 1) forms.push_back(f);
    }
  std::sort(forms.begin(), forms.end());
  out.forms = forms.size();
  auto find_form = [&](const BQForm& f) -> long {
    auto it = std::lower_bound(forms.begin(), forms.end(), f);
    return (it != forms.end() && *it == f) ? static_cast<long>(it - forms.begin()) : -1;
  };
  auto components = [&](bool improper) {
    std::vector<std::size_t> parent(forms.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite = [&](std::size_t i, const BQForm& g) {
      long j = find_form(g);
      if (j >= 0) parent[root(i)] = root(static_cast<std::size_t>(j));
    };
    for (std::size_t i = 0; i < forms.size(); ++i) {
      const BQForm& f = forms[i];
      unite(i, {f.c, -f.b, f.a});
      unite(i, {f.a, f.b + 2 * f.a, f.a + f.b + f.c});
      unite(i, {f.a, f.b - 2 * f.a, f.a - f.b + f.c});
      if (improper) unite(i, {f.a, -f.b, f.c});
    }
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < forms.size(); ++i) comps[root(i)].push_back(i);
    return comps;
  };
  auto proper = components(false);
  out.proper_orbits = proper.size();
  out.improper_orbits = components(true).size();
  out.class_number = reduced_forms(d).size();
  for (const auto& [r, members] : proper) {
    std::size_t reduced = 0;
    for (std::size_t i : members) reduced += is_reduced(forms[i]) ? 1 : 0;
    if (reduced != 1)
      out.discrepancies.push_back("component of " + forms[members.front()].to_string() + " holds " +
                                  std::to_string(reduced) + " reduced forms");
  }
  out.matches = out.proper_orbits == out.class_number;
  if (!out.matches)
    out.discrepancies.push_back("proper orbits " + std::to_string(out.proper_orbits) + " != h = " +
                                std::to_string(out.class_number));
  if (out.improper_orbits != out.class_number)
    out.convention_note = "GL2(Z) orbits " + std::to_string(out.improper_orbits) + " != h = " +
                          std::to_string(out.class_number) +
                          ": improper equivalence identifies each class with its inverse";
  return out;
}

}  // namespace orbitforge
