#pragma once

// The `orbit` command line front end. run() is separate from main() so the
// test suite can drive it with captured streams.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitforge.hpp"

namespace orbitforge::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "1";

inline std::uint64_t env_seed() {
  const char* s = std::getenv("ORBITFORGE_SEED");
  if (!s || !*s) return 1;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, "ORBITFORGE_SEED must be a non-negative integer");
  }
}

// -- JSON rendering ----------------------------------------------------------

inline json j(const Rat& v) { return to_string(v); }
inline json j(const Int& v) { return v.get_str(); }

inline json j(const std::vector<Rat>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(j(x));
  return a;
}

inline json j(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(j(m.row(i)));
  return a;
}

inline json j(const Poly& p) {
  return json{{"text", p.to_string()}, {"coefficients", j(p.coeffs())}};
}

inline json j(const EtaleElement& a) {
  return json{{"text", a.to_string()}, {"coefficients", j(a.coeffs())}};
}

inline json j(const BQForm& f) { return json::array({j(f.a), j(f.b), j(f.c)}); }

inline json j(const CurvePoint& p) {
  if (p.infinity) return "Infinity";
  return json::array({j(p.x), j(p.y)});
}

inline json j(const SquareCertificate& c) {
  json o;
  switch (c.kind) {
    case SquareCertificate::Kind::Norm: o["kind"] = "norm"; break;
    case SquareCertificate::Kind::Real: o["kind"] = "real"; break;
    case SquareCertificate::Kind::Local: o["kind"] = "local"; break;
  }
  if (c.kind == SquareCertificate::Kind::Local) {
    o["prime"] = c.prime.get_str();
    o["factor"] = c.factor;
  }
  if (c.kind == SquareCertificate::Kind::Real) o["root_interval"] = json::array({j(c.root_lo), j(c.root_hi)});
  o["detail"] = c.detail;
  return o;
}

inline json j(const FormInvariants& inv) {
  json h = json::object();
  for (const auto& [p, s] : inv.hasse) h[p == 0 ? std::string("inf") : p.get_str()] = s;
  return json{{"dim", inv.dim},
              {"disc_class", j(inv.disc_class)},
              {"signature", json::array({inv.pos, inv.neg})},
              {"hasse", h}};
}

// -- output ------------------------------------------------------------------

struct Report {
  std::string command;
  json inputs = json::object();
  json result = json::object();
  json checks = json::object();
};

inline void render_human(std::ostream& out, const json& v, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json& x = it.value();
    if (x.is_object()) {
      out << pad << it.key() << ":\n";
      render_human(out, x, indent + 2);
    } else if (x.is_string()) {
      out << pad << it.key() << ": " << x.get<std::string>() << "\n";
    } else {
      out << pad << it.key() << ": " << x.dump() << "\n";
    }
  }
}

inline void emit(std::ostream& out, const Report& r, bool as_json) {
  if (as_json) {
    json o;
    o["schema"] = kSchema;
    o["command"] = r.command;
    o["inputs"] = r.inputs;
    o["result"] = r.result;
    o["checks"] = r.checks;
    out << o.dump(2) << "\n";
    return;
  }
  out << r.command << "\n";
  render_human(out, r.result, 2);
  if (!r.checks.empty()) {
    out << "  checks:\n";
    render_human(out, r.checks, 4);
  }
}

inline Rep parse_rep(const std::string& s) {
  if (s == "sym2") return Rep::Sym2;
  if (s == "adjoint") return Rep::Adjoint;
  if (s == "standard") return Rep::Standard;
  throw Error(Errc::InvalidArgument, "unknown representation " + s);
}

inline const std::vector<std::string>& rep_choices() {
  static const std::vector<std::string> v{"sym2", "adjoint", "standard"};
  return v;
}

// -- subcommands -----------------------------------------------------------

struct Args {
  std::string rep = "sym2";
  std::string poly, alpha, alpha2, matrix, matrix2, vector, ideal, w, form, select;
  std::string x, y, d = "1";
  std::uint64_t p = 3;
  unsigned n = 1, jobs = 1;
  std::string disc, bound = "50";
  bool json = false;
};

inline Report do_construct(const Args& a, std::uint64_t seed) {
  Report r{"construct"};
  r.inputs["rep"] = a.rep;
  Rep rep = parse_rep(a.rep);
  if (rep == Rep::Standard) {
    r.inputs["n"] = a.n;
    r.inputs["d"] = a.d;
    OrbitRepresentative o = standard_representative(a.n, parse_rat(a.d));
    r.result["w"] = j(o.w);
    r.result["q2"] = j(o.q);
    r.checks["q2_matches"] = o.q == parse_rat(a.d);
    return r;
  }
  r.inputs["poly"] = a.poly;
  Poly f = parse_poly(a.poly);
  OrbitRepresentative o;
  if (a.alpha.empty()) {
    o = construct_representative(f, rep);
  } else {
    r.inputs["alpha"] = a.alpha;
    detail::check_orbit_poly(f, rep);
    o = construct_twisted(f, parse_alpha(EtaleAlgebra::make(f), a.alpha), rep, seed);
  }
  r.result["f"] = j(o.f);
  r.result["T"] = j(o.T);
  r.result["gram"] = j(o.space.gram);
  r.checks["charpoly"] = charpoly(o.T) == f;
  r.checks[rep == Rep::Sym2 ? "self_adjoint" : "skew_adjoint"] =
      rep == Rep::Sym2 ? is_self_adjoint(o.T, o.space.gram) : is_skew_adjoint(o.T, o.space.gram);
  return r;
}

inline Report do_classify(const Args& a, std::uint64_t seed) {
  Report r{"classify"};
  r.inputs["rep"] = a.rep;
  Rep rep = parse_rep(a.rep);
  if (rep == Rep::Standard) {
    r.inputs["vector"] = a.vector;
    std::vector<Rat> w = parse_rat_list(a.vector);
    require(w.size() % 2 == 1 && w.size() >= 3, Errc::WrongDimension, "vector length must be odd and >= 3");
    VectorLabel l = classify_vector(w, standard_space(w.size() / 2));
    r.result["label"] = l.to_string();
    if (l.kind == VectorLabel::Kind::Value) r.result["q2"] = j(l.d);
    return r;
  }
  r.inputs["matrix"] = a.matrix;
  Matrix t = parse_matrix(a.matrix);
  require(t.is_square() && t.rows() % 2 == 1 && t.rows() >= 3, Errc::WrongDimension,
          "operator must be square of odd size >= 3");
  StandardSpace s = standard_space(t.rows() / 2);
  bool adj = rep == Rep::Sym2 ? is_self_adjoint(t, s.gram) : is_skew_adjoint(t, s.gram);
  require(adj, Errc::InvalidArgument,
          rep == Rep::Sym2 ? "matrix is not self-adjoint" : "matrix is not skew-adjoint");
  Poly f = charpoly(t);
  r.result["charpoly"] = j(f);
  r.result["discriminant"] = j(poly_discriminant(f));
  RecoveredAlpha ra = recover_alpha(t, rep, seed);
  r.result["alpha"] = j(ra.alpha);
  r.result["cyclic_vector"] = j(ra.cyclic_vector);
  OrbitComparison c = same_orbit(t, construct_representative(f, rep).T, rep, seed);
  r.result["distinguished"] = relation_name(c.relation);
  r.result["reason"] = c.reason;
  r.checks["pairing_matches"] = pairing_gram(ra.alpha, rep) == ra.krylov.transpose() * s.gram * ra.krylov;
  return r;
}

inline Report do_kernel(const Args& a, std::uint64_t) {
  Report r{"kernel"};
  r.inputs["rep"] = a.rep;
  r.inputs["poly"] = a.poly;
  r.inputs["alpha"] = a.alpha;
  Rep rep = parse_rep(a.rep);
  require(rep != Rep::Standard, Errc::InvalidArgument, "kernel needs sym2 or adjoint");
  Poly f = parse_poly(a.poly);
  detail::check_orbit_poly(f, rep);
  EtaleElement alpha = parse_alpha(EtaleAlgebra::make(f), a.alpha);
  QuadSpace g = gram_alpha(f, alpha, rep);
  FormInvariants inv = invariants(g);
  r.result["in_kernel"] = is_split_odd(g);
  r.result["norm"] = j(norm(alpha));
  r.result["gram"] = j(g.gram());
  r.result["invariants"] = j(inv);
  r.checks["norm_square"] = is_rational_square(norm(alpha));
  return r;
}

inline Report do_same_orbit(const Args& a, std::uint64_t seed) {
  Report r{"same-orbit"};
  r.inputs["rep"] = a.rep;
  Rep rep = parse_rep(a.rep);
  require(rep != Rep::Standard, Errc::InvalidArgument, "same-orbit compares operators; use classify for vectors");
  Matrix t1, t2;
  if (!a.poly.empty()) {
    r.inputs["poly"] = a.poly;
    r.inputs["alpha1"] = a.alpha.empty() ? "1" : a.alpha;
    r.inputs["alpha2"] = a.alpha2.empty() ? "1" : a.alpha2;
    Poly f = parse_poly(a.poly);
    detail::check_orbit_poly(f, rep);
    AlgebraPtr alg = EtaleAlgebra::make(f);
    t1 = construct_twisted(f, parse_alpha(alg, a.alpha.empty() ? "1" : a.alpha), rep, seed).T;
    t2 = construct_twisted(f, parse_alpha(alg, a.alpha2.empty() ? "1" : a.alpha2), rep, seed).T;
  } else {
    r.inputs["matrix1"] = a.matrix;
    r.inputs["matrix2"] = a.matrix2;
    t1 = parse_matrix(a.matrix);
    t2 = parse_matrix(a.matrix2);
  }
  OrbitComparison c = same_orbit(t1, t2, rep, seed);
  r.result["relation"] = relation_name(c.relation);
  r.result["reason"] = c.reason;
  if (c.witness) {
    r.result["witness"] = j(*c.witness);
    StandardSpace s = standard_space(t1.rows() / 2);
    const Matrix& g = *c.witness;
    r.checks["witness_intertwines"] = g * t1 == t2 * g;
    r.checks["witness_orthogonal"] = g.transpose() * s.gram * g == s.gram;
    r.checks["witness_det_one"] = det(g) == 1;
  }
  if (c.certificate) r.result["certificate"] = j(*c.certificate);
  return r;
}

inline Report do_descend(const Args& a, std::uint64_t) {
  Report r{"descend"};
  r.inputs["poly"] = a.poly;
  r.inputs["d"] = a.d;
  Rat d = parse_rat(a.d);
  HyperCurve C(parse_poly(a.poly), d);
  CurvePoint P = a.x.empty() ? CurvePoint::at_infinity() : CurvePoint::affine(parse_rat(a.x), parse_rat(a.y));
  r.inputs["point"] = j(P);
  EtaleElement alpha = descent_class(C, P);
  r.result["curve"] = C.to_string();
  r.result["alpha"] = j(alpha);
  r.result["norm"] = j(norm(alpha));
  r.result["in_kernel"] = kernel_check(C, P);
  PencilCheck pc = pencil_discriminant_check(C.f, alpha, d);
  r.result["pencil_constant"] = j(pc.c);
  r.checks["norm_identity"] = P.infinity || norm(alpha) == pow_rat(d, C.f.degree() + 1) * P.y * P.y;
  r.checks["pencil_identity"] = pc.pass;
  return r;
}

inline Report do_pencil(const Args& a, std::uint64_t) {
  Report r{"pencil-check"};
  r.inputs["poly"] = a.poly;
  r.inputs["alpha"] = a.alpha;
  r.inputs["d"] = a.d;
  Poly f = parse_poly(a.poly);
  detail::check_orbit_poly(f, Rep::Sym2);
  EtaleElement alpha = parse_alpha(EtaleAlgebra::make(f), a.alpha.empty() ? "1" : a.alpha);
  PencilCheck pc = pencil_discriminant_check(f, alpha, parse_rat(a.d));
  r.result["constant"] = j(pc.c);
  if (pc.c != 0) r.result["square_class"] = j(pc.square_class);
  r.result["discriminant_form"] = j(pc.dehomogenized);
  r.checks["proportional"] = pc.pass;
  return r;
}

inline std::vector<std::uint32_t> fp_key(const Poly& f, std::uint64_t p) {
  FpPoly g = FpPoly::reduce(f, p);
  return std::vector<std::uint32_t>(g.coeffs().begin(), g.coeffs().end());
}

inline Report do_census(const Args& a, std::uint64_t seed) {
  Report r{"census"};
  r.inputs["p"] = a.p;
  r.inputs["n"] = a.n;
  r.inputs["rep"] = a.rep;
  CensusOptions opt;
  opt.jobs = a.jobs;
  opt.seed = seed;
  if (!a.select.empty()) {
    r.inputs["select"] = a.select;
    opt.selected.push_back(fp_key(parse_poly(a.select), a.p));
  }
  FiniteCensusReport c = finite_census(a.p, a.n, parse_rep(a.rep), opt);
  r.result["mode"] = c.mode;
  r.result["group_order"] = j(c.group_order);
  if (c.group_order_enumerated) r.result["group_order_enumerated"] = c.group_order_enumerated;
  if (c.group_order_closure) r.result["group_order_generated"] = c.group_order_closure;
  r.result["space_size"] = c.space_size;
  r.result["total"] = c.total_operators;
  json rows = json::array();
  for (const auto& row : c.rows) {
    json o;
    o["key"] = row.label;
    o["separable"] = row.separable;
    if (row.separable) o["factors"] = row.factor_count;
    o["count"] = row.operator_count;
    o["orbits"] = row.orbit_count();
    o["orbit_sizes"] = row.orbit_sizes;
    o["stabilizer_orders"] = row.stabilizer_orders;
    rows.push_back(o);
  }
  r.result["rows"] = rows;
  for (const auto& ch : c.checks)
    r.checks[ch.name] = json{{"pass", ch.pass}, {"detail", ch.detail}};
  return r;
}

inline Report do_local(const Args& a, std::uint64_t) {
  Report r{"local-count"};
  r.inputs["poly"] = a.poly;
  r.inputs["p"] = a.p;
  r.inputs["rep"] = a.rep;
  Poly f = parse_poly(a.poly);
  Rep rep = parse_rep(a.rep);
  detail::check_orbit_poly(f, rep);
  r.result["orbits"] = j(orbit_count_local(f, Int(static_cast<unsigned long>(a.p)), rep));
  if (rep == Rep::Sym2) r.result["factors_mod_p"] = count_factors_mod_p(f, a.p);
  return r;
}

inline Report do_real(const Args& a, std::uint64_t) {
  Report r{"real-count"};
  r.inputs["poly"] = a.poly;
  r.inputs["rep"] = a.rep;
  RealCount rc = orbit_count_real(parse_poly(a.poly), parse_rep(a.rep));
  r.result["kernel"] = j(rc.kernel);
  json fib = json::array();
  for (const auto& [k, v] : rc.fibers) fib.push_back(json{{"k", k}, {"size", j(v)}});
  r.result["fibers"] = fib;
  r.result["fiber_total"] = j(rc.fiber_total);
  return r;
}

inline Report do_lattice(const Args& a, std::uint64_t) {
  Report r{"lattice-verify"};
  if (!a.w.empty()) {
    r.inputs["w"] = a.w;
    std::vector<Int> w = parse_int_list(a.w);
    require(w.size() % 2 == 1 && w.size() >= 3, Errc::WrongDimension, "w must have odd length >= 3");
    ComplementLattice cl = complement_lattice(w, w.size() / 2);
    r.result["q2"] = j(cl.q2);
    r.result["basis"] = j(cl.basis);
    r.result["gram"] = j(cl.gram);
    r.result["det"] = j(cl.det);
    r.result["even"] = cl.even;
    r.checks["det_is_q2"] = cl.det == Rat(cl.q2) || cl.det == Rat(-cl.q2);
    return r;
  }
  r.inputs["rep"] = a.rep;
  r.inputs["poly"] = a.poly;
  r.inputs["ideal"] = a.ideal.empty() ? "1" : a.ideal;
  r.inputs["alpha"] = a.alpha.empty() ? "1" : a.alpha;
  Poly f = parse_poly(a.poly);
  Rep rep = parse_rep(a.rep);
  detail::check_orbit_poly(f, rep);
  AlgebraPtr alg = EtaleAlgebra::make(f);
  std::vector<EtaleElement> gens;
  std::string text = a.ideal.empty() ? "1" : a.ideal;
  std::stringstream ss(text);
  for (std::string g; std::getline(ss, g, ';');) gens.push_back(parse_alpha(alg, g));
  FracIdeal I = FracIdeal::generated(alg, gens);
  PairVerdict v = verify_pair({I, parse_alpha(alg, a.alpha.empty() ? "1" : a.alpha), rep});
  r.result["ideal_basis"] = j(I.basis());
  r.result["ideal_norm"] = j(ideal_norm(I));
  r.result["valid"] = v.valid;
  if (!v.valid) r.result["reason"] = v.reason;
  if (v.valid) {
    r.result["gram"] = j(v.gram);
    r.result["operator"] = j(v.op);
    r.result["signature"] = json::array({v.pos, v.neg});
    r.checks["charpoly"] = charpoly(v.op) == f;
  }
  return r;
}

inline Report do_bqf_reduce(const Args& a, std::uint64_t) {
  Report r{"bqf reduce"};
  r.inputs["form"] = a.form;
  std::vector<Int> v = parse_int_list(a.form);
  require(v.size() == 3, Errc::InvalidArgument, "form needs three coefficients a,b,c");
  BQForm f{v[0], v[1], v[2]};
  BQForm g = bqf_reduce(f);
  r.result["discriminant"] = j(f.disc());
  r.result["reduced"] = j(g);
  r.checks["is_reduced"] = is_reduced(g);
  r.checks["discriminant_kept"] = g.disc() == f.disc();
  return r;
}

inline Report do_bqf_classgroup(const Args& a, std::uint64_t) {
  Report r{"bqf classgroup"};
  r.inputs["d"] = a.disc;
  ClassGroup G = bqf_class_group(parse_int(a.disc));
  json forms = json::array();
  for (const auto& f : G.forms) forms.push_back(j(f));
  r.result["h"] = G.order();
  r.result["forms"] = forms;
  r.result["identity"] = G.identity;
  r.result["table"] = G.table;
  r.checks["group_axioms"] = true;
  return r;
}

inline Report do_bqf_census(const Args& a, std::uint64_t) {
  Report r{"bqf census"};
  r.inputs["d"] = a.disc;
  r.inputs["bound"] = a.bound;
  BqfCensus c = bqf_orbit_census(parse_int(a.disc), parse_int(a.bound));
  r.result["forms"] = c.forms;
  r.result["orbits"] = c.proper_orbits;
  r.result["gl2_orbits"] = c.improper_orbits;
  r.result["h"] = c.class_number;
  r.result["discrepancies"] = c.discrepancies;
  if (!c.convention_note.empty()) r.result["convention_note"] = c.convention_note;
  r.checks["matches_class_number"] = c.matches;
  return r;
}

inline Report do_stab(const Args& a, std::uint64_t) {
  Report r{"stab-info"};
  r.inputs["rep"] = a.rep;
  Rep rep = parse_rep(a.rep);
  StabilizerInfo s;
  if (rep == Rep::Standard) {
    r.inputs["n"] = a.n;
    r.inputs["d"] = a.d;
    s = stabilizer_info_standard(a.n, parse_rat(a.d));
    r.result["disc_class"] = j(s.disc_class);
  } else {
    r.inputs["poly"] = a.poly;
    s = stabilizer_info(parse_poly(a.poly), rep);
    if (rep == Rep::Sym2) r.result["order"] = j(s.order);
  }
  r.result["dimension"] = s.dimension;
  r.result["description"] = s.description;
  return r;
}

// -- entry point ---------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Orbits of SO(2n+1) on W, wedge^2 W and Sym^2 W over Q, Q_p, R, F_p and Z"};
  app.name("orbit");
  app.require_subcommand(1);
  Args a;
  std::string cmd;
  auto flag_json = [&](CLI::App* s) { s->add_flag("--json", a.json, "Emit one JSON object"); };
  auto opt_rep = [&](CLI::App* s) {
    s->add_option("--rep", a.rep, "Representation")->check(CLI::IsMember(rep_choices()));
  };
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&cmd, name] { cmd = name; });
    flag_json(s);
    return s;
  };

  CLI::App* s = add("construct", "Distinguished (or alpha-twisted) orbit representative for a polynomial");
  opt_rep(s);
  s->add_option("--poly", a.poly, "Characteristic polynomial, e.g. \"x^3 - x\"");
  s->add_option("--alpha", a.alpha, "Twisting class in L: rational, polynomial in b, or crt:v1,...");
  s->add_option("--n", a.n, "Standard rep: W has dimension 2n+1");
  s->add_option("--d", a.d, "Standard rep: target value of q2");

  s = add("classify", "Invariants and class of an operator or vector");
  opt_rep(s);
  s->add_option("--matrix", a.matrix, "Operator as [[...],[...]]");
  s->add_option("--vector", a.vector, "Standard rep: vector as [v0,...]");

  s = add("kernel", "Split test for the alpha-twisted form: is alpha in the kernel of gamma");
  opt_rep(s);
  s->add_option("--poly", a.poly, "Characteristic polynomial")->required();
  s->add_option("--alpha", a.alpha, "Class in L")->required();

  s = add("same-orbit", "Decide whether two operators lie in one SO(W)(Q)-orbit");
  opt_rep(s);
  s->add_option("--matrix1", a.matrix, "First operator");
  s->add_option("--matrix2", a.matrix2, "Second operator");
  s->add_option("--poly", a.poly, "Build both operators from classes in L instead");
  s->add_option("--alpha1", a.alpha, "First class (default 1)");
  s->add_option("--alpha2", a.alpha2, "Second class (default 1)");

  s = add("descend", "Descent class d(x0 - b) of a point on d y^2 = f(x)");
  s->add_option("--poly", a.poly, "f(x), monic of odd degree")->required();
  s->add_option("--x", a.x, "x0 (omit for the point at infinity)");
  s->add_option("--y", a.y, "y0");
  s->add_option("--d", a.d, "Twist d");

  s = add("pencil-check", "Discriminant of the pencil uQ - vQ' against v^(2n+2) f(u/v)");
  s->add_option("--poly", a.poly, "f(x)")->required();
  s->add_option("--alpha", a.alpha, "Class in L (default 1)");
  s->add_option("--d", a.d, "Twist d");

  s = add("census", "Brute-force orbit census over F_p");
  opt_rep(s);
  s->add_option("--p", a.p, "Odd prime")->required();
  s->add_option("--n", a.n, "W has dimension 2n+1 (n = 1 or 2)");
  s->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  s->add_option("--select", a.select, "Generation mode: census only this characteristic polynomial");

  s = add("local-count", "Number of orbits over Q_p at a good prime p");
  opt_rep(s);
  s->add_option("--poly", a.poly, "f(x)")->required();
  s->add_option("--p", a.p, "Prime")->required();

  s = add("real-count", "Orbit counts over R in the maximal-rank case");
  opt_rep(s);
  s->add_option("--poly", a.poly, "f(x)")->required();

  s = add("lattice-verify", "Integral pairs (I, alpha) or the complement of a vector in the unimodular lattice");
  opt_rep(s);
  s->add_option("--poly", a.poly, "f(x), integral");
  s->add_option("--ideal", a.ideal, "Ideal generators in b separated by ';' (default 1)");
  s->add_option("--alpha", a.alpha, "alpha (default 1)");
  s->add_option("--w", a.w, "Complement mode: primitive vector a,b,...");

  CLI::App* bqf = app.add_subcommand("bqf", "Binary quadratic forms of negative discriminant");
  bqf->require_subcommand(1);
  CLI::App* b1 = bqf->add_subcommand("reduce", "Reduced form in the proper class");
  b1->callback([&cmd] { cmd = "bqf reduce"; });
  b1->add_option("--form", a.form, "a,b,c")->required();
  flag_json(b1);
  CLI::App* b2 = bqf->add_subcommand("classgroup", "Reduced forms and composition table");
  b2->callback([&cmd] { cmd = "bqf classgroup"; });
  b2->add_option("--d", a.disc, "Discriminant")->required();
  flag_json(b2);
  CLI::App* b3 = bqf->add_subcommand("census", "Orbit count of primitive forms in a box vs. the class number");
  b3->callback([&cmd] { cmd = "bqf census"; });
  b3->add_option("--d", a.disc, "Discriminant")->required();
  b3->add_option("--bound", a.bound, "Box bound on |a|, |b|, |c|");
  flag_json(b3);

  s = add("stab-info", "Stabilizer of a generic vector");
  opt_rep(s);
  s->add_option("--poly", a.poly, "f(x)");
  s->add_option("--n", a.n, "Standard rep: W has dimension 2n+1");
  s->add_option("--d", a.d, "Standard rep: q2 value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto usage = [&](const std::string& msg) {
    err << "usage error: " << msg << "\n";
    return 2;
  };
  if (cmd == "construct" && a.rep != "standard" && a.poly.empty()) return usage("--poly is required");
  if (cmd == "classify" && a.rep == "standard" && a.vector.empty()) return usage("--vector is required");
  if (cmd == "classify" && a.rep != "standard" && a.matrix.empty()) return usage("--matrix is required");
  if (cmd == "same-orbit" && a.poly.empty() && (a.matrix.empty() || a.matrix2.empty()))
    return usage("give --matrix1 and --matrix2, or --poly with classes");
  if (cmd == "descend" && a.x.empty() != a.y.empty()) return usage("--x and --y go together");
  if (cmd == "lattice-verify" && a.w.empty() && a.poly.empty()) return usage("--poly or --w is required");
  if (cmd == "stab-info" && a.rep != "standard" && a.poly.empty()) return usage("--poly is required");

  Report rep;
  try {
    std::uint64_t seed = env_seed();
    if (cmd == "construct") rep = do_construct(a, seed);
    else if (cmd == "classify") rep = do_classify(a, seed);
    else if (cmd == "kernel") rep = do_kernel(a, seed);
    else if (cmd == "same-orbit") rep = do_same_orbit(a, seed);
    else if (cmd == "descend") rep = do_descend(a, seed);
    else if (cmd == "pencil-check") rep = do_pencil(a, seed);
    else if (cmd == "census") rep = do_census(a, seed);
    else if (cmd == "local-count") rep = do_local(a, seed);
    else if (cmd == "real-count") rep = do_real(a, seed);
    else if (cmd == "lattice-verify") rep = do_lattice(a, seed);
    else if (cmd == "bqf reduce") rep = do_bqf_reduce(a, seed);
    else if (cmd == "bqf classgroup") rep = do_bqf_classgroup(a, seed);
    else if (cmd == "bqf census") rep = do_bqf_census(a, seed);
    else if (cmd == "stab-info") rep = do_stab(a, seed);
    else return usage("unknown command");
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) {
      err << "usage error: " << e.what() << "\n";
      return 2;
    }
    if (a.json) {
      json o;
      o["schema"] = kSchema;
      o["command"] = cmd;
      o["error"] = json{{"code", std::string(errc_name(e.code()))}, {"message", e.what()}};
      out << o.dump(2) << "\n";
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }
  emit(out, rep, a.json);
  return 0;
}

}  // namespace orbitforge::cli
