#include "ncplane/cli/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ncplane/adhm/adhm.hpp"
#include "ncplane/chainpoisson/chain.hpp"
#include "ncplane/elliptic/points.hpp"
#include "ncplane/error.hpp"
#include "ncplane/kronecker/ext.hpp"
#include "ncplane/kronecker/numerics.hpp"
#include "ncplane/kronecker/stability.hpp"
#include "ncplane/kronecker/standard.hpp"

namespace ncplane::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::set<std::string> kBooleanFlags = {"timing", "table", "negative-control"};

class Options {
 public:
  std::map<std::string, std::string> kv;
  std::set<std::string> flags;

  bool has(const std::string& k) const { return kv.count(k) > 0; }
  bool flag(const std::string& k) const { return flags.count(k) > 0; }
  std::string get(const std::string& k, const std::string& def = "") const {
    auto it = kv.find(k);
    return it == kv.end() ? def : it->second;
  }
  std::string require(const std::string& k) const {
    if (!has(k)) throw UsageError("missing --" + k);
    return kv.at(k);
  }
  long long integer(const std::string& k, long long def) const { return has(k) ? to_int(k, kv.at(k)) : def; }
  long long require_int(const std::string& k) const { return to_int(k, require(k)); }
  std::vector<long long> list(const std::string& k, std::vector<long long> def) const {
    if (!has(k)) return def;
    std::vector<long long> out;
    std::stringstream ss(kv.at(k));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(k, item));
    if (out.empty()) throw UsageError("--" + k + " needs a comma-separated list");
    return out;
  }

 private:
  static long long to_int(const std::string& k, const std::string& v) {
    try {
      std::size_t pos = 0;
      long long x = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw UsageError("--" + k + " expects an integer, got '" + v + "'");
    }
  }
};

struct Command {
  std::string verb, sub;
  Options opt;
  std::string name() const { return sub.empty() ? verb : verb + " " + sub; }
};

const std::map<std::string, std::set<std::string>> kVerbs = {
    {"algebra", {"check", "hilbert"}},
    {"curve", {}},
    {"points", {"ideal"}},
    {"module", {"invariants", "cohomology", "restrict"}},
    {"monad", {"check", "cohomology"}},
    {"stability", {"check"}},
    {"git", {"weights"}},
    {"adhm", {"build", "check"}},
    {"ext", {"dims"}},
    {"moduli", {"dim", "fine"}},
    {"poisson", {"verify"}},
};

Command parse_command(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("missing verb");
  Command c;
  c.verb = args[0];
  auto it = kVerbs.find(c.verb);
  if (it == kVerbs.end()) throw UsageError("unknown verb '" + c.verb + "'");
  std::size_t i = 1;
  if (!it->second.empty()) {
    if (args.size() < 2 || !it->second.count(args[1]))
      throw UsageError("'" + c.verb + "' needs one of its subcommands");
    c.sub = args[1];
    i = 2;
  }
  for (; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) throw UsageError("unexpected argument '" + a + "'");
    std::string key = a.substr(2), value;
    auto eq = key.find('=');
    if (eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
      c.opt.kv[key] = value;
      continue;
    }
    if (kBooleanFlags.count(key)) {
      c.opt.flags.insert(key);
      continue;
    }
    if (i + 1 >= args.size()) throw UsageError("--" + key + " needs a value");
    c.opt.kv[key] = args[++i];
  }
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

FieldSpec parse_field(const std::string& s) {
  if (s == "Q" || s == "rationals" || s == "0") return FieldSpec::rational_numbers();
  try {
    std::size_t pos = 0;
    long long p = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return field_from_json(json{{"p", p}});
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--field expects a prime or Q, got '" + s + "'");
  }
}

std::vector<Param> parse_params(const std::string& s) {
  std::vector<Param> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      auto slash = item.find('/');
      if (slash == std::string::npos)
        out.emplace_back(std::stoll(item));
      else
        out.emplace_back(std::stoll(item.substr(0, slash)), std::stoll(item.substr(slash + 1)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("bad parameter '" + item + "'");
    }
  }
  return out;
}

// --algebra file, else the "algebra" member of an input document, else --family.
AlgebraSpec algebra_spec(const Options& o, const json* doc = nullptr, const std::string& default_family = "sklyanin") {
  AlgebraSpec s;
  if (o.has("algebra")) {
    s = spec_from_json(read_json_file(o.get("algebra")));
  } else if (doc && doc->contains("algebra")) {
    s = spec_from_json(doc->at("algebra"));
  } else {
    FieldSpec f = FieldSpec::prime(101);
    Family fam = family_from_name(o.get("family", default_family));
    json j;
    j["field"] = field_to_json(f);
    j["family"] = family_name(fam);
    std::vector<Param> ps;
    if (o.has("params"))
      ps = parse_params(o.get("params"));
    else if (fam == Family::Sklyanin)
      ps = {1, 2, 3};
    else if (fam == Family::QDeform)
      ps = {2, 1, 1};
    json pj = json::array();
    for (const Param& p : ps) pj.push_back(p.den == 1 ? json(p.num) : json(std::to_string(p.num) + "/" + std::to_string(p.den)));
    j["params"] = pj;
    if (fam == Family::Polynomial) j["cubic_g"] = o.get("cubic", "x*y*z");
    s = spec_from_json(j);
  }
  if (o.has("field")) s.field = parse_field(o.get("field"));
  if (o.has("degree-bound")) s.degree_bound = static_cast<int>(o.require_int("degree-bound"));
  if (s.degree_bound < 3 || s.degree_bound > 40) throw UsageError("--degree-bound must lie in [3, 40]");
  return s;
}

template <class Fn>
int with_field(const FieldSpec& f, Fn&& fn) {
  if (f.rationals) return fn(Rational(1));
  return fn(Fp(1, f.p));
}

json scalar_json(const Fp& a) { return a.value(); }
json scalar_json(const Rational& a) {
  if (a.is_integer()) return a.numerator_long();
  return a.to_string();
}

template <class K>
K scalar_from_json(const json& j, const K& one) {
  if (j.is_number_integer()) return scalar_from_int(one, j.get<long long>());
  if (j.is_string()) {
    Rational q = Rational::parse(j.get<std::string>());
    K num = scalar_from_int(one, q.get().get_num().get_si());
    K den = scalar_from_int(one, q.get().get_den().get_si());
    if (den.is_zero()) throw Error(ErrorKind::InvalidInput, "denominator vanishes in the field");
    return num / den;
  }
  throw Error(ErrorKind::InvalidInput, "scalars must be integers or \"a/b\" strings");
}

template <class K>
json matrix_json(const Matrix<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class K>
Matrix<K> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const K& one, const std::string& what) {
  if (!j.is_array() || j.size() != rows) throw Error(ErrorKind::ShapeMismatch, what + " must have " + std::to_string(rows) + " rows");
  Matrix<K> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error(ErrorKind::ShapeMismatch, what + " must have " + std::to_string(cols) + " columns");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json(j[i][k], one);
  }
  return m;
}

template <class K>
json point_json(const Point<K>& p) {
  return json::array({scalar_json(p[0]), scalar_json(p[1]), scalar_json(p[2])});
}

json invariants_json(const Invariants& v) { return json{{"r", v.r}, {"c1", v.c1}, {"chi", v.chi}}; }

std::vector<std::vector<std::string>> string_rows(const json& j, const std::string& what) {
  std::vector<std::vector<std::string>> out;
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, what + " must be an array of rows");
  for (const json& row : j) {
    if (!row.is_array()) throw Error(ErrorKind::InvalidInput, what + " rows must be arrays");
    std::vector<std::string> r;
    for (const json& e : row) {
      if (e.is_string())
        r.push_back(e.get<std::string>());
      else if (e.is_number_integer())
        r.push_back(std::to_string(e.get<long long>()));
      else
        throw Error(ErrorKind::InvalidInput, what + " entries must be strings");
    }
    out.push_back(r);
  }
  return out;
}

// {"a","n","c","A": n x a linear forms, "B": c x n linear forms}
template <class K>
KroneckerComplex<K> complex_from_json(const AlgebraPtr<K>& alg, const json& j) {
  try {
    int a = j.at("a").get<int>(), n = j.at("n").get<int>(), c = j.at("c").get<int>();
    if (a < 0 || n < 0 || c < 0) throw Error(ErrorKind::InvalidInput, "negative complex dimension");
    auto A = parse_linear_matrix(*alg, string_rows(j.at("A"), "A"), n, a);
    auto B = parse_linear_matrix(*alg, string_rows(j.at("B"), "B"), c, n);
    return build_complex(alg, a, n, c, A, B);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed complex: ") + e.what());
  }
}

// {"target": twists, "source": twists, "entries": rows of elements}; module = coker
template <class K>
GradedModule<K> module_from_json(const AlgebraPtr<K>& alg, const json& j) {
  try {
    TwistedFree target = j.at("target").get<std::vector<int>>();
    TwistedFree source = j.contains("source") ? j.at("source").get<std::vector<int>>() : TwistedFree{};
    if (source.empty()) return GradedModule<K>::free(alg, target);
    auto rows = string_rows(j.at("entries"), "entries");
    if (rows.size() != target.size()) throw Error(ErrorKind::ShapeMismatch, "entries need one row per target twist");
    auto phi = GradedMap<K>::zero(alg, source, target);
    for (std::size_t i = 0; i < target.size(); ++i) {
      if (rows[i].size() != source.size()) throw Error(ErrorKind::ShapeMismatch, "entries need one column per source twist");
      for (std::size_t k = 0; k < source.size(); ++k) {
        int deg = target[i] - source[k];
        if (deg < 0) {
          if (alg->parse(rows[i][k], 0).is_zero()) continue;
          throw Error(ErrorKind::InvalidInput, "entry of negative degree must be 0");
        }
        auto e = alg->parse(rows[i][k], deg);
        if (e.degree != deg) throw Error(ErrorKind::InvalidInput, "entry '" + rows[i][k] + "' should have degree " + std::to_string(deg));
        phi.entries[i][k] = e;
      }
    }
    return GradedModule<K>::cokernel(phi);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed module: ") + e.what());
  }
}

template <class K>
AdhmDatum<K> datum_from_json(const json& j, const K& one) {
  try {
    int n = j.at("n").get<int>(), r = j.at("r").get<int>();
    if (n < 0 || r < 0) throw Error(ErrorKind::InvalidInput, "negative ADHM dimension");
    return {n,
            r,
            matrix_from_json(j.at("b1"), n, n, one, "b1"),
            matrix_from_json(j.at("b2"), n, n, one, "b2"),
            matrix_from_json(j.at("i"), n, r, one, "i"),
            matrix_from_json(j.at("j"), r, n, one, "j")};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed ADHM datum: ") + e.what());
  }
}

template <class K>
json datum_json(const AdhmDatum<K>& d) {
  return json{{"n", d.n}, {"r", d.r}, {"b1", matrix_json(d.b1)}, {"b2", matrix_json(d.b2)}, {"i", matrix_json(d.i)},
              {"j", matrix_json(d.j)}};
}

template <class K>
json hilbert_list(const GradedModule<K>& m) {
  json values = json::array();
  for (int d = m.lo(); d <= m.hi(); ++d) values.push_back(m.hilbert(d));
  return json{{"from", m.lo()}, {"values", values}};
}

template <class K>
json resolution_json(const Resolution<K>& res) {
  json tw = json::array();
  for (const auto& t : res.twists) tw.push_back(t);
  Invariants v = res.invariants();
  auto coeff = v.hilbert_coefficients();
  return json{{"twists", tw},
              {"invariants", invariants_json(v)},
              {"regularity", res.regularity()},
              {"hilbert_poly", json::array({coeff[0].to_string(), coeff[1].to_string(), coeff[2].to_string()})}};
}

json cohomology_rows(const std::vector<CohomologyRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(json{{"twist", r.twist}, {"h0", r.h0}, {"h1", r.h1}, {"h2", r.h2}});
  return out;
}

std::mt19937_64 make_rng(const Options& o) { return std::mt19937_64(static_cast<std::uint64_t>(o.integer("seed", 0))); }

// --- verbs -------------------------------------------------------------------

int algebra_check(const Command& c, json& out) {
  AlgebraSpec spec = algebra_spec(c.opt);
  return with_field(spec.field, [&](auto one) {
    using K = decltype(one);
    auto alg = build_algebra<K>(spec);
    int D = alg->degree_bound();
    json dims = json::array(), bdims = json::array();
    bool hilbert_ok = true, b_ok = true;
    for (int d = 0; d <= D; ++d) {
      dims.push_back(alg->dim(d));
      hilbert_ok = hilbert_ok && alg->dim(d) == expected_dim(d);
    }
    for (int d = 0; d <= D; ++d) {
      int b = alg->quotient_B_dim(d);
      bdims.push_back(b);
      if (d >= 1) b_ok = b_ok && b == 3 * d;
    }
    bool normal = alg->is_normal(alg->g());
    out["algebra"] = to_json(spec);
    out["degree_bound"] = D;
    out["dims"] = dims;
    out["hilbert_series_ok"] = hilbert_ok;
    out["normal_element"] = alg->format(alg->g());
    out["normal"] = normal;
    out["quotient_dims"] = bdims;
    out["quotient_ok"] = b_ok;
    bool ok = hilbert_ok && normal && b_ok;
    out["verdict"] = ok ? "verified" : "failed";
    return ok ? 0 : 1;
  });
}

int algebra_hilbert(const Command& c, json& out) {
  long long d = c.opt.require_int("d");
  Options o = c.opt;
  if (!o.has("degree-bound") && d > 12) o.kv["degree-bound"] = std::to_string(d);
  AlgebraSpec spec = algebra_spec(o);
  if (d < 0) throw UsageError("--d must be nonnegative");
  return with_field(spec.field, [&](auto one) {
    using K = decltype(one);
    auto alg = build_algebra<K>(spec);
    if (d > alg->degree_bound())
      throw Error(ErrorKind::DegreeOverflow, "degree " + std::to_string(d) + " exceeds the bound " + std::to_string(alg->degree_bound()));
    out["degree_bound"] = alg->degree_bound();
    out["d"] = d;
    out["dim"] = alg->dim(static_cast<int>(d));
    out["expected"] = expected_dim(static_cast<int>(d));
    return 0;
  });
}

int curve(const Command& c, json& out) {
  AlgebraSpec spec = algebra_spec(c.opt);
  long long count = c.opt.integer("count", 5);
  if (count < 0) throw UsageError("--count must be nonnegative");
  return with_field(spec.field, [&](auto one) {
    using K = decltype(one);
    auto alg = build_algebra<K>(spec);
    auto ps = point_scheme(alg);
    const char* names = "xyz";
    json cubic = json::array();
    for (std::size_t t = 0; t < 10; ++t) {
      if (ps.cubic[t].is_zero()) continue;
      std::string mono;
      for (int v = 0; v < 3; ++v)
        for (int e = 0; e < cubic_monomials()[t][v]; ++e) mono += names[v];
      cubic.push_back(json{{"monomial", mono}, {"coeff", scalar_json(ps.cubic[t])}});
    }
    json pairs = json::array();
    for (const auto& p : curve_points(ps, static_cast<std::size_t>(count))) {
      auto s = ps.sigma(p);
      pairs.push_back(json{{"p", point_json(p)}, {"sigma", s ? point_json(*s) : json(nullptr)}});
    }
    out["degree_bound"] = alg->degree_bound();
    out["degenerate"] = ps.degenerate;
    out["cubic"] = cubic;
    out["sigma_pairs"] = pairs;
    return 0;
  });
}

int points_ideal(const Command& c, json& out) {
  AlgebraSpec spec = algebra_spec(c.opt);
  if (spec.field.rationals) throw Error(ErrorKind::InvalidInput, "generic points are sampled over a prime field");
  long long k = c.opt.integer("count", 1);
  if (k < 1 || k > 6) throw UsageError("--count must lie in [1, 6]");
  auto rng = make_rng(c.opt);
  auto alg = build_algebra<Fp>(spec);
  auto ps = point_scheme(alg);
  auto pts = random_generic_points(ps, static_cast<int>(k), rng);
  auto ideal = ideal_of_points(ps, pts);
  auto res = free_resolution(ideal);
  auto vc = verify_vanishing_condition(res);
  auto monad = ideal_monad(ps, pts, rng);
  auto mrep = is_monad(monad);
  json pj = json::array();
  for (const auto& p : pts) pj.push_back(point_json(p));
  out["degree_bound"] = alg->degree_bound();
  out["points"] = pj;
  out["hilbert"] = hilbert_list(ideal);
  out["resolution"] = resolution_json(res);
  out["vanishing"] = json{{"holds", vc.holds}, {"h1_minus1", vc.h1_minus1}, {"h1_minus2", vc.h1_minus2}};
  out["monad"] = json{{"shape", json::array({monad.a, monad.n, monad.c})}, {"verdict", monad_verdict_name(mrep.verdict)}};
  bool ok = vc.holds && mrep.verdict == MonadVerdict::Monad;
  if (mrep.verdict == MonadVerdict::Monad) {
    auto e = ext_dims(monad, monad);
    out["ext"] = json::array({e.e0, e.e1, e.e2});
  }
  out["verdict"] = ok ? "verified" : "failed";
  return ok ? 0 : 1;
}

template <class Fn>
int with_module(const Command& c, Fn&& fn) {
  json doc = read_json_file(c.opt.require("module"));
  AlgebraSpec spec = algebra_spec(c.opt, &doc);
  return with_field(spec.field, [&](auto one) {
    using K = decltype(one);
    auto alg = build_algebra<K>(spec);
    return fn(alg, module_from_json(alg, doc));
  });
}

int module_invariants(const Command& c, json& out) {
  return with_module(c, [&](const auto& alg, const auto& m) {
    auto res = free_resolution(m);
    out["degree_bound"] = alg->degree_bound();
    out["hilbert"] = hilbert_list(m);
    out["resolution"] = resolution_json(res);
    return 0;
  });
}

int module_cohomology(const Command& c, json& out) {
  long long from = c.opt.integer("from", -3), to = c.opt.integer("to", 3);
  if (from > to) throw UsageError("--from must not exceed --to");
  return with_module(c, [&](const auto& alg, const auto& m) {
    auto res = free_resolution(m);
    auto rows = cohomology_table(res, static_cast<int>(from), static_cast<int>(to));
    Invariants v = res.invariants();
    bool euler = true;
    for (const auto& r : rows) euler = euler && r.h0 - r.h1 + r.h2 == v.hilbert_poly(r.twist);
    auto vc = verify_vanishing_condition(res);
    out["degree_bound"] = alg->degree_bound();
    out["invariants"] = invariants_json(v);
    out["table"] = cohomology_rows(rows);
    out["euler_consistent"] = euler;
    out["vanishing_condition"] = vc.holds;
    return euler ? 0 : 1;
  });
}

int module_restrict(const Command& c, json& out) {
  return with_module(c, [&](const auto& alg, const auto& m) {
    auto rows = restrict_to_E(m);
    json rj = json::array();
    for (const auto& r : rows)
      rj.push_back(json{{"degree", r.degree}, {"hf", r.hf}, {"hf_shifted", r.hf_shifted}, {"restricted", r.restricted}});
    Invariants v = invariants(m), vg = invariants(g_twist(m));
    out["degree_bound"] = alg->degree_bound();
    out["rows"] = rj;
    out["invariants"] = invariants_json(v);
    out["g_twist_invariants"] = invariants_json(vg);
    out["c1_drop"] = v.c1 - vg.c1;
    return 0;
  });
}

template <class Fn>
int with_complex(const Command& c, Fn&& fn) {
  json doc = read_json_file(c.opt.require("complex"));
  AlgebraSpec spec = algebra_spec(c.opt, &doc);
  return with_field(spec.field, [&](auto one) {
    using K = decltype(one);
    auto alg = build_algebra<K>(spec);
    return fn(alg, complex_from_json(alg, doc));
  });
}

int monad_check(const Command& c, json& out) {
  return with_complex(c, [&](const auto& alg, const auto& k) {
    auto rep = is_monad(k);
    out["degree_bound"] = alg->degree_bound();
    out["shape"] = json::array({k.a, k.n, k.c});
    out["invariants"] = invariants_json(k.invariants());
    out["verdict"] = monad_verdict_name(rep.verdict);
    out["b_surjective"] = rep.b_surjective;
    out["b_surjective_degree"] = rep.b_surjective_degree;
    out["a_injective_degreewise"] = rep.a_injective_degreewise;
    out["a_kernel_degree"] = rep.a_kernel_degree;
    out["checked_up_to"] = rep.checked_up_to;
    out["a_generic_rank_full"] = rep.a_generic_rank_full;
    out["samples_tried"] = rep.samples_tried;
    out["reason"] = rep.reason;
    return rep.verdict == MonadVerdict::Monad ? 0 : 1;
  });
}

int monad_cohomology_verb(const Command& c, json& out) {
  return with_complex(c, [&](const auto& alg, const auto& k) {
    auto m = monad_cohomology(k);
    auto res = free_resolution(m);
    auto st = classify_standard(k);
    out["degree_bound"] = alg->degree_bound();
    out["shape"] = json::array({k.a, k.n, k.c});
    out["hilbert"] = hilbert_list(m);
    out["resolution"] = resolution_json(res);
    out["standard_type"] = st.type;
    return 0;
  });
}

json witness_json(const SubspaceData& w) {
  return json{{"ext_degree", w.ext_degree}, {"basis", w.basis},   {"n1", w.n1}, {"dim_k", w.dim_k},
              {"dim_l", w.dim_l},           {"r1", w.r1},         {"c1", w.c1}, {"chi1", w.chi1},
              {"x", w.x},                   {"y", w.y}};
}

int stability_check(const Command& c, json& out) {
  StabilityOptions opt;
  std::string mode = c.opt.get("mode", "semi");
  if (mode == "semi")
    opt.mode = StabilityMode::Semi;
  else if (mode == "strict")
    opt.mode = StabilityMode::Strict;
  else
    throw UsageError("--mode must be semi or strict");
  opt.ext_degrees.clear();
  for (long long e : c.opt.list("ext", {1, 2})) {
    if (e < 1 || e > 4) throw UsageError("--ext degrees must lie in [1, 4]");
    opt.ext_degrees.push_back(static_cast<unsigned>(e));
  }
  opt.budget = c.opt.integer("budget", opt.budget);
  if (c.opt.has("m")) opt.m_override = c.opt.require_int("m");
  return with_complex(c, [&](const auto& alg, const auto& k) -> int {
    using K = std::decay_t<decltype(alg->one())>;
    if constexpr (!std::is_same_v<K, Fp>) {
      throw Error(ErrorKind::InvalidInput, "subspace enumeration needs a prime field");
    } else {
      auto rep = check_semistable(k, opt);
      out["degree_bound"] = alg->degree_bound();
      out["shape"] = json::array({k.a, k.n, k.c});
      out["mode"] = mode;
      out["verdict"] = stability_name(rep.verdict);
      out["passes"] = rep.passes;
      out["ext_degrees"] = rep.ext_degrees;
      out["fields"] = rep.field_orders;
      out["subspaces_checked"] = rep.subspaces_checked;
      out["m"] = rep.m;
      out["git_agrees"] = rep.git_agrees;
      out["witness"] = rep.witness ? witness_json(*rep.witness) : json(nullptr);
      return rep.passes ? 0 : 1;
    }
  });
}

int git_weights_verb(const Command& c, json& out) {
  long long r = c.opt.require_int("r"), c1 = c.opt.require_int("c1"), chi = c.opt.require_int("chi");
  MonadShape sh = monad_shape(r, c1, chi);
  long long m = c.opt.has("m") ? c.opt.require_int("m") : effective_m(sh.d_minus1, sh.n, sh.d1);
  GitWeights w = git_weights(r, c1, chi, m);
  out["shape"] = json::array({sh.d_minus1, sh.n, sh.d1});
  out["m"] = m;
  out["weights"] = json{{"n", w.n}, {"k", w.k}, {"l", w.l}};
  return 0;
}

AlgebraSpec adhm_algebra(const Options& o) { return algebra_spec(o, nullptr, "homogenized_weyl"); }

int adhm_build(const Command& c, json& out) {
  AlgebraSpec spec = adhm_algebra(c.opt);
  long long n = c.opt.require_int("n"), r = c.opt.require_int("r");
  if (n < 0 || r < 0 || n > 8 || r > 8) throw UsageError("--n and --r must lie in [0, 8]");
  auto rng = make_rng(c.opt);
  return with_field(spec.field, [&](auto one) {
    using K = decltype(one);
    auto alg = build_algebra<K>(spec);
    K kappa = calibrate_kappa(alg);
    auto d = random_valid_adhm(static_cast<int>(n), static_cast<int>(r), kappa, rng);
    auto chk = validate_adhm(d, kappa);
    auto k = monad_from_adhm(alg, d);
    out["degree_bound"] = alg->degree_bound();
    out["kappa"] = scalar_json(kappa);
    out["datum"] = datum_json(d);
    out["valid"] = chk.valid;
    out["shape"] = json::array({k.a, k.n, k.c});
    out["invariants"] = invariants_json(k.invariants());
    return chk.valid ? 0 : 1;
  });
}

int adhm_check(const Command& c, json& out) {
  json doc;
  bool from_file = c.opt.has("datum");
  if (from_file) doc = read_json_file(c.opt.get("datum"));
  AlgebraSpec spec = algebra_spec(c.opt, from_file ? &doc : nullptr, "homogenized_weyl");
  auto rng = make_rng(c.opt);
  return with_field(spec.field, [&](auto one) {
    using K = decltype(one);
    auto alg = build_algebra<K>(spec);
    K kappa = calibrate_kappa(alg);
    AdhmDatum<K> d;
    if (from_file) {
      d = datum_from_json(doc.contains("datum") ? doc.at("datum") : doc, alg->one());
    } else {
      long long n = c.opt.require_int("n"), r = c.opt.require_int("r");
      if (n < 0 || r < 0 || n > 8 || r > 8) throw UsageError("--n and --r must lie in [0, 8]");
      d = random_valid_adhm(static_cast<int>(n), static_cast<int>(r), kappa, rng);
    }
    auto chk = validate_adhm(d, kappa);
    out["degree_bound"] = alg->degree_bound();
    out["kappa"] = scalar_json(kappa);
    out["n"] = d.n;
    out["r"] = d.r;
    out["valid"] = chk.valid;
    out["residual"] = matrix_json(chk.residual);
    if (!chk.valid) {
      out["verdict"] = "invalid";
      return 1;
    }
    auto k = monad_from_adhm(alg, d);
    auto mrep = is_monad(k);
    out["shape"] = json::array({k.a, k.n, k.c});
    out["monad"] = monad_verdict_name(mrep.verdict);
    bool ok = mrep.verdict == MonadVerdict::Monad;
    if (ok) {
      Invariants v = invariants(monad_cohomology(k));
      auto fr = check_framing(k);
      out["invariants"] = invariants_json(v);
      out["framing"] = json{{"framed", fr.framed}, {"hf", fr.hf}, {"generated_in_degree0", fr.generated_in_degree0}};
      ok = fr.framed && v == Invariants{d.r, 0, d.r - d.n};
    }
    out["verdict"] = ok ? "verified" : "failed";
    return ok ? 0 : 1;
  });
}

int ext_dims_verb(const Command& c, json& out) {
  json left = read_json_file(c.opt.require("complex"));
  json right = c.opt.has("complex2") ? read_json_file(c.opt.get("complex2")) : left;
  AlgebraSpec spec = algebra_spec(c.opt, &left);
  return with_field(spec.field, [&](auto one) {
    using K = decltype(one);
    auto alg = build_algebra<K>(spec);
    auto k = complex_from_json(alg, left), l = complex_from_json(alg, right);
    auto e = ext_dims(k, l);
    long long expected = euler_pairing(k.invariants(), l.invariants());
    out["degree_bound"] = alg->degree_bound();
    out["ext"] = json::array({e.e0, e.e1, e.e2});
    out["euler"] = e.euler();
    out["euler_expected"] = expected;
    return e.euler() == expected ? 0 : 1;
  });
}

int moduli_dim(const Command& c, json& out) {
  long long r = c.opt.require_int("r"), c1 = c.opt.require_int("c1"), chi = c.opt.require_int("chi");
  out["dimension"] = moduli_dimension(r, c1, chi);
  out["normalized"] = invariants_json(normalize_invariants(r, c1, chi));
  return 0;
}

int moduli_fine(const Command& c, json& out) {
  long long r = c.opt.require_int("r"), c1 = c.opt.require_int("c1"), chi = c.opt.require_int("chi");
  bool fine = fine_moduli_predicate(r, c1, chi);
  out["fine"] = fine;
  out["normalized"] = invariants_json(normalize_invariants(r, c1, chi));
  return fine ? 0 : 1;
}

int poisson_verify(const Command& c, json& out) {
  std::vector<int> dims;
  for (long long d : c.opt.list("dims", {2, 3, 2})) {
    if (d < 0 || d > 16) throw UsageError("--dims entries must lie in [0, 16]");
    dims.push_back(static_cast<int>(d));
  }
  long long trials = c.opt.integer("trials", 100);
  if (trials < 0 || trials > 1000000) throw UsageError("--trials out of range");
  FieldSpec f = parse_field(c.opt.get("field", "101"));
  auto rng = make_rng(c.opt);
  bool negative = c.opt.flag("negative-control");
  return with_field(f, [&](auto one) {
    using K = decltype(one);
    ChainData<K> data = negative ? random_unconstrained_data(dims, one, rng) : random_chain_data(dims, one, rng);
    auto chain = chain_identity_report(data, static_cast<int>(trials), rng);
    auto moment = moment_identity_report(data, static_cast<int>(trials), rng);
    out["field"] = field_to_json(f);
    out["dims"] = dims;
    out["trials"] = trials;
    out["square_zero"] = !data.composition_defect().has_value();
    out["chain"] = json{{"d_psi0_failures", chain.failures_d_psi0},
                        {"psibar_dstar_failures", chain.failures_psibar_dstar},
                        {"psi0_homotopy_failures", chain.failures_psi0_homotopy},
                        {"psibar_homotopy_failures", chain.failures_psibar_homotopy},
                        {"holds", chain.holds()},
                        {"witness", chain.witness}};
    out["moment"] = json{{"failures", moment.failures}, {"holds", moment.holds()}, {"witness", moment.witness}};
    bool ok = chain.holds() && moment.holds();
    out["verdict"] = ok ? "verified" : "violated";
    return ok ? 0 : 1;
  });
}

using Handler = std::function<int(const Command&, json&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"algebra check", algebra_check},
      {"algebra hilbert", algebra_hilbert},
      {"curve", curve},
      {"points ideal", points_ideal},
      {"module invariants", module_invariants},
      {"module cohomology", module_cohomology},
      {"module restrict", module_restrict},
      {"monad check", monad_check},
      {"monad cohomology", monad_cohomology_verb},
      {"stability check", stability_check},
      {"git weights", git_weights_verb},
      {"adhm build", adhm_build},
      {"adhm check", adhm_check},
      {"ext dims", ext_dims_verb},
      {"moduli dim", moduli_dim},
      {"moduli fine", moduli_fine},
      {"poisson verify", poisson_verify},
  };
  return h;
}

void print_table(const json& j, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_array() && !v.empty() && v[0].is_object()) {
      out << it.key() << ":\n";
      for (const json& row : v) {
        out << " ";
        for (auto c = row.begin(); c != row.end(); ++c) out << " " << c.key() << "=" << c.value().dump();
        out << "\n";
      }
    } else {
      out << it.key() << ": " << v.dump() << "\n";
    }
  }
}

}  // namespace

std::string usage() {
  std::string s = "usage: nc-plane <verb> [subcommand] [--option value ...]\nverbs:\n";
  for (const auto& [name, h] : handlers()) s += "  " + name + "\n";
  s += "common options: --algebra FILE | --family NAME --params a,b,c, --field P|Q, --degree-bound D, --seed N, --timing, --table\n";
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto t0 = std::chrono::steady_clock::now();
  json report;
  int code = 2;
  bool timing = false, table = false;
  try {
    if (args.empty() || args[0] == "--help" || args[0] == "help") {
      err << usage();
      return args.empty() ? 2 : 0;
    }
    Command c = parse_command(args);
    timing = c.opt.flag("timing");
    table = c.opt.flag("table");
    report["command"] = c.name();
    code = handlers().at(c.name())(c, report);
  } catch (const UsageError& e) {
    err << "nc-plane: " << e.what() << "\n" << usage();
    report["error_kind"] = "UsageError";
    report["message"] = e.what();
    code = 2;
  } catch (const Error& e) {
    err << "nc-plane: " << e.kind_name() << ": " << e.what() << "\n";
    report["error_kind"] = e.kind_name();
    report["message"] = e.what();
    code = 2;
  } catch (const std::exception& e) {
    err << "nc-plane: internal error: " << e.what() << "\n";
    report["error_kind"] = "InternalError";
    report["message"] = e.what();
    code = 2;
  }
  report["exit_code"] = code;
  if (timing) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report["wall_time_ms"] = ms;
  }
  if (table)
    print_table(report, out);
  else
    out << report.dump(2) << "\n";
  return code;
}

}  // namespace ncplane::cli
