#include "ncplane/ncalgebra/spec.hpp"

#include <numeric>

#include "ncplane/error.hpp"
#include "ncplane/exactmath/scalar.hpp"

namespace ncplane {

using nlohmann::json;

const char* family_name(Family f) {
  switch (f) {
    case Family::Polynomial: return "polynomial";
    case Family::Sklyanin: return "sklyanin";
    case Family::HomogenizedWeyl: return "homogenized_weyl";
    case Family::QDeform: return "qdeform";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "polynomial") return Family::Polynomial;
  if (name == "sklyanin") return Family::Sklyanin;
  if (name == "homogenized_weyl" || name == "weyl") return Family::HomogenizedWeyl;
  if (name == "qdeform") return Family::QDeform;
  throw Error(ErrorKind::InvalidInput, "unknown algebra family '" + name + "'");
}

Param::Param(long long n, long long d) {
  if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in parameter");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

AlgebraSpec AlgebraSpec::polynomial(FieldSpec f, std::string g, int D) {
  AlgebraSpec s;
  s.field = f;
  s.family = Family::Polynomial;
  s.cubic_g = std::move(g);
  s.degree_bound = D;
  return s;
}

AlgebraSpec AlgebraSpec::sklyanin(FieldSpec f, Param a, Param b, Param c, int D) {
  AlgebraSpec s;
  s.field = f;
  s.family = Family::Sklyanin;
  s.params = {a, b, c};
  s.degree_bound = D;
  return s;
}

AlgebraSpec AlgebraSpec::weyl(FieldSpec f, int D) {
  AlgebraSpec s;
  s.field = f;
  s.family = Family::HomogenizedWeyl;
  s.degree_bound = D;
  return s;
}

AlgebraSpec AlgebraSpec::qdeform(FieldSpec f, Param p, Param q, Param r, int D) {
  AlgebraSpec s;
  s.field = f;
  s.family = Family::QDeform;
  s.params = {p, q, r};
  s.degree_bound = D;
  return s;
}

json field_to_json(const FieldSpec& f) {
  if (f.rationals) return "rationals";
  return json{{"p", f.p}};
}

FieldSpec field_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "rationals" || s == "Q") return FieldSpec::rational_numbers();
    throw Error(ErrorKind::InvalidInput, "unknown field '" + s + "'");
  }
  if (j.is_object() && j.contains("p")) {
    long long p = j.at("p").get<long long>();
    if (p < 2 || p > 2147483647LL || !is_prime(static_cast<std::uint64_t>(p)))
      throw Error(ErrorKind::InvalidInput, "field characteristic must be prime");
    return FieldSpec::prime(static_cast<std::uint32_t>(p));
  }
  throw Error(ErrorKind::InvalidInput, "field must be {\"p\": prime} or \"rationals\"");
}

static json param_to_json(const Param& p) {
  if (p.den == 1) return p.num;
  return std::to_string(p.num) + "/" + std::to_string(p.den);
}

static Param param_from_json(const json& j) {
  if (j.is_number_integer()) return Param(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Param(std::stoll(s));
      return Param(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "bad parameter '" + s + "'");
    }
  }
  throw Error(ErrorKind::InvalidInput, "parameters must be integers or \"a/b\" strings");
}

json to_json(const AlgebraSpec& spec) {
  json j;
  j["field"] = field_to_json(spec.field);
  j["family"] = family_name(spec.family);
  json ps = json::array();
  for (const Param& p : spec.params) ps.push_back(param_to_json(p));
  j["params"] = ps;
  if (!spec.cubic_g.empty()) j["cubic_g"] = spec.cubic_g;
  j["degree_bound"] = spec.degree_bound;
  return j;
}

AlgebraSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "algebra spec must be an object");
  AlgebraSpec s;
  try {
    s.field = field_from_json(j.at("field"));
    s.family = family_from_name(j.at("family").get<std::string>());
    if (j.contains("params"))
      for (const json& p : j.at("params")) s.params.push_back(param_from_json(p));
    if (j.contains("cubic_g")) s.cubic_g = j.at("cubic_g").get<std::string>();
    if (j.contains("degree_bound")) s.degree_bound = j.at("degree_bound").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed algebra spec: ") + e.what());
  }
  std::size_t want = (s.family == Family::Sklyanin || s.family == Family::QDeform) ? 3 : 0;
  if (s.params.size() != want)
    throw Error(ErrorKind::InvalidInput, std::string(family_name(s.family)) + " expects " +
                                             std::to_string(want) + " parameters");
  return s;
}

}  // namespace ncplane
