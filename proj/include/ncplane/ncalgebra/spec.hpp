#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ncplane {

struct FieldSpec {
  bool rationals = false;
  std::uint32_t p = 0;

  static FieldSpec prime(std::uint32_t p) { return {false, p}; }
  static FieldSpec rational_numbers() { return {true, 0}; }
  bool operator==(const FieldSpec&) const = default;
};

enum class Family { Polynomial, Sklyanin, HomogenizedWeyl, QDeform };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Small exact rational used for family parameters; kept normalized.
struct Param {
  long long num = 0;
  long long den = 1;

  Param() = default;
  Param(long long n, long long d = 1);  // NOLINT(google-explicit-constructor)
  bool operator==(const Param&) const = default;
};

struct AlgebraSpec {
  FieldSpec field;
  Family family = Family::Polynomial;
  std::vector<Param> params;
  std::string cubic_g;  // Polynomial family only, e.g. "x*y*z"
  int degree_bound = 12;

  static AlgebraSpec polynomial(FieldSpec f, std::string g = "x*y*z", int D = 12);
  static AlgebraSpec sklyanin(FieldSpec f, Param a, Param b, Param c, int D = 12);
  static AlgebraSpec weyl(FieldSpec f, int D = 12);
  static AlgebraSpec qdeform(FieldSpec f, Param p, Param q, Param r, int D = 12);
};

nlohmann::json to_json(const AlgebraSpec& spec);
AlgebraSpec spec_from_json(const nlohmann::json& j);

nlohmann::json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const nlohmann::json& j);

}  // namespace ncplane
