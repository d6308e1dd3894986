#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ncplane/exactmath/matrix.hpp"
#include "ncplane/ncalgebra/spec.hpp"

namespace ncplane {

// Homogeneous element: coordinates in the chosen basis of S_degree.
template <class K>
struct Element {
  int degree = 0;
  Vec<K> c;

  bool is_zero() const { return is_zero_vector(c); }
  friend bool operator==(const Element& a, const Element& b) { return a.degree == b.degree && a.c == b.c; }
  friend Element operator+(Element a, const Element& b) {
    for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Element operator-(Element a, const Element& b) {
    for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Element operator*(const K& s, Element a) {
    for (K& x : a.c) x = s * x;
    return a;
  }
};

template <class K>
K field_one(const FieldSpec& f);

// S = k<x,y,z>/(R), built degree by degree up to a bound D.  Basis elements
// of S_d are standard words b*x_k with b a basis element of S_{d-1}.
template <class K>
class GradedAlgebra {
 public:
  using Elem = Element<K>;
  using Ptr = std::shared_ptr<const GradedAlgebra>;

  static Ptr build(const AlgebraSpec& spec);

  const AlgebraSpec& spec() const { return spec_; }
  int degree_bound() const { return D_; }
  const K& one() const { return one_; }
  K scalar(const Param& p) const;
  K scalar(long long v) const { return scalar_from_int(one_, v); }

  int dim(int d) const;
  std::vector<int> word(int d, int b) const;
  // basis element b of S_d is (basis element first of S_{d-1}) * x_second
  std::pair<int, int> predecessor(int d, int b) const { return pred_[d][b]; }
  // relation m as coefficients r(j,k) of x_j x_k
  const std::array<Matrix<K>, 3>& relations() const { return rel_; }

  Elem zero(int d) const;
  Elem unit() const;
  Elem generator(int k) const;
  Elem linear(const K& cx, const K& cy, const K& cz) const;
  Elem from_coords(int d, Vec<K> c) const;

  Elem multiply(const Elem& u, const Elem& v) const;
  Elem word_element(const std::vector<int>& w) const;

  // S_d -> S_{d+1}
  const Matrix<K>& right_gen(int d, int k) const;
  const Matrix<K>& left_gen(int d, int k) const;
  // tower[e] is left multiplication by a as a map S_e -> S_{e+deg a}
  std::vector<Matrix<K>> left_mult_tower(const Elem& a, int emax) const;
  Matrix<K> left_mult_matrix(const Elem& a, int e) const;
  Matrix<K> right_mult_matrix(const Elem& a, int e) const;

  const Elem& g() const { return g_; }
  // s -> s*g as S_e -> S_{e+3}
  const Matrix<K>& right_g(int e) const;
  bool is_normal(const Elem& v) const;
  int quotient_B_dim(int d) const;

  // Accepts sums of terms like "3*x*y", "-z^2", "1/2*xyz"; "0" needs a degree hint.
  Elem parse(const std::string& text, int degree_hint = -1) const;
  std::string format(const Elem& e) const;

 private:
  GradedAlgebra() = default;
  void set_relations();
  void construct_degrees();
  void find_normal_element();

  AlgebraSpec spec_;
  int D_ = 0;
  K one_;
  std::array<Matrix<K>, 3> rel_;
  std::vector<int> dim_;
  std::vector<std::vector<std::pair<int, int>>> pred_;
  std::vector<std::array<Matrix<K>, 3>> right_;
  std::vector<std::array<Matrix<K>, 3>> left_;
  Elem g_;
  std::vector<Matrix<K>> right_g_;
};

template <class K>
using AlgebraPtr = std::shared_ptr<const GradedAlgebra<K>>;

template <class K>
AlgebraPtr<K> build_algebra(const AlgebraSpec& spec) {
  return GradedAlgebra<K>::build(spec);
}

inline int expected_dim(int d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

}  // namespace ncplane
