#pragma once

#include <array>
#include <optional>
#include <random>
#include <vector>

#include "ncplane/ncalgebra/algebra.hpp"

namespace ncplane {

template <class K>
using Point = std::array<K, 3>;

// Monomials of degree 3 in x, y, z, exponent triples in lexicographic order
// x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
const std::array<std::array<int, 3>, 10>& cubic_monomials();

template <class K>
struct PointScheme {
  AlgebraPtr<K> alg;
  // Polynomial family: every point of P^2 is a point module; E is the chosen cubic.
  bool degenerate = false;
  std::array<K, 10> cubic;  // normalized: first nonzero coefficient is 1

  K eval(const Point<K>& p) const;
  bool on_curve(const Point<K>& p) const { return eval(p).is_zero(); }
  // M(p)_{mk} = sum_j r^m_{jk} p_j ; sigma(p) spans ker M(p)
  Matrix<K> M(const Point<K>& p) const;
  // N(q)_{mj} = sum_k r^m_{jk} q_k ; sigma^{-1}(q) spans ker N(q)
  Matrix<K> N(const Point<K>& q) const;
  std::optional<Point<K>> sigma(const Point<K>& p) const;
  std::optional<Point<K>> sigma_inverse(const Point<K>& q) const;
  // p admits a point module continuation (solution of the bilinear system)
  bool is_point_module_support(const Point<K>& p) const;
};

template <class K>
PointScheme<K> point_scheme(AlgebraPtr<K> alg);

// Scale so that the first nonzero coordinate is 1.
template <class K>
Point<K> normalize_point(Point<K> p);

template <class K>
bool projectively_equal(const Point<K>& a, const Point<K>& b) {
  return normalize_point(a) == normalize_point(b);
}

// All points of P^2(F_p) in enumeration order [1:y:z], [0:1:z], [0:0:1].
std::vector<Point<Fp>> projective_plane(std::uint32_t p);

// Points of E (or of P^2 when max_count is reached first) usable as samples;
// over Q a small integer box is searched.
template <class K>
std::vector<Point<K>> curve_points(const PointScheme<K>& ps, std::size_t max_count);

// Points of P^2 in the same fixed order (used by the polynomial family).
template <class K>
std::vector<Point<K>> plane_points(const K& one, std::size_t max_count);

// Uniformly random point of E(F_p) via rejection on lines through random points.
Point<Fp> random_curve_point(const PointScheme<Fp>& ps, std::mt19937_64& rng);

}  // namespace ncplane
