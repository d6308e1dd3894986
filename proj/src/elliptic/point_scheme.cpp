#include "ncplane/elliptic/point_scheme.hpp"

#include <map>
#include <numeric>
#include <set>

#include "ncplane/error.hpp"

namespace ncplane {

const std::array<std::array<int, 3>, 10>& cubic_monomials() {
  static const std::array<std::array<int, 3>, 10> m = {{{3, 0, 0},
                                                        {2, 1, 0},
                                                        {2, 0, 1},
                                                        {1, 2, 0},
                                                        {1, 1, 1},
                                                        {1, 0, 2},
                                                        {0, 3, 0},
                                                        {0, 2, 1},
                                                        {0, 1, 2},
                                                        {0, 0, 3}}};
  return m;
}

namespace {

// Commutative polynomial in x, y, z, just enough for a 3x3 determinant.
template <class K>
using Poly = std::map<std::array<int, 3>, K>;

template <class K>
Poly<K> mul(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::array<int, 3> e = {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      out[e] += ca * cb;
    }
  return out;
}

template <class K>
void add_into(Poly<K>& a, const Poly<K>& b, const K& s) {
  for (const auto& [e, c] : b) a[e] += s * c;
}

template <class K>
std::array<K, 10> to_cubic(const Poly<K>& p) {
  std::array<K, 10> out{};
  const auto& mons = cubic_monomials();
  for (std::size_t t = 0; t < 10; ++t) {
    auto it = p.find(mons[t]);
    if (it != p.end()) out[t] = it->second;
  }
  return out;
}

template <class K>
bool normalize_cubic(std::array<K, 10>& c) {
  for (std::size_t t = 0; t < 10; ++t)
    if (!c[t].is_zero()) {
      K inv = c[t].inverse();
      for (K& x : c) x = x * inv;
      return true;
    }
  return false;
}

template <class K>
std::optional<Point<K>> kernel_point(const Matrix<K>& m, const K& one) {
  auto ker = kernel_basis(m, one);
  if (ker.size() != 1) return std::nullopt;
  return normalize_point(Point<K>{ker[0][0], ker[0][1], ker[0][2]});
}

}  // namespace

template <class K>
Point<K> normalize_point(Point<K> p) {
  for (int i = 0; i < 3; ++i)
    if (!p[i].is_zero()) {
      K inv = p[i].inverse();
      for (K& x : p) x = x * inv;
      return p;
    }
  throw Error(ErrorKind::InvalidInput, "zero vector is not a projective point");
}

template <class K>
K PointScheme<K>::eval(const Point<K>& p) const {
  K s = scalar_from_int(alg->one(), 0);
  const auto& mons = cubic_monomials();
  for (std::size_t t = 0; t < 10; ++t) {
    if (cubic[t].is_zero()) continue;
    K term = cubic[t];
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < mons[t][v]; ++e) term = term * p[v];
    s += term;
  }
  return s;
}

template <class K>
Matrix<K> PointScheme<K>::M(const Point<K>& p) const {
  Matrix<K> m(3, 3);
  const auto& rel = alg->relations();
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        if (!rel[r](j, k).is_zero()) m(r, k) += rel[r](j, k) * p[j];
  return m;
}

template <class K>
Matrix<K> PointScheme<K>::N(const Point<K>& q) const {
  Matrix<K> m(3, 3);
  const auto& rel = alg->relations();
  for (int r = 0; r < 3; ++r)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (!rel[r](j, k).is_zero()) m(r, j) += rel[r](j, k) * q[k];
  return m;
}

template <class K>
std::optional<Point<K>> PointScheme<K>::sigma(const Point<K>& p) const {
  if (degenerate) return normalize_point(p);
  return kernel_point(M(p), alg->one());
}

template <class K>
std::optional<Point<K>> PointScheme<K>::sigma_inverse(const Point<K>& q) const {
  if (degenerate) return normalize_point(q);
  return kernel_point(N(q), alg->one());
}

template <class K>
bool PointScheme<K>::is_point_module_support(const Point<K>& p) const {
  return rank(M(p)) < 3;
}

template <class K>
PointScheme<K> point_scheme(AlgebraPtr<K> alg) {
  PointScheme<K> ps;
  ps.alg = alg;
  K one = alg->one();
  const auto& rel = alg->relations();
  // entries of M as linear forms in p
  std::array<std::array<Poly<K>, 3>, 3> m;
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        if (!rel[r](j, k).is_zero()) {
          std::array<int, 3> e = {0, 0, 0};
          e[j] = 1;
          m[r][k][e] += rel[r](j, k);
        }
  Poly<K> det;
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const int signs[6] = {1, -1, -1, 1, 1, -1};
  for (int s = 0; s < 6; ++s) {
    Poly<K> t = mul(mul(m[0][perms[s][0]], m[1][perms[s][1]]), m[2][perms[s][2]]);
    add_into(det, t, scalar_from_int(one, signs[s]));
  }
  ps.cubic = to_cubic(det);
  bool nonzero = normalize_cubic(ps.cubic);
  if (alg->spec().family == Family::Polynomial) {
    ps.degenerate = true;
    // E is the chosen cubic g, read commutatively
    const auto& g = alg->g();
    Poly<K> gc;
    for (int b = 0; b < alg->dim(3); ++b) {
      if (g.c[b].is_zero()) continue;
      std::array<int, 3> e = {0, 0, 0};
      for (int v : alg->word(3, b)) ++e[v];
      gc[e] += g.c[b];
    }
    ps.cubic = to_cubic(gc);
    normalize_cubic(ps.cubic);
  } else if (!nonzero) {
    throw Error(ErrorKind::IdenticallyZeroDeterminant, "point-scheme determinant vanishes identically");
  }
  return ps;
}

std::vector<Point<Fp>> projective_plane(std::uint32_t p) {
  std::vector<Point<Fp>> pts;
  pts.reserve(std::size_t(p) * p + p + 1);
  for (std::uint32_t y = 0; y < p; ++y)
    for (std::uint32_t z = 0; z < p; ++z) pts.push_back({Fp(1, p), Fp(y, p), Fp(z, p)});
  for (std::uint32_t z = 0; z < p; ++z) pts.push_back({Fp(0, p), Fp(1, p), Fp(z, p)});
  pts.push_back({Fp(0, p), Fp(0, p), Fp(1, p)});
  return pts;
}

namespace {

std::vector<Point<Rational>> rational_box(int bound) {
  std::vector<Point<Rational>> pts;
  std::set<std::array<long, 3>> seen;
  for (int a = 0; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c) {
        if (a == 0 && (b < 0 || (b == 0 && c <= 0))) continue;
        long g = std::gcd(std::gcd(a, std::abs(b)), std::abs(c));
        std::array<long, 3> key = {a / g, b / g, c / g};
        if (!seen.insert(key).second) continue;
        pts.push_back({Rational(key[0]), Rational(key[1]), Rational(key[2])});
      }
  return pts;
}

}  // namespace

template <>
std::vector<Point<Fp>> plane_points<Fp>(const Fp& one, std::size_t max_count) {
  auto pts = projective_plane(one.modulus());
  if (pts.size() > max_count) pts.resize(max_count);
  return pts;
}

template <>
std::vector<Point<Rational>> plane_points<Rational>(const Rational&, std::size_t max_count) {
  auto pts = rational_box(2);
  if (pts.size() > max_count) pts.resize(max_count);
  return pts;
}

template <>
std::vector<Point<Fp>> curve_points<Fp>(const PointScheme<Fp>& ps, std::size_t max_count) {
  std::vector<Point<Fp>> out;
  for (const auto& p : projective_plane(ps.alg->one().modulus())) {
    if (ps.on_curve(p)) out.push_back(p);
    if (out.size() >= max_count) break;
  }
  return out;
}

template <>
std::vector<Point<Rational>> curve_points<Rational>(const PointScheme<Rational>& ps, std::size_t max_count) {
  std::vector<Point<Rational>> out;
  for (const auto& p : rational_box(6)) {
    if (ps.on_curve(p)) out.push_back(normalize_point(p));
    if (out.size() >= max_count) break;
  }
  return out;
}

Point<Fp> random_curve_point(const PointScheme<Fp>& ps, std::mt19937_64& rng) {
  Fp one = ps.alg->one();
  for (int tries = 0; tries < 1000000; ++tries) {
    Point<Fp> p = {random_scalar(rng, one), random_scalar(rng, one), random_scalar(rng, one)};
    if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero()) continue;
    if (ps.degenerate || ps.on_curve(p)) return normalize_point(p);
  }
  throw Error(ErrorKind::NotOnPointScheme, "no rational points found on E");
}

template Point<Fp> normalize_point<Fp>(Point<Fp>);
template Point<Rational> normalize_point<Rational>(Point<Rational>);
template struct PointScheme<Fp>;
template struct PointScheme<Rational>;
template PointScheme<Fp> point_scheme<Fp>(AlgebraPtr<Fp>);
template PointScheme<Rational> point_scheme<Rational>(AlgebraPtr<Rational>);

}  // namespace ncplane
