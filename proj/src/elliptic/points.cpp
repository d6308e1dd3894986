#include "ncplane/elliptic/points.hpp"

#include "ncplane/error.hpp"

namespace ncplane {

template <class K>
std::vector<Point<K>> sigma_orbit(const PointScheme<K>& ps, const Point<K>& p, int depth) {
  if (!ps.degenerate && !ps.on_curve(p)) throw Error(ErrorKind::NotOnPointScheme, "point is not on E");
  std::vector<Point<K>> orbit = {normalize_point(p)};
  while (static_cast<int>(orbit.size()) < depth) {
    auto next = ps.sigma(orbit.back());
    if (!next) throw Error(ErrorKind::NotOnPointScheme, "sigma is not determined along the orbit");
    orbit.push_back(*next);
  }
  return orbit;
}

template <class K>
std::vector<Vec<K>> point_functionals(const PointScheme<K>& ps, const std::vector<Point<K>>& orbit, int dmax) {
  const GradedAlgebra<K>& alg = *ps.alg;
  if (static_cast<int>(orbit.size()) < dmax) throw Error(ErrorKind::InvalidInput, "orbit too short");
  std::vector<Vec<K>> lam(dmax + 1);
  lam[0] = {alg.one()};
  for (int d = 1; d <= dmax; ++d) {
    lam[d].resize(alg.dim(d));
    for (int b = 0; b < alg.dim(d); ++b) {
      auto [i, k] = alg.predecessor(d, b);
      lam[d][b] = lam[d - 1][i] * orbit[d - 1][k];
    }
  }
  return lam;
}

namespace {

template <class K>
Matrix<K> stacked(const std::vector<std::vector<Vec<K>>>& lams, int d, int cols) {
  Matrix<K> m(lams.size(), cols);
  for (std::size_t i = 0; i < lams.size(); ++i)
    for (int b = 0; b < cols; ++b) m(i, b) = lams[i][d][b];
  return m;
}

}  // namespace

template <class K>
GradedModule<K> point_module(const PointScheme<K>& ps, const Point<K>& p) {
  const GradedAlgebra<K>& alg = *ps.alg;
  int D = alg.degree_bound();
  auto lam = point_functionals(ps, sigma_orbit(ps, p, D), D);
  GradedModule<K> m(ps.alg, {0}, 0, D);
  for (int d = 0; d <= D; ++d) {
    Matrix<K> row(1, alg.dim(d));
    for (int b = 0; b < alg.dim(d); ++b) row(0, b) = lam[d][b];
    m.set(d, Matrix<K>::identity(alg.dim(d), alg.one()), kernel_matrix(row, alg.one()));
  }
  return m;
}

template <class K>
GradedModule<K> ideal_of_points(const PointScheme<K>& ps, const std::vector<Point<K>>& pts) {
  const GradedAlgebra<K>& alg = *ps.alg;
  int D = alg.degree_bound();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (projectively_equal(pts[i], pts[j]))
        throw Error(ErrorKind::PointsNotDistinct, "points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  std::vector<std::vector<Vec<K>>> lams;
  for (const auto& p : pts) lams.push_back(point_functionals(ps, sigma_orbit(ps, p, D), D));
  GradedModule<K> m(ps.alg, {0}, 0, D);
  for (int d = 0; d <= D; ++d) {
    Matrix<K> u = pts.empty() ? Matrix<K>::identity(alg.dim(d), alg.one())
                              : kernel_matrix(stacked(lams, d, alg.dim(d)), alg.one());
    m.set(d, std::move(u), Matrix<K>(alg.dim(d), 0));
  }
  return m;
}

std::vector<Point<Fp>> random_generic_points(const PointScheme<Fp>& ps, int k, std::mt19937_64& rng) {
  const GradedAlgebra<Fp>& alg = *ps.alg;
  int D = alg.degree_bound();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Point<Fp>> pts;
    std::vector<std::vector<Point<Fp>>> orbits;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      Point<Fp> p = random_curve_point(ps, rng);
      std::vector<Point<Fp>> orb;
      try {
        orb = sigma_orbit(ps, p, D);
        if (!ps.sigma_inverse(p)) ok = false;
      } catch (const Error&) {
        ok = false;
        break;
      }
      for (const auto& o : orbits)
        for (const auto& a : o)
          for (const auto& b : orb) ok = ok && !(a == b);
      pts.push_back(p);
      orbits.push_back(std::move(orb));
    }
    if (!ok) continue;
    if (k > 0) {
      std::vector<std::vector<Vec<Fp>>> lams;
      int d = std::max(1, k - 1);
      for (const auto& o : orbits) lams.push_back(point_functionals(ps, o, d));
      if (rank(stacked(lams, d, alg.dim(d))) != static_cast<std::size_t>(k)) continue;
    }
    return pts;
  }
  throw Error(ErrorKind::NotOnPointScheme, "could not draw generic points on E");
}

template <class K>
KroneckerComplex<K> ideal_monad(const PointScheme<K>& ps, const std::vector<Point<K>>& pts, std::mt19937_64& rng) {
  AlgebraPtr<K> alg = ps.alg;
  K one = alg->one();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (projectively_equal(pts[i], pts[j])) throw Error(ErrorKind::PointsNotDistinct, "repeated point");
  KroneckerComplex<K> cur{alg, 0, 1, 0, zero_linear<K>(1, 0), zero_linear<K>(0, 1)};
  for (const auto& p : pts) {
    if (!ps.degenerate && !ps.on_curve(p)) throw Error(ErrorKind::NotOnPointScheme, "point is not on E");
    auto q = ps.sigma_inverse(p);
    if (!q) throw Error(ErrorKind::NotOnPointScheme, "sigma^{-1} is not determined at the point");
    // B_T = (l1, l2), the linear forms vanishing at q
    Matrix<K> qrow(1, 3);
    for (int k = 0; k < 3; ++k) qrow(0, k) = (*q)[k];
    auto ls = kernel_basis(qrow, one);
    LinearMatrix<K> bt = zero_linear<K>(1, 2);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 3; ++k) bt[k](0, i) = ls[i][k];
    // A_T: the linear syzygy of (l1, l2)
    Matrix<K> syz(alg->dim(2), 6);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 2; ++i) {
        LinearMatrix<K> e = zero_linear<K>(2, 1);
        e[k](i, 0) = one;
        auto prod = linear_product(*alg, bt, e);
        for (int b = 0; b < alg->dim(2); ++b) syz(b, 2 * k + i) = prod[b](0, 0);
      }
    auto sk = kernel_basis(syz, one);
    if (sk.size() != 1) throw Error(ErrorKind::NotOnPointScheme, "linear forms at sigma^{-1}(p) do not cut out a point module");
    LinearMatrix<K> at = zero_linear<K>(2, 1);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 2; ++i) at[k](i, 0) = sk[0][2 * k + i];

    // gluing maps: B_T f^{-1} + f^0 A' = 0
    const int a1 = cur.a, n1 = cur.n, c1 = cur.c, s2 = alg->dim(2);
    const int unknowns = 6 * a1 + 3 * n1;
    Matrix<K> sys(s2 * a1, unknowns);
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < a1; ++j) {
          LinearMatrix<K> e = zero_linear<K>(2, a1);
          e[k](i, 0 + j) = one;
          auto prod = linear_product(*alg, bt, e);
          for (int b = 0; b < s2; ++b)
            for (int t = 0; t < a1; ++t) sys(b * a1 + t, k * 2 * a1 + i * a1 + j) = prod[b](0, t);
        }
      for (int j = 0; j < n1; ++j) {
        LinearMatrix<K> e = zero_linear<K>(1, n1);
        e[k](0, j) = one;
        auto prod = linear_product(*alg, e, cur.A);
        for (int b = 0; b < s2; ++b)
          for (int t = 0; t < a1; ++t) sys(b * a1 + t, 6 * a1 + k * n1 + j) = prod[b](0, t);
      }
    }
    std::vector<Vec<K>> sols;
    if (a1 == 0) {
      for (int u = 0; u < unknowns; ++u) {
        Vec<K> v(unknowns);
        v[u] = one;
        sols.push_back(v);
      }
    } else {
      sols = kernel_basis(sys, one);
    }
    bool found = false;
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      Vec<K> f(unknowns);
      for (const auto& s : sols) {
        K c = random_scalar(rng, one);
        for (int u = 0; u < unknowns; ++u) f[u] += c * s[u];
      }
      KroneckerComplex<K> next{alg, a1 + 1, n1 + 2, c1 + 1, zero_linear<K>(n1 + 2, a1 + 1),
                               zero_linear<K>(c1 + 1, n1 + 2)};
      for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 2; ++i) next.A[k](i, 0) = at[k](i, 0);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < a1; ++j) next.A[k](i, 1 + j) = f[k * 2 * a1 + i * a1 + j];
        for (int i = 0; i < n1; ++i)
          for (int j = 0; j < a1; ++j) next.A[k](2 + i, 1 + j) = cur.A[k](i, j);
        for (int i = 0; i < 2; ++i) next.B[k](0, i) = bt[k](0, i);
        for (int j = 0; j < n1; ++j) next.B[k](0, 2 + j) = f[6 * a1 + k * n1 + j];
        for (int i = 0; i < c1; ++i)
          for (int j = 0; j < n1; ++j) next.B[k](1 + i, 2 + j) = cur.B[k](i, j);
      }
      if (complex_defect(next)) throw Error(ErrorKind::NotAComplex, "gluing maps do not give a complex");
      if (is_monad(next).verdict == MonadVerdict::Monad) {
        cur = std::move(next);
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::Inconclusive, "no gluing map produced a monad");
  }
  return cur;
}

template <class K>
std::vector<RestrictionRow> restrict_to_E(const GradedModule<K>& m) {
  const GradedAlgebra<K>& alg = *m.alg();
  std::vector<RestrictionRow> rows;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    RestrictionRow r{d, m.hilbert(d), d - 3 >= m.lo() ? m.hilbert(d - 3) : 0, 0};
    r.restricted = r.hf - r.hf_shifted;
    rows.push_back(r);
    if (d + 3 > m.hi() || m.hilbert(d) == 0) continue;
    Matrix<K> gu = free_right_g(alg, m.ambient(), d) * m.U(d);
    long long img = static_cast<long long>(rank(gu.hstack(m.W(d + 3)))) - static_cast<long long>(rank(m.W(d + 3)));
    if (img != m.hilbert(d))
      throw Error(ErrorKind::GNotInjective, "right multiplication by g has a kernel in degree " + std::to_string(d));
  }
  return rows;
}

template <class K>
SigmaHomDims sigma_hom_dims(const GradedAlgebra<K>& alg, int i) {
  if (i < 0) throw Error(ErrorKind::InvalidInput, "degree must be non-negative");
  return {alg.dim(i), alg.quotient_B_dim(i)};
}

bool CounterexampleReport::holds() const {
  if (!alpha_in_m || !beta_in_m || !alpha_identity || !beta_identity) return false;
  for (const auto& [d, found] : gamma_found)
    if (found) return false;
  return true;
}

CounterexampleReport counterexample_module(const AlgebraPtr<Rational>& alg, int max_degree) {
  const auto& spec = alg->spec();
  if (spec.family != Family::QDeform || !(spec.params[1] == Param(1)) || !(spec.params[2] == Param(1)))
    throw Error(ErrorKind::InvalidInput, "the counterexample lives on QDeform(p, 1, 1)");
  if (max_degree + 1 > alg->degree_bound()) throw Error(ErrorKind::DegreeBoundTooSmall, "raise the degree bound");
  Rational p = alg->scalar(spec.params[0]), one = alg->one();
  auto w = [&](std::vector<int> word) { return alg->word_element(word); };
  const int X = 0, Y = 1, Z = 2;
  auto zy = w({Z}) + w({Y});
  auto xz = w({X}) + w({Z});
  auto alpha = w({X, X}) + (one + p) * w({X, Z}) + p * w({Z, Z});
  auto beta = w({X, Z}) + w({X, Y}) + w({Z, Z}) + p * w({Z, Y});
  CounterexampleReport rep;
  // (y+z) alpha = (x+z)(x(p^2 y + z) + p z (y + z))
  auto rhs_a = alg->multiply(xz, (p * p) * w({X, Y}) + w({X, Z}) + p * w({Z, Y}) + p * w({Z, Z}));
  rep.alpha_identity = alg->multiply(zy, alpha) == rhs_a;
  // (y+z) beta = (x+z)(y+z)(p y + z)
  auto rhs_b = alg->multiply(alg->multiply(xz, zy), p * w({Y}) + w({Z}));
  rep.beta_identity = alg->multiply(zy, beta) == rhs_b;

  for (int d = 1; d <= max_degree; ++d) {
    Matrix<Rational> lzy = alg->left_mult_matrix(zy, d), lxz = alg->left_mult_matrix(xz, d);
    auto ker = kernel_basis(lzy.hstack(lxz), one);
    Matrix<Rational> mb(alg->dim(d), ker.size());
    for (std::size_t j = 0; j < ker.size(); ++j)
      for (int i = 0; i < alg->dim(d); ++i) mb(i, j) = ker[j][i];
    mb = column_basis(mb);
    rep.m_dims.push_back({d, static_cast<long long>(mb.cols())});
    if (d == 2) {
      rep.alpha_in_m = in_column_span(mb, alpha.c);
      rep.beta_in_m = in_column_span(mb, beta.c);
    }
    // x z^{d-1} in M_d + k[y,z]_d ?
    std::vector<int> gw = {X};
    for (int t = 1; t < d; ++t) gw.push_back(Z);
    Matrix<Rational> span = mb;
    for (int a = 0; a <= d; ++a) {
      std::vector<int> rw(a, Y);
      for (int t = a; t < d; ++t) rw.push_back(Z);
      span = span.hstack(Matrix<Rational>::from_columns(alg->dim(d), {w(rw).c}));
    }
    rep.gamma_found.push_back({d, in_column_span(span, w(gw).c)});
  }
  return rep;
}

#define NCPLANE_INSTANTIATE(K)                                                                                    \
  template std::vector<Point<K>> sigma_orbit<K>(const PointScheme<K>&, const Point<K>&, int);                     \
  template std::vector<Vec<K>> point_functionals<K>(const PointScheme<K>&, const std::vector<Point<K>>&, int);    \
  template GradedModule<K> point_module<K>(const PointScheme<K>&, const Point<K>&);                               \
  template GradedModule<K> ideal_of_points<K>(const PointScheme<K>&, const std::vector<Point<K>>&);               \
  template KroneckerComplex<K> ideal_monad<K>(const PointScheme<K>&, const std::vector<Point<K>>&, std::mt19937_64&); \
  template std::vector<RestrictionRow> restrict_to_E<K>(const GradedModule<K>&);                                  \
  template SigmaHomDims sigma_hom_dims<K>(const GradedAlgebra<K>&, int);

NCPLANE_INSTANTIATE(Fp)
NCPLANE_INSTANTIATE(Rational)

}  // namespace ncplane
