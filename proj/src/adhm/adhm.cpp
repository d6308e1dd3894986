#include "ncplane/adhm/adhm.hpp"

#include "ncplane/error.hpp"

namespace ncplane {

namespace {

template <class K>
Matrix<K> block_rows(const std::vector<const Matrix<K>*>& parts, std::size_t cols) {
  std::size_t rows = 0;
  for (auto* p : parts) rows += p->rows();
  Matrix<K> out(rows, cols);
  std::size_t r0 = 0;
  for (auto* p : parts) {
    out.set_block(r0, 0, *p);
    r0 += p->rows();
  }
  return out;
}

template <class K>
Matrix<K> block_cols(const std::vector<const Matrix<K>*>& parts, std::size_t rows) {
  std::size_t cols = 0;
  for (auto* p : parts) cols += p->cols();
  Matrix<K> out(rows, cols);
  std::size_t c0 = 0;
  for (auto* p : parts) {
    out.set_block(0, c0, *p);
    c0 += p->cols();
  }
  return out;
}

template <class K>
Matrix<K> random_matrix(std::size_t r, std::size_t c, const K& one, std::mt19937_64& rng) {
  Matrix<K> m(r, c);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < c; ++b) m(a, b) = random_scalar(rng, one);
  return m;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& g, const K& one) {
  std::size_t n = g.rows();
  Matrix<K> aug = g.hstack(Matrix<K>::identity(n, one));
  auto piv = row_reduce(aug);
  if (piv.size() < n || piv[n - 1] >= n) throw Error(ErrorKind::InvalidInput, "singular matrix");
  Matrix<K> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

template <class K>
KroneckerComplex<K> unchecked_monad(const AlgebraPtr<K>& alg, const AdhmDatum<K>& d) {
  const int n = d.n, r = d.r;
  K one = alg->one();
  Matrix<K> id = Matrix<K>::identity(n, one), zn(n, n), zrn(r, n), znr(n, r);
  Matrix<K> neg_b2 = -one * d.b2, neg_id = -one * id;
  KroneckerComplex<K> k{alg, n, 2 * n + r, n, {}, {}};
  k.A = {block_rows<K>({&id, &zn, &zrn}, n), block_rows<K>({&zn, &id, &zrn}, n),
         block_rows<K>({&d.b1, &d.b2, &d.j}, n)};
  k.B = {block_cols<K>({&zn, &id, &znr}, n), block_cols<K>({&neg_id, &zn, &znr}, n),
         block_cols<K>({&neg_b2, &d.b1, &d.i}, n)};
  return k;
}

}  // namespace

template <class K>
K calibrate_kappa(const AlgebraPtr<K>& alg) {
  K one = alg->one(), zero = scalar_from_int(one, 0);
  auto datum = [&](K i, K j) {
    AdhmDatum<K> d{1, 1, Matrix<K>(1, 1), Matrix<K>(1, 1), Matrix<K>(1, 1), Matrix<K>(1, 1)};
    d.i(0, 0) = i;
    d.j(0, 0) = j;
    return d;
  };
  auto prod = [&](const AdhmDatum<K>& d) {
    auto k = unchecked_monad(alg, d);
    auto p = linear_product(*alg, k.B, k.A);
    Vec<K> v(p.size());
    for (std::size_t b = 0; b < p.size(); ++b) v[b] = p[b](0, 0);
    return v;
  };
  Vec<K> base = prod(datum(zero, zero));   // kappa * w
  Vec<K> with = prod(datum(one, one));     // (kappa + 1) * w
  Vec<K> w(base.size());
  for (std::size_t b = 0; b < w.size(); ++b) w[b] = with[b] - base[b];
  if (is_zero_vector(w)) throw Error(ErrorKind::InvalidInput, "ij does not enter B*A; not a Weyl-type algebra");
  // base must be proportional to w
  std::size_t piv = 0;
  while (w[piv].is_zero()) ++piv;
  K kappa = base[piv] * w[piv].inverse();
  for (std::size_t b = 0; b < w.size(); ++b)
    if (base[b] != kappa * w[b])
      throw Error(ErrorKind::InvalidInput, "B*A is not a multiple of the moment map on this algebra");
  return kappa;
}

template <class K>
AdhmCheck<K> validate_adhm(const AdhmDatum<K>& d, const K& kappa) {
  const std::size_t n = d.n, r = d.r;
  if (d.b1.rows() != n || d.b1.cols() != n || d.b2.rows() != n || d.b2.cols() != n || d.i.rows() != n ||
      d.i.cols() != r || d.j.rows() != r || d.j.cols() != n)
    throw Error(ErrorKind::ShapeMismatch, "ADHM matrices have inconsistent shapes");
  AdhmCheck<K> out;
  out.residual = d.b1 * d.b2 - d.b2 * d.b1;
  if (r) out.residual = out.residual + d.i * d.j;
  for (std::size_t a = 0; a < n; ++a) out.residual(a, a) += kappa;
  out.valid = out.residual.is_zero();
  return out;
}

template <class K>
KroneckerComplex<K> monad_from_adhm(const AlgebraPtr<K>& alg, const AdhmDatum<K>& d) {
  auto k = unchecked_monad(alg, d);
  return build_complex(alg, k.a, k.n, k.c, k.A, k.B);
}

template <class K>
AdhmDatum<K> random_adhm(int n, int r, const K& one, std::mt19937_64& rng) {
  return {n, r, random_matrix(n, n, one, rng), random_matrix(n, n, one, rng), random_matrix(n, r, one, rng),
          random_matrix(r, n, one, rng)};
}

template <class K>
AdhmDatum<K> random_valid_adhm(int n, int r, const K& kappa, std::mt19937_64& rng) {
  if (n < 0 || r < 0) throw Error(ErrorKind::InvalidInput, "negative sizes");
  K one = scalar_from_int(kappa, 1);
  if (n > 0 && r == 0) throw Error(ErrorKind::InvalidInput, "the moment equation has no solution with r = 0");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    AdhmDatum<K> d{n, r, random_matrix(n, n, one, rng), random_matrix(n, n, one, rng), Matrix<K>(n, r), Matrix<K>(r, n)};
    if (n == 0) return d;
    if (r >= n) {
      d.i = random_matrix(n, r, one, rng);
      if (rank(d.i) < static_cast<std::size_t>(n)) continue;
      Matrix<K> rhs = d.b2 * d.b1 - d.b1 * d.b2;
      for (int a = 0; a < n; ++a) rhs(a, a) -= kappa;
      bool ok = true;
      for (int col = 0; col < n && ok; ++col) {
        auto s = solve(d.i, rhs.column(col));
        if (!s) ok = false;
        else
          for (int t = 0; t < r; ++t) d.j(t, col) = (*s)[t];
      }
      if (!ok) continue;
      if (validate_adhm(d, kappa).valid) return d;
      continue;
    }
    // b1 = diag(q), b2_ab = kappa / (q_a - q_b) off the diagonal, i = 1, j = -kappa 1^t
    std::vector<K> q(n);
    for (int a = 0; a < n; ++a) q[a] = random_scalar(rng, one);
    bool distinct = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < a; ++b) distinct = distinct && q[a] != q[b];
    if (!distinct) continue;
    Matrix<K> b1(n, n), b2(n, n), i(n, r), j(r, n);
    for (int a = 0; a < n; ++a) {
      b1(a, a) = q[a];
      b2(a, a) = random_scalar(rng, one);
      for (int b = 0; b < n; ++b)
        if (a != b) b2(a, b) = kappa * (q[a] - q[b]).inverse();
      i(a, 0) = one;
      j(0, a) = -kappa;
      for (int t = 1; t < r; ++t) i(a, t) = random_scalar(rng, one);
    }
    Matrix<K> g = random_matrix(n, n, one, rng);
    if (rank(g) < static_cast<std::size_t>(n)) continue;
    Matrix<K> gi = inverse(g, one);
    d.b1 = g * b1 * gi;
    d.b2 = g * b2 * gi;
    d.i = g * i;
    d.j = j * gi;
    if (validate_adhm(d, kappa).valid) return d;
  }
  throw Error(ErrorKind::Inconclusive, "could not generate a valid ADHM datum");
}

template <class K>
FramingReport check_framing(const KroneckerComplex<K>& k, int max_degree) {
  MonadReport rep = is_monad(k);
  if (rep.verdict != MonadVerdict::Monad) throw Error(ErrorKind::NotAMonad, rep.reason);
  K one = k.alg->one();
  int D = max_degree < 0 ? k.alg->degree_bound() : max_degree;
  // R = k[x,y], R_d basis x^e y^{d-e} indexed by e
  auto lin = [&](const LinearMatrix<K>& m, int d) {
    // cols * R_{d-1} -> rows * R_d
    std::size_t rows = m[0].rows(), cols = m[0].cols();
    Matrix<K> out(rows * (d + 1), cols * std::max(d, 0));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (int e = 0; e < d; ++e) {
          out(i * (d + 1) + e + 1, j * d + e) += m[0](i, j);  // x
          out(i * (d + 1) + e, j * d + e) += m[1](i, j);      // y
        }
    return out;
  };
  FramingReport out;
  long long rank_expected = k.n - k.a - k.c;
  Matrix<K> kerB0;
  out.generated_in_degree0 = true;
  for (int d = 0; d <= D; ++d) {
    Matrix<K> bd = lin(k.B, d + 1);
    Matrix<K> ad = lin(k.A, d);
    Matrix<K> ker = k.c ? kernel_matrix(bd, one) : Matrix<K>::identity(k.n * (d + 1), one);
    long long im = k.a ? static_cast<long long>(rank(ad)) : 0;
    out.hf.push_back(static_cast<long long>(ker.cols()) - im);
    if (d == 0) {
      kerB0 = ker;
      out.generators_in_degree0 = out.hf[0];
    } else {
      // sections of degree 0 times monomials of degree d, plus im A
      Matrix<K> gens(k.n * (d + 1), kerB0.cols() * (d + 1));
      for (std::size_t v = 0; v < kerB0.cols(); ++v)
        for (int e = 0; e <= d; ++e)
          for (int i = 0; i < k.n; ++i) gens(i * (d + 1) + e, v * (d + 1) + e) = kerB0(i, 0 + v);
      Matrix<K> all = k.a ? ad.hstack(gens) : gens;
      if (static_cast<long long>(rank(all)) != static_cast<long long>(ker.cols())) out.generated_in_degree0 = false;
    }
  }
  out.framed = out.generated_in_degree0 && out.generators_in_degree0 == rank_expected;
  for (int d = 0; d <= D; ++d) out.framed = out.framed && out.hf[d] == rank_expected * (d + 1);
  return out;
}

#define NCPLANE_INSTANTIATE(K)                                                                   \
  template K calibrate_kappa<K>(const AlgebraPtr<K>&);                                           \
  template AdhmCheck<K> validate_adhm<K>(const AdhmDatum<K>&, const K&);                         \
  template KroneckerComplex<K> monad_from_adhm<K>(const AlgebraPtr<K>&, const AdhmDatum<K>&);    \
  template AdhmDatum<K> random_adhm<K>(int, int, const K&, std::mt19937_64&);                    \
  template AdhmDatum<K> random_valid_adhm<K>(int, int, const K&, std::mt19937_64&);              \
  template FramingReport check_framing<K>(const KroneckerComplex<K>&, int);

NCPLANE_INSTANTIATE(Fp)
NCPLANE_INSTANTIATE(Rational)

}  // namespace ncplane
