#include "ncplane/grmod/module.hpp"

#include <algorithm>

#include "ncplane/error.hpp"

namespace ncplane {

template <class K>
Matrix<K> free_right_gen(const GradedAlgebra<K>& alg, const TwistedFree& f, int d, int k) {
  Matrix<K> out(free_dim(alg, f, d + 1), free_dim(alg, f, d));
  std::size_t r0 = 0, c0 = 0;
  for (int m : f) {
    int e = d + m;
    if (e + 1 < 0) continue;
    if (e >= 0) out.set_block(r0, c0, alg.right_gen(e, k));
    r0 += alg.dim(e + 1);
    c0 += e < 0 ? 0 : alg.dim(e);
  }
  return out;
}

template <class K>
Matrix<K> free_right_g(const GradedAlgebra<K>& alg, const TwistedFree& f, int d) {
  Matrix<K> out(free_dim(alg, f, d + 3), free_dim(alg, f, d));
  std::size_t r0 = 0, c0 = 0;
  for (int m : f) {
    int e = d + m;
    if (e + 3 < 0) continue;
    if (e >= 0) out.set_block(r0, c0, alg.right_g(e));
    r0 += alg.dim(e + 3);
    c0 += e < 0 ? 0 : alg.dim(e);
  }
  return out;
}

template <class K>
std::vector<Matrix<K>> right_orbit(const GradedAlgebra<K>& alg, const TwistedFree& f, int d, const Vec<K>& u,
                                   int tmax) {
  std::vector<Matrix<K>> tower;
  tower.push_back(Matrix<K>::from_columns(u.size(), {u}));
  for (int t = 1; t <= tmax; ++t) {
    std::array<Matrix<K>, 3> moved;
    for (int k = 0; k < 3; ++k) moved[k] = free_right_gen(alg, f, d + t - 1, k) * tower[t - 1];
    Matrix<K> next(free_dim(alg, f, d + t), alg.dim(t));
    for (int b = 0; b < alg.dim(t); ++b) {
      auto [i, k] = alg.predecessor(t, b);
      Vec<K> col = moved[k].column(i);
      next.set_column(b, col);
    }
    tower.push_back(std::move(next));
  }
  return tower;
}

template <class K>
GradedMap<K> GradedMap<K>::zero(AlgebraPtr<K> alg, TwistedFree source, TwistedFree target) {
  GradedMap m;
  m.alg = alg;
  m.source = std::move(source);
  m.target = std::move(target);
  m.entries.assign(m.target.size(), std::vector<Element<K>>(m.source.size()));
  for (std::size_t i = 0; i < m.target.size(); ++i)
    for (std::size_t j = 0; j < m.source.size(); ++j) {
      int deg = m.entry_degree(i, j);
      m.entries[i][j] = deg < 0 ? Element<K>{deg, {}} : alg->zero(deg);
    }
  return m;
}

template <class K>
Matrix<K> GradedMap<K>::at_degree(int d) const {
  const GradedAlgebra<K>& a = *alg;
  Matrix<K> out(free_dim(a, target, d), free_dim(a, source, d));
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    int ti = d + target[i];
    std::size_t rows = ti < 0 ? 0 : a.dim(ti);
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < source.size(); ++j) {
      int sj = d + source[j];
      std::size_t cols = sj < 0 ? 0 : a.dim(sj);
      const Element<K>& e = entries[i][j];
      if (rows && cols && e.degree >= 0 && !e.is_zero()) out.set_block(r0, c0, a.left_mult_matrix(e, sj));
      c0 += cols;
    }
    r0 += rows;
  }
  return out;
}

template <class K>
bool GradedMap<K>::is_zero() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

template <class K>
GradedMap<K> compose(const GradedMap<K>& b, const GradedMap<K>& a) {
  if (a.target != b.source) throw Error(ErrorKind::ShapeMismatch, "compose: incompatible free modules");
  GradedMap<K> out = GradedMap<K>::zero(a.alg, a.source, b.target);
  for (std::size_t i = 0; i < b.target.size(); ++i)
    for (std::size_t j = 0; j < a.source.size(); ++j) {
      if (out.entry_degree(i, j) < 0) continue;
      for (std::size_t m = 0; m < a.target.size(); ++m) {
        const auto& x = b.entries[i][m];
        const auto& y = a.entries[m][j];
        if (x.degree < 0 || y.degree < 0 || x.is_zero() || y.is_zero()) continue;
        out.entries[i][j] = out.entries[i][j] + a.alg->multiply(x, y);
      }
    }
  return out;
}

template <class K>
int GradedModule<K>::default_lo(const TwistedFree& f) {
  if (f.empty()) return 0;
  return -*std::max_element(f.begin(), f.end());
}

template <class K>
int GradedModule<K>::default_hi(const GradedAlgebra<K>& alg, const TwistedFree& f) {
  if (f.empty()) return alg.degree_bound();
  return alg.degree_bound() - *std::max_element(f.begin(), f.end());
}

template <class K>
GradedModule<K>::GradedModule(AlgebraPtr<K> alg, TwistedFree ambient, int lo, int hi)
    : alg_(std::move(alg)), ambient_(std::move(ambient)), lo_(lo), hi_(hi) {
  if (hi_ > default_hi(*alg_, ambient_)) throw Error(ErrorKind::DegreeOverflow, "module range exceeds degree bound");
  for (int d = lo_; d <= hi_; ++d) {
    U_.emplace_back(ambient_dim(d), 0);
    W_.emplace_back(ambient_dim(d), 0);
  }
}

template <class K>
GradedModule<K> GradedModule<K>::free(AlgebraPtr<K> alg, TwistedFree twists) {
  int lo = default_lo(twists), hi = default_hi(*alg, twists);
  GradedModule m(alg, twists, lo, hi);
  for (int d = lo; d <= hi; ++d) m.set(d, Matrix<K>::identity(m.ambient_dim(d), alg->one()), Matrix<K>(m.ambient_dim(d), 0));
  return m;
}

template <class K>
GradedModule<K> GradedModule<K>::cokernel(const GradedMap<K>& phi) {
  int lo = default_lo(phi.target), hi = default_hi(*phi.alg, phi.target);
  if (!phi.source.empty()) {
    int smax = *std::max_element(phi.source.begin(), phi.source.end());
    hi = std::min(hi, phi.alg->degree_bound() - smax);
  }
  GradedModule m(phi.alg, phi.target, lo, hi);
  for (int d = lo; d <= hi; ++d)
    m.set(d, Matrix<K>::identity(m.ambient_dim(d), phi.alg->one()), column_basis(phi.at_degree(d)));
  return m;
}

template <class K>
const Matrix<K>& GradedModule<K>::U(int d) const {
  if (d < lo_ || d > hi_) throw Error(ErrorKind::DegreeOverflow, "module degree " + std::to_string(d) + " outside [" +
                                                                      std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  return U_[d - lo_];
}

template <class K>
const Matrix<K>& GradedModule<K>::W(int d) const {
  if (d < lo_ || d > hi_) throw Error(ErrorKind::DegreeOverflow, "module degree outside range");
  return W_[d - lo_];
}

template <class K>
void GradedModule<K>::set(int d, Matrix<K> u, Matrix<K> w) {
  if (d < lo_ || d > hi_) throw Error(ErrorKind::DegreeOverflow, "module degree outside range");
  U_[d - lo_] = std::move(u);
  W_[d - lo_] = std::move(w);
}

template <class K>
int GradedModule<K>::hilbert(int d) const {
  if (d < lo_) return 0;
  return static_cast<int>(rank(U(d))) - static_cast<int>(rank(W(d)));
}

template <class K>
bool GradedModule<K>::is_closed() const {
  for (int d = lo_; d < hi_; ++d)
    for (int k = 0; k < 3; ++k) {
      Matrix<K> r = free_right_gen(*alg_, ambient_, d, k);
      const Matrix<K>& u1 = U(d + 1);
      const Matrix<K>& w1 = W(d + 1);
      std::size_t ru = rank(u1), rw = rank(w1);
      if (U(d).cols() && rank(u1.hstack(r * U(d))) != ru) return false;
      if (W(d).cols() && rank(w1.hstack(r * W(d))) != rw) return false;
      if (rank(u1.hstack(w1)) != ru) return false;
    }
  return true;
}

template <class K>
GradedModule<K> right_ideal(AlgebraPtr<K> alg, const std::vector<Element<K>>& gens) {
  GradedModule<K> m(alg, {0}, 0, alg->degree_bound());
  for (int d = 0; d <= alg->degree_bound(); ++d) {
    Matrix<K> u(alg->dim(d), 0);
    for (const auto& a : gens)
      if (a.degree <= d) u = u.hstack(alg->left_mult_matrix(a, d - a.degree));
    m.set(d, column_basis(u), Matrix<K>(alg->dim(d), 0));
  }
  return m;
}

template <class K>
GradedModule<K> shift_twist(const GradedModule<K>& m, int s) {
  TwistedFree t = m.ambient();
  for (int& x : t) x += s;
  GradedModule<K> out(m.alg(), t, m.lo() - s, m.hi() - s);
  for (int d = out.lo(); d <= out.hi(); ++d) out.set(d, m.U(d + s), m.W(d + s));
  return out;
}

template <class K>
GradedModule<K> g_twist(const GradedModule<K>& m) {
  GradedModule<K> out(m.alg(), m.ambient(), m.lo(), m.hi());
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Matrix<K> u(m.ambient_dim(d), 0);
    if (d - 3 >= m.lo()) u = free_right_g(*m.alg(), m.ambient(), d - 3) * m.U(d - 3);
    out.set(d, column_basis(u.hstack(m.W(d))), m.W(d));
  }
  return out;
}

template <class K>
Invariants Resolution<K>::invariants() const {
  Invariants inv;
  for (std::size_t q = 0; q < twists.size(); ++q) {
    long long sign = q % 2 ? -1 : 1;
    for (int m : twists[q]) {
      inv.r += sign;
      inv.c1 += sign * m;
      inv.chi += sign * chi_of_twist(m);
    }
  }
  return inv;
}

template <class K>
long long Resolution<K>::hilbert(int d) const {
  long long h = 0;
  for (std::size_t q = 0; q < twists.size(); ++q)
    for (int m : twists[q]) h += (q % 2 ? -1 : 1) * expected_dim(d + m);
  return h;
}

template <class K>
int Resolution<K>::regularity() const {
  Invariants inv = invariants();
  // beyond max(-m) - 2 every free piece is polynomial
  int cert = lo;
  for (const auto& t : twists)
    for (int m : t) cert = std::max(cert, -m - 2);
  int reg = lo;
  for (int d = lo; d <= cert; ++d)
    if (hilbert(d) != inv.hilbert_poly(d)) reg = d + 1;
  return reg;
}

namespace {

// Minimal generators and first syzygy data of a subquotient.
template <class K>
struct Presented {
  std::vector<Vec<K>> gens;
  std::vector<int> degrees;
};

template <class K>
Presented<K> minimal_generators(const GradedModule<K>& m) {
  Presented<K> p;
  const GradedAlgebra<K>& a = *m.alg();
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Matrix<K> have = m.W(d);
    if (d > m.lo() && m.U(d - 1).cols())
      for (int k = 0; k < 3; ++k) have = have.hstack(free_right_gen(a, m.ambient(), d - 1, k) * m.U(d - 1));
    for (std::size_t c : complement_columns(have, m.U(d))) {
      p.gens.push_back(m.U(d).column(c));
      p.degrees.push_back(d);
    }
  }
  return p;
}

}  // namespace

template <class K>
Resolution<K> free_resolution(const GradedModule<K>& m, int max_length) {
  const AlgebraPtr<K>& alg = m.alg();
  const GradedAlgebra<K>& a = *alg;
  Resolution<K> res;
  res.alg = alg;
  res.lo = m.lo();
  res.hi = m.hi();
  GradedModule<K> stage = m;
  int top = m.lo() - 1;
  for (int q = 0; q <= max_length + 1; ++q) {
    Presented<K> p = minimal_generators(stage);
    if (q > 0 && p.gens.empty()) break;
    if (q == max_length + 1) {
      if (!p.gens.empty())
        throw Error(ErrorKind::DegreeBoundTooSmall, "resolution does not terminate within length " + std::to_string(max_length));
      break;
    }
    for (int d : p.degrees) top = std::max(top, d);
    TwistedFree f;
    for (int d : p.degrees) f.push_back(-d);
    if (q == 0) {
      res.generators = p.gens;
      res.generator_degrees = p.degrees;
    } else {
      GradedMap<K> phi = GradedMap<K>::zero(alg, f, stage.ambient());
      for (std::size_t j = 0; j < p.gens.size(); ++j) {
        std::size_t off = 0;
        for (std::size_t i = 0; i < stage.ambient().size(); ++i) {
          int deg = p.degrees[j] + stage.ambient()[i];
          int len = deg < 0 ? 0 : a.dim(deg);
          if (deg >= 0) {
            Vec<K> c(p.gens[j].begin() + off, p.gens[j].begin() + off + len);
            phi.entries[i][j] = a.from_coords(deg, c);
          }
          off += len;
        }
      }
      res.maps.push_back(std::move(phi));
    }
    res.twists.push_back(f);
    if (p.gens.empty()) break;  // zero module
    // kernel of F_q -> stage, degree by degree
    GradedModule<K> next(alg, f, m.lo(), m.hi());
    std::vector<std::vector<Matrix<K>>> orbits;
    for (std::size_t j = 0; j < p.gens.size(); ++j)
      orbits.push_back(right_orbit(a, stage.ambient(), p.degrees[j], p.gens[j], m.hi() - p.degrees[j]));
    for (int d = m.lo(); d <= m.hi(); ++d) {
      Matrix<K> img(stage.ambient_dim(d), 0);
      for (std::size_t j = 0; j < p.gens.size(); ++j)
        if (d >= p.degrees[j]) img = img.hstack(orbits[j][d - p.degrees[j]]);
      std::size_t n = img.cols();
      Matrix<K> ker = kernel_matrix(img.hstack(stage.W(d)), a.one());
      Matrix<K> z = ker.block(0, 0, n, ker.cols());
      next.set(d, column_basis(z), Matrix<K>(n, 0));
    }
    stage = std::move(next);
  }
  if (top > m.hi() - 2)
    throw Error(ErrorKind::DegreeBoundTooSmall, "generators found at degree " + std::to_string(top) +
                                                    " too close to the bound " + std::to_string(m.hi()));
  return res;
}

template <class K>
std::vector<CohomologyRow> cohomology_table(const Resolution<K>& res, int from, int to) {
  const GradedAlgebra<K>& a = *res.alg;
  std::vector<CohomologyRow> out;
  std::size_t len = res.twists.size();
  auto h2dim = [&](std::size_t q, int d) -> long long {
    if (q >= len) return 0;
    long long s = 0;
    for (int m : res.twists[q]) s += h2_line(d + m);
    return s;
  };
  for (int d = from; d <= to; ++d) {
    // rank of H^2(F_q(d)) -> H^2(F_{q-1}(d)); transpose of right multiplications
    std::array<long long, 5> rk{};
    for (std::size_t q = 1; q < len; ++q) {
      const GradedMap<K>& phi = res.maps[q - 1];
      long long rows = h2dim(q, d), cols = h2dim(q - 1, d);
      if (!rows || !cols) continue;
      Matrix<K> mat(rows, cols);
      try {
        std::size_t r0 = 0;
        for (std::size_t j = 0; j < phi.source.size(); ++j) {
          int sj = -3 - d - phi.source[j];
          std::size_t nr = sj < 0 ? 0 : a.dim(sj);
          std::size_t c0 = 0;
          for (std::size_t i = 0; i < phi.target.size(); ++i) {
            int ti = -3 - d - phi.target[i];
            std::size_t nc = ti < 0 ? 0 : a.dim(ti);
            const Element<K>& e = phi.entries[i][j];
            if (nr && nc && !e.is_zero()) mat.set_block(r0, c0, a.right_mult_matrix(e, ti));
            c0 += nc;
          }
          r0 += nr;
        }
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegreeOverflow)
          throw Error(ErrorKind::DegreeBoundTooSmall, "twist " + std::to_string(d) + " needs a larger degree bound");
        throw;
      }
      rk[q] = static_cast<long long>(rank(mat));
    }
    auto e2 = [&](std::size_t q) { return h2dim(q, d) - rk[q] - (q + 1 < 5 ? rk[q + 1] : 0); };
    long long md = res.hilbert(d);
    CohomologyRow row{d, md - e2(3) + e2(2), e2(1), e2(0)};
    out.push_back(row);
  }
  return out;
}

template <class K>
VanishingReport verify_vanishing_condition(const Resolution<K>& res) {
  VanishingReport rep;
  rep.rows = cohomology_table(res, -2, -1);
  Invariants inv = res.invariants();
  rep.holds = true;
  for (const auto& r : rep.rows)
    if (r.h0 || r.h2) rep.holds = false;
  rep.h1_minus2 = rep.rows[0].h1;
  rep.h1_minus1 = rep.rows[1].h1;
  rep.predicted_minus1 = inv.c1 + inv.r - inv.chi;
  rep.predicted_minus2 = 2 * inv.c1 + inv.r - inv.chi;
  return rep;
}

#define NCPLANE_INSTANTIATE(K)                                                                              \
  template Matrix<K> free_right_gen<K>(const GradedAlgebra<K>&, const TwistedFree&, int, int);              \
  template Matrix<K> free_right_g<K>(const GradedAlgebra<K>&, const TwistedFree&, int);                     \
  template std::vector<Matrix<K>> right_orbit<K>(const GradedAlgebra<K>&, const TwistedFree&, int,          \
                                                 const Vec<K>&, int);                                       \
  template struct GradedMap<K>;                                                                             \
  template GradedMap<K> compose<K>(const GradedMap<K>&, const GradedMap<K>&);                               \
  template class GradedModule<K>;                                                                           \
  template GradedModule<K> right_ideal<K>(AlgebraPtr<K>, const std::vector<Element<K>>&);                  \
  template GradedModule<K> shift_twist<K>(const GradedModule<K>&, int);                                     \
  template GradedModule<K> g_twist<K>(const GradedModule<K>&);                                              \
  template struct Resolution<K>;                                                                            \
  template Resolution<K> free_resolution<K>(const GradedModule<K>&, int);                                   \
  template std::vector<CohomologyRow> cohomology_table<K>(const Resolution<K>&, int, int);                  \
  template VanishingReport verify_vanishing_condition<K>(const Resolution<K>&);

NCPLANE_INSTANTIATE(Fp)
NCPLANE_INSTANTIATE(Rational)

}  // namespace ncplane
