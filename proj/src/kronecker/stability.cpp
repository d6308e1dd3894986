#include "ncplane/kronecker/stability.hpp"

#include <limits>

#include "ncplane/error.hpp"
#include "ncplane/kronecker/numerics.hpp"

namespace ncplane {

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Semistable: return "semistable";
    case Stability::Unstable: return "unstable";
  }
  return "?";
}

namespace {

constexpr long long kSat = std::numeric_limits<long long>::max() / 4;

long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

// Gaussian binomial [n choose k]_q
long long gaussian_binomial(long long q, int n, int k) {
  std::vector<std::vector<long long>> t(n + 1, std::vector<long long>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    t[i][0] = 1;
    for (int j = 1; j <= i; ++j) {
      long long qj = 1;
      for (int e = 0; e < j; ++e) qj = sat_mul(qj, q);
      // [i, j] = [i-1, j-1] + q^j [i-1, j]
      long long v = t[i - 1][j - 1] + sat_mul(qj, t[i - 1][j]);
      t[i][j] = std::min(v, kSat);
    }
  }
  return t[n][k];
}

int sgn(long long v) { return (v > 0) - (v < 0); }

Matrix<Gf> lift(const Matrix<Fp>& m, const GaloisField* f) {
  Matrix<Gf> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Gf(f->from_int(m(i, j).value()), f);
  return out;
}

Matrix<Gf> hstack(const Matrix<Gf>& a, const Matrix<Gf>& b) {
  Matrix<Gf> out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

// Calls f(rows) for every k-dimensional subspace of F_q^n, as k x n RREF rows.
template <class F>
bool for_each_rref(const GaloisField* field, int n, int k, F&& f) {
  std::uint32_t q = field->order();
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // free positions: row i, column j > piv[i], j not a pivot
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j) {
        bool is_piv = false;
        for (int t = 0; t < k; ++t) is_piv |= piv[t] == j;
        if (!is_piv) free.push_back({i, j});
      }
    std::vector<std::uint32_t> digits(free.size(), 0);
    while (true) {
      std::vector<std::vector<std::uint32_t>> rows(k, std::vector<std::uint32_t>(n, 0));
      for (int i = 0; i < k; ++i) rows[i][piv[i]] = 1;
      for (std::size_t t = 0; t < free.size(); ++t) rows[free[t].first][free[t].second] = digits[t];
      if (!f(rows)) return false;
      std::size_t t = 0;
      while (t < digits.size() && ++digits[t] == q) digits[t++] = 0;
      if (t == digits.size()) break;
    }
    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return true;
}

}  // namespace

long long proper_subspace_count(long long q, int n) {
  long long s = 0;
  for (int k = 1; k < n; ++k) s = std::min(kSat, s + gaussian_binomial(q, n, k));
  return s;
}

StabilityReport check_semistable(const KroneckerComplex<Fp>& kc, const StabilityOptions& opt) {
  StabilityReport rep;
  rep.ext_degrees = opt.ext_degrees;
  const std::uint32_t p = kc.alg->one().modulus();
  const int n = kc.n;
  long long total = 0;
  for (unsigned e : opt.ext_degrees) {
    if (e < 1) throw Error(ErrorKind::InvalidInput, "extension degree must be positive");
    long long q = 1;
    for (unsigned t = 0; t < e; ++t) q = sat_mul(q, p);
    total = std::min(kSat, total + proper_subspace_count(q, n));
  }
  if (total > opt.budget)
    throw Error(ErrorKind::BudgetExceeded, "subspace enumeration needs " + std::to_string(total) +
                                               " subspaces, budget is " + std::to_string(opt.budget));

  Invariants inv = kc.invariants();
  const long long r = inv.r, c1 = inv.c1, chi = inv.chi;
  rep.m = opt.m_override ? *opt.m_override : effective_m(kc.a, kc.n, kc.c);
  // K and pi as in the KL-pair, without requiring A to be injective on sections
  Matrix<Fp> kmat(3 * n, kc.a), pimat(kc.c, 3 * n);
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < 3; ++x) {
      for (int j = 0; j < kc.a; ++j) kmat(3 * i + x, j) = kc.A[x](i, j);
      for (int t = 0; t < kc.c; ++t) pimat(t, 3 * i + x) = kc.B[x](t, i);
    }
  bool tie = false;
  std::optional<SubspaceData> tie_witness;
  GitWeights w = git_weights(r, c1, chi, rep.m);
  MonadShape sh = monad_shape(r, c1, chi);

  // false when the enumeration should stop
  auto judge = [&](SubspaceData s, const std::vector<std::vector<std::uint32_t>>& rows) {
    s.r1 = s.n1 - s.dim_k - s.dim_l;
    s.c1 = s.dim_k - s.dim_l;
    s.chi1 = s.n1 - 3 * s.dim_l;
    s.x = r * s.c1 - s.r1 * c1;
    s.y = r * s.chi1 - s.r1 * chi;
    int lex = s.x != 0 ? sgn(s.x) : sgn(s.y);
    long long z = w.k * (w.n * s.dim_k - s.n1 * sh.d_minus1) - w.l * (w.n * s.dim_l - s.n1 * sh.d1);
    if (sgn(z) != lex * sgn(w.n) && w.n != 0) {
      rep.git_agrees = false;
      ++rep.git_disagreements;
    }
    if (lex > 0) {
      if (rep.verdict != Stability::Unstable) {
        s.basis = rows;
        rep.verdict = Stability::Unstable;
        rep.witness = s;
      }
      return !opt.stop_early;
    }
    if (lex == 0 && !tie) {
      tie = true;
      s.basis = rows;
      tie_witness = s;
    }
    return true;
  };

  // H' = 0 and H' = H still cut out proper subcomplexes when the columns of A
  // are dependent (kernel in degree -1) or pi is not onto.
  const long long rank_k0 = static_cast<long long>(rank(kmat)), rank_pi0 = static_cast<long long>(rank(pimat));
  bool go_on = true;
  if (rank_k0 < kc.a) {
    SubspaceData s;
    s.dim_k = kc.a - rank_k0;
    go_on = judge(s, {});
  }
  if (go_on && rank_pi0 < kc.c && n > 0) {
    SubspaceData s;
    s.n1 = n;
    s.dim_k = kc.a;
    s.dim_l = rank_pi0;
    std::vector<std::vector<std::uint32_t>> all(n, std::vector<std::uint32_t>(n, 0));
    for (int i = 0; i < n; ++i) all[i][i] = 1;
    go_on = judge(s, all);
  }

  for (unsigned e : opt.ext_degrees) {
    if (!go_on) break;
    GaloisField field(p, e);
    rep.field_orders.push_back(field.order());
    Matrix<Gf> K = lift(kmat, &field), Pi = lift(pimat, &field);
    for (int k = 1; k < n && go_on; ++k)
      go_on = for_each_rref(&field, n, k, [&](const std::vector<std::vector<std::uint32_t>>& rows) {
        ++rep.subspaces_checked;
        // H' (x) S_1: column (t, x_j) has entries h_{t,i} at 3i + j
        Matrix<Gf> hs(3 * n, 3 * k);
        for (int t = 0; t < k; ++t)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < 3; ++j) hs(3 * i + j, 3 * t + j) = Gf(rows[t][i], &field);
        SubspaceData s;
        s.ext_degree = e;
        s.n1 = k;
        // preimage of H' (x) S_1 under A, kernel included
        s.dim_k = kc.a ? kc.a + 3 * k - static_cast<long long>(rank(hstack(K, hs))) : 0;
        s.dim_l = kc.c ? static_cast<long long>(rank(Pi * hs)) : 0;
        return judge(s, rows);
      });
  }
  if (rep.verdict != Stability::Unstable && tie) {
    rep.verdict = Stability::Semistable;
    rep.witness = tie_witness;
  }
  rep.passes = opt.mode == StabilityMode::Strict ? rep.verdict == Stability::Stable
                                                 : rep.verdict != Stability::Unstable;
  return rep;
}

}  // namespace ncplane
