#include "ncplane/chainpoisson/chain.hpp"

#include <sstream>

#include "ncplane/error.hpp"

namespace ncplane {

namespace {

template <class K>
Matrix<K> random_matrix(std::size_t r, std::size_t c, const K& one, std::mt19937_64& rng) {
  Matrix<K> m(r, c);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < c; ++b) m(a, b) = random_scalar(rng, one);
  return m;
}

template <class K>
K sign(int i, const K& one) {
  return i % 2 ? -one : one;
}

// sign (-1)^{i+1} for the 0-based slot t, i = t + 1
template <class K>
K odd_sign(std::size_t t, const K& one) {
  return (t + 2) % 2 ? -one : one;
}

template <class K>
void check_tuple(const ChainData<K>& c, const Tuple<K>& t, bool endo, const char* what) {
  std::size_t N = c.dims.size();
  std::size_t want = endo ? N : (N ? N - 1 : 0);
  if (t.size() != want) throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": wrong tuple length");
  for (std::size_t s = 0; s < t.size(); ++s) {
    std::size_t r = endo ? c.dims[s] : c.dims[s + 1];
    std::size_t col = c.dims[s];
    if (t[s].rows() != r || t[s].cols() != col)
      throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": entry " + std::to_string(s + 1) + " has wrong shape");
  }
}

template <class K>
void check_c1_tuple(const ChainData<K>& c, const Tuple<K>& t, const char* what) {
  std::size_t N = c.dims.size();
  if (t.size() != (N ? N - 1 : 0)) throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": wrong tuple length");
  for (std::size_t s = 0; s < t.size(); ++s)
    if (t[s].rows() != std::size_t(c.dims[s]) || t[s].cols() != std::size_t(c.dims[s + 1]))
      throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": entry " + std::to_string(s + 1) + " has wrong shape");
}

template <class K>
std::string describe(const char* identity, const Tuple<K>& input, const Tuple<K>& residual) {
  std::ostringstream os;
  os << identity << ": input (";
  for (std::size_t s = 0; s < input.size(); ++s) {
    if (s) os << "; ";
    os << "[";
    for (std::size_t i = 0; i < input[s].rows(); ++i) {
      if (i) os << " | ";
      for (std::size_t j = 0; j < input[s].cols(); ++j) os << (j ? " " : "") << to_string(input[s](i, j));
    }
    os << "]";
  }
  os << ")";
  for (std::size_t s = 0; s < residual.size(); ++s)
    if (!residual[s].is_zero()) {
      os << ", residual nonzero in slot " << s + 1;
      break;
    }
  return os.str();
}

template <class K>
Tuple<K> minus(const Tuple<K>& a, const Tuple<K>& b) {
  Tuple<K> out(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) out[s] = a[s] - b[s];
  return out;
}

template <class K>
Tuple<K> plus(const Tuple<K>& a, const Tuple<K>& b) {
  Tuple<K> out(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) out[s] = a[s] + b[s];
  return out;
}

}  // namespace

template <class K>
std::optional<int> ChainData<K>::composition_defect() const {
  for (std::size_t t = 0; t + 1 < phi.size(); ++t)
    if (!(phi[t] * phi[t + 1]).is_zero()) return static_cast<int>(t + 1);
  return std::nullopt;
}

template <class K>
void check_shapes(const ChainData<K>& c) {
  if (c.dims.empty()) throw Error(ErrorKind::InvalidInput, "chain needs at least one space");
  for (int d : c.dims)
    if (d < 0) throw Error(ErrorKind::InvalidInput, "negative dimension");
  if (c.phi.size() + 1 != c.dims.size())
    throw Error(ErrorKind::ShapeMismatch, "need exactly N-1 maps for N spaces");
  for (std::size_t t = 0; t < c.phi.size(); ++t)
    if (c.phi[t].rows() != std::size_t(c.dims[t]) || c.phi[t].cols() != std::size_t(c.dims[t + 1]))
      throw Error(ErrorKind::ShapeMismatch, "phi_" + std::to_string(t + 1) + " has wrong shape");
}

template <class K>
Tuple<K> differential(const ChainData<K>& c, const Tuple<K>& e) {
  check_tuple(c, e, true, "d");
  Tuple<K> out(c.phi.size());
  for (std::size_t t = 0; t < c.phi.size(); ++t) out[t] = e[t] * c.phi[t] - c.phi[t] * e[t + 1];
  return out;
}

template <class K>
Tuple<K> dual_differential(const ChainData<K>& c, const Tuple<K>& f) {
  check_tuple(c, f, false, "d*");
  std::size_t N = c.dims.size();
  Tuple<K> out(N);
  for (std::size_t t = 0; t < N; ++t) {
    Matrix<K> m(c.dims[t], c.dims[t]);
    if (t + 1 < N) m = m + c.phi[t] * f[t];
    if (t > 0) m = m - f[t - 1] * c.phi[t - 1];
    out[t] = std::move(m);
  }
  return out;
}

template <class K>
Tuple<K> psi0(const ChainData<K>& c, const Tuple<K>& f) {
  Tuple<K> out = dual_differential(c, f);
  const K& one = c.one;
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = odd_sign(t, one) * out[t];
  return out;
}

template <class K>
Tuple<K> psibar1(const ChainData<K>& c, const Tuple<K>& e) {
  check_tuple(c, e, true, "psibar_1");
  const K& one = c.one;
  Tuple<K> out(c.phi.size());
  for (std::size_t t = 0; t < c.phi.size(); ++t)
    out[t] = odd_sign(t, one) * (e[t] * c.phi[t] + c.phi[t] * e[t + 1]);
  return out;
}

template <class K>
Tuple<K> homotopy(const Tuple<K>& e, const K& one) {
  Tuple<K> out(e.size());
  for (std::size_t t = 0; t < e.size(); ++t) out[t] = sign(static_cast<int>(t + 1), one) * e[t];
  return out;
}

template <class K>
bool tuple_is_zero(const Tuple<K>& t) {
  for (const auto& m : t)
    if (!m.is_zero()) return false;
  return true;
}

template <class K>
ChainData<K> random_chain_data(const std::vector<int>& dims, const K& one, std::mt19937_64& rng) {
  ChainData<K> c{dims, {}, one};
  if (dims.empty()) throw Error(ErrorKind::InvalidInput, "chain needs at least one space");
  for (int d : dims)
    if (d < 0) throw Error(ErrorKind::InvalidInput, "negative dimension");
  std::size_t m = dims.size() - 1;
  c.phi.resize(m);
  // build from the right end: phi_i has rows in the left kernel of phi_{i+1}
  for (std::size_t s = m; s-- > 0;) {
    std::size_t rows = dims[s], cols = dims[s + 1];
    if (s + 1 == m) {
      c.phi[s] = random_matrix(rows, cols, one, rng);
      continue;
    }
    Matrix<K> left = kernel_matrix(c.phi[s + 1].transpose(), one);  // cols x k
    if (left.cols() == 0) {
      c.phi[s] = Matrix<K>(rows, cols);
      continue;
    }
    c.phi[s] = random_matrix(rows, left.cols(), one, rng) * left.transpose();
  }
  return c;
}

template <class K>
ChainData<K> random_unconstrained_data(const std::vector<int>& dims, const K& one, std::mt19937_64& rng) {
  ChainData<K> c{dims, {}, one};
  for (std::size_t s = 0; s + 1 < dims.size(); ++s) c.phi.push_back(random_matrix(dims[s], dims[s + 1], one, rng));
  return c;
}

template <class K>
Tuple<K> random_endo_tuple(const ChainData<K>& c, const K& one, std::mt19937_64& rng) {
  Tuple<K> e;
  for (int d : c.dims) e.push_back(random_matrix(d, d, one, rng));
  return e;
}

template <class K>
Tuple<K> random_dual_tuple(const ChainData<K>& c, const K& one, std::mt19937_64& rng) {
  Tuple<K> f;
  for (std::size_t s = 0; s + 1 < c.dims.size(); ++s) f.push_back(random_matrix(c.dims[s + 1], c.dims[s], one, rng));
  return f;
}

template <class K>
ChainIdentityReport chain_identity_report(const ChainData<K>& c, int trials, std::mt19937_64& rng) {
  check_shapes(c);
  ChainIdentityReport rep;
  rep.trials = trials;
  const K& one = c.one;
  auto note = [&](const char* what, const Tuple<K>& in, const Tuple<K>& res) {
    if (rep.witness.empty()) rep.witness = describe(what, in, res);
  };
  for (int t = 0; t < trials; ++t) {
    Tuple<K> f = random_dual_tuple(c, one, rng);
    Tuple<K> e = random_endo_tuple(c, one, rng);
    Tuple<K> p0 = psi0(c, f);
    Tuple<K> ds = dual_differential(c, f);

    Tuple<K> r1 = differential(c, p0);
    if (!tuple_is_zero(r1)) ++rep.failures_d_psi0, note("d psi_0 = 0", f, r1);
    Tuple<K> r2 = psibar1(c, ds);
    if (!tuple_is_zero(r2)) ++rep.failures_psibar_dstar, note("psibar_1 d* = 0", f, r2);
    Tuple<K> hds = homotopy(ds, one);
    Tuple<K> r3 = plus(p0, hds);
    if (!tuple_is_zero(r3)) ++rep.failures_psi0_homotopy, note("psi_0 = -h d*", f, r3);
    if (tuple_is_zero(minus(p0, hds))) ++rep.psi0_equals_h_dstar;
    Tuple<K> r4 = plus(psibar1(c, e), differential(c, homotopy(e, one)));
    if (!tuple_is_zero(r4)) ++rep.failures_psibar_homotopy, note("-psibar_1 = d h", e, r4);
  }
  return rep;
}

template <class K>
ChainIdentityReport verify_chain_identities(const ChainData<K>& c, int trials, std::mt19937_64& rng) {
  auto rep = chain_identity_report(c, trials, rng);
  if (!rep.holds()) throw Error(ErrorKind::IdentityViolated, rep.witness);
  return rep;
}

template <class K>
Tuple<K> moment_term(const ChainData<K>& alpha, const Tuple<K>& beta, bool plus_variant) {
  check_shapes(alpha);
  check_tuple(alpha, beta, false, "beta");
  std::size_t N = alpha.dims.size();
  Tuple<K> out(N);
  const K& one = alpha.one;
  for (std::size_t t = 0; t < N; ++t) {
    Matrix<K> m(alpha.dims[t], alpha.dims[t]);
    if (t + 1 < N) m = m + alpha.phi[t] * beta[t];
    if (t > 0) m = plus_variant ? m + beta[t - 1] * alpha.phi[t - 1] : m - beta[t - 1] * alpha.phi[t - 1];
    out[t] = odd_sign(t, one) * m;
  }
  return out;
}

template <class K>
MomentReport moment_identity_report(const ChainData<K>& alpha, int trials, std::mt19937_64& rng) {
  check_shapes(alpha);
  MomentReport rep;
  rep.trials = trials;
  const K& one = alpha.one;
  for (int t = 0; t < trials; ++t) {
    Tuple<K> beta = random_dual_tuple(alpha, one, rng);
    Tuple<K> r = differential(alpha, moment_term(alpha, beta));
    if (!tuple_is_zero(r)) {
      ++rep.failures;
      if (rep.witness.empty()) rep.witness = describe("d_alpha(t d*_alpha beta) = 0", beta, r);
    }
    if (!tuple_is_zero(differential(alpha, moment_term(alpha, beta, true)))) ++rep.plus_variant_failures;
  }
  return rep;
}

template <class K>
MomentReport verify_moment_identity(const ChainData<K>& alpha, int trials, std::mt19937_64& rng) {
  auto rep = moment_identity_report(alpha, trials, rng);
  if (!rep.holds()) throw Error(ErrorKind::IdentityViolated, rep.witness);
  return rep;
}

#define NCPLANE_INSTANTIATE_CHAIN(K)                                                                     \
  template struct ChainData<K>;                                                                          \
  template void check_shapes<K>(const ChainData<K>&);                                                    \
  template Tuple<K> differential<K>(const ChainData<K>&, const Tuple<K>&);                               \
  template Tuple<K> dual_differential<K>(const ChainData<K>&, const Tuple<K>&);                          \
  template Tuple<K> psi0<K>(const ChainData<K>&, const Tuple<K>&);                                       \
  template Tuple<K> psibar1<K>(const ChainData<K>&, const Tuple<K>&);                                    \
  template Tuple<K> homotopy<K>(const Tuple<K>&, const K&);                                              \
  template bool tuple_is_zero<K>(const Tuple<K>&);                                                       \
  template ChainData<K> random_chain_data<K>(const std::vector<int>&, const K&, std::mt19937_64&);       \
  template ChainData<K> random_unconstrained_data<K>(const std::vector<int>&, const K&, std::mt19937_64&); \
  template Tuple<K> random_endo_tuple<K>(const ChainData<K>&, const K&, std::mt19937_64&);               \
  template Tuple<K> random_dual_tuple<K>(const ChainData<K>&, const K&, std::mt19937_64&);               \
  template ChainIdentityReport chain_identity_report<K>(const ChainData<K>&, int, std::mt19937_64&);     \
  template ChainIdentityReport verify_chain_identities<K>(const ChainData<K>&, int, std::mt19937_64&);   \
  template Tuple<K> moment_term<K>(const ChainData<K>&, const Tuple<K>&, bool);                          \
  template MomentReport moment_identity_report<K>(const ChainData<K>&, int, std::mt19937_64&);           \
  template MomentReport verify_moment_identity<K>(const ChainData<K>&, int, std::mt19937_64&);

NCPLANE_INSTANTIATE_CHAIN(Fp)
NCPLANE_INSTANTIATE_CHAIN(Rational)

}  // namespace ncplane
