#include "ncplane/ncalgebra/algebra.hpp"

#include <algorithm>
#include <cctype>

#include "ncplane/error.hpp"

namespace ncplane {

template <>
Fp field_one<Fp>(const FieldSpec& f) {
  if (f.rationals) throw Error(ErrorKind::InvalidInput, "expected a prime field");
  return Fp(1, f.p);
}

template <>
Rational field_one<Rational>(const FieldSpec& f) {
  if (!f.rationals) throw Error(ErrorKind::InvalidInput, "expected the rational field");
  return Rational(1);
}

template <class K>
K GradedAlgebra<K>::scalar(const Param& p) const {
  K den = scalar(p.den);
  if (den.is_zero()) throw Error(ErrorKind::InvalidInput, "parameter denominator vanishes in the field");
  return scalar(p.num) / den;
}

template <class K>
typename GradedAlgebra<K>::Ptr GradedAlgebra<K>::build(const AlgebraSpec& spec) {
  if (spec.degree_bound < 4) throw Error(ErrorKind::InvalidInput, "degree bound must be at least 4");
  std::shared_ptr<GradedAlgebra> a(new GradedAlgebra());
  a->spec_ = spec;
  a->D_ = spec.degree_bound;
  a->one_ = field_one<K>(spec.field);
  a->set_relations();
  a->construct_degrees();
  a->find_normal_element();
  return a;
}

template <class K>
void GradedAlgebra<K>::set_relations() {
  for (auto& r : rel_) r = Matrix<K>(3, 3);
  K one = one_;
  switch (spec_.family) {
    case Family::Polynomial:
      rel_[0](0, 1) = one, rel_[0](1, 0) = -one;
      rel_[1](1, 2) = one, rel_[1](2, 1) = -one;
      rel_[2](2, 0) = one, rel_[2](0, 2) = -one;
      break;
    case Family::Sklyanin: {
      K a = scalar(spec_.params[0]), b = scalar(spec_.params[1]), c = scalar(spec_.params[2]);
      K lhs = scalar(3) * a * b * c;
      K rhs = a * a * a + b * b * b + c * c * c;
      if (a.is_zero() || b.is_zero() || c.is_zero() || lhs * lhs * lhs == rhs * rhs * rhs)
        throw Error(ErrorKind::DegenerateParameters, "Sklyanin parameters violate (3abc)^3 != (a^3+b^3+c^3)^3");
      for (int i = 0; i < 3; ++i) {
        rel_[i](i, (i + 1) % 3) += a;
        rel_[i]((i + 1) % 3, i) += b;
        rel_[i]((i + 2) % 3, (i + 2) % 3) += c;
      }
      break;
    }
    case Family::HomogenizedWeyl:
      rel_[0](0, 1) = one, rel_[0](1, 0) = -one, rel_[0](2, 2) = -one;
      rel_[1](0, 2) = one, rel_[1](2, 0) = -one;
      rel_[2](1, 2) = one, rel_[2](2, 1) = -one;
      break;
    case Family::QDeform: {
      K p = scalar(spec_.params[0]), q = scalar(spec_.params[1]), r = scalar(spec_.params[2]);
      if (p.is_zero() || q.is_zero() || r.is_zero() || p * q * r == one)
        throw Error(ErrorKind::DegenerateParameters, "q-deformation parameters must be nonzero with pqr != 1");
      rel_[0](1, 0) = one, rel_[0](0, 1) = -p;  // yx - p xy
      rel_[1](2, 1) = one, rel_[1](1, 2) = -q;  // zy - q yz
      rel_[2](0, 2) = one, rel_[2](2, 0) = -r;  // xz - r zx
      break;
    }
  }
}

template <class K>
void GradedAlgebra<K>::construct_degrees() {
  dim_.assign(D_ + 1, 0);
  pred_.assign(D_ + 1, {});
  right_.assign(D_, {});
  left_.assign(D_, {});
  dim_[0] = 1;
  dim_[1] = 3;
  pred_[1] = {{0, 0}, {0, 1}, {0, 2}};
  for (int k = 0; k < 3; ++k) {
    right_[0][k] = Matrix<K>(3, 1);
    right_[0][k](k, 0) = one_;
  }
  for (int d = 2; d <= D_; ++d) {
    int n = dim_[d - 1], m = dim_[d - 2];
    Matrix<K> w(3 * m, 3 * n);
    for (int b = 0; b < m; ++b) {
      std::array<Vec<K>, 3> u;
      for (int j = 0; j < 3; ++j) u[j] = right_[d - 2][j].column(b);
      for (int rel = 0; rel < 3; ++rel) {
        int row = 3 * b + rel;
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            const K& r = rel_[rel](j, k);
            if (r.is_zero()) continue;
            for (int i = 0; i < n; ++i)
              if (!u[j][i].is_zero()) w(row, 3 * i + k) += r * u[j][i];
          }
      }
    }
    std::vector<std::size_t> piv = row_reduce(w);
    std::vector<int> pivot_row(3 * n, -1);
    for (std::size_t t = 0; t < piv.size(); ++t) pivot_row[piv[t]] = static_cast<int>(t);
    std::vector<int> pos(3 * n, -1);
    for (int c = 0; c < 3 * n; ++c)
      if (pivot_row[c] < 0) {
        pos[c] = static_cast<int>(pred_[d].size());
        pred_[d].push_back({c / 3, c % 3});
      }
    dim_[d] = static_cast<int>(pred_[d].size());
    if (dim_[d] != expected_dim(d))
      throw Error(ErrorKind::HilbertMismatch, "dim S_" + std::to_string(d) + " = " + std::to_string(dim_[d]) +
                                                  ", expected " + std::to_string(expected_dim(d)));
    for (int k = 0; k < 3; ++k) right_[d - 1][k] = Matrix<K>(dim_[d], n);
    for (int c = 0; c < 3 * n; ++c) {
      Matrix<K>& target = right_[d - 1][c % 3];
      int i = c / 3;
      if (pos[c] >= 0) {
        target(pos[c], i) = one_;
      } else {
        int t = pivot_row[c];
        for (int q = 0; q < 3 * n; ++q)
          if (pos[q] >= 0 && !w(t, q).is_zero()) target(pos[q], i) = -w(t, q);
      }
    }
  }
  for (int j = 0; j < 3; ++j) {
    left_[0][j] = Matrix<K>(3, 1);
    left_[0][j](j, 0) = one_;
  }
  for (int d = 1; d < D_; ++d)
    for (int j = 0; j < 3; ++j) {
      Matrix<K> l(dim_[d + 1], dim_[d]);
      for (int b = 0; b < dim_[d]; ++b) {
        auto [i, k] = pred_[d][b];
        l.set_column(b, right_[d][k].apply(left_[d - 1][j].column(i)));
      }
      left_[d][j] = std::move(l);
    }
}

template <class K>
void GradedAlgebra<K>::find_normal_element() {
  switch (spec_.family) {
    case Family::Polynomial:
      g_ = parse(spec_.cubic_g.empty() ? "x*y*z" : spec_.cubic_g, 3);
      if (g_.degree != 3 || g_.is_zero())
        throw Error(ErrorKind::InvalidInput, "cubic_g must be a nonzero cubic");
      break;
    case Family::HomogenizedWeyl:
      g_ = word_element({2, 2, 2});
      break;
    case Family::QDeform:
      g_ = word_element({0, 1, 2});
      break;
    case Family::Sklyanin: {
      // central candidates first: (R_k - L_k) v = 0 for all k
      Matrix<K> sys(0, dim_[3]);
      for (int k = 0; k < 3; ++k) sys = sys.vstack(right_[3][k] - left_[3][k]);
      std::vector<Vec<K>> ker = kernel_basis(sys, one_);
      if (!ker.empty()) {
        g_ = from_coords(3, ker[0]);
        break;
      }
      // v x_k = lambda_k x_{pi(k)} v over a finite field
      if constexpr (std::is_same_v<K, Fp>) {
        std::array<int, 3> perm = {0, 1, 2};
        std::uint32_t p = one_.modulus();
        do {
          std::array<std::vector<Matrix<K>>, 3> cand;
          for (int k = 0; k < 3; ++k)
            for (std::uint32_t l = 1; l < p; ++l) {
              Matrix<K> m = right_[3][k] - Fp(l, p) * left_[3][perm[k]];
              Matrix<K> kb = kernel_matrix(m, one_);
              if (kb.cols()) cand[k].push_back(kb);
            }
          for (const auto& k0 : cand[0])
            for (const auto& k1 : cand[1])
              for (const auto& k2 : cand[2]) {
                // intersection of three column spaces: solve k0 a = k1 b = k2 c
                std::size_t n0 = k0.cols(), n1 = k1.cols(), n2 = k2.cols();
                Matrix<K> big(2 * dim_[3], n0 + n1 + n2);
                big.set_block(0, 0, k0);
                big.set_block(0, n0, Fp(p - 1, p) * k1);
                big.set_block(dim_[3], 0, k0);
                big.set_block(dim_[3], n0 + n1, Fp(p - 1, p) * k2);
                for (const Vec<K>& sol : kernel_basis(big, one_)) {
                  Vec<K> a(sol.begin(), sol.begin() + n0);
                  Vec<K> v = k0.apply(a);
                  if (!is_zero_vector(v) && is_normal(from_coords(3, v))) {
                    g_ = from_coords(3, v);
                    goto found;
                  }
                }
              }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
      throw Error(ErrorKind::NormalElementNotFound, "no normal cubic found");
    found: __attribute__((unused));
      break;
    }
  }
  if (!is_normal(g_)) throw Error(ErrorKind::NormalElementNotFound, "candidate g fails S_1 g = g S_1");
  right_g_.clear();
  for (int e = 0; e + 3 <= D_; ++e) {
    right_g_.push_back(right_mult_matrix(g_, e));
    if (rank(right_g_.back()) != static_cast<std::size_t>(dim_[e]))
      throw Error(ErrorKind::DegenerateParameters, "g is a zero divisor in degree " + std::to_string(e));
  }
}

template <class K>
int GradedAlgebra<K>::dim(int d) const {
  if (d < 0) return 0;
  if (d > D_) throw Error(ErrorKind::DegreeOverflow, "degree " + std::to_string(d) + " exceeds bound " + std::to_string(D_));
  return dim_[d];
}

template <class K>
std::vector<int> GradedAlgebra<K>::word(int d, int b) const {
  std::vector<int> w(d);
  for (int t = d; t >= 1; --t) {
    auto [i, k] = pred_[t][b];
    w[t - 1] = k;
    b = i;
  }
  return w;
}

template <class K>
typename GradedAlgebra<K>::Elem GradedAlgebra<K>::zero(int d) const {
  return Elem{d, Vec<K>(dim(d))};
}

template <class K>
typename GradedAlgebra<K>::Elem GradedAlgebra<K>::unit() const {
  return Elem{0, Vec<K>{one_}};
}

template <class K>
typename GradedAlgebra<K>::Elem GradedAlgebra<K>::generator(int k) const {
  Elem e = zero(1);
  e.c[k] = one_;
  return e;
}

template <class K>
typename GradedAlgebra<K>::Elem GradedAlgebra<K>::linear(const K& cx, const K& cy, const K& cz) const {
  return Elem{1, Vec<K>{cx, cy, cz}};
}

template <class K>
typename GradedAlgebra<K>::Elem GradedAlgebra<K>::from_coords(int d, Vec<K> c) const {
  if (static_cast<int>(c.size()) != dim(d)) throw Error(ErrorKind::ShapeMismatch, "coordinate vector has wrong length");
  return Elem{d, std::move(c)};
}

template <class K>
const Matrix<K>& GradedAlgebra<K>::right_gen(int d, int k) const {
  if (d < 0 || d >= D_) throw Error(ErrorKind::DegreeOverflow, "right multiplication beyond degree bound");
  return right_[d][k];
}

template <class K>
const Matrix<K>& GradedAlgebra<K>::left_gen(int d, int k) const {
  if (d < 0 || d >= D_) throw Error(ErrorKind::DegreeOverflow, "left multiplication beyond degree bound");
  return left_[d][k];
}

template <class K>
std::vector<Matrix<K>> GradedAlgebra<K>::left_mult_tower(const Elem& a, int emax) const {
  int m = a.degree;
  if (m + emax > D_) throw Error(ErrorKind::DegreeOverflow, "product degree exceeds bound");
  std::vector<Matrix<K>> tower;
  tower.push_back(Matrix<K>::from_columns(dim(m), {a.c}));
  for (int e = 1; e <= emax; ++e) {
    std::array<Matrix<K>, 3> moved;
    for (int k = 0; k < 3; ++k) moved[k] = right_[m + e - 1][k] * tower[e - 1];
    Matrix<K> t(dim(m + e), dim(e));
    for (int b = 0; b < dim(e); ++b) {
      auto [i, k] = pred_[e][b];
      for (int r = 0; r < dim(m + e); ++r) t(r, b) = moved[k](r, i);
    }
    tower.push_back(std::move(t));
  }
  return tower;
}

template <class K>
Matrix<K> GradedAlgebra<K>::left_mult_matrix(const Elem& a, int e) const {
  if (e < 0) return Matrix<K>(dim(a.degree + e), 0);
  if (a.degree == 1) {
    Matrix<K> m(dim(e + 1), dim(e));
    for (int k = 0; k < 3; ++k)
      if (!a.c[k].is_zero()) m = m + a.c[k] * left_gen(e, k);
    return m;
  }
  return left_mult_tower(a, e)[e];
}

template <class K>
Matrix<K> GradedAlgebra<K>::right_mult_matrix(const Elem& a, int e) const {
  int m = a.degree;
  if (e < 0) return Matrix<K>(dim(e + m), 0);
  if (m + e > D_) throw Error(ErrorKind::DegreeOverflow, "product degree exceeds bound");
  // words: R_beta = R[e+t-1][k] * R_{beta'}
  std::vector<std::vector<Matrix<K>>> rw(m + 1);
  rw[0] = {Matrix<K>::identity(dim(e), one_)};
  for (int t = 1; t <= m; ++t) {
    rw[t].resize(dim(t));
    for (int b = 0; b < dim(t); ++b) {
      auto [i, k] = pred_[t][b];
      rw[t][b] = right_[e + t - 1][k] * rw[t - 1][i];
    }
  }
  Matrix<K> out(dim(e + m), dim(e));
  for (int b = 0; b < dim(m); ++b)
    if (!a.c[b].is_zero()) out = out + a.c[b] * rw[m][b];
  return out;
}

template <class K>
typename GradedAlgebra<K>::Elem GradedAlgebra<K>::multiply(const Elem& u, const Elem& v) const {
  if (u.degree + v.degree > D_) throw Error(ErrorKind::DegreeOverflow, "product degree exceeds bound");
  Matrix<K> l = left_mult_matrix(u, v.degree);
  return Elem{u.degree + v.degree, l.apply(v.c)};
}

template <class K>
typename GradedAlgebra<K>::Elem GradedAlgebra<K>::word_element(const std::vector<int>& w) const {
  Elem e = unit();
  for (int k : w) {
    e.c = right_gen(e.degree, k).apply(e.c);
    ++e.degree;
  }
  return e;
}

template <class K>
const Matrix<K>& GradedAlgebra<K>::right_g(int e) const {
  if (e < 0 || e >= static_cast<int>(right_g_.size())) throw Error(ErrorKind::DegreeOverflow, "g-multiplication beyond degree bound");
  return right_g_[e];
}

template <class K>
bool GradedAlgebra<K>::is_normal(const Elem& v) const {
  if (v.degree != 3 || v.is_zero()) return false;
  Matrix<K> lv(dim(4), 3), rv(dim(4), 3);
  for (int k = 0; k < 3; ++k) {
    lv.set_column(k, left_[3][k].apply(v.c));
    rv.set_column(k, right_[3][k].apply(v.c));
  }
  return rank(lv) == 3 && rank(rv) == 3 && rank(lv.hstack(rv)) == 3;
}

template <class K>
int GradedAlgebra<K>::quotient_B_dim(int d) const {
  if (d < 3) return dim(d);
  return dim(d) - static_cast<int>(rank(right_g(d - 3)));
}

template <class K>
typename GradedAlgebra<K>::Elem GradedAlgebra<K>::parse(const std::string& text, int degree_hint) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty element");
  std::size_t pos = 0;
  bool have = false;
  Elem total;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::InvalidInput, "cannot parse element '" + text + "': " + why);
  };
  while (pos < s.size()) {
    bool neg = false;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') neg = !neg;
      ++pos;
    }
    long long num = 1, den = 1;
    bool coef = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      num = std::stoll(s.substr(pos, end - pos));
      pos = end;
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        if (end == pos) fail("missing denominator");
        den = std::stoll(s.substr(pos, end - pos));
        pos = end;
      }
      coef = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    std::vector<int> w;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      char ch = s[pos];
      if (ch == '*') {
        ++pos;
        continue;
      }
      int k = ch == 'x' ? 0 : ch == 'y' ? 1 : ch == 'z' ? 2 : -1;
      if (k < 0) fail(std::string("unexpected '") + ch + "'");
      ++pos;
      int times = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t end = pos;
        while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        if (end == pos) fail("missing exponent");
        times = std::stoi(s.substr(pos, end - pos));
        pos = end;
      }
      for (int t = 0; t < times; ++t) w.push_back(k);
    }
    if (!coef && w.empty()) fail("empty term");
    K c = scalar(Param(neg ? -num : num, den));
    bool zero_const = w.empty() && c.is_zero();
    if (zero_const) continue;
    Elem term = c * word_element(w);
    if (!have) {
      total = term;
      have = true;
    } else {
      if (term.degree != total.degree) fail("inhomogeneous");
      total = total + term;
    }
  }
  if (!have) {
    if (degree_hint < 0) fail("zero element needs a degree");
    return zero(degree_hint);
  }
  if (degree_hint >= 0 && total.degree != degree_hint)
    fail("expected degree " + std::to_string(degree_hint));
  return total;
}

template <class K>
std::string GradedAlgebra<K>::format(const Elem& e) const {
  std::string out;
  for (int b = 0; b < static_cast<int>(e.c.size()); ++b) {
    if (e.c[b].is_zero()) continue;
    std::string c = to_string(e.c[b]);
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    std::string mono;
    std::vector<int> w = word(e.degree, b);
    for (std::size_t t = 0; t < w.size();) {
      std::size_t u = t;
      while (u < w.size() && w[u] == w[t]) ++u;
      if (!mono.empty()) mono += "*";
      mono += "xyz"[w[t]];
      if (u - t > 1) mono += "^" + std::to_string(u - t);
      t = u;
    }
    std::string term = mono.empty() ? c : (c == "1" ? mono : c + "*" + mono);
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

template class GradedAlgebra<Fp>;
template class GradedAlgebra<Rational>;

}  // namespace ncplane
