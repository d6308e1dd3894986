#include "ncplane/exactmath/scalar.hpp"

#include "ncplane/error.hpp"

namespace ncplane {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::HilbertMismatch: return "HilbertMismatch";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NormalElementNotFound: return "NormalElementNotFound";
    case ErrorKind::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotAMonad: return "NotAMonad";
    case ErrorKind::NotInNLocus: return "NotInNLocus";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotOnPointScheme: return "NotOnPointScheme";
    case ErrorKind::PointsNotDistinct: return "PointsNotDistinct";
    case ErrorKind::GNotInjective: return "GNotInjective";
    case ErrorKind::IdenticallyZeroDeterminant: return "IdenticallyZeroDeterminant";
    case ErrorKind::IdentityViolated: return "IdentityViolated";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Fp Fp::from_int(long long value, std::uint32_t modulus) {
  long long m = static_cast<long long>(modulus);
  long long r = value % m;
  if (r < 0) r += m;
  return Fp(static_cast<std::uint64_t>(r), modulus);
}

Fp Fp::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero in prime field");
  // extended Euclid
  long long a = v_, m = p_, x0 = 1, x1 = 0;
  while (m) {
    long long q = a / m;
    long long t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return from_int(x0, p_);
}

long long Fp::symmetric() const {
  long long v = v_;
  return v > static_cast<long long>(p_ / 2) ? v - static_cast<long long>(p_) : v;
}

Rational::Rational(long n, long d) {
  if (d == 0) throw std::domain_error("zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw Error(ErrorKind::InvalidInput, "cannot parse rational '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
  q.canonicalize();
  return Rational(q);
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational");
  return Rational(Raw{}, mpq_class(1) / q_);
}

GaloisField::GaloisField(std::uint32_t p, unsigned degree) : p_(p), e_(degree) {
  if (!is_prime(p) || degree == 0) throw Error(ErrorKind::InvalidInput, "bad Galois field parameters");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < degree; ++i) {
    q *= p;
    if (q > (1u << 22)) throw Error(ErrorKind::BudgetExceeded, "extension field too large for tables");
  }
  q_ = static_cast<std::uint32_t>(q);
  exp_.assign(q_, 0);
  log_.assign(q_, 0);
  if (e_ == 1) {
    // find a primitive root
    for (std::uint32_t g = 1; g < p_; ++g) {
      std::uint64_t x = 1;
      std::uint32_t ord = 0;
      do {
        x = x * g % p_;
        ++ord;
      } while (x != 1);
      if (ord == p_ - 1 || p_ == 2) {
        x = 1;
        for (std::uint32_t i = 0; i + 1 < q_; ++i) {
          exp_[i] = static_cast<std::uint32_t>(x);
          log_[x] = i;
          x = x * g % p_;
        }
        return;
      }
    }
  }
  // Search monic f of degree e whose root x generates the multiplicative group.
  std::vector<std::uint32_t> coeff(e_);
  std::uint64_t combos = q_;
  for (std::uint64_t code = 0; code < combos; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < e_; ++i) {
      coeff[i] = static_cast<std::uint32_t>(c % p_);
      c /= p_;
    }
    if (coeff[0] == 0) continue;
    // multiply-by-x on digit vectors modulo f = x^e + sum coeff_i x^i
    std::vector<std::uint32_t> cur(e_, 0), nxt(e_);
    cur[0] = 1;
    auto encode = [&](const std::vector<std::uint32_t>& v) {
      std::uint32_t r = 0;
      for (unsigned i = e_; i-- > 0;) r = r * p_ + v[i];
      return r;
    };
    std::vector<char> seen(q_, 0);
    bool ok = true;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
      std::uint32_t idx = encode(cur);
      if (seen[idx] || idx == 0) {
        ok = false;
        break;
      }
      seen[idx] = 1;
      exp_[i] = idx;
      log_[idx] = i;
      std::uint32_t top = cur[e_ - 1];
      for (unsigned k = e_; k-- > 1;) nxt[k] = cur[k - 1];
      nxt[0] = 0;
      for (unsigned k = 0; k < e_; ++k)
        nxt[k] = static_cast<std::uint32_t>((nxt[k] + std::uint64_t(p_ - coeff[k]) * top) % p_);
      cur = nxt;
    }
    if (ok && encode(cur) == 1) return;
  }
  throw Error(ErrorKind::InvalidInput, "no primitive polynomial found");
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t r = 0, place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * place;
    place *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint32_t GaloisField::neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  std::uint32_t r = 0, place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint32_t d = a % p_;
    r += (d ? p_ - d : 0) * place;
    place *= p_;
    a /= p_;
  }
  return r;
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t s = log_[a] + log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}

std::uint32_t GaloisField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero in Galois field");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

std::uint32_t GaloisField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::string to_string(const Fp& a) { return std::to_string(a.symmetric()); }
std::string to_string(const Rational& a) { return a.to_string(); }
std::string to_string(const Gf& a) { return "g" + std::to_string(a.index()); }

}  // namespace ncplane
