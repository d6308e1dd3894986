#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace ncplane {

bool is_prime(std::uint64_t n);

// Element of a prime field.  A default-constructed Fp is a zero that has not
// been bound to a modulus yet; arithmetic with it adopts the other operand's.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t value, std::uint32_t modulus)
      : v_(static_cast<std::uint32_t>(value % modulus)), p_(modulus) {}

  static Fp from_int(long long value, std::uint32_t modulus);

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  Fp inverse() const;
  // Representative in (-p/2, p/2].
  long long symmetric() const;

  friend Fp operator+(Fp a, Fp b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    std::uint64_t s = std::uint64_t(a.v_) + b.v_;
    if (p && s >= p) s -= p;
    Fp r;
    r.v_ = static_cast<std::uint32_t>(s);
    r.p_ = p;
    return r;
  }
  friend Fp operator-(Fp a, Fp b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    Fp r;
    r.p_ = p;
    r.v_ = a.v_ >= b.v_ ? a.v_ - b.v_ : static_cast<std::uint32_t>(std::uint64_t(a.v_) + p - b.v_);
    return r;
  }
  friend Fp operator*(Fp a, Fp b) {
    std::uint32_t p = a.p_ ? a.p_ : b.p_;
    Fp r;
    r.p_ = p;
    r.v_ = p ? static_cast<std::uint32_t>(std::uint64_t(a.v_) * b.v_ % p) : 0;
    return r;
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const {
    Fp r;
    r.p_ = p_;
    r.v_ = v_ ? p_ - v_ : 0;
    return r;
  }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

 private:
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "7", "-3/4".
  static Rational parse(const std::string& text);

  bool is_zero() const { return sgn(q_) == 0; }
  Rational inverse() const;
  bool is_integer() const { return q_.get_den() == 1; }
  long numerator_long() const { return q_.get_num().get_si(); }
  std::string to_string() const { return q_.get_str(); }
  const mpq_class& get() const { return q_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Raw{}, a.q_ + b.q_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Raw{}, a.q_ - b.q_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Raw{}, a.q_ * b.q_); }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }
  Rational operator-() const { return Rational(Raw{}, -q_); }
  Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
  Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
  Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }

 private:
  struct Raw {};
  Rational(Raw, mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

// GF(p^e) with elements encoded as base-p digit strings of the residue
// polynomial; multiplication goes through log/exp tables.
class GaloisField {
 public:
  GaloisField(std::uint32_t p, unsigned degree);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint32_t order() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t from_int(long long v) const;

 private:
  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

class Gf {
 public:
  Gf() = default;
  Gf(std::uint32_t index, const GaloisField* field) : v_(index), f_(field) {}

  std::uint32_t index() const { return v_; }
  const GaloisField* field() const { return f_; }
  bool is_zero() const { return v_ == 0; }
  Gf inverse() const { return Gf(f_->inv(v_), f_); }

  friend Gf operator+(Gf a, Gf b) {
    const GaloisField* f = a.f_ ? a.f_ : b.f_;
    return f ? Gf(f->add(a.v_, b.v_), f) : Gf();
  }
  friend Gf operator-(Gf a, Gf b) { return a + (-b); }
  friend Gf operator*(Gf a, Gf b) {
    const GaloisField* f = a.f_ ? a.f_ : b.f_;
    return f ? Gf(f->mul(a.v_, b.v_), f) : Gf();
  }
  friend Gf operator/(Gf a, Gf b) { return a * b.inverse(); }
  Gf operator-() const { return f_ ? Gf(f_->neg(v_), f_) : Gf(); }
  Gf& operator+=(Gf b) { return *this = *this + b; }
  Gf& operator-=(Gf b) { return *this = *this - b; }
  Gf& operator*=(Gf b) { return *this = *this * b; }
  friend bool operator==(Gf a, Gf b) { return a.v_ == b.v_; }
  friend bool operator!=(Gf a, Gf b) { return a.v_ != b.v_; }

 private:
  std::uint32_t v_ = 0;
  const GaloisField* f_ = nullptr;
};

// Field-generic helpers.  A scalar "one" doubles as the field token.
inline Fp scalar_from_int(const Fp& one, long long v) { return Fp::from_int(v, one.modulus()); }
inline Rational scalar_from_int(const Rational&, long long v) { return Rational(static_cast<long>(v)); }
inline Gf scalar_from_int(const Gf& one, long long v) { return Gf(one.field()->from_int(v), one.field()); }

std::string to_string(const Fp& a);
std::string to_string(const Rational& a);
std::string to_string(const Gf& a);

// Uniform in [lo, hi]; avoids distribution objects so streams are portable.
inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(rng() % span);
}

inline Fp random_scalar(std::mt19937_64& rng, const Fp& one) {
  return Fp(rng() % one.modulus(), one.modulus());
}
inline Rational random_scalar(std::mt19937_64& rng, const Rational&) {
  return Rational(static_cast<long>(uniform_int(rng, -6, 6)));
}
inline Gf random_scalar(std::mt19937_64& rng, const Gf& one) {
  return Gf(static_cast<std::uint32_t>(rng() % one.field()->order()), one.field());
}

}  // namespace ncplane
