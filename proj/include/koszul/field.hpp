#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace koszul {

// Exact scalars. Two field types are supported: arbitrary-precision
// rationals (the default) and prime fields with a runtime modulus.
// Every algorithm in this library is templated on the field type K and
// only uses +, -, *, /, ==, construction from small integers and
// is_zero/to_string below.

using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline std::string to_string(const Rational& x) {
  return x.get_str();
}

inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

// Element of F_p with the modulus carried alongside the value.  A modulus
// of zero marks an integer literal (as produced by K(0), K(1) in generic
// code) that adopts the modulus of the first proper element it meets.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(long v) : v_(0), p_(0), lit_(v) {}
  Fp(long v, std::uint64_t p) : p_(p) { v_ = reduce(v, p); }

  std::uint64_t modulus() const { return p_; }
  std::uint64_t value() const {
    if (p_ == 0) throw std::logic_error("Fp literal has no modulus");
    return v_;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    return from_raw((x + y) % p, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    return from_raw((x + p - y) % p, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    return from_raw(mulmod(x, y, p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    if (y == 0) throw std::domain_error("division by zero in F_p");
    return from_raw(mulmod(x, invmod(y, p), p), p);
  }
  Fp operator-() const {
    if (p_ == 0) return Fp(-lit_);
    return from_raw(v_ == 0 ? 0 : p_ - v_, p_);
  }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ == 0 && b.p_ == 0) return a.lit_ == b.lit_;
    auto [x, y, p] = align(a, b);
    return x == y;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend bool is_zero(const Fp& x) {
    return x.p_ == 0 ? x.lit_ == 0 : x.v_ == 0;
  }
  friend std::string to_string(const Fp& x) {
    return x.p_ == 0 ? std::to_string(x.lit_) : std::to_string(x.v_);
  }

 private:
  static std::uint64_t reduce(long v, std::uint64_t p) {
    long r = v % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return static_cast<std::uint64_t>(r);
  }
  static Fp from_raw(std::uint64_t v, std::uint64_t p) {
    Fp r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  struct Aligned {
    std::uint64_t x, y, p;
  };
  static Aligned align(const Fp& a, const Fp& b) {
    std::uint64_t p = a.p_ ? a.p_ : b.p_;
    if (p == 0) throw std::logic_error("Fp arithmetic needs a modulus");
    if (a.p_ && b.p_ && a.p_ != b.p_)
      throw std::logic_error("Fp moduli disagree");
    std::uint64_t x = a.p_ ? a.v_ : reduce(a.lit_, p);
    std::uint64_t y = b.p_ ? b.v_ : reduce(b.lit_, p);
    return {x, y, p};
  }
  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                              std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
  }
  static std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // extended Euclid
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p),
                 newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::swap(t -= q * newt, newt);
      std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw std::domain_error("element not invertible in F_p");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
  }

  std::uint64_t v_;
  std::uint64_t p_;
  long lit_ = 0;
};

}  // namespace koszul
