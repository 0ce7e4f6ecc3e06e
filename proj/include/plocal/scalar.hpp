#pragma once

// Exact arithmetic over Z_(p), the localization of the integers at an odd
// prime p: rationals whose denominator is coprime to p.  Everything here is
// exact; there is no precision parameter anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace plocal {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// p-adic valuation: nullopt means +infinity (the valuation of 0).
using Valuation = std::optional<long long>;

inline long long int_valuation(Int n, long long p) {
  if (n == 0) throw std::domain_error("int_valuation: zero has infinite valuation");
  long long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline Valuation valuation(const Rational& r, long long p) {
  if (r == 0) return std::nullopt;
  return int_valuation(numerator(r), p) - int_valuation(denominator(r), p);
}

inline bool is_p_integral(const Rational& r, long long p) {
  return denominator(r) % p != 0;
}

// Canonical residue of r modulo m (m a power of p), in [0, m).  Requires the
// denominator of r to be invertible mod m.
inline Int residue_mod(const Rational& r, const Int& m) {
  Int n = numerator(r) % m;
  if (n < 0) n += m;
  Int d = denominator(r) % m;
  if (d < 0) d += m;
  // extended Euclid for d^{-1} mod m
  Int t0 = 0, t1 = 1, r0 = m, r1 = d;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) throw std::domain_error("residue_mod: denominator not invertible");
  Int inv = t0 % m;
  if (inv < 0) inv += m;
  return (n * inv) % m;
}

inline long long residue_mod_p(const Rational& r, long long p) {
  return static_cast<long long>(residue_mod(r, Int(p)));
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime64(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  unsigned long long d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  auto mulmod = [](unsigned long long a, unsigned long long b, unsigned long long m) {
    return static_cast<unsigned long long>((static_cast<unsigned __int128>(a) * b) % m);
  };
  auto powmod = [&](unsigned long long a, unsigned long long e, unsigned long long m) {
    unsigned long long r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  for (unsigned long long a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    unsigned long long x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_odd_prime(long long p) { return p > 2 && is_prime64(static_cast<unsigned long long>(p)); }

inline void require_odd_prime(long long p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("prime must be an odd prime, got " + std::to_string(p));
}

// An element of Z_(p).  Numerator/denominator are kept reduced with positive
// denominator by cpp_rational; the constructor rejects values with p in the
// denominator.
class Scalar {
 public:
  Scalar(Rational value, long long p) : v_(std::move(value)), p_(p) {
    if (!is_p_integral(v_, p_)) throw std::domain_error("not p-integral: denominator divisible by p");
  }
  Scalar(const Int& value, long long p) : v_(value), p_(p) {}
  Scalar(long long value, long long p) : v_(value), p_(p) {}

  const Rational& value() const { return v_; }
  long long prime() const { return p_; }
  Int numerator() const { return boost::multiprecision::numerator(v_); }
  Int denominator() const { return boost::multiprecision::denominator(v_); }

  Valuation valuation() const { return plocal::valuation(v_, p_); }
  bool is_zero() const { return v_ == 0; }
  bool is_unit() const { return !is_zero() && *valuation() == 0; }
  long long residue() const { return residue_mod_p(v_, p_); }

  Scalar operator-() const { return Scalar(-v_, p_); }
  Scalar operator+(const Scalar& o) const { return Scalar(v_ + check(o), p_); }
  Scalar operator-(const Scalar& o) const { return Scalar(v_ - check(o), p_); }
  Scalar operator*(const Scalar& o) const { return Scalar(v_ * check(o), p_); }

  // Division is only defined by units of Z_(p): dividing by anything of
  // positive valuation would leave the ring.
  Scalar operator/(const Scalar& o) const {
    check(o);
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (*o.valuation() > 0) throw std::domain_error("division by non-unit of Z_(p)");
    return Scalar(v_ / o.v_, p_);
  }

  bool operator==(const Scalar& o) const { return p_ == o.p_ && v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  const Rational& check(const Scalar& o) const {
    if (o.p_ != p_) throw std::invalid_argument("mixed primes in Scalar arithmetic");
    return o.v_;
  }

  Rational v_;
  long long p_;
};

}  // namespace plocal
