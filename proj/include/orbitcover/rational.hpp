// rational.hpp -- exact rational numbers over checked 64-bit integers.
//
// All root coordinates and diagram labels in this library are integers; exact
// fractions are needed only inside linear solves (express_in_base, k_reduce on
// non-root vectors).  The values there are tiny, so instead of pulling in a
// bignum dependency we use long long with overflow checks that abort loudly:
// a silent wrap could corrupt a count, an abort cannot.

#pragma once

#include <cstdlib>
#include <numeric>

#include "orbitcover/errors.hpp"

namespace orbitcover {

inline long long checked_add(long long a, long long b) {
  long long r;
  check_internal(!__builtin_add_overflow(a, b, &r), "integer overflow in +");
  return r;
}

inline long long checked_sub(long long a, long long b) {
  long long r;
  check_internal(!__builtin_sub_overflow(a, b, &r), "integer overflow in -");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  check_internal(!__builtin_mul_overflow(a, b, &r), "integer overflow in *");
  return r;
}

// Reduced fraction num/den with den > 0.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    check_internal(den != 0, "rational with zero denominator");
    if (den < 0) {
      num = checked_sub(0, num);
      den = checked_sub(0, den);
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(checked_sub(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    check_internal(b.num != 0, "rational division by zero");
    return Rat(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
  }
  Rat operator-() const { return Rat(checked_sub(0, num), den); }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
};

}  // namespace orbitcover
