#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxshadow/system.hpp"

namespace coxshadow {

using BigInt = boost::multiprecision::cpp_int;
using Coeff = __int128;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An element of Q(c), c = 2cos(pi/N), stored as num(c)/den with
/// deg num < [Q(c):Q]. Canonical: den > 0, gcd(num, den) = 1, so equality is
/// syntactic. The owning Field performs every operation that needs reduction.
struct FieldElem {
  std::vector<Coeff> num;
  Coeff den = 1;

  bool is_zero() const {
    for (const auto& a : num)
      if (a != 0) return false;
    return true;
  }
  bool is_integral() const { return den == 1; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.den == b.den && a.num == b.num;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  std::size_t hash() const;
};

/// Integer polynomial in c, coefficients lowest degree first.
using IntPoly = std::vector<BigInt>;

/// Minimal polynomial over Q of 2cos(2*pi/m) (monic, integer coefficients).
/// Built from the Chebyshev-type relation x^k + x^-k = P_k(x + 1/x).
IntPoly two_cos_minimal_polynomial(int m);

/// The real cyclotomic field Q(2cos(pi/N)).
class Field {
 public:
  explicit Field(int conductor);

  /// N = lcm of the finite off-diagonal bonds (2 when there are none).
  static int conductor_for(const CoxeterSystem& sys);

  int conductor() const { return conductor_; }
  int degree() const { return degree_; }
  const IntPoly& minimal_polynomial() const { return minpoly_; }
  /// Numerical value of the primitive element c.
  double generator_value() const { return c_value_; }

  FieldElem zero() const;
  FieldElem one() const { return from_int(1); }
  FieldElem from_int(long long v) const;
  FieldElem from_rational(long long p, long long q) const;
  /// The primitive element c itself.
  FieldElem generator() const;
  /// 2cos(pi/m) for m dividing N.
  FieldElem two_cos_pi_over(int m) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem scale(const FieldElem& a, long long k) const;
  /// a + b*k, the workhorse of matrix updates.
  FieldElem add_mul(const FieldElem& a, const FieldElem& b, const FieldElem& k) const;

  /// Exact sign (-1, 0, 1). Nonzero elements are certified by interval
  /// evaluation, first in long double and then in MPFR at growing precision.
  int sign(const FieldElem& a) const;
  int compare(const FieldElem& a, const FieldElem& b) const { return sign(sub(a, b)); }

  double to_double(const FieldElem& a) const;
  /// Exact text form, a polynomial in c, e.g. "c", "1/2", "(c^2 - 3)/2".
  std::string to_string(const FieldElem& a) const;
  /// "c^2 - 3" for the minimal polynomial.
  std::string minimal_polynomial_string() const;

 private:
  FieldElem normalized(std::vector<Coeff> num, Coeff den) const;
  FieldElem reduce_product(std::vector<Coeff> prod, Coeff den) const;
  int sign_mpfr(const FieldElem& a) const;

  int conductor_;
  int degree_;
  IntPoly minpoly_;
  std::vector<Coeff> minpoly_low_;  // minpoly coefficients below the leading 1
  double c_value_;
  std::vector<long double> c_powers_;
};

std::string to_string(Coeff v);

}  // namespace coxshadow
