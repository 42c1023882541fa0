#include "coxshadow/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include <mpfr.h>

namespace coxshadow {

namespace {

Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("field coefficient overflow");
  return r;
}

Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("field coefficient overflow");
  return r;
}

Coeff abs128(Coeff a) { return a < 0 ? -a : a; }

Coeff gcd128(Coeff a, Coeff b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Coeff t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Coeff to_coeff(const BigInt& v) {
  static const BigInt lim = (BigInt(1) << 126);
  if (v >= lim || v <= -lim) throw OverflowError("minimal polynomial coefficient too large");
  bool negative = v < 0;
  BigInt a = negative ? BigInt(-v) : v;
  Coeff out = 0;
  // Two 63-bit limbs are enough below 2^126.
  BigInt lo = a & ((BigInt(1) << 63) - 1);
  BigInt hi = a >> 63;
  out = (static_cast<Coeff>(static_cast<std::uint64_t>(hi)) << 63) +
        static_cast<Coeff>(static_cast<std::uint64_t>(lo));
  return negative ? -out : out;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

IntPoly poly_sub(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return a;
}

// Exact division by a monic polynomial; throws if the remainder is nonzero.
IntPoly poly_div_exact(IntPoly a, const IntPoly& m) {
  std::size_t dm = m.size() - 1;
  if (a.size() - 1 < dm) throw std::logic_error("polynomial division: degree too small");
  IntPoly q(a.size() - dm, 0);
  for (std::size_t k = a.size(); k-- > dm;) {
    BigInt t = a[k];
    q[k - dm] = t;
    for (std::size_t i = 0; i <= dm; ++i) a[k - dm + i] -= t * m[i];
  }
  for (std::size_t i = 0; i < dm; ++i)
    if (a[i] != 0) throw std::logic_error("polynomial division left a remainder");
  return q;
}

// Monic Q with Q*Q = f, f monic of even degree.
IntPoly poly_sqrt_exact(const IntPoly& f) {
  std::size_t d2 = f.size() - 1;
  if (d2 % 2 != 0) throw std::logic_error("odd degree in polynomial square root");
  std::size_t d = d2 / 2;
  IntPoly q(d + 1, 0);
  q[d] = 1;
  for (std::size_t i = d; i-- > 0;) {
    BigInt acc = f[d + i];
    for (std::size_t j = i + 1; j <= d; ++j) {
      std::size_t k = d + i - j;
      if (k > i && k <= d) acc -= q[j] * q[k];
    }
    if (acc % 2 != 0) throw std::logic_error("polynomial is not a square");
    q[i] = acc / 2;
  }
  if (poly_mul(q, q) != f) throw std::logic_error("polynomial is not a square");
  return q;
}

// P_k with P_k(x + 1/x) = x^k + x^-k.
IntPoly chebyshev_p(int k) {
  IntPoly p0{2}, p1{0, 1};
  if (k == 0) return p0;
  for (int i = 1; i < k; ++i) {
    IntPoly next = poly_sub(poly_mul({0, 1}, p1), p0);
    p0 = std::move(p1);
    p1 = std::move(next);
  }
  return p1;
}

}  // namespace

IntPoly two_cos_minimal_polynomial(int m) {
  static std::mutex mu;
  static std::map<int, IntPoly> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(m); it != memo.end()) return it->second;
  }
  // H_m has the roots 2cos(2 pi k/m), 0 <= k <= m/2, each once; it is the
  // product of the minimal polynomials over the divisors of m, and
  // H_m^2 = (P_m - 2)(x - 2)(x + 2)^[m even].
  IntPoly f = poly_sub(chebyshev_p(m), IntPoly{2});
  f = poly_mul(f, IntPoly{-2, 1});
  if (m % 2 == 0) f = poly_mul(f, IntPoly{2, 1});
  IntPoly h = poly_sqrt_exact(f);
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) h = poly_div_exact(h, two_cos_minimal_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(m, h);
  return h;
}

std::size_t FieldElem::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&](Coeff v) {
    auto u = static_cast<unsigned __int128>(v);
    h ^= static_cast<std::uint64_t>(u);
    h *= 1099511628211ull;
    h ^= static_cast<std::uint64_t>(u >> 64);
    h *= 1099511628211ull;
  };
  for (const auto& a : num) mix(a);
  mix(den);
  return h;
}

std::string to_string(Coeff v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  auto u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

int Field::conductor_for(const CoxeterSystem& sys) {
  int n = 2;
  bool any = false;
  for (int i = 0; i < sys.rank(); ++i) {
    for (int j = i + 1; j < sys.rank(); ++j) {
      int m = sys.bond(i, j);
      if (m == kInfinity) continue;
      n = any ? std::lcm(n, m) : m;
      any = true;
    }
  }
  return any ? n : 2;
}

Field::Field(int conductor) : conductor_(conductor) {
  if (conductor < 2) throw std::invalid_argument("field conductor must be >= 2");
  minpoly_ = two_cos_minimal_polynomial(2 * conductor_);
  degree_ = static_cast<int>(minpoly_.size()) - 1;
  for (int i = 0; i < degree_; ++i) minpoly_low_.push_back(to_coeff(minpoly_[i]));
  long double c = 2.0L * std::cos(std::acos(-1.0L) / conductor_);
  c_value_ = static_cast<double>(c);
  long double p = 1.0L;
  for (int i = 0; i < degree_; ++i) {
    c_powers_.push_back(p);
    p *= c;
  }
}

FieldElem Field::zero() const { return FieldElem{std::vector<Coeff>(degree_, 0), 1}; }

FieldElem Field::from_int(long long v) const {
  FieldElem e = zero();
  e.num[0] = v;
  return e;
}

FieldElem Field::from_rational(long long p, long long q) const {
  if (q == 0) throw std::invalid_argument("zero denominator");
  std::vector<Coeff> num(degree_, 0);
  num[0] = p;
  return normalized(std::move(num), q);
}

FieldElem Field::generator() const {
  std::vector<Coeff> num(degree_ + 1, 0);
  num[1] = 1;
  return reduce_product(std::move(num), 1);
}

FieldElem Field::two_cos_pi_over(int m) const {
  if (m < 1 || conductor_ % m != 0) {
    throw std::invalid_argument("2cos(pi/" + std::to_string(m) + ") is not in this field");
  }
  // 2cos(pi/m) = P_{N/m}(c).
  IntPoly p = chebyshev_p(conductor_ / m);
  std::vector<Coeff> num;
  for (const auto& v : p) num.push_back(to_coeff(v));
  return reduce_product(std::move(num), 1);
}

FieldElem Field::normalized(std::vector<Coeff> num, Coeff den) const {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    den = -den;
    for (auto& a : num) a = -a;
  }
  if (den != 1) {
    Coeff g = den;
    for (const auto& a : num) {
      if (g == 1) break;
      g = gcd128(g, a);
    }
    if (g > 1) {
      den /= g;
      for (auto& a : num) a /= g;
    }
  }
  bool zero = true;
  for (const auto& a : num) zero = zero && a == 0;
  if (zero) den = 1;
  return FieldElem{std::move(num), den};
}

FieldElem Field::reduce_product(std::vector<Coeff> prod, Coeff den) const {
  // c^d = -sum_{i<d} p_i c^i, applied from the top down.
  for (int k = static_cast<int>(prod.size()) - 1; k >= degree_; --k) {
    Coeff t = prod[k];
    if (t == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < degree_; ++i) {
      if (minpoly_low_[i] == 0) continue;
      prod[k - degree_ + i] = checked_add(prod[k - degree_ + i], -checked_mul(t, minpoly_low_[i]));
    }
  }
  prod.resize(degree_, 0);
  return normalized(std::move(prod), den);
}

FieldElem Field::add(const FieldElem& a, const FieldElem& b) const {
  std::vector<Coeff> num(degree_);
  if (a.den == b.den) {
    for (int i = 0; i < degree_; ++i) num[i] = checked_add(a.num[i], b.num[i]);
    if (a.den == 1) return FieldElem{std::move(num), 1};
    return normalized(std::move(num), a.den);
  }
  for (int i = 0; i < degree_; ++i) {
    num[i] = checked_add(checked_mul(a.num[i], b.den), checked_mul(b.num[i], a.den));
  }
  return normalized(std::move(num), checked_mul(a.den, b.den));
}

FieldElem Field::neg(const FieldElem& a) const {
  FieldElem r = a;
  for (auto& v : r.num) v = -v;
  return r;
}

FieldElem Field::sub(const FieldElem& a, const FieldElem& b) const { return add(a, neg(b)); }

FieldElem Field::mul(const FieldElem& a, const FieldElem& b) const {
  if (degree_ == 1) {
    return normalized({checked_mul(a.num[0], b.num[0])}, checked_mul(a.den, b.den));
  }
  std::vector<Coeff> prod(2 * degree_ - 1, 0);
  for (int i = 0; i < degree_; ++i) {
    if (a.num[i] == 0) continue;
    for (int j = 0; j < degree_; ++j) {
      if (b.num[j] == 0) continue;
      prod[i + j] = checked_add(prod[i + j], checked_mul(a.num[i], b.num[j]));
    }
  }
  return reduce_product(std::move(prod), checked_mul(a.den, b.den));
}

FieldElem Field::scale(const FieldElem& a, long long k) const {
  std::vector<Coeff> num(degree_);
  for (int i = 0; i < degree_; ++i) num[i] = checked_mul(a.num[i], k);
  return normalized(std::move(num), a.den);
}

FieldElem Field::add_mul(const FieldElem& a, const FieldElem& b, const FieldElem& k) const {
  if (b.is_zero() || k.is_zero()) return a;
  return add(a, mul(b, k));
}

int Field::sign(const FieldElem& a) const {
  if (a.is_zero()) return 0;
  if (degree_ == 1) return a.num[0] > 0 ? 1 : -1;
  long double value = 0.0L, magnitude = 0.0L;
  for (int i = 0; i < degree_; ++i) {
    if (a.num[i] == 0) continue;
    long double term = static_cast<long double>(a.num[i]) * c_powers_[i];
    value += term;
    magnitude += std::fabs(term);
  }
  // c^i carries a few ulps of error in long double; the bound is generous.
  long double bound = magnitude * 1e-15L;
  if (value > bound) return 1;
  if (value < -bound) return -1;
  return sign_mpfr(a);
}

int Field::sign_mpfr(const FieldElem& a) const {
  for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
    mpfr_t c, acc, term, mag, coef, tmp;
    mpfr_inits2(prec + 64, c, acc, term, mag, coef, tmp, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(c, MPFR_RNDN);
    mpfr_div_si(c, c, conductor_, MPFR_RNDN);
    mpfr_cos(c, c, MPFR_RNDN);
    mpfr_mul_ui(c, c, 2, MPFR_RNDN);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    mpfr_set_ui(mag, 0, MPFR_RNDN);
    mpfr_set_ui(term, 1, MPFR_RNDN);  // c^i
    for (int i = 0; i < degree_; ++i) {
      Coeff v = a.num[i];
      if (v != 0) {
        auto u = static_cast<unsigned __int128>(v < 0 ? -v : v);
        mpfr_set_ui(coef, static_cast<unsigned long>(u >> 64), MPFR_RNDN);
        mpfr_mul_2ui(coef, coef, 64, MPFR_RNDN);
        mpfr_add_ui(coef, coef, static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull), MPFR_RNDN);
        if (v < 0) mpfr_neg(coef, coef, MPFR_RNDN);
        mpfr_mul(tmp, coef, term, MPFR_RNDN);
        mpfr_add(acc, acc, tmp, MPFR_RNDN);
        mpfr_abs(tmp, tmp, MPFR_RNDN);
        mpfr_add(mag, mag, tmp, MPFR_RNDN);
      }
      mpfr_mul(term, term, c, MPFR_RNDN);
    }
    // Every operation above has relative error <= 2^-(prec+64); the
    // accumulated error is far below mag * 2^-prec.
    mpfr_mul_2si(mag, mag, -static_cast<long>(prec), MPFR_RNDU);
    int result = 0;
    mpfr_abs(tmp, acc, MPFR_RNDN);
    if (mpfr_greater_p(tmp, mag)) result = mpfr_sgn(acc) > 0 ? 1 : -1;
    mpfr_clears(c, acc, term, mag, coef, tmp, static_cast<mpfr_ptr>(nullptr));
    if (result != 0) return result;
  }
  throw std::runtime_error("sign undecided at maximal precision");
}

double Field::to_double(const FieldElem& a) const {
  long double v = 0.0L;
  for (int i = 0; i < degree_; ++i) v += static_cast<long double>(a.num[i]) * c_powers_[i];
  return static_cast<double>(v / static_cast<long double>(a.den));
}

namespace {

std::string poly_string(const std::vector<std::string>& coeffs) {
  // coeffs as decimal strings, lowest degree first
  std::string out;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    std::string c = coeffs[i];
    if (c == "0") continue;
    bool neg = c[0] == '-';
    std::string mag = neg ? c.substr(1) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono = i == 0 ? "" : (i == 1 ? "c" : "c^" + std::to_string(i));
    if (mono.empty()) out += mag;
    else if (mag == "1") out += mono;
    else out += mag + mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string Field::to_string(const FieldElem& a) const {
  std::vector<std::string> cs;
  int terms = 0;
  for (const auto& v : a.num) {
    cs.push_back(coxshadow::to_string(v));
    if (v != 0) ++terms;
  }
  std::string body = poly_string(cs);
  if (a.den == 1) return body;
  if (terms > 1) body = "(" + body + ")";
  return body + "/" + coxshadow::to_string(a.den);
}

std::string Field::minimal_polynomial_string() const {
  std::vector<std::string> cs;
  for (const auto& v : minpoly_) cs.push_back(v.str());
  return poly_string(cs);
}

}  // namespace coxshadow
