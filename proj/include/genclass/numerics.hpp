#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <climits>
#include <string>
#include <vector>

namespace genclass {

// ---------------------------------------------------------------------------
// Arbitrary-precision reals and complex numbers.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the smaller of the two operand precisions; there is no global
// precision setting.
// ---------------------------------------------------------------------------

class APReal {
 public:
  explicit APReal(long prec = 64);
  APReal(double v, long prec);
  APReal(const mpz_class& v, long prec);
  APReal(const mpq_class& v, long prec);
  static APReal from_long(long v, long prec);
  static APReal from_string(const std::string& s, long prec);

  APReal(const APReal& o);
  APReal(APReal&& o) noexcept;
  APReal& operator=(const APReal& o);
  APReal& operator=(APReal&& o) noexcept;
  ~APReal();

  long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }
  APReal with_prec(long prec) const;
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  // Binary exponent e with 2^(e-1) <= |v| < 2^e; LONG_MIN for zero.
  long exponent() const;
  mpz_class round() const;
  std::string str(int digits = 20) const;

  APReal& operator+=(const APReal& o);
  APReal& operator-=(const APReal& o);
  APReal& operator*=(const APReal& o);
  APReal& operator/=(const APReal& o);
  APReal& operator*=(long k);
  APReal operator-() const;

 private:
  mpfr_t v_;
};

APReal operator+(const APReal& a, const APReal& b);
APReal operator-(const APReal& a, const APReal& b);
APReal operator*(const APReal& a, const APReal& b);
APReal operator/(const APReal& a, const APReal& b);
APReal operator*(const APReal& a, long k);
bool operator<(const APReal& a, const APReal& b);
bool operator>(const APReal& a, const APReal& b);
bool operator<=(const APReal& a, const APReal& b);
bool operator>=(const APReal& a, const APReal& b);

APReal ap_pi(long prec);
APReal ap_sqrt(const APReal& a);
APReal ap_exp(const APReal& a);
APReal ap_log(const APReal& a);
APReal ap_abs(const APReal& a);
APReal ap_cos(const APReal& a);
APReal ap_sin(const APReal& a);
APReal ap_atan2(const APReal& y, const APReal& x);
APReal ap_floor(const APReal& a);
APReal ap_ldexp(const APReal& a, long e);  // a * 2^e

class APComplex {
 public:
  explicit APComplex(long prec = 64) : re(prec), im(prec) {}
  APComplex(APReal r, APReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit APComplex(const APReal& r) : re(r), im(r.prec()) {}
  APComplex(double r, double i, long prec) : re(r, prec), im(i, prec) {}

  long prec() const { return re.prec() < im.prec() ? re.prec() : im.prec(); }
  APComplex with_prec(long prec) const { return {re.with_prec(prec), im.with_prec(prec)}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  APComplex conj() const { return {re, -im}; }
  std::string str(int digits = 20) const;

  APComplex& operator+=(const APComplex& o);
  APComplex& operator-=(const APComplex& o);
  APComplex& operator*=(const APComplex& o);
  APComplex& operator/=(const APComplex& o);
  APComplex& operator*=(const APReal& o);
  APComplex operator-() const { return {-re, -im}; }

  APReal re;
  APReal im;
};

APComplex operator+(const APComplex& a, const APComplex& b);
APComplex operator-(const APComplex& a, const APComplex& b);
APComplex operator*(const APComplex& a, const APComplex& b);
APComplex operator/(const APComplex& a, const APComplex& b);
APComplex operator*(const APComplex& a, const APReal& b);
APComplex operator*(const APComplex& a, long k);

APReal ap_abs(const APComplex& z);
APReal ap_norm(const APComplex& z);  // |z|^2
APReal ap_arg(const APComplex& z);
APComplex ap_exp(const APComplex& z);
APComplex ap_log(const APComplex& z);
APComplex ap_sqrt(const APComplex& z);  // principal branch
APComplex ap_pow(const APComplex& z, long n);
APComplex ap_inv(const APComplex& z);
// exp(2*pi*i*z).
APComplex ap_exp2pii(const APComplex& z);
// Magnitude estimate log2|z| (very negative for zero).
double ap_log2abs(const APComplex& z);
double ap_log2abs(const APReal& x);

// ---------------------------------------------------------------------------
// Truncated Laurent series in q^(1/M), q = exp(2 pi i z).
//
// Coefficients are exact rationals, stored as integer numerators over one
// shared positive denominator. Stored coefficients cover exponents
// [val, val + size); stored-range complement below truncOrder is zero.
// ---------------------------------------------------------------------------

constexpr long kExactOrder = LONG_MAX / 8;

class LaurentSeries {
 public:
  LaurentSeries() = default;
  static LaurentSeries from_integers(long denom, long val, std::vector<mpz_class> coeffs,
                                     long truncOrder);
  static LaurentSeries from_rationals(long denom, long val, const std::vector<mpq_class>& coeffs,
                                      long truncOrder);
  static LaurentSeries constant(const mpq_class& c, long denom = 1, long truncOrder = kExactOrder);
  static LaurentSeries monomial(const mpq_class& c, long exponent, long denom = 1,
                                long truncOrder = kExactOrder);
  static LaurentSeries zero(long denom, long truncOrder);

  long denom() const { return denom_; }
  long val() const { return val_; }
  long trunc_order() const { return trunc_; }
  bool is_exact() const { return trunc_ >= kExactOrder; }
  bool is_zero() const { return num_.empty(); }
  size_t size() const { return num_.size(); }
  // Last stored exponent (val + size - 1); meaningless for zero series.
  long last_exponent() const { return val_ + static_cast<long>(num_.size()) - 1; }

  mpq_class coeff(long exponent) const;
  mpq_class leading() const { return coeff(val_); }
  const mpz_class& numer(size_t i) const { return num_[i]; }
  const mpz_class& common_denominator() const { return den_; }
  const std::vector<mpz_class>& numerators() const { return num_; }
  // Builds num[i] / den * q^((val + i)/M).
  static LaurentSeries from_fraction(long denom, long val, std::vector<mpz_class> num,
                                     const mpz_class& den, long truncOrder);
  bool is_integral() const { return den_ == 1; }

  LaurentSeries truncated(long truncOrder) const;
  LaurentSeries shifted(long k) const;            // times q^(k/M)
  LaurentSeries with_denom(long newDenom) const;  // same function, finer exponent lattice
  // Substitution q -> q^(1/k): exponents kept, denominator multiplied by k.
  LaurentSeries stretched(long k) const;
  // Coarser lattice; every stored exponent and truncOrder must be divisible by k.
  LaurentSeries contracted(long k) const;
  LaurentSeries scaled(const mpq_class& c) const;

  bool operator==(const LaurentSeries& o) const;

 private:
  void normalize();

  long denom_ = 1;
  long val_ = 0;
  long trunc_ = kExactOrder;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g, int sign = 1);
LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g);
// 1/f; an exact non-monomial f needs an explicit maxOrder.
LaurentSeries series_inverse(const LaurentSeries& f, long maxOrder = kExactOrder);
LaurentSeries series_div(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries series_pow(const LaurentSeries& f, long n);
LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries operator-(const LaurentSeries& f);
LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g);

// Polynomial in Y with series coefficients, P(Y) = sum_i coeffs[i] Y^i.
using SeriesPoly = std::vector<LaurentSeries>;

LaurentSeries series_poly_eval(const SeriesPoly& P, const LaurentSeries& s);
SeriesPoly series_poly_derivative(const SeriesPoly& P);

// Newton iteration for a root of P starting from `seed`, which must be a root
// up to its own truncation order. Returns a root correct up to targetOrder.
LaurentSeries series_newton_root(const SeriesPoly& P, const LaurentSeries& seed, long targetOrder);

struct SeriesValue {
  APComplex value;
  APReal tailBound;
};

// Value of the truncated series at q^(1/M) = exp(2 pi i z / M).
SeriesValue eval_series(const LaurentSeries& f, const APComplex& z, long prec);
// Same, given the nome q^(1/M) directly.
SeriesValue eval_series_at_nome(const LaurentSeries& f, const APComplex& nome, long prec);

// ---------------------------------------------------------------------------
// Integer polynomials.
// ---------------------------------------------------------------------------

class IntPolyUV {
 public:
  IntPolyUV() = default;
  explicit IntPolyUV(std::vector<mpz_class> coeffs);
  static IntPolyUV constant(const mpz_class& c);
  static IntPolyUV x_minus(const mpz_class& r);  // X - r

  const std::vector<mpz_class>& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  mpz_class coeff(long i) const;
  mpz_class leading() const { return c_.empty() ? mpz_class(0) : c_.back(); }
  void set_coeff(long i, const mpz_class& v);

  mpz_class content() const;
  IntPolyUV primitive() const;
  IntPolyUV derivative() const;
  mpz_class norm1() const;
  mpz_class norm_inf() const;

  mpz_class eval(const mpz_class& x) const;
  mpq_class eval(const mpq_class& x) const;
  APComplex eval(const APComplex& x) const;
  std::string str(const std::string& var = "X") const;

  bool operator==(const IntPolyUV& o) const { return c_ == o.c_; }
  bool operator!=(const IntPolyUV& o) const { return c_ != o.c_; }

 private:
  void trim();
  std::vector<mpz_class> c_;
};

IntPolyUV operator+(const IntPolyUV& a, const IntPolyUV& b);
IntPolyUV operator-(const IntPolyUV& a, const IntPolyUV& b);
IntPolyUV operator-(const IntPolyUV& a);
IntPolyUV operator*(const IntPolyUV& a, const IntPolyUV& b);
IntPolyUV operator*(const IntPolyUV& a, const mpz_class& k);
IntPolyUV poly_pow(const IntPolyUV& a, unsigned n);
// Exact division over Z; throws std::domain_error if b does not divide a.
IntPolyUV poly_divexact(const IntPolyUV& a, const IntPolyUV& b);
// True iff b divides a in Z[X].
bool poly_divides(const IntPolyUV& b, const IntPolyUV& a);
// Integer square root of a polynomial when it is a perfect square (up to sign of lc).
bool poly_sqrt(const IntPolyUV& a, IntPolyUV& root);

// A(X) + B(X) Y.
struct IntPolyXY {
  IntPolyUV a;
  IntPolyUV b;
  bool operator==(const IntPolyXY& o) const { return a == o.a && b == o.b; }
  bool operator!=(const IntPolyXY& o) const { return !(*this == o); }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  mpz_class content() const;
  // Pole order at infinity with weights X -> 2, Y -> 3 (-1 for zero).
  long pole_order() const;
  // Coefficient of the monomial of highest pole order.
  mpz_class leading() const;
  std::string str(const std::string& x = "x", const std::string& y = "y") const;
};

// Dense complex polynomial helpers (index = degree).
using CPoly = std::vector<APComplex>;
CPoly cpoly_mul(const CPoly& a, const CPoly& b);
CPoly cpoly_add(const CPoly& a, const CPoly& b);
CPoly cpoly_sub(const CPoly& a, const CPoly& b);
APComplex cpoly_eval(const CPoly& a, const APComplex& x);
// Divide by (X - r); remainder returned through `rem`.
CPoly cpoly_div_linear(const CPoly& a, const APComplex& r, APComplex* rem = nullptr);

// All complex roots (with multiplicity) by Aberth-Ehrlich iteration, started
// from circles given by the Newton polygon of the coefficient magnitudes.
std::vector<APComplex> cpoly_roots(const CPoly& a, long prec, int maxIter = 2000);
// Newton refinement of one root of `a` in place; returns the last correction size (log2).
double cpoly_newton_polish(const CPoly& a, APComplex& root, int iters);

// Integer rounding with a distance test: true iff every value is within `tol`
// of an integer (imaginary parts also within tol of zero).
bool round_to_integers(const std::vector<APComplex>& vals, double tol, std::vector<mpz_class>& out);

}  // namespace genclass
