#include "genclass/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "genclass/errors.hpp"

namespace genclass {

// ---------------------------------------------------------------------------
// APReal
// ---------------------------------------------------------------------------

namespace {
long clamp_prec(long p) { return std::max<long>(p, MPFR_PREC_MIN); }
}  // namespace

APReal::APReal(long prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_zero(v_, 1);
}

APReal::APReal(double v, long prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

APReal::APReal(const mpz_class& v, long prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

APReal::APReal(const mpq_class& v, long prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

APReal APReal::from_long(long v, long prec) {
  APReal r(prec);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

APReal APReal::from_string(const std::string& s, long prec) {
  APReal r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("bad real literal: " + s);
  }
  return r;
}

APReal::APReal(const APReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

APReal::APReal(APReal&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

APReal& APReal::operator=(const APReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

APReal& APReal::operator=(APReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

APReal::~APReal() { mpfr_clear(v_); }

APReal APReal::with_prec(long prec) const {
  APReal r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long APReal::exponent() const {
  if (mpfr_zero_p(v_)) return LONG_MIN;
  return mpfr_get_exp(v_);
}

mpz_class APReal::round() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

std::string APReal::str(int digits) const {
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits) + "Rg";
  mpfr_asprintf(&buf, fmt.c_str(), v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

namespace {
// Lower the working precision of `a` to at most p before an in-place update.
void fit_prec(mpfr_ptr a, long p) {
  if (static_cast<long>(mpfr_get_prec(a)) > p) mpfr_prec_round(a, p, MPFR_RNDN);
}
}  // namespace

APReal& APReal::operator+=(const APReal& o) {
  fit_prec(v_, o.prec());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

APReal& APReal::operator-=(const APReal& o) {
  fit_prec(v_, o.prec());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

APReal& APReal::operator*=(const APReal& o) {
  fit_prec(v_, o.prec());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

APReal& APReal::operator/=(const APReal& o) {
  fit_prec(v_, o.prec());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

APReal& APReal::operator*=(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

APReal APReal::operator-() const {
  APReal r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

APReal operator+(const APReal& a, const APReal& b) {
  APReal r(std::min(a.prec(), b.prec()));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

APReal operator-(const APReal& a, const APReal& b) {
  APReal r(std::min(a.prec(), b.prec()));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

APReal operator*(const APReal& a, const APReal& b) {
  APReal r(std::min(a.prec(), b.prec()));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

APReal operator/(const APReal& a, const APReal& b) {
  APReal r(std::min(a.prec(), b.prec()));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

APReal operator*(const APReal& a, long k) {
  APReal r(a.prec());
  mpfr_mul_si(r.raw(), a.raw(), k, MPFR_RNDN);
  return r;
}

bool operator<(const APReal& a, const APReal& b) { return mpfr_less_p(a.raw(), b.raw()); }
bool operator>(const APReal& a, const APReal& b) { return mpfr_greater_p(a.raw(), b.raw()); }
bool operator<=(const APReal& a, const APReal& b) { return mpfr_lessequal_p(a.raw(), b.raw()); }
bool operator>=(const APReal& a, const APReal& b) { return mpfr_greaterequal_p(a.raw(), b.raw()); }

APReal ap_pi(long prec) {
  APReal r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

#define GENCLASS_UNARY(name, fn)          \
  APReal name(const APReal& a) {          \
    APReal r(a.prec());                   \
    fn(r.raw(), a.raw(), MPFR_RNDN);      \
    return r;                             \
  }

GENCLASS_UNARY(ap_sqrt, mpfr_sqrt)
GENCLASS_UNARY(ap_exp, mpfr_exp)
GENCLASS_UNARY(ap_log, mpfr_log)
GENCLASS_UNARY(ap_abs, mpfr_abs)
GENCLASS_UNARY(ap_cos, mpfr_cos)
GENCLASS_UNARY(ap_sin, mpfr_sin)
#undef GENCLASS_UNARY

APReal ap_atan2(const APReal& y, const APReal& x) {
  APReal r(std::min(y.prec(), x.prec()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

APReal ap_floor(const APReal& a) {
  APReal r(a.prec());
  mpfr_floor(r.raw(), a.raw());
  return r;
}

APReal ap_ldexp(const APReal& a, long e) {
  APReal r(a.prec());
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------
// APComplex
// ---------------------------------------------------------------------------

std::string APComplex::str(int digits) const {
  return "(" + re.str(digits) + ", " + im.str(digits) + ")";
}

APComplex& APComplex::operator+=(const APComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

APComplex& APComplex::operator-=(const APComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

APComplex& APComplex::operator*=(const APComplex& o) {
  *this = *this * o;
  return *this;
}

APComplex& APComplex::operator/=(const APComplex& o) {
  *this = *this / o;
  return *this;
}

APComplex& APComplex::operator*=(const APReal& o) {
  re *= o;
  im *= o;
  return *this;
}

APComplex operator+(const APComplex& a, const APComplex& b) { return {a.re + b.re, a.im + b.im}; }
APComplex operator-(const APComplex& a, const APComplex& b) { return {a.re - b.re, a.im - b.im}; }

APComplex operator*(const APComplex& a, const APComplex& b) {
  long p = std::min(a.prec(), b.prec());
  APReal t1(p), t2(p);
  APComplex r(p);
  mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_sub(r.re.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
  mpfr_mul(t1.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_mul(t2.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_add(r.im.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
  return r;
}

APComplex operator/(const APComplex& a, const APComplex& b) {
  // Scale by the larger component of b to keep intermediates in range.
  if (mpfr_cmpabs(b.re.raw(), b.im.raw()) >= 0) {
    APReal r = b.im / b.re;
    APReal den = b.re + r * b.im;
    return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
  }
  APReal r = b.re / b.im;
  APReal den = b.re * r + b.im;
  return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
}

APComplex operator*(const APComplex& a, const APReal& b) { return {a.re * b, a.im * b}; }
APComplex operator*(const APComplex& a, long k) { return {a.re * k, a.im * k}; }

APReal ap_norm(const APComplex& z) { return z.re * z.re + z.im * z.im; }

APReal ap_abs(const APComplex& z) {
  APReal r(z.prec());
  mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
  return r;
}

APReal ap_arg(const APComplex& z) { return ap_atan2(z.im, z.re); }

APComplex ap_exp(const APComplex& z) {
  long p = z.prec();
  APReal m = ap_exp(z.re);
  APReal s(p), c(p);
  mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
  return {m * c, m * s};
}

APComplex ap_log(const APComplex& z) { return {ap_log(ap_abs(z)), ap_arg(z)}; }

APComplex ap_sqrt(const APComplex& z) {
  long p = z.prec();
  if (z.is_zero()) return APComplex(p);
  APReal r = ap_abs(z);
  if (z.re.sign() >= 0) {
    APReal s = ap_sqrt(ap_ldexp(r + z.re, -1));
    return {s, z.im / ap_ldexp(s, 1)};
  }
  APReal t = ap_sqrt(ap_ldexp(r - z.re, -1));
  APReal re = ap_abs(z.im) / ap_ldexp(t, 1);
  return {re, z.im.sign() < 0 ? -t : t};
}

APComplex ap_inv(const APComplex& z) {
  APComplex one(APReal::from_long(1, z.prec()));
  return one / z;
}

APComplex ap_pow(const APComplex& z, long n) {
  long p = z.prec();
  if (n < 0) return ap_pow(ap_inv(z), -n);
  APComplex result(APReal::from_long(1, p));
  APComplex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

APComplex ap_exp2pii(const APComplex& z) {
  long p = z.prec();
  APReal twopi = ap_ldexp(ap_pi(p + 16), 1);
  APReal mod = ap_exp(-(twopi * z.im)).with_prec(p);
  // Reduce the real part mod 1 first so the angle stays small.
  APReal fr = z.re - ap_floor(z.re);
  APReal ang = (twopi * fr.with_prec(p + 16)).with_prec(p);
  APReal s(p), c(p);
  mpfr_sin_cos(s.raw(), c.raw(), ang.raw(), MPFR_RNDN);
  return {mod * c, mod * s};
}

double ap_log2abs(const APReal& x) {
  if (x.is_zero()) return -1e300;
  long e = 0;
  double d = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
  return std::log2(std::fabs(d)) + static_cast<double>(e);
}

double ap_log2abs(const APComplex& z) {
  double a = ap_log2abs(z.re), b = ap_log2abs(z.im);
  double m = std::max(a, b);
  if (m < -1e299) return m;
  return m + 0.5 * std::log2(std::exp2(2 * (a - m)) + std::exp2(2 * (b - m)));
}

// ---------------------------------------------------------------------------
// LaurentSeries
// ---------------------------------------------------------------------------

LaurentSeries LaurentSeries::from_integers(long denom, long val, std::vector<mpz_class> coeffs,
                                           long truncOrder) {
  return from_fraction(denom, val, std::move(coeffs), mpz_class(1), truncOrder);
}

LaurentSeries LaurentSeries::from_fraction(long denom, long val, std::vector<mpz_class> num,
                                           const mpz_class& den, long truncOrder) {
  if (denom <= 0) throw std::invalid_argument("series denominator must be positive");
  if (den == 0) throw std::invalid_argument("zero series denominator");
  LaurentSeries s;
  s.denom_ = denom;
  s.val_ = val;
  s.trunc_ = std::min(truncOrder, kExactOrder);
  s.num_ = std::move(num);
  s.den_ = den;
  if (s.den_ < 0) {
    s.den_ = -s.den_;
    for (auto& c : s.num_) c = -c;
  }
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::from_rationals(long denom, long val, const std::vector<mpq_class>& coeffs,
                                            long truncOrder) {
  mpz_class L = 1;
  for (const auto& c : coeffs) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> num;
  num.reserve(coeffs.size());
  for (const auto& c : coeffs) num.push_back(c.get_num() * (L / c.get_den()));
  return from_fraction(denom, val, std::move(num), L, truncOrder);
}

LaurentSeries LaurentSeries::constant(const mpq_class& c, long denom, long truncOrder) {
  return monomial(c, 0, denom, truncOrder);
}

LaurentSeries LaurentSeries::monomial(const mpq_class& c, long exponent, long denom, long truncOrder) {
  return from_rationals(denom, exponent, {c}, truncOrder);
}

LaurentSeries LaurentSeries::zero(long denom, long truncOrder) {
  return from_integers(denom, truncOrder, {}, truncOrder);
}

void LaurentSeries::normalize() {
  size_t lo = 0;
  while (lo < num_.size() && num_[lo] == 0) ++lo;
  if (lo == num_.size()) {
    num_.clear();
    den_ = 1;
    val_ = trunc_;
    return;
  }
  if (lo > 0) {
    num_.erase(num_.begin(), num_.begin() + static_cast<long>(lo));
    val_ += static_cast<long>(lo);
  }
  if (val_ >= trunc_) {
    num_.clear();
    den_ = 1;
    val_ = trunc_;
    return;
  }
  long keep = std::min<long>(static_cast<long>(num_.size()), trunc_ - val_);
  num_.resize(static_cast<size_t>(keep));
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (den_ != 1) {
    mpz_class g = den_;
    for (const auto& c : num_) {
      if (g == 1) break;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g != 1) {
      den_ /= g;
      for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
  }
}

mpq_class LaurentSeries::coeff(long exponent) const {
  if (exponent >= trunc_) throw std::out_of_range("coefficient beyond truncation order");
  if (exponent < val_ || exponent > last_exponent()) return 0;
  mpq_class r(num_[static_cast<size_t>(exponent - val_)], den_);
  r.canonicalize();
  return r;
}

LaurentSeries LaurentSeries::truncated(long truncOrder) const {
  return from_fraction(denom_, val_, num_, den_, std::min(truncOrder, trunc_));
}

LaurentSeries LaurentSeries::shifted(long k) const {
  long t = is_exact() ? kExactOrder : trunc_ + k;
  return from_fraction(denom_, val_ + k, num_, den_, t);
}

LaurentSeries LaurentSeries::with_denom(long newDenom) const {
  if (newDenom % denom_ != 0) throw std::invalid_argument("with_denom: not a multiple");
  long k = newDenom / denom_;
  if (k == 1) return *this;
  long t = is_exact() ? kExactOrder : trunc_ * k;
  if (is_zero()) return zero(newDenom, t);
  std::vector<mpz_class> num(static_cast<size_t>((num_.size() - 1) * k + 1));
  for (size_t i = 0; i < num_.size(); ++i) num[i * static_cast<size_t>(k)] = num_[i];
  return from_fraction(newDenom, val_ * k, std::move(num), den_, t);
}

LaurentSeries LaurentSeries::stretched(long k) const {
  if (k <= 0) throw std::invalid_argument("stretched: k must be positive");
  return from_fraction(denom_ * k, val_, num_, den_, trunc_);
}

LaurentSeries LaurentSeries::contracted(long k) const {
  if (k <= 0 || denom_ % k != 0) throw std::invalid_argument("contracted: bad factor");
  if (is_zero()) return zero(denom_ / k, is_exact() ? kExactOrder : trunc_ / k);
  if (val_ % k != 0) throw std::invalid_argument("contracted: exponent not divisible");
  std::vector<mpz_class> num;
  for (size_t i = 0; i < num_.size(); ++i) {
    if (i % static_cast<size_t>(k) == 0) {
      num.push_back(num_[i]);
    } else if (num_[i] != 0) {
      throw std::invalid_argument("contracted: exponent not divisible");
    }
  }
  // Terms between the last stored one and trunc are zero; round the order down.
  long t = is_exact() ? kExactOrder : (trunc_ >= 0 ? (trunc_ + k - 1) / k : -((-trunc_) / k));
  return from_fraction(denom_ / k, val_ / k, std::move(num), den_, t);
}

LaurentSeries LaurentSeries::scaled(const mpq_class& c) const {
  std::vector<mpz_class> num = num_;
  for (auto& v : num) v *= c.get_num();
  return from_fraction(denom_, val_, std::move(num), den_ * c.get_den(), trunc_);
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  return denom_ == o.denom_ && trunc_ == o.trunc_ && val_ == o.val_ && num_ == o.num_ && den_ == o.den_;
}

namespace {
void require_same_denom(const LaurentSeries& f, const LaurentSeries& g) {
  if (f.denom() != g.denom()) throw std::invalid_argument("series denominators differ");
}
}  // namespace

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g, int sign) {
  require_same_denom(f, g);
  long t = std::min(f.trunc_order(), g.trunc_order());
  if (f.is_zero() && g.is_zero()) return LaurentSeries::zero(f.denom(), t);
  if (g.is_zero()) return f.truncated(t);
  if (f.is_zero()) return g.scaled(sign).truncated(t);
  long lo = std::min(f.val(), g.val());
  long hi = std::min(std::max(f.last_exponent(), g.last_exponent()), t - 1);
  if (hi < lo) return LaurentSeries::zero(f.denom(), t);
  mpz_class L;
  mpz_lcm(L.get_mpz_t(), f.common_denominator().get_mpz_t(), g.common_denominator().get_mpz_t());
  mpz_class sf = L / f.common_denominator(), sg = L / g.common_denominator();
  if (sign < 0) sg = -sg;
  std::vector<mpz_class> num(static_cast<size_t>(hi - lo + 1));
  for (size_t i = 0; i < f.size(); ++i) {
    long e = f.val() + static_cast<long>(i);
    if (e > hi) break;
    if (f.numer(i) != 0) mpz_addmul(num[e - lo].get_mpz_t(), f.numer(i).get_mpz_t(), sf.get_mpz_t());
  }
  for (size_t i = 0; i < g.size(); ++i) {
    long e = g.val() + static_cast<long>(i);
    if (e > hi) break;
    if (g.numer(i) != 0) mpz_addmul(num[e - lo].get_mpz_t(), g.numer(i).get_mpz_t(), sg.get_mpz_t());
  }
  return LaurentSeries::from_fraction(f.denom(), lo, std::move(num), L, t);
}

LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g) {
  require_same_denom(f, g);
  long t1 = f.is_exact() ? kExactOrder : f.trunc_order() + g.val();
  long t2 = g.is_exact() ? kExactOrder : g.trunc_order() + f.val();
  long t = std::min({t1, t2, kExactOrder});
  if (f.is_zero() || g.is_zero()) return LaurentSeries::zero(f.denom(), t);
  long v = f.val() + g.val();
  long len = std::min<long>(static_cast<long>(f.size() + g.size()) - 1, t - v);
  if (len <= 0) return LaurentSeries::zero(f.denom(), t);
  std::vector<mpz_class> num(static_cast<size_t>(len));
  for (long i = 0; i < static_cast<long>(f.size()) && i < len; ++i) {
    const mpz_class& a = f.numer(static_cast<size_t>(i));
    if (a == 0) continue;
    long jmax = std::min<long>(static_cast<long>(g.size()), len - i);
    for (long j = 0; j < jmax; ++j) {
      const mpz_class& b = g.numer(static_cast<size_t>(j));
      if (b == 0) continue;
      mpz_addmul(num[static_cast<size_t>(i + j)].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
  }
  return LaurentSeries::from_fraction(f.denom(), v, std::move(num),
                                      f.common_denominator() * g.common_denominator(), t);
}

LaurentSeries series_inverse(const LaurentSeries& f, long maxOrder) {
  if (f.is_zero()) throw std::domain_error("inverse of zero series");
  long v = f.val();
  if (f.size() == 1 && f.is_exact()) {
    mpq_class c(f.common_denominator(), f.numer(0));
    c.canonicalize();
    return LaurentSeries::monomial(c, -v, f.denom(), maxOrder);
  }
  long t = f.is_exact() ? kExactOrder : f.trunc_order() - 2 * v;
  t = std::min(t, maxOrder);
  if (t >= kExactOrder) throw std::invalid_argument("series_inverse: truncation order required");
  long len = t + v;
  if (len <= 0) return LaurentSeries::zero(f.denom(), t);
  const mpz_class& n0 = f.numer(0);
  // e_k = -sum_{i=1..k} U_i e_{k-i} n0^(i-1);  (1/U)_k = e_k / n0^(k+1).
  std::vector<mpz_class> e(static_cast<size_t>(len));
  bool unit = (n0 == 1 || n0 == -1);
  std::vector<mpz_class> pw;
  if (!unit) {
    pw.resize(static_cast<size_t>(len));
    pw[0] = 1;
    for (long i = 1; i < len; ++i) pw[i] = pw[i - 1] * n0;
  }
  e[0] = 1;
  mpz_class acc, tmp;
  for (long k = 1; k < len; ++k) {
    acc = 0;
    long imax = std::min<long>(k, static_cast<long>(f.size()) - 1);
    for (long i = 1; i <= imax; ++i) {
      const mpz_class& u = f.numer(static_cast<size_t>(i));
      if (u == 0 || e[k - i] == 0) continue;
      if (unit) {
        mpz_addmul(acc.get_mpz_t(), u.get_mpz_t(), e[k - i].get_mpz_t());
      } else {
        tmp = u * e[k - i];
        mpz_addmul(acc.get_mpz_t(), tmp.get_mpz_t(), pw[i - 1].get_mpz_t());
      }
    }
    e[k] = unit ? mpz_class(-acc * n0) : mpz_class(-acc);
  }
  // With a unit leading term: (1/U)_k = e_k * n0 (since 1/n0 = n0 and n0^2 = 1).
  mpz_class den;
  if (unit) {
    for (auto& c : e) c *= n0 * f.common_denominator();
    den = 1;
  } else {
    for (long k = 0; k < len; ++k) e[k] *= pw[len - 1 - k] * f.common_denominator();
    den = pw[len - 1] * n0;
  }
  return LaurentSeries::from_fraction(f.denom(), -v, std::move(e), den, t);
}

LaurentSeries series_div(const LaurentSeries& f, const LaurentSeries& g) {
  require_same_denom(f, g);
  if (f.is_zero()) {
    long t = g.is_exact() ? f.trunc_order() - g.val() : std::min(f.trunc_order() - g.val(), f.val() + g.trunc_order() - 2 * g.val());
    return LaurentSeries::zero(f.denom(), std::min(t, kExactOrder));
  }
  long order = kExactOrder;
  if (!f.is_exact()) order = f.trunc_order() - f.val() - g.val();
  return series_mul(f, series_inverse(g, order));
}

LaurentSeries series_pow(const LaurentSeries& f, long n) {
  if (n < 0) return series_pow(series_inverse(f), -n);
  LaurentSeries result = LaurentSeries::constant(1, f.denom());
  LaurentSeries base = f;
  while (n > 0) {
    if (n & 1) result = series_mul(result, base);
    n >>= 1;
    if (n) base = series_mul(base, base);
  }
  return result;
}

LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) { return series_add(f, g, 1); }
LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) { return series_add(f, g, -1); }
LaurentSeries operator-(const LaurentSeries& f) { return f.scaled(-1); }
LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) { return series_mul(f, g); }

LaurentSeries series_poly_eval(const SeriesPoly& P, const LaurentSeries& s) {
  if (P.empty()) return LaurentSeries::zero(s.denom(), kExactOrder);
  LaurentSeries acc = P.back();
  for (size_t i = P.size() - 1; i-- > 0;) acc = series_mul(acc, s) + P[i];
  return acc;
}

SeriesPoly series_poly_derivative(const SeriesPoly& P) {
  SeriesPoly d;
  for (size_t i = 1; i < P.size(); ++i) d.push_back(P[i].scaled(static_cast<long>(i)));
  return d;
}

namespace {
// Lower bound on the valuation of a truncated series.
long val_bound(const LaurentSeries& s) { return s.is_zero() ? s.trunc_order() : s.val(); }

// Taylor coefficient (P^(i)/i!) as a polynomial in Y.
SeriesPoly taylor_coeff(const SeriesPoly& P, size_t i) {
  SeriesPoly r;
  for (size_t m = i; m < P.size(); ++m) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), m, i);
    r.push_back(P[m].scaled(mpq_class(binom)));
  }
  return r;
}
}  // namespace

LaurentSeries series_newton_root(const SeriesPoly& P, const LaurentSeries& seed, long targetOrder) {
  if (P.size() < 2) throw std::invalid_argument("series_newton_root: polynomial of degree < 1");
  SeriesPoly dP = series_poly_derivative(P);
  LaurentSeries s = seed;
  long k = seed.trunc_order();
  {
    LaurentSeries d = series_poly_eval(dP, s);
    if (d.is_zero()) throw std::domain_error("singular seed");
    LaurentSeries r = series_poly_eval(P, s);
    if (!r.is_zero() && r.val() < r.trunc_order()) {
      // The known part of P(seed) must vanish.
      throw std::domain_error("seed is not a root to its truncation order");
    }
  }
  while (k < targetOrder) {
    LaurentSeries d = series_poly_eval(dP, s);
    if (d.is_zero()) throw std::domain_error("singular seed");
    long v1 = d.val();
    long knew = targetOrder;
    for (size_t i = 2; i < P.size(); ++i) {
      LaurentSeries di = series_poly_eval(taylor_coeff(P, i), s);
      if (di.is_zero() && di.is_exact()) continue;
      knew = std::min(knew, val_bound(di) + static_cast<long>(i) * k - v1);
    }
    if (knew <= k) throw std::domain_error("singular seed");
    long K = std::min(targetOrder, knew);
    LaurentSeries ext = LaurentSeries::from_fraction(s.denom(), s.val(), s.numerators(),
                                                     s.common_denominator(), kExactOrder);
    LaurentSeries pv = series_poly_eval(P, ext);
    LaurentSeries dv = series_poly_eval(dP, ext);
    LaurentSeries delta = series_div(pv.truncated(K + v1), dv.truncated(K + v1 + (K - k)));
    long reached = std::min(K, delta.trunc_order());
    if (reached <= k) throw std::domain_error("series coefficients are truncated below target order");
    s = (ext - delta).truncated(reached);
    k = reached;
    if (reached < K) break;
  }
  return s;
}

SeriesValue eval_series_at_nome(const LaurentSeries& f, const APComplex& nome, long prec) {
  APComplex acc(prec);
  if (!f.is_zero()) {
    for (size_t i = f.size(); i-- > 0;) {
      acc *= nome;
      if (f.numer(i) != 0) acc.re += APReal(f.numer(i), prec);
    }
    acc = acc * ap_pow(nome, f.val());
    APReal den(f.common_denominator(), prec);
    acc.re /= den;
    acc.im /= den;
  }
  APReal tail(prec);
  if (!f.is_exact() && !f.is_zero()) {
    APReal r = ap_abs(nome);
    APReal one = APReal::from_long(1, prec);
    if (r >= one) {
      mpfr_set_inf(tail.raw(), 1);
    } else {
      APReal last = ap_abs(APReal(mpq_class(f.numer(f.size() - 1), f.common_denominator()), prec));
      APReal rt = ap_exp(ap_log(r) * APReal::from_long(f.trunc_order(), prec));
      tail = last * rt / (one - r);
    }
  }
  return {acc, tail};
}

SeriesValue eval_series(const LaurentSeries& f, const APComplex& z, long prec) {
  if (z.im.sign() <= 0) throw PreconditionError("eval_series: Im(z) must be positive");
  APComplex zz = z.with_prec(prec + 32);
  APReal M = APReal::from_long(f.denom(), prec + 32);
  APComplex nome = ap_exp2pii(APComplex(zz.re / M, zz.im / M)).with_prec(prec);
  return eval_series_at_nome(f, nome, prec);
}

// ---------------------------------------------------------------------------
// IntPolyUV
// ---------------------------------------------------------------------------

IntPolyUV::IntPolyUV(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPolyUV IntPolyUV::constant(const mpz_class& c) { return IntPolyUV({c}); }
IntPolyUV IntPolyUV::x_minus(const mpz_class& r) { return IntPolyUV({-r, 1}); }

void IntPolyUV::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class IntPolyUV::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

void IntPolyUV::set_coeff(long i, const mpz_class& v) {
  if (i >= static_cast<long>(c_.size())) c_.resize(static_cast<size_t>(i + 1));
  c_[static_cast<size_t>(i)] = v;
  trim();
}

mpz_class IntPolyUV::content() const {
  mpz_class g = 0;
  for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPolyUV IntPolyUV::primitive() const {
  mpz_class g = content();
  if (g == 0) return *this;
  if (leading() < 0) g = -g;
  std::vector<mpz_class> c = c_;
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return IntPolyUV(std::move(c));
}

IntPolyUV IntPolyUV::derivative() const {
  std::vector<mpz_class> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return IntPolyUV(std::move(d));
}

mpz_class IntPolyUV::norm1() const {
  mpz_class s = 0;
  for (const auto& c : c_) s += abs(c);
  return s;
}

mpz_class IntPolyUV::norm_inf() const {
  mpz_class s = 0;
  for (const auto& c : c_) {
    mpz_class a = abs(c);
    if (a > s) s = a;
  }
  return s;
}

mpz_class IntPolyUV::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

mpq_class IntPolyUV::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

APComplex IntPolyUV::eval(const APComplex& x) const {
  long p = x.prec();
  APComplex acc(p);
  for (size_t i = c_.size(); i-- > 0;) {
    acc *= x;
    acc.re += APReal(c_[i], p);
  }
  return acc;
}

namespace {
std::string monomial_str(const mpz_class& c, bool first, const std::string& mono) {
  std::string out;
  mpz_class a = abs(c);
  if (first) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (mono.empty()) {
    out += a.get_str();
  } else {
    if (a != 1) out += a.get_str() + "*";
    out += mono;
  }
  return out;
}

std::string power_str(const std::string& var, long e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}
}  // namespace

std::string IntPolyUV::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    if (c_[static_cast<size_t>(i)] == 0) continue;
    out += monomial_str(c_[static_cast<size_t>(i)], first, power_str(var, i));
    first = false;
  }
  return out;
}

IntPolyUV operator+(const IntPolyUV& a, const IntPolyUV& b) {
  std::vector<mpz_class> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
  for (size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
  return IntPolyUV(std::move(c));
}

IntPolyUV operator-(const IntPolyUV& a, const IntPolyUV& b) {
  std::vector<mpz_class> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
  for (size_t i = 0; i < b.coeffs().size(); ++i) c[i] -= b.coeffs()[i];
  return IntPolyUV(std::move(c));
}

IntPolyUV operator-(const IntPolyUV& a) {
  std::vector<mpz_class> c = a.coeffs();
  for (auto& v : c) v = -v;
  return IntPolyUV(std::move(c));
}

IntPolyUV operator*(const IntPolyUV& a, const IntPolyUV& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> c(a.coeffs().size() + b.coeffs().size() - 1);
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs().size(); ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), a.coeffs()[i].get_mpz_t(), b.coeffs()[j].get_mpz_t());
    }
  }
  return IntPolyUV(std::move(c));
}

IntPolyUV operator*(const IntPolyUV& a, const mpz_class& k) {
  std::vector<mpz_class> c = a.coeffs();
  for (auto& v : c) v *= k;
  return IntPolyUV(std::move(c));
}

IntPolyUV poly_pow(const IntPolyUV& a, unsigned n) {
  IntPolyUV r = IntPolyUV::constant(1);
  for (unsigned i = 0; i < n; ++i) r = r * a;
  return r;
}

IntPolyUV poly_divexact(const IntPolyUV& a, const IntPolyUV& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw std::domain_error("polynomial does not divide");
  std::vector<mpz_class> r = a.coeffs();
  long db = b.degree();
  std::vector<mpz_class> q(static_cast<size_t>(a.degree() - db + 1));
  const mpz_class& lb = b.leading();
  for (long i = a.degree() - db; i >= 0; --i) {
    mpz_class& top = r[static_cast<size_t>(i + db)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) throw std::domain_error("polynomial does not divide");
    mpz_class t = top / lb;
    q[static_cast<size_t>(i)] = t;
    for (long j = 0; j <= db; ++j) {
      mpz_submul(r[static_cast<size_t>(i + j)].get_mpz_t(), t.get_mpz_t(), b.coeffs()[j].get_mpz_t());
    }
  }
  for (const auto& v : r) {
    if (v != 0) throw std::domain_error("polynomial does not divide");
  }
  return IntPolyUV(std::move(q));
}

bool poly_divides(const IntPolyUV& b, const IntPolyUV& a) {
  try {
    poly_divexact(a, b);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

bool poly_sqrt(const IntPolyUV& a, IntPolyUV& root) {
  if (a.is_zero()) {
    root = IntPolyUV();
    return true;
  }
  if (a.degree() % 2 != 0) return false;
  mpz_class lc = a.leading();
  if (lc < 0 || !mpz_perfect_square_p(lc.get_mpz_t())) return false;
  long m = a.degree() / 2;
  std::vector<mpz_class> r(static_cast<size_t>(m + 1));
  r[m] = sqrt(lc);
  mpz_class two_lead = 2 * r[m];
  for (long i = 1; i <= m; ++i) {
    mpz_class s = a.coeff(2 * m - i);
    for (long j = 1; j < i; ++j) s -= r[m - j] * r[m - i + j];
    if (!mpz_divisible_p(s.get_mpz_t(), two_lead.get_mpz_t())) return false;
    r[m - i] = s / two_lead;
  }
  IntPolyUV cand(std::move(r));
  if (cand * cand != a) return false;
  root = cand;
  return true;
}

mpz_class IntPolyXY::content() const {
  mpz_class g = a.content();
  mpz_class h = b.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h.get_mpz_t());
  return g;
}

long IntPolyXY::pole_order() const {
  long pa = a.is_zero() ? -1 : 2 * a.degree();
  long pb = b.is_zero() ? -1 : 2 * b.degree() + 3;
  return std::max(pa, pb);
}

mpz_class IntPolyXY::leading() const {
  long pa = a.is_zero() ? -1 : 2 * a.degree();
  long pb = b.is_zero() ? -1 : 2 * b.degree() + 3;
  if (pa < 0 && pb < 0) return 0;
  return pa > pb ? a.leading() : b.leading();
}

std::string IntPolyXY::str(const std::string& x, const std::string& y) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  long top = std::max(a.degree(), b.degree());
  for (long d = top; d >= 0; --d) {
    mpz_class cb = b.coeff(d), ca = a.coeff(d);
    std::string xs = power_str(x, d);
    if (cb != 0) {
      out += monomial_str(cb, first, xs.empty() ? y : xs + "*" + y);
      first = false;
    }
    if (ca != 0) {
      out += monomial_str(ca, first, xs);
      first = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complex polynomials
// ---------------------------------------------------------------------------

CPoly cpoly_mul(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  long p = std::min(a[0].prec(), b[0].prec());
  CPoly c(a.size() + b.size() - 1, APComplex(p));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

CPoly cpoly_add(const CPoly& a, const CPoly& b) {
  CPoly c = a.size() >= b.size() ? a : b;
  const CPoly& s = a.size() >= b.size() ? b : a;
  for (size_t i = 0; i < s.size(); ++i) c[i] += s[i];
  return c;
}

CPoly cpoly_sub(const CPoly& a, const CPoly& b) {
  CPoly nb;
  nb.reserve(b.size());
  for (const auto& v : b) nb.push_back(-v);
  return cpoly_add(a, nb);
}

APComplex cpoly_eval(const CPoly& a, const APComplex& x) {
  APComplex acc(x.prec());
  for (size_t i = a.size(); i-- > 0;) {
    acc *= x;
    acc += a[i];
  }
  return acc;
}

CPoly cpoly_div_linear(const CPoly& a, const APComplex& r, APComplex* rem) {
  if (a.empty()) {
    if (rem) *rem = APComplex(r.prec());
    return {};
  }
  CPoly q(a.size() - 1, APComplex(r.prec()));
  APComplex carry = a.back();
  for (size_t i = a.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = a[i] + carry * r;
  }
  if (rem) *rem = carry;
  return q;
}

bool round_to_integers(const std::vector<APComplex>& vals, double tol, std::vector<mpz_class>& out) {
  out.clear();
  for (const auto& v : vals) {
    mpz_class r = v.re.round();
    APReal diff = v.re - APReal(r, v.re.prec());
    if (std::fabs(diff.to_double()) > tol || std::fabs(v.im.to_double()) > tol) return false;
    out.push_back(r);
  }
  return true;
}

}  // namespace genclass

namespace genclass {

namespace {

// Horner evaluation of a and a' at x.
void eval_with_derivative(const CPoly& a, const APComplex& x, APComplex& v, APComplex& d) {
  long p = x.prec();
  v = APComplex(p);
  d = APComplex(p);
  for (size_t i = a.size(); i-- > 0;) {
    d *= x;
    d += v;
    v *= x;
    v += a[i];
  }
}

}  // namespace

std::vector<APComplex> cpoly_roots(const CPoly& a_in, long prec, int maxIter) {
  CPoly a = a_in;
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  if (a.size() <= 1) return {};
  std::vector<APComplex> roots;
  // Roots at zero.
  size_t lo = 0;
  while (a[lo].is_zero()) {
    roots.push_back(APComplex(prec));
    ++lo;
  }
  CPoly b(a.begin() + static_cast<long>(lo), a.end());
  for (auto& c : b) c = c.with_prec(prec);
  size_t n = b.size() - 1;
  if (n == 0) return roots;

  // Upper convex hull of (i, log2|b_i|).
  std::vector<double> lg(n + 1);
  for (size_t i = 0; i <= n; ++i) lg[i] = b[i].is_zero() ? -1e300 : ap_log2abs(b[i]);
  std::vector<size_t> hull;
  for (size_t i = 0; i <= n; ++i) {
    if (lg[i] < -1e299) continue;
    while (hull.size() >= 2) {
      size_t i1 = hull[hull.size() - 2], i2 = hull.back();
      double cross = (lg[i2] - lg[i1]) * static_cast<double>(i - i1) -
                     (lg[i] - lg[i1]) * static_cast<double>(i2 - i1);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<APComplex> z;
  APReal twopi = ap_ldexp(ap_pi(prec), 1);
  size_t count = 0;
  for (size_t h = 0; h + 1 < hull.size(); ++h) {
    size_t i1 = hull[h], i2 = hull[h + 1];
    size_t m = i2 - i1;
    double lr = (lg[i1] - lg[i2]) / static_cast<double>(m);  // log2 of the radius
    for (size_t k = 0; k < m; ++k) {
      double ang = 2 * M_PI * (static_cast<double>(k) / m) + 0.7 + 0.31 * static_cast<double>(h) +
                   0.05 * static_cast<double>(count);
      APReal r = ap_ldexp(APReal(1.0, prec), static_cast<long>(std::floor(lr)));
      r *= APReal(std::exp2(lr - std::floor(lr)), prec);
      z.push_back({r * APReal(std::cos(ang), prec), r * APReal(std::sin(ang), prec)});
      ++count;
    }
  }

  std::vector<bool> done(n, false);
  APComplex v(prec), d(prec);
  for (int it = 0; it < maxIter; ++it) {
    bool all = true;
    for (size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      eval_with_derivative(b, z[k], v, d);
      if (v.is_zero()) {
        done[k] = true;
        continue;
      }
      APComplex ratio = v / d;
      APComplex s(prec);
      for (size_t j = 0; j < n; ++j) {
        if (j != k) s += ap_inv(z[k] - z[j]);
      }
      APComplex one(APReal::from_long(1, prec));
      APComplex w = ratio / (one - ratio * s);
      z[k] -= w;
      double lw = ap_log2abs(w), lz = ap_log2abs(z[k]);
      if (lw < std::max(lz, -static_cast<double>(prec)) - static_cast<double>(prec) + 8) {
        done[k] = true;
      } else {
        all = false;
      }
    }
    if (all) break;
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

double cpoly_newton_polish(const CPoly& a, APComplex& root, int iters) {
  APComplex v(root.prec()), d(root.prec());
  double last = 0;
  for (int i = 0; i < iters; ++i) {
    eval_with_derivative(a, root, v, d);
    if (v.is_zero() || d.is_zero()) return -1e300;
    APComplex step = v / d;
    root -= step;
    last = ap_log2abs(step);
    if (last < ap_log2abs(root) - root.prec() + 4) break;
  }
  return last;
}

}  // namespace genclass
