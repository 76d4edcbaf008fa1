#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "genclass/errors.hpp"
#include "genclass/numerics.hpp"

namespace genclass {

// ---------------------------------------------------------------------------
// Fields. Each provides Elem, zero/one/from_int, add/sub/mul/inv/neg and an
// equality test (exact, or to about prec/2 bits for approximate fields).
// ---------------------------------------------------------------------------

struct RationalField {
  using Elem = mpq_class;
  Elem from_int(long v) const { return Elem(v); }
  Elem from_mpq(const mpq_class& v) const { return v; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return 1 / a; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

struct PrimeField {
  mpz_class p;
  using Elem = mpz_class;
  explicit PrimeField(mpz_class prime) : p(std::move(prime)) {}
  Elem reduce(const mpz_class& v) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  Elem from_int(long v) const { return reduce(mpz_class(v)); }
  Elem from_mpq(const mpq_class& v) const { return mul(reduce(v.get_num()), inv(reduce(v.get_den()))); }
  Elem add(const Elem& a, const Elem& b) const { return reduce(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return reduce(a - b); }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(a * b); }
  Elem neg(const Elem& a) const { return reduce(-a); }
  Elem inv(const Elem& a) const {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) {
      throw std::domain_error("PrimeField: inverse of zero");
    }
    return r;
  }
  Elem pow(const Elem& a, const mpz_class& e) const {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  bool is_zero(const Elem& a) const { return reduce(a) == 0; }
  bool eq(const Elem& a, const Elem& b) const { return reduce(a - b) == 0; }
  // Legendre symbol of a.
  int legendre(const Elem& a) const;
  // A square root of a square a (Tonelli-Shanks).
  Elem sqrt(const Elem& a) const;
};

struct ComplexField {
  long prec;
  using Elem = APComplex;
  explicit ComplexField(long precision) : prec(precision) {}
  Elem from_int(long v) const { return APComplex(APReal::from_long(v, prec)); }
  Elem from_mpq(const mpq_class& v) const { return APComplex(APReal(v, prec)); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return ap_inv(a); }
  bool is_zero(const Elem& a) const { return a.is_zero() || ap_log2abs(a) < -static_cast<double>(prec) / 2; }
  // Relative comparison at about prec/2 bits.
  bool eq(const Elem& a, const Elem& b) const {
    double scale = std::max({0.0, ap_log2abs(a), ap_log2abs(b)});
    APComplex d = a - b;
    return d.is_zero() || ap_log2abs(d) < scale - static_cast<double>(prec) / 2;
  }
};

// ---------------------------------------------------------------------------
// Long Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
// ---------------------------------------------------------------------------

template <class F>
struct WeierstrassModel {
  F field;
  typename F::Elem a1, a2, a3, a4, a6;
};

template <class F>
struct CurvePoint {
  bool inf = true;
  typename F::Elem x{}, y{};
  static CurvePoint infinity() { return CurvePoint(); }
  static CurvePoint affine(typename F::Elem X, typename F::Elem Y) {
    CurvePoint P;
    P.inf = false;
    P.x = std::move(X);
    P.y = std::move(Y);
    return P;
  }
};

using QModel = WeierstrassModel<RationalField>;
using QPoint = CurvePoint<RationalField>;
using FpModel = WeierstrassModel<PrimeField>;
using FpPoint = CurvePoint<PrimeField>;
using CModel = WeierstrassModel<ComplexField>;
using CPoint = CurvePoint<ComplexField>;

template <class F>
bool on_curve(const WeierstrassModel<F>& E, const CurvePoint<F>& P) {
  if (P.inf) return true;
  const F& k = E.field;
  auto lhs = k.mul(P.y, k.add(P.y, k.add(k.mul(E.a1, P.x), E.a3)));
  auto x2 = k.mul(P.x, P.x);
  auto rhs = k.add(k.add(k.mul(x2, k.add(P.x, E.a2)), k.mul(E.a4, P.x)), E.a6);
  return k.eq(lhs, rhs);
}

template <class F>
CurvePoint<F> neg(const WeierstrassModel<F>& E, const CurvePoint<F>& P) {
  if (P.inf) return P;
  const F& k = E.field;
  return CurvePoint<F>::affine(P.x, k.sub(k.neg(P.y), k.add(k.mul(E.a1, P.x), E.a3)));
}

template <class F>
CurvePoint<F> add(const WeierstrassModel<F>& E, const CurvePoint<F>& P, const CurvePoint<F>& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const F& k = E.field;
  typename F::Elem lam, nu;
  if (k.eq(P.x, Q.x)) {
    // Either Q = -P or a doubling.
    auto ysum = k.add(k.add(P.y, Q.y), k.add(k.mul(E.a1, Q.x), E.a3));
    if (k.is_zero(ysum)) return CurvePoint<F>::infinity();
    auto x2 = k.mul(P.x, P.x);
    auto num = k.sub(k.add(k.add(k.mul(k.from_int(3), x2), k.mul(k.mul(k.from_int(2), E.a2), P.x)), E.a4),
                     k.mul(E.a1, P.y));
    auto den = k.add(k.add(k.mul(k.from_int(2), P.y), k.mul(E.a1, P.x)), E.a3);
    lam = k.mul(num, k.inv(den));
  } else {
    lam = k.mul(k.sub(Q.y, P.y), k.inv(k.sub(Q.x, P.x)));
  }
  nu = k.sub(P.y, k.mul(lam, P.x));
  auto x3 = k.sub(k.sub(k.sub(k.add(k.mul(lam, lam), k.mul(E.a1, lam)), E.a2), P.x), Q.x);
  auto y3 = k.sub(k.neg(k.mul(k.add(lam, E.a1), x3)), k.add(nu, E.a3));
  return CurvePoint<F>::affine(x3, y3);
}

template <class F>
CurvePoint<F> mul(const WeierstrassModel<F>& E, const mpz_class& n_in, const CurvePoint<F>& P) {
  mpz_class n = n_in;
  CurvePoint<F> base = P;
  if (n < 0) {
    n = -n;
    base = neg(E, P);
  }
  CurvePoint<F> acc = CurvePoint<F>::infinity();
  for (long i = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; i >= 0; --i) {
    acc = add(E, acc, acc);
    if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) acc = add(E, acc, base);
  }
  return acc;
}

template <class F>
bool points_equal(const WeierstrassModel<F>& E, const CurvePoint<F>& P, const CurvePoint<F>& Q) {
  if (P.inf || Q.inf) return P.inf == Q.inf;
  return E.field.eq(P.x, Q.x) && E.field.eq(P.y, Q.y);
}

// ---------------------------------------------------------------------------
// Invariants and model changes.
// ---------------------------------------------------------------------------

struct Invariants {
  mpq_class b2, b4, b6, b8, c4, c6, disc;
};
Invariants invariants(const QModel& E);
// j-invariant; throws PreconditionError for a singular model.
mpq_class j_invariant(const QModel& E);

// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ModelChange {
  mpq_class u = 1, r = 0, s = 0, t = 0;
  ModelChange inverse() const;
};

template <class F>
WeierstrassModel<F> apply_change(const WeierstrassModel<F>& E, const ModelChange& c) {
  const F& k = E.field;
  auto u = k.from_mpq(c.u), r = k.from_mpq(c.r), s = k.from_mpq(c.s), t = k.from_mpq(c.t);
  auto ui = k.inv(u);
  auto ui2 = k.mul(ui, ui);
  auto ui3 = k.mul(ui2, ui);
  auto ui4 = k.mul(ui2, ui2);
  auto ui6 = k.mul(ui3, ui3);
  auto two = k.from_int(2), three = k.from_int(3);
  auto z = k.from_int(0);
  WeierstrassModel<F> R{k, z, z, z, z, z};
  R.a1 = k.mul(ui, k.add(E.a1, k.mul(two, s)));
  R.a2 = k.mul(ui2, k.sub(k.add(k.sub(E.a2, k.mul(s, E.a1)), k.mul(three, r)), k.mul(s, s)));
  R.a3 = k.mul(ui3, k.add(k.add(E.a3, k.mul(r, E.a1)), k.mul(two, t)));
  auto a4 = k.sub(E.a4, k.mul(s, E.a3));
  a4 = k.add(a4, k.mul(k.mul(two, r), E.a2));
  a4 = k.sub(a4, k.mul(k.add(t, k.mul(r, s)), E.a1));
  a4 = k.add(a4, k.mul(three, k.mul(r, r)));
  a4 = k.sub(a4, k.mul(k.mul(two, s), t));
  R.a4 = k.mul(ui4, a4);
  auto a6 = k.add(E.a6, k.mul(r, E.a4));
  a6 = k.add(a6, k.mul(k.mul(r, r), E.a2));
  a6 = k.add(a6, k.mul(k.mul(r, r), r));
  a6 = k.sub(a6, k.mul(t, E.a3));
  a6 = k.sub(a6, k.mul(t, t));
  a6 = k.sub(a6, k.mul(k.mul(r, t), E.a1));
  R.a6 = k.mul(ui6, a6);
  return R;
}

// Image of P (on the source model) on the changed model.
template <class F>
CurvePoint<F> map_point(const F& k, const CurvePoint<F>& P, const ModelChange& c) {
  if (P.inf) return P;
  auto u = k.from_mpq(c.u), r = k.from_mpq(c.r), s = k.from_mpq(c.s), t = k.from_mpq(c.t);
  auto ui = k.inv(u);
  auto ui2 = k.mul(ui, ui);
  auto xr = k.sub(P.x, r);
  auto x = k.mul(ui2, xr);
  auto y = k.mul(k.mul(ui2, ui), k.sub(k.sub(P.y, k.mul(s, xr)), t));
  return CurvePoint<F>::affine(x, y);
}

// ---------------------------------------------------------------------------
// The curve y^2 + 3xy - y = x^3 - 3x^2 + x (X0+(119)) and its torsion.
// ---------------------------------------------------------------------------

QModel x0plus119_model();
// Change to y'^2 = x^3 - (3/4) x^2 - (1/2) x + 1/4 (completing the square).
ModelChange x0plus119_to_odd();
QModel model_over_q(long a1, long a2, long a3, long a4, long a6);

template <class F>
WeierstrassModel<F> specialize(const QModel& E, const F& k) {
  return {k, k.from_mpq(E.a1), k.from_mpq(E.a2), k.from_mpq(E.a3), k.from_mpq(E.a4), k.from_mpq(E.a6)};
}
template <class F>
CurvePoint<F> specialize(const QPoint& P, const F& k) {
  if (P.inf) return CurvePoint<F>::infinity();
  return CurvePoint<F>::affine(k.from_mpq(P.x), k.from_mpq(P.y));
}

// True iff n P = O for some 1 <= n <= bound.
bool is_torsion(const QModel& E, const QPoint& P, int bound = 16);
// Smallest such n, or 0.
int torsion_order(const QModel& E, const QPoint& P, int bound = 16);

std::string point_str(const QPoint& P);

// ---------------------------------------------------------------------------
// Curves over prime fields.
// ---------------------------------------------------------------------------

// j-invariant over F_p.
mpz_class j_invariant(const FpModel& E);
// Short model y^2 = x^3 + A x + B isomorphic over F_p (p > 3).
FpModel short_model(const FpModel& E);
// Curve with j-invariant j0 over F_p (p > 3).
FpModel curve_from_j(const PrimeField& k, const mpz_class& j0);
// Twists of E: the quadratic pair, or the sextic / quartic families for
// j = 0 / 1728. Throws PreconditionError for p = 2, 3.
std::vector<FpModel> twists(const FpModel& E);
// Exact #E(F_p) by scanning x; p <= 10^6 (throws PreconditionError above).
mpz_class point_count_naive(const FpModel& E);
FpPoint random_point(const FpModel& E, std::mt19937_64& rng);
// False if some random point Q has n Q != O.
bool order_probable(const FpModel& E, const mpz_class& n, int trials, std::mt19937_64& rng);

}  // namespace genclass
