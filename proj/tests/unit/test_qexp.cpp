#include <cmath>
#include <random>

#include "doctest.h"
#include "genclass/errors.hpp"
#include "genclass/qexp.hpp"

using namespace genclass;

namespace {

// Naive power-series arithmetic on coefficient vectors, independent of LaurentSeries.
using Vec = std::vector<mpz_class>;

Vec naive_mul(const Vec& a, const Vec& b, size_t n) {
  Vec c(n, 0);
  for (size_t i = 0; i < a.size() && i < n; ++i) {
    for (size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Vec naive_euler(size_t n) {
  Vec c(n, 0);
  c[0] = 1;
  for (size_t k = 1; k < n; ++k) {
    for (size_t i = n - 1; i >= k; --i) c[i] -= c[i - k];
  }
  return c;
}

// 1/a for a[0] = 1.
Vec naive_inverse(const Vec& a, size_t n) {
  Vec r(n, 0);
  r[0] = 1;
  for (size_t i = 1; i < n; ++i) {
    mpz_class s = 0;
    for (size_t k = 1; k <= i && k < a.size(); ++k) s += a[k] * r[i - k];
    r[i] = -s;
  }
  return r;
}

APComplex random_tau(std::mt19937_64& rng, double imLo, double imHi, long prec) {
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(imLo, imHi);
  return APComplex(re(rng), im(rng), prec);
}

double rel_err(const APComplex& a, const APComplex& b) {
  return ap_log2abs(a - b) - std::max(ap_log2abs(a), ap_log2abs(b));
}

APComplex heegner_tau(long a, long b, long D, long prec) {
  APReal s = ap_sqrt(APReal::from_long(-D, prec));
  APReal den = APReal::from_long(2 * a, prec);
  return {APReal::from_long(-b, prec) / den, s / den};
}

}  // namespace

TEST_CASE("eta series against the product expansion") {
  LaurentSeries eta = eta_series(40);
  CHECK(eta.denom() == 24);
  CHECK(eta.val() == 1);
  Vec p = naive_euler(40);
  for (long n = 0; n < 40; ++n) CHECK(eta.coeff(1 + 24 * n) == p[static_cast<size_t>(n)]);
  CHECK(eta.coeff(2) == 0);
  LaurentSeries e24 = series_pow(eta, 24).contracted(24);
  CHECK(e24.val() == 1);
  CHECK(e24.coeff(1) == 1);
  CHECK(e24.coeff(2) == -24);
  CHECK(e24.coeff(3) == 252);
}

TEST_CASE("j series equals E4^3 / Delta computed naively") {
  const size_t n = 30;
  Vec e4(n + 1, 0);
  e4[0] = 1;
  for (size_t k = 1; k <= n; ++k) {
    mpz_class s = 0;
    for (size_t d = 1; d <= k; ++d) {
      if (k % d == 0) s += mpz_class(d) * d * d;
    }
    e4[k] = 240 * s;
  }
  Vec cube = naive_mul(naive_mul(e4, e4, n + 1), e4, n + 1);
  Vec p24(1, 1);
  Vec p = naive_euler(n + 1);
  for (int i = 0; i < 24; ++i) p24 = naive_mul(p24, p, n + 1);
  Vec j = naive_mul(cube, naive_inverse(p24, n + 1), n + 1);  // q * j
  LaurentSeries js = j_series(static_cast<long>(n));
  CHECK(js.val() == -1);
  for (size_t k = 0; k < n; ++k) CHECK(js.coeff(static_cast<long>(k) - 1) == j[k]);
  CHECK(js.coeff(0) == 744);
  CHECK(js.coeff(1) == 196884);
}

TEST_CASE("w717 series shape") {
  LaurentSeries w = w717_series(50);
  CHECK(w.denom() == 119);
  CHECK(w.val() == -4);
  CHECK(w.leading() == 1);
  CHECK(w.is_integral());
}

TEST_CASE("x and y series reproduce the published coefficients") {
  XYSeries s = xy_series(200);
  std::vector<long> xc = {1, 1, 1, 1, 2, 2, 3, 3, 4, 5};
  std::vector<long> yc = {1, 0, 0, 1, 2, 2, 4, 4, 7, 9, 12};
  for (size_t i = 0; i < xc.size(); ++i) CHECK(s.x.coeff(-2 + static_cast<long>(i)) == xc[i]);
  for (size_t i = 0; i < yc.size(); ++i) CHECK(s.y.coeff(-3 + static_cast<long>(i)) == yc[i]);
  CHECK(s.x.is_integral());
  CHECK(s.y.is_integral());

  LaurentSeries lhs = s.y * s.y + s.x.scaled(3) * s.y - s.y;
  LaurentSeries rhs = s.x * s.x * s.x - s.x.scaled(3) * s.x + s.x;
  LaurentSeries res = lhs - rhs;
  CHECK(res.trunc_order() > 150);
  for (long e = res.val(); e < res.trunc_order(); ++e) CHECK(res.coeff(e) == 0);

  LaurentSeries w = w717_series(200);
  LaurentSeries diff = w - (s.x * s.x - s.x - s.y);
  for (long e = -4; e < diff.trunc_order(); ++e) CHECK(diff.coeff(e) == 0);
}

TEST_CASE("x quartic follows from the curve equation and w = x^2 - x - y") {
  // Substitute y = x^2 - x - w into y^2 + 3xy - y - x^3 + 3x^2 - x over Z[x, w].
  // Coefficient table c[i][k] of x^i w^k, computed by hand-free expansion.
  std::vector<std::vector<long>> y = {{0, -1}, {-1, 0}, {1, 0}};  // y as poly in x with w-coeffs
  auto mul = [](const std::vector<std::vector<long>>& a, const std::vector<std::vector<long>>& b) {
    std::vector<std::vector<long>> c(a.size() + b.size() - 1, std::vector<long>(4, 0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        for (size_t k = 0; k < a[i].size(); ++k)
          for (size_t l = 0; l < b[j].size() && k + l < 4; ++l) c[i + j][k + l] += a[i][k] * b[j][l];
    return c;
  };
  auto add = [](std::vector<std::vector<long>> a, const std::vector<std::vector<long>>& b, long s) {
    if (a.size() < b.size()) a.resize(b.size(), std::vector<long>(4, 0));
    for (size_t i = 0; i < b.size(); ++i) {
      a[i].resize(4, 0);
      for (size_t k = 0; k < b[i].size(); ++k) a[i][k] += s * b[i][k];
    }
    return a;
  };
  std::vector<std::vector<long>> X = {{0}, {1}};
  auto e = mul(y, y);
  e = add(e, mul(mul(X, y), {{3}}), 1);
  e = add(e, y, -1);
  e = add(e, {{0}, {1}, {-3}, {1}}, -1);
  // Expected: x^4 - 2w x^2 - w x + w^2 + w, up to overall sign.
  std::vector<std::vector<long>> expect = {{0, 1, 1, 0}, {0, -1, 0, 0}, {0, -2, 0, 0}, {0, 0, 0, 0},
                                           {1, 0, 0, 0}};
  e.resize(5, std::vector<long>(4, 0));
  for (auto& row : e) row.resize(4, 0);
  CHECK(e == expect);
}

TEST_CASE("eta transformation identities at random points") {
  std::mt19937_64 rng(7);
  const long prec = 200;
  for (int t = 0; t < 5; ++t) {
    APComplex z = random_tau(rng, 0.3, 2.0, prec);
    APComplex e = eta_eval(z, prec);
    APComplex one(APReal::from_long(1, prec));
    APComplex e1 = eta_eval(z + one, prec);
    APReal ang = ap_pi(prec) / APReal::from_long(12, prec);
    APComplex phase(ap_cos(ang), ap_sin(ang));
    CHECK(rel_err(e1, phase * e) < -prec / 2);
    APComplex einv = eta_eval(-ap_inv(z), prec);
    APComplex mi_z(z.im, -z.re);
    CHECK(rel_err(einv, ap_sqrt(mi_z) * e) < -prec / 2);
  }
}

TEST_CASE("eta at i") {
  APComplex i(APReal(0.0, 128), APReal::from_long(1, 128));
  CHECK(eta_eval(i, 128).re.to_double() == doctest::Approx(0.768225422326056659));
}

TEST_CASE("j at i and at rho") {
  const long prec = 256;
  APComplex i(APReal(0.0, prec), APReal::from_long(1, prec));
  APComplex v = j_eval(i, prec);
  CHECK(ap_log2abs(v - APComplex(APReal::from_long(1728, prec))) < -200);
  APComplex rho = heegner_tau(1, 1, -3, prec);
  CHECK(ap_log2abs(j_eval(rho, prec)) < -200);
  // Far from the fundamental domain.
  APComplex t = heegner_tau(7, 5, -3, prec);
  CHECK(ap_log2abs(j_eval(t, prec)) < -180);
}

TEST_CASE("w, x, y are Fricke invariant") {
  std::mt19937_64 rng(11);
  const long prec = 160;
  APReal n119 = APReal::from_long(119, prec + 32);
  for (int t = 0; t < 5; ++t) {
    APComplex z = random_tau(rng, 4.0, 40.0, prec + 32);
    APComplex zf = -(ap_inv(z) * n119);
    CHECK(rel_err(w717_eval(z, prec), w717_eval(zf, prec)) < -prec / 2);
    XYValue a = xy_eval(z, prec), b = xy_eval(zf, prec);
    CHECK(rel_err(a.x, b.x) < -prec / 2);
    CHECK(rel_err(a.y, b.y) < -prec / 2);
  }
}

TEST_CASE("modular and series evaluation agree where the nome is small") {
  std::mt19937_64 rng(3);
  const long prec = 120;
  for (int t = 0; t < 3; ++t) {
    APComplex z = random_tau(rng, 60.0, 90.0, prec + 32);
    XYValue m = xy_eval(z, prec, EvalMethod::Modular);
    XYValue s = xy_eval(z, prec, EvalMethod::Series);
    CHECK(rel_err(m.x, s.x) < -prec / 2);
    CHECK(rel_err(m.y, s.y) < -prec / 2);
  }
}

TEST_CASE("series evaluation reports unreachable precision") {
  APComplex z(0.1, 0.05, 200);
  CHECK_THROWS_AS(xy_eval(z, 4000, EvalMethod::Series), PrecisionError);
  CHECK_THROWS_AS(xy_eval(APComplex(0.1, -1.0, 64), 64), PreconditionError);
}

TEST_CASE("basis orders") {
  CurveFunctionBasis eta(BasisId::EtaMixed);
  std::vector<std::string> names;
  for (auto& e : eta.first(10)) names.push_back(e.str());
  std::vector<std::string> expect = {"1", "x", "z", "w", "x*z", "w*x", "w*z", "w^2", "w*x*z", "w^2*x"};
  CHECK(names == expect);
  CurveFunctionBasis st(BasisId::Standard);
  names.clear();
  for (auto& e : st.first(7)) names.push_back(e.str());
  expect = {"1", "x", "y", "x^2", "x*y", "x^3", "x^2*y"};
  CHECK(names == expect);
  for (auto& e : eta.first(30)) CHECK(e.to_xy().pole_order() == e.pole);
  CHECK(CurveFunctionBasis::from_name("etaMixed").id() == BasisId::EtaMixed);
  CHECK_THROWS_AS(CurveFunctionBasis::from_name("other"), PreconditionError);
}

TEST_CASE("basis element expansions match their series") {
  XYSeries s = xy_series(120);
  LaurentSeries w = w717_series(120);
  LaurentSeries z = s.x + s.y;
  for (auto& e : CurveFunctionBasis(BasisId::EtaMixed).first(16)) {
    LaurentSeries direct = LaurentSeries::constant(1, 119);
    for (int i = 0; i < e.ew; ++i) direct = direct * w;
    for (int i = 0; i < e.ex; ++i) direct = direct * s.x;
    for (int i = 0; i < e.ez; ++i) direct = direct * z;
    LaurentSeries diff = direct - xy_poly_series(e.to_xy(), s);
    for (long k = diff.val(); k < 60; ++k) CHECK(diff.coeff(k) == 0);
  }
}

TEST_CASE("basis values at a Heegner point") {
  const long prec = 200;
  APComplex tau = heegner_tau(1, 30, -52, prec + 64);
  std::vector<APComplex> v = basis_eval(CurveFunctionBasis(BasisId::Standard), 5, tau, prec);
  CHECK(ap_log2abs(v[0] - APComplex(APReal::from_long(1, prec))) < -prec);
  CHECK(rel_err(v[4], v[1] * v[2]) < -prec + 8);
  // y + 1 vanishes on this orbit.
  CHECK(ap_log2abs(v[2] + APComplex(APReal::from_long(1, prec))) < -prec + 8);
  XYValue xy = xy_eval(tau, prec);
  CHECK(rel_err(xy.w, xy.x * xy.x - xy.x - xy.y) < -prec + 8);
  std::vector<APComplex> e = basis_eval(CurveFunctionBasis(BasisId::EtaMixed), 4, tau, prec);
  CHECK(rel_err(e[3], xy.w) < -prec + 8);
}

TEST_CASE("relation between x, y and j(z), j(z/119)") {
  const PlusJRelation& rel = plus_j_relation();
  CHECK(rel.poleBound == 144);
  CHECK(rel.f2.pole_order() == 24);
  CHECK(rel.f1.pole_order() == 143);
  CHECK(rel.f0.pole_order() == 144);
  CHECK(rel.f2.leading() == 1);
  // No relation exists below pole order 144.
  CHECK_THROWS_AS(find_plus_j_relation(140), PreconditionError);

  std::mt19937_64 rng(5);
  const long prec = 300;
  for (int t = 0; t < 3; ++t) {
    APComplex z = random_tau(rng, 2.0, 30.0, prec + 32);
    XYValue v = xy_eval(z, prec);
    APComplex j1 = j_eval(z, prec);
    APComplex j2 = j_eval(APComplex(z.re / APReal::from_long(119, prec + 32),
                                    z.im / APReal::from_long(119, prec + 32)),
                          prec);
    APComplex f0 = rel.f0.a.eval(v.x) + rel.f0.b.eval(v.x) * v.y;
    APComplex f1 = rel.f1.a.eval(v.x) + rel.f1.b.eval(v.x) * v.y;
    APComplex f2 = rel.f2.a.eval(v.x) + rel.f2.b.eval(v.x) * v.y;
    APComplex r = f2 * j1 * j1 + f1 * j1 + f0;
    CHECK(ap_log2abs(r) - ap_log2abs(f0) < -100);
  }
}
