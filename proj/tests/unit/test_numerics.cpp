#include <cmath>

#include "doctest.h"
#include "genclass/numerics.hpp"

using namespace genclass;

namespace {

// prod_{n>=1} (1 - q^n)^e up to q^(order-1), by repeated multiplication.
std::vector<mpz_class> euler_product_power(int order, int e) {
  std::vector<mpz_class> c(order);
  c[0] = 1;
  for (int rep = 0; rep < e; ++rep) {
    for (int n = 1; n < order; ++n) {
      for (int k = order - 1; k >= n; --k) c[k] -= c[k - n];
    }
  }
  return c;
}

LaurentSeries random_series(unsigned& state, long val, long len, long trunc) {
  std::vector<mpz_class> c(len);
  for (auto& v : c) {
    state = state * 1103515245u + 12345u;
    v = static_cast<long>((state >> 16) % 21) - 10;
  }
  c[0] = 1 + static_cast<long>(state % 3);
  return LaurentSeries::from_fraction(1, val, c, 1 + static_cast<long>(state % 4), trunc);
}

}  // namespace

TEST_CASE("APReal precision follows the smaller operand") {
  APReal a(1.5, 200), b(2.25, 100);
  CHECK((a + b).prec() == 100);
  CHECK((a * b).prec() == 100);
  a += b;
  CHECK(a.prec() == 100);
  CHECK(a.to_double() == doctest::Approx(3.75));
}

TEST_CASE("complex arithmetic and elementary functions") {
  APComplex z(0.5, -1.25, 128), w(-2.0, 0.75, 128);
  APComplex q = (z * w) / w;
  CHECK(std::fabs((q - z).re.to_double()) < 1e-30);
  CHECK(std::fabs((q - z).im.to_double()) < 1e-30);
  APComplex s = ap_sqrt(w);
  APComplex back = s * s;
  CHECK(std::fabs((back - w).re.to_double()) < 1e-30);
  CHECK(std::fabs((back - w).im.to_double()) < 1e-30);
  CHECK(s.re.sign() > 0);
  APComplex e = ap_exp2pii(APComplex(0.0, 1.0, 128));
  CHECK(e.re.to_double() == doctest::Approx(std::exp(-2 * M_PI)));
}

TEST_CASE("series_mul monomial shift and identity") {
  auto f = LaurentSeries::from_integers(1, -1, {1, 1}, kExactOrder);
  auto q = LaurentSeries::monomial(1, 1);
  auto p = f * q;
  CHECK(p.val() == 0);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == 1);
  CHECK(p.size() == 2);
  auto one = LaurentSeries::constant(1);
  CHECK(f * one == f);
}

TEST_CASE("series_mul truncation order") {
  auto f = LaurentSeries::from_integers(1, -2, {1, 2, 3}, 5);
  auto g = LaurentSeries::from_integers(1, 1, {1, 1}, 4);
  auto h = f * g;
  CHECK(h.trunc_order() == std::min(5 + 1, 4 - 2));
}

TEST_CASE("series_mul mismatched denominators") {
  auto f = LaurentSeries::constant(1, 2);
  auto g = LaurentSeries::constant(1, 3);
  CHECK_THROWS(f * g);
}

TEST_CASE("eta squared leading terms") {
  auto c = euler_product_power(12, 1);
  auto p = LaurentSeries::from_integers(1, 0, c, 12);
  auto sq = p * p;
  auto ref = euler_product_power(12, 2);
  CHECK(ref[0] == 1);
  CHECK(ref[1] == -2);
  CHECK(ref[2] == -1);
  CHECK(ref[3] == 2);
  for (long k = 0; k < 12; ++k) CHECK(sq.coeff(k) == ref[k]);
}

TEST_CASE("series ring laws") {
  unsigned st = 7;
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_series(st, -2, 9, 10);
    auto g = random_series(st, 0, 7, 12);
    auto h = random_series(st, 1, 8, 9);
    auto lhs = (f + g) * h;
    auto rhs = f * h + g * h;
    REQUIRE(lhs.trunc_order() == rhs.trunc_order());
    for (long e = std::min(lhs.val(), rhs.val()); e < lhs.trunc_order(); ++e) {
      CHECK(lhs.coeff(e) == rhs.coeff(e));
    }
  }
}

TEST_CASE("series inverse and division") {
  unsigned st = 3;
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_series(st, -3, 10, 8);
    auto inv = series_inverse(f);
    auto one = f * inv;
    CHECK(one.val() == 0);
    for (long e = 0; e < one.trunc_order(); ++e) CHECK(one.coeff(e) == (e == 0 ? 1 : 0));
  }
}

TEST_CASE("newton root: binomial series") {
  auto onepq = LaurentSeries::from_integers(1, 0, {1, 1}, kExactOrder);
  SeriesPoly P = {-onepq, LaurentSeries::constant(0), LaurentSeries::constant(1)};
  auto seed = LaurentSeries::constant(1, 1, 1);
  auto s = series_newton_root(P, seed, 12);
  CHECK(s.trunc_order() >= 12);
  // sqrt(1+q) = sum binom(1/2, k) q^k
  mpq_class b = 1;
  for (long k = 0; k < 12; ++k) {
    CHECK(s.coeff(k) == b);
    b = b * (mpq_class(1, 2) - k) / (k + 1);
  }
  CHECK(s.coeff(1) == mpq_class(1, 2));
  CHECK(s.coeff(2) == mpq_class(-1, 8));
}

TEST_CASE("newton root: linear polynomial returns f") {
  auto f = LaurentSeries::from_integers(1, -1, {3, 1, 4, 1, 5, 9, 2, 6}, 7);
  SeriesPoly P = {-f, LaurentSeries::constant(1)};
  auto seed = LaurentSeries::monomial(3, -1, 1, 0);
  auto s = series_newton_root(P, seed, 7);
  CHECK(s == f);
}

TEST_CASE("newton root: doubling of correct terms") {
  // Compare each step with an undetermined-coefficients solution.
  auto onepq = LaurentSeries::from_integers(1, 0, {1, 1}, kExactOrder);
  SeriesPoly P = {-onepq, LaurentSeries::constant(0), LaurentSeries::constant(1)};
  auto full = series_newton_root(P, LaurentSeries::constant(1, 1, 1), 64);
  auto seed = LaurentSeries::constant(1, 1, 1);
  long m = 1;
  for (int k = 1; k <= 4; ++k) {
    auto s = series_newton_root(P, seed, 1L << k);
    CHECK(s.trunc_order() >= (1L << k) * m);
    for (long e = 0; e < s.trunc_order(); ++e) CHECK(s.coeff(e) == full.coeff(e));
  }
}

TEST_CASE("newton root: singular seed") {
  // P = Y^2, seed 0 has P'(seed) = 0.
  SeriesPoly P = {LaurentSeries::constant(0), LaurentSeries::constant(0), LaurentSeries::constant(1)};
  CHECK_THROWS_WITH(series_newton_root(P, LaurentSeries::zero(1, 1), 8), "singular seed");
}

TEST_CASE("eval_series basics") {
  APComplex i(0.0, 1.0, 128);
  auto one = LaurentSeries::constant(1);
  CHECK(eval_series(one, i, 128).value.re.to_double() == doctest::Approx(1.0));
  auto q = LaurentSeries::monomial(1, 1);
  CHECK(eval_series(q, i, 128).value.re.to_double() == doctest::Approx(0.00186744273170799));
  CHECK_THROWS(eval_series(q, APComplex(0.0, -1.0, 128), 128));
}

TEST_CASE("eval_series: eta at i") {
  auto c = euler_product_power(40, 1);
  auto eta = LaurentSeries::from_integers(1, 0, c, 40).with_denom(24).shifted(1);
  auto v = eval_series(eta, APComplex(0.0, 1.0, 200), 200);
  // Independent oracle: truncated product at q = e^{-2 pi}.
  double qd = std::exp(-2 * M_PI), prod = std::exp(-2 * M_PI / 24);
  for (int n = 1; n < 60; ++n) prod *= 1 - std::pow(qd, n);
  CHECK(v.value.re.to_double() == doctest::Approx(prod).epsilon(1e-14));
  CHECK(v.value.re.to_double() == doctest::Approx(0.768225422326056659).epsilon(1e-14));
}

TEST_CASE("eval_series tail bound") {
  auto c = euler_product_power(60, 1);
  auto full = LaurentSeries::from_integers(1, 0, c, 60);
  APComplex z(0.1, 0.8, 200);
  auto big = eval_series(full, z, 200);
  auto half = eval_series(full.truncated(30), z, 200);
  APReal diff = ap_abs(big.value - half.value);
  CHECK(diff <= half.tailBound + big.tailBound);
}

TEST_CASE("IntPolyUV arithmetic") {
  IntPolyUV p({5, -4, 3});
  CHECK(p.norm1() == 12);
  CHECK(p.norm_inf() == 5);
  IntPolyUV q({1, 1});
  auto r = p * q;
  CHECK(poly_divexact(r, q) == p);
  CHECK_THROWS(poly_divexact(p, IntPolyUV({1, 2})));
  IntPolyUV root;
  CHECK(poly_sqrt(r * r, root));
  CHECK((root == r || root == -r));
  CHECK_FALSE(poly_sqrt(r, root));
  CHECK(p.str() == "3*X^2 - 4*X + 5");
}

TEST_CASE("IntPolyXY pole order and leading coefficient") {
  IntPolyXY f{IntPolyUV({0, -3, 1, 1}), IntPolyUV({-2, -2})};
  CHECK(f.pole_order() == 6);
  CHECK(f.leading() == 1);
  CHECK(f.str() == "x^3 + x^2 - 2*x*y - 3*x - 2*y");
}
