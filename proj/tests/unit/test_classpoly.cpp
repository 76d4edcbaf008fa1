#include <random>

#include "doctest.h"
#include "genclass/classpoly.hpp"
#include "genclass/errors.hpp"
#include "genclass/lattice.hpp"
#include "genclass/quadforms.hpp"

using namespace genclass;

namespace {

// j = E4^3 / Delta summed directly from the q-expansions (tau in the fundamental domain).
APComplex naive_j(const APComplex& tau, long prec) {
  APComplex q = ap_exp2pii(tau.with_prec(prec));
  APComplex one(APReal::from_long(1, prec));
  APComplex e4 = one, prod = one, qn = one;
  for (long n = 1; n <= 400; ++n) {
    qn *= q;
    long s3 = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) s3 += d * d * d;
    e4 += qn * (240 * s3);
    prod *= one - qn;
  }
  APComplex delta = q * ap_pow(prod, 24);
  return e4 * e4 * e4 / delta;
}

IntPolyXY xy(std::vector<long> a, std::vector<long> b) {
  std::vector<mpz_class> A(a.begin(), a.end()), B(b.begin(), b.end());
  return {IntPolyUV(A), IntPolyUV(B)};
}

std::vector<mpz_class> zv(std::vector<long> v) { return {v.begin(), v.end()}; }

OrbitData orbit_of(long D, long prec = 300) { return orbit(D, 119, default_mode(D), prec); }

}  // namespace

TEST_CASE("Hilbert class polynomials of small discriminants") {
  CHECK(hilbert(-3) == IntPolyUV(zv({0, 1})));
  CHECK(hilbert(-4) == IntPolyUV(zv({-1728, 1})));

  // Direct q-series oracle at the reduced forms.
  for (long D : {-52L, -23L, -56L}) {
    IntPolyUV H = hilbert(D);
    CHECK(H.degree() == class_number(D));
    CHECK(H.leading() == 1);
    long prec = hilbert_precision(D) + 64;
    CPoly P = {APComplex(APReal::from_long(1, prec))};
    for (const QuadForm& f : enumerate_reduced(D)) {
      APComplex j = naive_j(form_to_tau(f, prec), prec);
      P = cpoly_mul(P, CPoly{-j, APComplex(APReal::from_long(1, prec))});
    }
    std::vector<mpz_class> c;
    REQUIRE(round_to_integers(P, 0.25, c));
    CHECK(H == IntPolyUV(c));
  }
}

TEST_CASE("orbit sizes, halving and realness") {
  OrbitData o = orbit_of(-52);
  CHECK(o.members.size() == 2);
  CHECK(o.dedupedSize == 2);
  CHECK(o.subfieldDegree == 1);
  CHECK(o.realFlag);

  // 119 | D: pairs of N-system members give the same point.
  OrbitData r = orbit(-595, 119, CMMode::Ramified, 256);
  CHECK(r.members.size() == static_cast<size_t>(class_number(-595)));
  CHECK(r.dedupedSize * 2 == r.members.size());
  CHECK(r.subfieldDegree == 2);
  CHECK(r.realFlag);

  // D = -19 has class number one: a single, rational point.
  OrbitData one = orbit_of(-19);
  REQUIRE(one.dedupedSize == 1);
  CHECK(one.conjugate[0] == 0);

  CHECK_THROWS_AS(orbit(-52, 7, CMMode::Plus, 256), PreconditionError);
}

TEST_CASE("generalized class functions, standard basis") {
  CurveFunctionBasis std_basis(BasisId::Standard);
  GenClassFunction f52 = genclass_lll(orbit_of(-52), std_basis);
  CHECK(f52.F == xy({1}, {1}));
  CHECK(f52.heegner.x == 1);
  CHECK(f52.heegner.y == -1);

  GenClassFunction f523 = genclass_lll(orbit_of(-523), std_basis);
  // x^3 + x^2 - 2xy - 3x - 2y
  CHECK(f523.F == xy({0, -3, 1, 1}, {-2, -2}));
  CHECK(f523.pole_order() == 6);

  GenClassFunction t523 = genclass_tree(orbit_of(-523), std_basis);
  CHECK(t523.F == f523.F);
  CHECK(points_equal(x0plus119_model(), t523.heegner, f523.heegner));

  for (const GenClassFunction* g : {&f52, &f523}) CHECK(is_torsion(x0plus119_model(), g->heegner));
}

TEST_CASE("generalized class functions, eta basis") {
  CurveFunctionBasis eta(BasisId::EtaMixed);
  // Basis order: 1, x, z, w, xz, xw, ...
  GenClassFunction f52 = genclass_lll(orbit_of(-52), eta);
  CHECK(f52.basisCoeffs == zv({1, -1, 1}));
  CHECK(f52.basis_str() == "z - x + 1");

  // xw - xz - x + 3w + z
  GenClassFunction f523 = genclass_lll(orbit_of(-523), eta);
  CHECK(f523.basisCoeffs == zv({0, -1, 1, 3, -1, 1}));
  GenClassFunction t523 = genclass_tree(orbit_of(-523), eta);
  CHECK(t523.basisCoeffs == f523.basisCoeffs);
  CHECK(f523.F == genclass_lll(orbit_of(-523), CurveFunctionBasis()).F);
}

TEST_CASE("tree and lattice constructions agree") {
  for (long D : {-52L, -523L, -595L, -5347L}) {
    OrbitData o = orbit_of(D, genclass_precision(D));
    GenClassFunction a = genclass_lll(o, CurveFunctionBasis());
    GenClassFunction b = genclass_tree(o, CurveFunctionBasis());
    CHECK(a.F == b.F);
    CHECK(points_equal(x0plus119_model(), a.heegner, b.heegner));
  }
}

TEST_CASE("two-point orbit: divisor of the combined function") {
  OrbitData o = orbit_of(-52);
  GenClassFunction g = genclass_tree(o, CurveFunctionBasis());
  CHECK(g.pole_order() == 3);
  ComplexField k(o.evalPrec);
  CModel E = specialize(x0plus119_model(), k);
  CPoint P1 = CPoint::affine(o.point(0).x, o.point(0).y);
  CPoint P2 = CPoint::affine(o.point(1).x, o.point(1).y);
  CPoint Z = neg(E, add(E, P1, P2));
  REQUIRE_FALSE(Z.inf);
  for (const CPoint& P : {P1, P2, Z}) {
    APComplex v = g.F.a.eval(P.x) + g.F.b.eval(P.x) * P.y;
    CHECK(ap_log2abs(v) < -100);
  }
}

TEST_CASE("basis conversion round trip") {
  CurveFunctionBasis eta(BasisId::EtaMixed);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    std::vector<mpz_class> c(12);
    for (auto& v : c) v = static_cast<long>(rng() % 41) - 20;
    IntPolyXY f = from_basis_coeffs(c, eta);
    CHECK(to_basis_coeffs(f, eta, 12) == c);
    CHECK(from_basis_coeffs(to_basis_coeffs(f, CurveFunctionBasis(), 12), CurveFunctionBasis()) == f);
  }
  CHECK_THROWS_AS(to_basis_coeffs(xy({0, 0, 0, 1}, {}), eta, 4), PreconditionError);
}

TEST_CASE("norm to x") {
  GenClassFunction f52 = genclass_lll(orbit_of(-52), CurveFunctionBasis());
  NormResult n = norm_to_x(f52);
  CHECK(n.T == IntPolyUV(zv({-1, 1})));
  CHECK(n.s * n.s == 1);
  CHECK(n.dPrime == 1);
  CHECK(n.norm == n.T * n.Hx * n.s);

  // Oracle: the integer relation among 1, x, x^2 on the same orbit.
  OrbitData o = orbit_of(-52);
  std::vector<std::vector<APComplex>> rows;
  std::vector<bool> real;
  for (size_t i = 0; i < o.dedupedSize; ++i) {
    const APComplex& x = o.point(i).x;
    rows.push_back({APComplex(APReal::from_long(1, x.prec())), x, x * x});
    real.push_back(false);
  }
  std::vector<mpz_class> rel = integer_relation(rows, 200, 1000000).coeffs;
  if (rel[2] < 0)
    for (auto& c : rel) c = -c;
  CHECK(n.Hx == IntPolyUV(rel));

  // The other orbit for D = -52 has Heegner point O.
  CMParams p{-52, 119, 1, 72, (72 * 72 + 52) / 4};
  GenClassFunction g = genclass_lll(orbit_from(p, 256), CurveFunctionBasis());
  CHECK(g.heegner.inf);
  CHECK(g.F == xy({1, 1}, {}));
  NormResult ng = norm_to_x(g);
  CHECK(ng.T == IntPolyUV::constant(1));
  CHECK(ng.dPrime == 2);
  CHECK(ng.norm == ng.Hx * ng.Hx * ng.s);

  GenClassFunction fake = f52;
  fake.heegner = QPoint::affine(0, 0);
  CHECK_THROWS_AS(norm_to_x(fake), std::logic_error);
}

TEST_CASE("heights and reduction factors") {
  HeightReport h = heights(IntPolyUV(zv({5, -4, 3})));
  CHECK(h.norm1 == 12);
  CHECK(h.normInf == 5);
  CHECK(h.degree == 2);
  CHECK(h.bitLength == 3);
  // Both roots have |alpha|^2 = 5/3, so M = 3 * 5/3.
  CHECK(std::fabs(h.mahler.to_double() - 5.0) < 1e-20);
  CHECK(measure_inequalities_hold(h));

  // (X + 1)^n attains |A|_1 = 2^n M(A).
  HeightReport b = heights(poly_pow(IntPolyUV(zv({1, 1})), 10));
  CHECK(b.norm1 == 1024);
  CHECK(std::fabs(b.mahler.to_double() - 1.0) < 1e-20);
  CHECK(measure_inequalities_hold(b));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<mpz_class> c(1 + rng() % 20);
    for (auto& v : c) v = static_cast<long>(rng() % 2001) - 1000;
    c.back() = 1 + static_cast<long>(rng() % 50);
    CHECK(measure_inequalities_hold(heights(IntPolyUV(c))));
  }

  CHECK(r_curve(119, true) == 72);
  CHECK(r_curve(119, false) == 144);
  CHECK(r_curve(11, false) == 12);

  GenClassFunction f = genclass_lll(orbit_of(-523), CurveFunctionBasis());
  IntPolyUV H = hilbert(-523);
  double r = r_practical(H, f);
  CHECK(r > 1);
  CHECK(measure_inequalities_hold(heights(f)));
}

TEST_CASE("precision schedule and errors") {
  CHECK(genclass_precision(-52) == 256);
  CHECK(hilbert_precision(-4) > 64);
  // The minimal generic b for -15139 violates gcd(c/N, N) = 1, so the orbit is not certified real.
  OrbitData o = orbit(-15139, 119, CMMode::Generic, 256);
  CHECK_FALSE(o.realFlag);
  CHECK_THROWS_AS(genclass_lll(o, CurveFunctionBasis()), PreconditionError);
  GenClassFunction g = compute_genclass(-523, CurveFunctionBasis(), GenAlgo::Tree);
  CHECK(g.F.pole_order() == 6);
}
