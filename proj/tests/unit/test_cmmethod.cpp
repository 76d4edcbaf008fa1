#include <algorithm>
#include <random>

#include "doctest.h"
#include "genclass/cmmethod.hpp"
#include "genclass/errors.hpp"
#include "genclass/nsystem.hpp"
#include "genclass/quadforms.hpp"
#include "genclass/serialize.hpp"

using namespace genclass;

namespace {

std::vector<mpz_class> zv(std::vector<long> v) { return {v.begin(), v.end()}; }

const ModularPolynomial& psi() {
  static const ModularPolynomial p = compute_psi();
  return p;
}

mpq_class eval_rational(const IntPolyXY& f, const QPoint& P) {
  mpq_class v = 0, xp = 1;
  for (long i = 0; i <= f.a.degree(); ++i, xp *= P.x) v += f.a.coeff(i) * xp;
  xp = 1;
  for (long i = 0; i <= f.b.degree(); ++i, xp *= P.x) v += f.b.coeff(i) * xp * P.y;
  return v;
}

}  // namespace

TEST_CASE("roots over F_p") {
  CHECK(fp_roots(IntPolyUV(zv({-1, 0, 1})), 7) == zv({1, 6}));
  CHECK(fp_roots(IntPolyUV(zv({1, 0, 1})), 7).empty());
  CHECK(fp_roots(IntPolyUV(zv({5})), 7).empty());
  CHECK_THROWS_AS(fp_roots(IntPolyUV(zv({7, 14})), 7), PreconditionError);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<mpz_class> roots;
    IntPolyUV f = IntPolyUV::constant(1 + static_cast<long>(rng() % 100));
    for (int k = 0; k < 1 + static_cast<int>(rng() % 8); ++k) {
      mpz_class r = static_cast<long>(rng() % 101);
      roots.push_back(r);
      f = f * IntPolyUV(std::vector<mpz_class>{-r, 1});
    }
    // An irreducible quadratic factor contributes no roots.
    f = f * IntPolyUV(zv({2, 0, 1}));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    CHECK(fp_roots(f, 101, rng) == roots);
  }
}

TEST_CASE("Frobenius spec validation") {
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(cm_hilbert({2, 2}, rng), PreconditionError);
  CHECK_THROWS_AS(cm_hilbert({17, 17}, rng), PreconditionError);
  CHECK_THROWS_AS(cm_hilbert({9, 17}, rng), PreconditionError);
  CHECK_THROWS_AS(cm_hilbert({1, 15}, rng), PreconditionError);
  CHECK_NOTHROW(validate({4, 17}));
}

TEST_CASE("CM with the Hilbert class polynomial") {
  std::mt19937_64 rng(2);
  CMCurve a = cm_hilbert({4, 17}, rng);
  CHECK(point_count_naive(a.curve) == 14);

  CMCurve b = cm_hilbert({1, 7}, rng);
  CHECK(point_count_naive(b.curve) == 7);
  // Oracle: curves over F_7 with 7 points have CM by an order containing Z[pi], of
  // discriminant -27 or -3, so j is j(-27) = -12288000 or 0 mod 7.
  PrimeField k{mpz_class(7)};
  mpz_class j27 = -12288000;
  CHECK(b.j == k.reduce(j27));
  for (long a4 = 0; a4 < 7; ++a4)
    for (long a6 = 0; a6 < 7; ++a6) {
      if ((4 * a4 * a4 * a4 + 27 * a6 * a6) % 7 == 0) continue;
      FpModel E{k, 0, 0, 0, a4, a6};
      if (point_count_naive(E) == 7) CHECK((j_invariant(E) == k.reduce(j27) || j_invariant(E) == 0));
    }
}

TEST_CASE("modular polynomial of X0+(119)") {
  const ModularPolynomial& p = psi();
  CHECK(p.dj == 2);
  CHECK(p.f.size() == 3);
  CHECK(psi_well_formed(p));
  CHECK(p.poleBound <= 152);

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> re(-500, 500), im(20, 400);
  for (long prec : {128L, 256L}) {
    for (int t = 0; t < 10; ++t) {
      APReal thousand = APReal::from_long(1000, prec);
      APComplex tau(APReal::from_long(re(rng), prec) / thousand, APReal::from_long(im(rng), prec) / thousand);
      CHECK(psi_residual(p, tau, prec) < -static_cast<double>(prec) / 2);
    }
  }

  // The two rational CM points of discriminant -19: Psi(P, Z) = (Z - j(-19))^2.
  IntPolyUV H19 = hilbert(-19);
  REQUIRE(H19.degree() == 1);
  mpq_class j19 = -H19.coeff(0);
  int cm_points = 0;
  for (const QPoint& P : x0plus119_rational_points()) {
    if (P.inf) continue;
    mpq_class c0 = eval_rational(p.f[0], P), c1 = eval_rational(p.f[1], P), c2 = eval_rational(p.f[2], P);
    if (c2 == 0) continue;
    if (c2 * j19 * j19 + c1 * j19 + c0 == 0) {
      ++cm_points;
      CHECK(c1 * c1 == 4 * c0 * c2);
    }
  }
  CHECK(cm_points == 2);

  CHECK_THROWS_WITH_AS(compute_psi(2, 100), "increase poleBound", PreconditionError);
}

TEST_CASE("CM with the generalized class function") {
  std::mt19937_64 rng(4);
  CMCurve g = cm_generalized({4, 17}, psi(), rng);
  CHECK(point_count_naive(g.curve) == 14);
  CHECK(g.order == 14);

  // Oracle equivalence on small fields: j candidates are roots of H_D mod q.
  int tested = 0;
  for (long q = 19; q < 400 && tested < 6; ++q) {
    mpz_class qz = q;
    if (mpz_probab_prime_p(qz.get_mpz_t(), 20) == 0) continue;
    for (long t = 1; t * t < 4 * q && tested < 6; ++t) {
      FrobeniusSpec s{t, q};
      long D = s.disc();
      if (D % 4 != 0 && (D % 4 + 4) % 4 != 1) continue;
      if (class_number(D) > 8 || default_mode(D) != CMMode::Plus) continue;
      CMCurve c;
      try {
        find_abc(D, 119, CMMode::Plus);
        c = cm_generalized(s, psi(), rng);
      } catch (const PreconditionError&) {
        continue;
      }
      std::vector<mpz_class> hroots = fp_roots(hilbert(D), q, rng);
      for (const auto& j : c.jCandidates) {
        CHECK(std::find(hroots.begin(), hroots.end(), j) != hroots.end());
      }
      CHECK(point_count_naive(c.curve) == q + 1 - t);
      ++tested;
    }
  }
  CHECK(tested >= 3);
}

TEST_CASE("serialization round trips") {
  GenClassFunction f = compute_genclass(-523, CurveFunctionBasis(), GenAlgo::LLL);
  std::string text = format_genclass(f);
  CHECK(text.rfind("D=-523 N=119 curve=x0plus119 basis=standard real=1\n", 0) == 0);
  // x^3 + x^2 - 2xy - 3x - 2y, highest pole order first.
  CHECK(text.find("1 3 0\n-2 1 1\n1 2 0\n") != std::string::npos);
  StoredClassFunction s = parse_genclass(text);
  CHECK(s.D == -523);
  CHECK(s.N == 119);
  CHECK(s.real);
  CHECK(s.F == f.F);

  std::string psiText = format_psi(psi());
  CHECK(psiText.rfind("PSI curve=x0plus119 dj=2 poleBound=", 0) == 0);
  ModularPolynomial back = parse_psi(psiText);
  REQUIRE(back.f.size() == psi().f.size());
  for (size_t i = 0; i < back.f.size(); ++i) CHECK(back.f[i] == psi().f[i]);
  CHECK(back.poleBound == psi().poleBound);

  CHECK_THROWS_AS(parse_genclass("D=-52 N=119\n"), PreconditionError);
  CHECK_THROWS_AS(parse_genclass("D=-52 N=119 curve=x0plus119 basis=standard real=1\n1 2\n"), PreconditionError);
  CHECK_THROWS_AS(parse_psi("PSI curve=x0plus119 dj=2 poleBound=144\n1 0 0\n"), PreconditionError);
}
