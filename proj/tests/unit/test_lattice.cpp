#include <random>

#include "doctest.h"
#include "genclass/errors.hpp"
#include "genclass/lattice.hpp"

using namespace genclass;

namespace {

mpz_class sqnorm(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (auto& c : v) s += c * c;
  return s;
}

// Shortest nonzero squared norm over coefficient window [-w, w]^n.
mpz_class brute_shortest(const IntLattice& L, int w) {
  size_t n = L.size();
  std::vector<int> c(n, -w);
  mpz_class best = -1;
  while (true) {
    std::vector<mpz_class> v(L[0].size(), 0);
    bool nz = false;
    for (size_t i = 0; i < n; ++i) {
      if (c[i]) nz = true;
      for (size_t j = 0; j < v.size(); ++j) v[j] += c[i] * L[i][j];
    }
    if (nz) {
      mpz_class s = sqnorm(v);
      if (best < 0 || s < best) best = s;
    }
    size_t i = 0;
    while (i < n && c[i] == w) c[i++] = -w;
    if (i == n) break;
    ++c[i];
  }
  return best;
}

// Exact rational solve: is every row of B an integer combination of rows of A (A square, invertible)?
bool rows_in_lattice(const IntLattice& A, const IntLattice& B) {
  size_t n = A.size();
  for (const auto& target : B) {
    // Solve x A = target over Q by Gaussian elimination on the transpose.
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1));
    for (size_t r = 0; r < n; ++r) {
      for (size_t c = 0; c < n; ++c) M[r][c] = A[c][r];
      M[r][n] = target[r];
    }
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      while (piv < n && M[piv][col] == 0) ++piv;
      if (piv == n) return false;
      std::swap(M[piv], M[col]);
      for (size_t r = 0; r < n; ++r) {
        if (r == col || M[r][col] == 0) continue;
        mpq_class f = M[r][col] / M[col][col];
        for (size_t c = col; c <= n; ++c) M[r][c] -= f * M[col][c];
      }
    }
    for (size_t r = 0; r < n; ++r) {
      mpq_class x = M[r][n] / M[r][r];
      if (x.get_den() != 1) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("identity basis is unchanged") {
  IntLattice I = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(lll_reduce(I) == I);
}

TEST_CASE("small lattice first vector bound") {
  IntLattice L = {{2, 0}, {1, 2}};
  IntLattice R = lll_reduce(L);
  mpz_class lambda1 = brute_shortest(L, 6);
  CHECK(lambda1 == 4);
  CHECK(sqnorm(R[0]) <= 2 * lambda1);
}

TEST_CASE("scrambled identity is recovered") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> dist(-3, 3);
  IntLattice L = {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
  for (int t = 0; t < 40; ++t) {
    size_t i = rng() % 5, j = rng() % 5;
    if (i == j) continue;
    int f = dist(rng);
    for (size_t c = 0; c < 5; ++c) L[i][c] += f * L[j][c];
  }
  IntLattice R = lll_reduce(L);
  for (auto& row : R)
    for (auto& c : row) CHECK(abs(c) <= 1);
  CHECK(rows_in_lattice(L, R));
  CHECK(rows_in_lattice(R, L));
}

TEST_CASE("reduction bound and span on random small lattices") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> dist(-20, 20);
  for (int t = 0; t < 20; ++t) {
    size_t n = 2 + t % 3;
    IntLattice L(n, std::vector<mpz_class>(n));
    for (auto& r : L)
      for (auto& c : r) c = dist(rng);
    IntLattice R;
    try {
      R = lll_reduce(L);
    } catch (const PreconditionError&) {
      continue;
    }
    CHECK(rows_in_lattice(L, R));
    CHECK(rows_in_lattice(R, L));
    mpz_class lambda1 = brute_shortest(L, n <= 3 ? 5 : 3);
    mpz_class bound = mpz_class(1) << (n - 1);  // (2^((n-1)/2))^2
    CHECK(sqnorm(R[0]) <= bound * lambda1);
  }
}

TEST_CASE("dependent rows are rejected") {
  IntLattice L = {{1, 2, 3}, {2, 4, 6}};
  CHECK_THROWS_AS(lll_reduce(L), PreconditionError);
  CHECK_THROWS_AS(lll_reduce({{1, 0}, {0, 1}}, mpq_class(1, 5)), PreconditionError);
}

TEST_CASE("integer relations for algebraic numbers") {
  const long prec = 120;
  APReal s2 = ap_sqrt(APReal::from_long(2, prec + 20));
  std::vector<std::vector<APComplex>> v = {
      {APComplex(APReal::from_long(1, prec + 20)), APComplex(s2), APComplex(s2 * 2L)}};
  RelationResult r = integer_relation(v, prec, 1000);
  std::vector<mpz_class> a = r.coeffs;
  if (a[1] < 0)
    for (auto& c : a) c = -c;
  CHECK(a == std::vector<mpz_class>{0, 2, -1});

  APReal phi = (APReal::from_long(1, prec + 20) + ap_sqrt(APReal::from_long(5, prec + 20))) /
               APReal::from_long(2, prec + 20);
  v = {{APComplex(APReal::from_long(1, prec + 20)), APComplex(phi), APComplex(phi * phi)}};
  a = integer_relation(v, prec, 1000, {true}).coeffs;
  if (a[0] < 0)
    for (auto& c : a) c = -c;
  CHECK(a == std::vector<mpz_class>{1, 1, -1});

  v = {{APComplex(64)}};
  r = integer_relation(v, 64, 10);
  CHECK(r.coeffs == std::vector<mpz_class>{1});
}

TEST_CASE("integer relation fails without enough precision") {
  const long prec = 20;
  APReal pi = ap_pi(80);
  std::vector<std::vector<APComplex>> v = {{APComplex(APReal::from_long(1, 80)), APComplex(pi),
                                            APComplex(ap_sqrt(pi))}};
  CHECK_THROWS_AS(integer_relation(v, prec, 3), PrecisionError);
}

TEST_CASE("planted relation among square roots") {
  const long prec = 300;
  const size_t k = 12;
  std::mt19937_64 rng(17);
  std::vector<long> a(k);
  for (auto& c : a) c = static_cast<long>(rng() % 201) - 100;
  a[k - 1] = 1;
  std::vector<std::vector<APComplex>> v(2, std::vector<APComplex>(k));
  for (auto& row : v) {
    APComplex s(prec + 32);
    for (size_t i = 0; i + 1 < k; ++i) {
      row[i] = APComplex(ap_sqrt(APReal::from_long(static_cast<long>(rng() % 100003) + 2, prec + 32)) *
                             APReal::from_long(1L << (rng() % 30), prec + 32),
                         ap_sqrt(APReal::from_long(static_cast<long>(rng() % 99991) + 2, prec + 32)));
      s += row[i] * APReal::from_long(a[i], prec + 32);
    }
    row[k - 1] = -s;
  }
  RelationResult r = integer_relation(v, prec, 1000000);
  if (r.coeffs[k - 1] < 0)
    for (auto& c : r.coeffs) c = -c;
  for (size_t i = 0; i < k; ++i) CHECK(r.coeffs[i] == a[i]);
  CHECK(r.residualLog2 < -prec / 2);
}
