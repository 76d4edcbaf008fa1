#pragma once

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

#include "genclass/classpoly.hpp"
#include "genclass/ellcurve.hpp"
#include "genclass/numerics.hpp"

namespace genclass {

struct FrobeniusSpec {
  long t = 0;
  long q = 0;
  long disc() const { return t * t - 4 * q; }
};

// Throws PreconditionError unless q is an odd prime >= 5, gcd(t, q) = 1 and t^2 < 4q.
void validate(const FrobeniusSpec& spec);

// Psi_C = sum_i f[i] Z^i, with Psi_C(x, y, j) = 0 on the curve.
struct ModularPolynomial {
  std::vector<IntPolyXY> f;
  int dj = 0;
  long poleBound = 0;
  std::string curve = "x0plus119";
};

// Throws PreconditionError("increase poleBound") when no relation has pole orders <= poleBound.
ModularPolynomial compute_psi(int dj = 2, long poleBound = 152, long truncation = 60);
// log2 of |sum f_i(x, y) j^i| relative to the size of its terms, at tau.
double psi_residual(const ModularPolynomial& psi, const APComplex& tau, long prec);
// Exact checks: deg_Y <= 1 by representation, coprime content, positive leading coefficient of f[dj].
bool psi_well_formed(const ModularPolynomial& psi);

// All roots of f in F_p, ascending (gcd with X^p - X, then random equal-degree splitting).
std::vector<mpz_class> fp_roots(const IntPolyUV& f, const mpz_class& p, std::mt19937_64& rng);
std::vector<mpz_class> fp_roots(const IntPolyUV& f, const mpz_class& p);

struct CMCurve {
  FpModel curve{PrimeField(mpz_class(2)), 0, 0, 0, 0, 0};
  mpz_class order;
  mpz_class j;
  std::vector<mpz_class> jCandidates;  // every j-invariant the pipeline produced
};

// Twist of the curve with j-invariant j0 having q + 1 - t points, if any.
bool select_twist(const PrimeField& k, const mpz_class& j0, const mpz_class& order, std::mt19937_64& rng,
                  FpModel& out);

CMCurve cm_hilbert(const FrobeniusSpec& spec, std::mt19937_64& rng);
// F is the class function of D = t^2 - 4q on X0+(119) (standard basis). Throws
// PreconditionError("degenerate reduction") when no usable zero of F exists mod q.
CMCurve cm_generalized(const FrobeniusSpec& spec, const GenClassFunction& F, const ModularPolynomial& psi,
                       std::mt19937_64& rng);
CMCurve cm_generalized(const FrobeniusSpec& spec, const ModularPolynomial& psi, std::mt19937_64& rng);

}  // namespace genclass
