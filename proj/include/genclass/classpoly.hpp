#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "genclass/ellcurve.hpp"
#include "genclass/nsystem.hpp"
#include "genclass/numerics.hpp"
#include "genclass/qexp.hpp"

namespace genclass {

// ---------------------------------------------------------------------------
// Hilbert class polynomials.
// ---------------------------------------------------------------------------

// Starting precision for H_D[j] from the height estimate pi sqrt|D| S(D).
long hilbert_precision(long D);
// Monic H_D[j]; precHint = 0 uses hilbert_precision. Throws PrecisionError
// ("precision blowup") after four failed doublings.
IntPolyUV hilbert(long D, long precHint = 0);

// ---------------------------------------------------------------------------
// Galois orbits of CM points on X0+(119).
// ---------------------------------------------------------------------------

struct OrbitPoint {
  CMParams params;
  XYValue value;
};

struct OrbitData {
  long D = 0;
  long N = 0;
  CMMode mode = CMMode::Plus;
  long prec = 0;      // target absolute precision of basis values
  long evalPrec = 0;  // working precision of the stored point values
  std::vector<OrbitPoint> members;
  std::vector<size_t> distinct;  // indices into members, one per distinct point
  std::vector<long> conjugate;   // for each distinct point, the position of its conjugate (or -1)
  size_t dedupedSize = 0;
  int subfieldDegree = 1;
  bool realFlag = false;

  const XYValue& point(size_t i) const { return members[distinct[i]].value; }
};

// CM mode used for D on X0+(119): ramified when 119 | D, plus otherwise.
CMMode default_mode(long D);
// Only N = 119 is supported.
OrbitData orbit(long D, long N, CMMode mode, long prec);
// Orbit of the N-system generated by an explicit first form.
OrbitData orbit_from(const CMParams& p, long prec);

// ---------------------------------------------------------------------------
// Generalized class functions F = A(x) + B(x) y on y^2 + 3xy - y = x^3 - 3x^2 + x.
// ---------------------------------------------------------------------------

struct GenClassFunction {
  IntPolyXY F;  // F.a = A, F.b = B
  QPoint heegner = QPoint::infinity();
  long D = 0;
  BasisId basis = BasisId::Standard;
  bool realFlag = true;
  std::vector<mpz_class> basisCoeffs;  // coefficients of the basis elements, lowest pole first

  long pole_order() const { return F.pole_order(); }
  // F written in its basis, highest pole first ("xw - xz - x + 3w + z").
  std::string basis_str() const;
};

// Coefficients of f in the first k elements of the basis (f must lie in their span).
std::vector<mpz_class> to_basis_coeffs(const IntPolyXY& f, const CurveFunctionBasis& basis, size_t k);
IntPolyXY from_basis_coeffs(const std::vector<mpz_class>& c, const CurveFunctionBasis& basis);

// Minimal relation among the first m+1 basis elements over the orbit.
GenClassFunction genclass_lll(const OrbitData& orbit, const CurveFunctionBasis& basis);
// Bottom-up product tree of Miller-style functions on the odd model Y^2 = 4x^3 - 3x^2 - 2x + 1.
GenClassFunction genclass_tree(const OrbitData& orbit, const CurveFunctionBasis& basis);

enum class GenAlgo { LLL, Tree };

// Starting precision for generalized class functions (height of H_D[j] divided by 72).
long genclass_precision(long D);
// Full pipeline with precision doubling. precHint = 0 uses GENCLASS_PREC when set,
// genclass_precision otherwise.
GenClassFunction compute_genclass(long D, const CurveFunctionBasis& basis, GenAlgo algo, long precHint = 0);
// Same, for the N-system generated by an explicit first form.
GenClassFunction compute_genclass(const CMParams& first, const CurveFunctionBasis& basis, GenAlgo algo,
                                  long precHint = 0);

// Rational points of 17a4 (all torsion).
std::vector<QPoint> x0plus119_rational_points();

struct NormResult {
  IntPolyUV norm;  // A^2 - (3x - 1) A B - (x^3 - 3x^2 + x) B^2
  IntPolyUV Hx;    // positive leading coefficient
  IntPolyUV T;     // b^2 X - a for x(heegner) = a/b^2; 1 when heegner = O
  mpz_class s;
  int dPrime = 1;
};

IntPolyUV curve_norm(const IntPolyXY& F);
// Throws std::logic_error when T does not divide the norm.
NormResult norm_to_x(const GenClassFunction& f);

// ---------------------------------------------------------------------------
// Heights and reduction factors.
// ---------------------------------------------------------------------------

struct HeightReport {
  mpz_class norm1;
  mpz_class normInf;
  APReal mahler{128};
  long degree = 0;
  double rPractical = 0;
  long bitLength = 0;  // bits of normInf
};

APReal mahler_measure(const IntPolyUV& p, long prec = 128);
HeightReport heights(const IntPolyUV& p);
// Uses the joint coefficient vector in basis order.
HeightReport heights(const GenClassFunction& f);
// The four norm inequalities, with relative slack 2^-40 on the Mahler side.
bool measure_inequalities_hold(const HeightReport& h);

// deg(j) / deg(psi) for X0(N), or its plus quotient.
mpq_class r_curve(long N, bool plusQuotient);
// log|H_D[j]|_inf / log|F|_inf (infinite when |F|_inf = 1).
double r_practical(const IntPolyUV& hilbertPoly, const GenClassFunction& f);

}  // namespace genclass
