#pragma once

#include <string>
#include <vector>

#include "genclass/numerics.hpp"

namespace genclass {

// Series below use the nome q^(1/M) = exp(2 pi i z / M). Functions on
// X0+(119) use M = 119; their partner j-values are j(z) and j(z/119).

// prod_{n>=1} (1 - q^n) modulo q^order.
LaurentSeries euler_product_series(long order);
// eta(z) = q^(1/24) prod (1 - q^n), in q^(1/24), known below q^order.
LaurentSeries eta_series(long order);
// j(z) known below q^order.
LaurentSeries j_series(long order);
// eta(z/7) eta(z/17) / (eta(z) eta(z/119)) in q^(1/119), known below exponent `order`.
LaurentSeries w717_series(long order);

struct XYSeries {
  LaurentSeries x;
  LaurentSeries y;
};

// Quartic satisfied by x over Q(w): X^4 - 2wX^2 - wX + w^2 + w.
SeriesPoly x_quartic(const LaurentSeries& w);
// x, y on y^2 + 3xy - y = x^3 - 3x^2 + x, known below exponent `order` (>= 8).
// Results are cached; repeated calls at lower order are cheap.
XYSeries xy_series(long order);

// Multiplication of functions A + B*y in Q[x, y] modulo the curve equation.
IntPolyXY x0p119_mul(const IntPolyXY& f, const IntPolyXY& g);
// The function f as a q-series, from series for x and y.
LaurentSeries xy_poly_series(const IntPolyXY& f, const XYSeries& s);

// ---------------------------------------------------------------------------
// Function bases ordered by pole order at infinity.
// ---------------------------------------------------------------------------

enum class BasisId { Standard, EtaMixed };

// w^ew * x^ex * y^ey * z^ez with z = x + y and w = x^2 - x - y.
struct BasisElement {
  int ew = 0;
  int ex = 0;
  int ey = 0;
  int ez = 0;
  long pole = 0;

  IntPolyXY to_xy() const;
  std::string str() const;
};

class CurveFunctionBasis {
 public:
  explicit CurveFunctionBasis(BasisId id = BasisId::Standard) : id_(id) {}
  static CurveFunctionBasis from_name(const std::string& name);

  BasisId id() const { return id_; }
  std::string name() const { return id_ == BasisId::Standard ? "standard" : "etaMixed"; }
  // The element of pole order p, if there is one (p = 1 never occurs).
  bool has_pole(long p) const { return p == 0 || p >= 2; }
  BasisElement element_with_pole(long p) const;
  std::vector<BasisElement> first(size_t k) const;

 private:
  BasisId id_;
};

// ---------------------------------------------------------------------------
// Point evaluations.
// ---------------------------------------------------------------------------

// eta(tau), reduced into the fundamental domain with the eta multiplier.
APComplex eta_eval(const APComplex& tau, long prec);
APComplex j_eval(const APComplex& tau, long prec);
APComplex w717_eval(const APComplex& tau, long prec);

enum class EvalMethod { Modular, Series };

struct XYValue {
  APComplex x;
  APComplex y;
  APComplex w;
};

// x, y, w at tau to relative precision about `prec` bits. The modular route
// solves the quartic for x and picks the branch with the j(z), j(z/119)
// relation; the series route sums the q-expansions.
XYValue xy_eval(const APComplex& tau, long prec, EvalMethod method = EvalMethod::Modular);

// Values of the first k basis elements at tau, each with absolute error
// below 2^(-prec).
std::vector<APComplex> basis_eval(const CurveFunctionBasis& basis, size_t k, const APComplex& tau,
                                  long prec, EvalMethod method = EvalMethod::Modular);
std::vector<APComplex> basis_values(const CurveFunctionBasis& basis, size_t k, const XYValue& v);

// ---------------------------------------------------------------------------
// The relation f2 Z^2 + f1 Z + f0 with roots j(z), j(z/119).
// ---------------------------------------------------------------------------

struct PlusJRelation {
  IntPolyXY f0;
  IntPolyXY f1;
  IntPolyXY f2;
  long poleBound = 0;  // largest pole order among f0, f1, f2
};

// Greedy expression of g in the standard basis by cancelling poles at
// infinity. Fails (returns false) when the remainder does not vanish to
// exponent checkUpTo.
bool series_to_standard(const LaurentSeries& g, const XYSeries& s, long checkUpTo, IntPolyXY& out);

// Searches multipliers w^k, k = 0, 1, ..., for a relation with all pole
// orders at most maxPole. Throws PreconditionError when none exists.
PlusJRelation find_plus_j_relation(long maxPole, long checkUpTo = 60);
// Cached relation with the smallest pole bound.
const PlusJRelation& plus_j_relation();

}  // namespace genclass
