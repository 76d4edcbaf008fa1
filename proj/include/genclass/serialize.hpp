#pragma once

#include <iosfwd>
#include <string>

#include "genclass/classpoly.hpp"
#include "genclass/cmmethod.hpp"

namespace genclass {

// Header `D=<d> N=<n> curve=<id> basis=<id> real=<0|1>`, then one `<coeff> <degX> <degY>`
// line per monomial of F in (x, y), highest pole order first.
std::string format_genclass(const GenClassFunction& f, long N = 119);

struct StoredClassFunction {
  long D = 0;
  long N = 0;
  std::string curve;
  BasisId basis = BasisId::Standard;
  bool real = true;
  IntPolyXY F;
};

StoredClassFunction parse_genclass(const std::string& text);

// H_D[j] in the same layout: header `D=<d> N=1 curve=j basis=standard real=1`, monomials `<coeff> <deg> 0`.
std::string format_hilbert(long D, const IntPolyUV& H);

// Header `PSI curve=<id> dj=<n> poleBound=<k>`, then for i = 0..dj a line `Z^<i>`
// followed by the monomials of f_i.
std::string format_psi(const ModularPolynomial& psi);
ModularPolynomial parse_psi(const std::string& text);

void save_psi(const ModularPolynomial& psi, const std::string& path);
ModularPolynomial load_psi(const std::string& path);

std::string basis_file_id(BasisId id);

}  // namespace genclass
