#pragma once

#include <gmpxx.h>

#include <vector>

#include "genclass/numerics.hpp"

namespace genclass {

// Rows are the basis vectors.
using IntLattice = std::vector<std::vector<mpz_class>>;

// delta-LLL reduction with exact integer Gram-Schmidt data. Throws
// PreconditionError when the rows are linearly dependent.
IntLattice lll_reduce(const IntLattice& L, const mpq_class& delta = mpq_class(99, 100));

struct RelationResult {
  std::vector<mpz_class> coeffs;
  double residualLog2 = 0;  // log2 of the largest |sum a_i v[r][i]| over rows
};

// Integer vector a with sum_i a_i values[r][i] ~ 0 for every row r, found by
// reducing the identity block joined to 2^prec-scaled real and imaginary
// parts. Rows flagged in realRows contribute only their real parts. Throws
// PrecisionError when no candidate passes the residual test.
RelationResult integer_relation(const std::vector<std::vector<APComplex>>& values, long prec,
                                const mpz_class& coeffBound,
                                const std::vector<bool>& realRows = {});

}  // namespace genclass
