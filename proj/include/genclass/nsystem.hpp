#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "genclass/numerics.hpp"
#include "genclass/quadforms.hpp"

namespace genclass {

enum class CMMode { Generic, Ramified, Plus };

struct CMParams {
  long D = 0;
  long N = 1;
  long a = 1;
  long b = 0;
  long c = 0;

  QuadForm form() const { return {a, b, c}; }
  APComplex tau(long prec) const { return form_to_tau(form(), prec); }
};

struct NSystem {
  std::vector<CMParams> members;
  long commonBmod2N = 0;
};

// Which case of the existence lemma for gcd(c/N, N) = 1 rules D out (0 if none).
int plus_exception_case(long D, long N);
bool is_square_mod(long D, long m);

CMParams find_abc(long D, long N, CMMode mode);
NSystem build_nsystem(const CMParams& p);
bool is_real_case(const CMParams& p, bool curveIsPlusQuotient);
// Density of discriminants admitting gcd(c/N, N) = 1 (N odd squarefree).
mpq_class density(long N, bool fundamentalOnly);

std::vector<long> prime_factors(long n);
long p_valuation(long n, long p);

}  // namespace genclass
