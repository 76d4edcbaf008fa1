#pragma once

#include <gmpxx.h>

#include <vector>

#include "genclass/numerics.hpp"

namespace genclass {

// Negative discriminant d = 0, 1 (mod 4).
bool is_discriminant(long d);
bool is_fundamental_discriminant(long d);
// Throws PreconditionError unless d is a negative discriminant.
void require_discriminant(long d);

struct QuadForm {
  long a = 1;
  long b = 0;
  long c = 1;

  long disc() const { return b * b - 4 * a * c; }
  bool is_primitive() const;
  bool is_reduced() const;
  bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
  // Value at (x, y), as a wide integer.
  long long value(long x, long y) const;
};

QuadForm reduce(const QuadForm& f);
// One reduced primitive form per class, ordered by (a, b).
std::vector<QuadForm> enumerate_reduced(long D);
long class_number(long D);
// Sum of 1/a over the reduced primitive forms.
mpq_class s_sum(long D);
// tau = (-b + i sqrt|d|) / (2a).
APComplex form_to_tau(const QuadForm& f, long prec);

}  // namespace genclass
