#include "genclass/quadforms.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "genclass/errors.hpp"

namespace genclass {

bool is_discriminant(long d) {
  if (d >= 0) return false;
  long r = ((d % 4) + 4) % 4;
  return r == 0 || r == 1;
}

namespace {
bool squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}
}  // namespace

bool is_fundamental_discriminant(long d) {
  if (!is_discriminant(d)) return false;
  long r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(d);
  long m = d / 4;
  long mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && squarefree(m);
}

void require_discriminant(long d) {
  if (!is_discriminant(d)) {
    throw PreconditionError("not a negative discriminant: " + std::to_string(d));
  }
}

bool QuadForm::is_primitive() const {
  return std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)) == 1;
}

bool QuadForm::is_reduced() const {
  if (!(std::labs(b) <= a && a <= c)) return false;
  if ((std::labs(b) == a || a == c) && b < 0) return false;
  return true;
}

long long QuadForm::value(long x, long y) const {
  return static_cast<long long>(a) * x * x + static_cast<long long>(b) * x * y +
         static_cast<long long>(c) * y * y;
}

QuadForm reduce(const QuadForm& f) {
  if (f.disc() >= 0) throw PreconditionError("reduce: discriminant must be negative");
  if (f.a <= 0) throw PreconditionError("reduce: leading coefficient must be positive");
  QuadForm g = f;
  for (;;) {
    // Normalize b into (-a, a].
    long two_a = 2 * g.a;
    long k = static_cast<long>(std::floor((static_cast<double>(g.a) - g.b) / two_a));
    // Fix rounding of the double estimate.
    while (g.b + two_a * k <= -g.a) ++k;
    while (g.b + two_a * k > g.a) --k;
    if (k != 0) {
      long nb = g.b + two_a * k;
      g.c = (nb * nb - f.disc()) / (4 * g.a);
      g.b = nb;
    }
    if (g.a > g.c) {
      g = {g.c, -g.b, g.a};
      continue;
    }
    break;
  }
  if (g.a == g.c && g.b < 0) g.b = -g.b;
  return g;
}

std::vector<QuadForm> enumerate_reduced(long D) {
  require_discriminant(D);
  std::vector<QuadForm> out;
  long amax = static_cast<long>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
  for (long a = 1; a <= amax; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2 + 2) % 2 != 0) continue;
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      QuadForm f{a, b, c};
      if (f.is_reduced() && f.is_primitive()) out.push_back(f);
    }
  }
  return out;
}

long class_number(long D) { return static_cast<long>(enumerate_reduced(D).size()); }

mpq_class s_sum(long D) {
  mpq_class s = 0;
  for (const auto& f : enumerate_reduced(D)) s += mpq_class(1, f.a);
  return s;
}

APComplex form_to_tau(const QuadForm& f, long prec) {
  long p = prec + 16;
  APReal den = APReal::from_long(2 * f.a, p);
  APReal re = APReal::from_long(-f.b, p) / den;
  APReal im = ap_sqrt(APReal::from_long(-f.disc(), p)) / den;
  return {re.with_prec(prec), im.with_prec(prec)};
}

}  // namespace genclass
