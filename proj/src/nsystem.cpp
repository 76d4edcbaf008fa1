#include "genclass/nsystem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <tuple>

#include "genclass/errors.hpp"

namespace genclass {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a modulo m (gcd(a, m) = 1).
long inv_mod(long a, long m) {
  long g = m, x = 0, x1 = 1, r = mod(a, m);
  while (r != 0) {
    long q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  return mod(x, m);
}

// x*s - y*r = 1 for coprime (x, y).
void complete_matrix(long x, long y, long& r, long& s) {
  // Extended Euclid on (x, y): u*x + v*y = 1, then s = u, r = -v.
  long old_r = x, rr = y, old_u = 1, u = 0, old_v = 0, v = 1;
  while (rr != 0) {
    long q = old_r / rr;
    std::tie(old_r, rr) = std::make_pair(rr, old_r - q * rr);
    std::tie(old_u, u) = std::make_pair(u, old_u - q * u);
    std::tie(old_v, v) = std::make_pair(v, old_v - q * v);
  }
  if (old_r < 0) {
    old_u = -old_u;
    old_v = -old_v;
  }
  s = old_u;
  r = -old_v;
}

}  // namespace

std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

long p_valuation(long n, long p) {
  if (n == 0) return 1L << 40;
  long v = 0;
  n = std::labs(n);
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

bool is_square_mod(long D, long m) {
  long r = mod(D, m);
  for (long b = 0; b < m; ++b) {
    if ((b * b) % m == r) return true;
  }
  return false;
}

int plus_exception_case(long D, long N) {
  for (long p : prime_factors(N)) {
    if (p_valuation(N, p) % 2 == 1 && p_valuation(D, p) > p_valuation(4 * N, p)) return 1;
  }
  long m = p_valuation(N, 2);
  if (m > 0) {
    long pm1 = 1L << (m + 1), pm = 1L << m;
    if (D % pm1 == 0 && mod(D / pm1, 4) == 1) return 2;
    if (D % pm == 0 && mod(D / pm, 8) == 1) return 3;
  }
  return 0;
}

CMParams find_abc(long D, long N, CMMode mode) {
  require_discriminant(D);
  if (N < 1) throw PreconditionError("level must be positive");
  CMParams p;
  p.D = D;
  p.N = N;
  p.a = 1;
  if (mode == CMMode::Ramified) {
    long need = (N % 2 == 0) ? 4 * N : N;
    if (D % need != 0) throw PreconditionError("ramified mode requires N | D (4N | D for even N)");
    p.b = (mod(D, 2) == 1) ? N : 0;
    if (mod(p.b * p.b - D, 4) != 0) throw PreconditionError("ramified mode: parity mismatch");
    p.c = (p.b * p.b - D) / 4;
    if (p.c % N != 0) throw PreconditionError("ramified mode: N does not divide c");
    return p;
  }
  if (!is_square_mod(D, 4 * N)) {
    throw PreconditionError("D=" + std::to_string(D) + " is not a square modulo 4N=" + std::to_string(4 * N));
  }
  long four_n = 4 * N;
  long limit = (mode == CMMode::Plus) ? 4 * N * N : 2 * N;
  for (long b = 1; b <= limit; ++b) {
    long t = b * b - D;
    if (t % four_n != 0) continue;
    if (mode == CMMode::Plus && std::gcd(t / four_n, N) != 1) continue;
    p.b = b;
    p.c = t / 4;
    return p;
  }
  int ex = plus_exception_case(D, N);
  if (ex == 0) throw std::logic_error("find_abc: no valid b but no exception case applies");
  throw PreconditionError("no b with gcd((b^2-D)/(4N), N) = 1: exception case (" + std::to_string(ex) + ")");
}

NSystem build_nsystem(const CMParams& p) {
  NSystem ns;
  long N = p.N, D = p.D;
  ns.commonBmod2N = mod(p.b, 2 * N);
  long bound = static_cast<long>(4.0 * std::sqrt(static_cast<double>(-D)) * N) + 1;
  for (const QuadForm& q : enumerate_reduced(D)) {
    if (q.a == 1) {
      ns.members.push_back(p);
      continue;
    }
    // Smallest value coprime to N represented primitively by q.
    long best = -1, bx = 0, by = 0;
    long ymax = static_cast<long>(std::sqrt(4.0 * q.a * bound / static_cast<double>(-D))) + 1;
    for (long y = 0; y <= ymax; ++y) {
      double disc = static_cast<double>(D) * y * y + 4.0 * q.a * bound;
      if (disc < 0) continue;
      double sq = std::sqrt(disc);
      long xlo = static_cast<long>(std::floor((-q.b * y - sq) / (2.0 * q.a))) - 1;
      long xhi = static_cast<long>(std::ceil((-q.b * y + sq) / (2.0 * q.a))) + 1;
      if (y == 0) xlo = xhi = 1;
      for (long x = xlo; x <= xhi; ++x) {
        if (std::gcd(std::labs(x), y) != 1) continue;
        long long v = q.value(x, y);
        if (v <= 0 || v > bound) continue;
        if (std::gcd(static_cast<long>(v), N) != 1) continue;
        if (best < 0 || v < best) {
          best = static_cast<long>(v);
          bx = x;
          by = y;
        }
      }
    }
    if (best < 0) throw std::logic_error("build_nsystem: no representative coprime to N");
    long r = 0, s = 0;
    complete_matrix(bx, by, r, s);
    long n = best;
    long b1 = 2 * q.a * bx * r + q.b * (bx * s + by * r) + 2 * q.c * by * s;
    // Translate b1 by multiples of 2n into the class b (mod 2N).
    long k = mod(((p.b - b1) / 2) % N * inv_mod(n, N), N);
    long b2 = b1 + 2 * n * k;
    long period = 2 * n * N;
    b2 = mod(b2, period);
    if (b2 > n * N) b2 -= period;
    CMParams m = p;
    m.a = n;
    m.b = b2;
    m.c = (b2 * b2 - D) / (4 * n);
    ns.members.push_back(m);
  }
  for (const auto& m : ns.members) {
    if (m.b * m.b - 4 * m.a * m.c != D || mod(m.b - p.b, 2 * N) != 0 || std::gcd(m.a, N) != 1 ||
        m.c % N != 0) {
      throw std::logic_error("build_nsystem: member violates the N-system conditions");
    }
  }
  return ns;
}

bool is_real_case(const CMParams& p, bool curveIsPlusQuotient) {
  if (curveIsPlusQuotient && p.c % p.N == 0 && std::gcd(p.c / p.N, p.N) == 1) return true;
  if (p.b % p.N == 0 && p.c % p.N == 0 && std::gcd(p.a, p.N) == 1) return true;
  return false;
}

mpq_class density(long N, bool fundamentalOnly) {
  if (N < 1 || N % 2 == 0) throw PreconditionError("density: N must be odd");
  mpq_class d = 1;
  for (long p : prime_factors(N)) {
    if (p_valuation(N, p) != 1) throw PreconditionError("density: N must be squarefree");
    mpz_class num = p * p + p - 2;
    mpz_class den = fundamentalOnly ? mpz_class(2 * (p * p - 1)) : mpz_class(2 * p * p);
    d *= mpq_class(num, den);
  }
  d.canonicalize();
  return d;
}

}  // namespace genclass
