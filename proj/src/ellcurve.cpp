#include "genclass/ellcurve.hpp"

#include <sstream>

namespace genclass {

int PrimeField::legendre(const Elem& a) const {
  mpz_class r = reduce(a);
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

PrimeField::Elem PrimeField::sqrt(const Elem& a_in) const {
  Elem a = reduce(a_in);
  if (a == 0) return 0;
  if (legendre(a) != 1) throw std::domain_error("PrimeField::sqrt: not a square");
  if (p % 4 == 3) return pow(a, (p + 1) / 4);
  // Tonelli-Shanks.
  mpz_class q = p - 1;
  long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (legendre(z) != -1) ++z;
  mpz_class m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
  while (t != 1) {
    long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = mul(tt, tt);
      ++i;
    }
    mpz_class b = c;
    for (long j = 0; j < m.get_si() - i - 1; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

Invariants invariants(const QModel& E) {
  Invariants v;
  const mpq_class &a1 = E.a1, &a2 = E.a2, &a3 = E.a3, &a4 = E.a4, &a6 = E.a6;
  v.b2 = a1 * a1 + 4 * a2;
  v.b4 = 2 * a4 + a1 * a3;
  v.b6 = a3 * a3 + 4 * a6;
  v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  v.c4 = v.b2 * v.b2 - 24 * v.b4;
  v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
  v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
  return v;
}

mpq_class j_invariant(const QModel& E) {
  Invariants v = invariants(E);
  if (v.disc == 0) throw PreconditionError("singular Weierstrass model");
  return v.c4 * v.c4 * v.c4 / v.disc;
}

ModelChange ModelChange::inverse() const {
  ModelChange c;
  c.u = 1 / u;
  c.r = -r / (u * u);
  c.s = -s / u;
  c.t = (r * s - t) / (u * u * u);
  return c;
}

QModel model_over_q(long a1, long a2, long a3, long a4, long a6) {
  return {RationalField{}, a1, a2, a3, a4, a6};
}

QModel x0plus119_model() { return model_over_q(3, -3, -1, 1, 0); }

ModelChange x0plus119_to_odd() {
  ModelChange c;
  c.s = mpq_class(-3, 2);
  c.t = mpq_class(1, 2);
  return c;
}

int torsion_order(const QModel& E, const QPoint& P, int bound) {
  QPoint acc = P;
  for (int n = 1; n <= bound; ++n) {
    if (acc.inf) return n;
    acc = add(E, acc, P);
  }
  return 0;
}

bool is_torsion(const QModel& E, const QPoint& P, int bound) { return torsion_order(E, P, bound) != 0; }

std::string point_str(const QPoint& P) {
  if (P.inf) return "O";
  std::ostringstream os;
  os << "(" << P.x.get_str() << ", " << P.y.get_str() << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

namespace {

void require_large_prime(const PrimeField& k) {
  if (k.p <= 3) throw PreconditionError("characteristic 2 and 3 are not supported");
}

struct ShortCoeffs {
  mpz_class A, B;
};

ShortCoeffs short_coeffs(const FpModel& E) {
  const PrimeField& k = E.field;
  require_large_prime(k);
  auto b2 = k.add(k.mul(E.a1, E.a1), k.mul(k.from_int(4), E.a2));
  auto b4 = k.add(k.mul(k.from_int(2), E.a4), k.mul(E.a1, E.a3));
  auto b6 = k.add(k.mul(E.a3, E.a3), k.mul(k.from_int(4), E.a6));
  auto c4 = k.sub(k.mul(b2, b2), k.mul(k.from_int(24), b4));
  auto c6 = k.sub(k.add(k.neg(k.mul(k.mul(b2, b2), b2)), k.mul(k.from_int(36), k.mul(b2, b4))),
                  k.mul(k.from_int(216), b6));
  return {k.mul(k.from_int(-27), c4), k.mul(k.from_int(-54), c6)};
}

FpModel short_from(const PrimeField& k, const mpz_class& A, const mpz_class& B) {
  return {k, 0, 0, 0, k.reduce(A), k.reduce(B)};
}

mpz_class find_nonresidue(const PrimeField& k, bool alsoNonCube) {
  mpz_class e3 = (k.p - 1) / 3;
  bool checkCube = alsoNonCube && (k.p % 3 == 1);
  for (mpz_class c = 2; c < k.p; ++c) {
    if (k.legendre(c) != -1) continue;
    if (checkCube && k.pow(c, e3) == 1) continue;
    return c;
  }
  throw std::logic_error("no non-residue found");
}

}  // namespace

mpz_class j_invariant(const FpModel& E) {
  ShortCoeffs s = short_coeffs(E);
  const PrimeField& k = E.field;
  auto A3 = k.mul(k.mul(s.A, s.A), s.A);
  auto num = k.mul(k.from_int(4 * 1728), A3);
  auto den = k.add(k.mul(k.from_int(4), A3), k.mul(k.from_int(27), k.mul(s.B, s.B)));
  if (k.is_zero(den)) throw PreconditionError("singular Weierstrass model");
  return k.mul(num, k.inv(den));
}

FpModel short_model(const FpModel& E) {
  ShortCoeffs s = short_coeffs(E);
  return short_from(E.field, s.A, s.B);
}

FpModel curve_from_j(const PrimeField& k, const mpz_class& j0_in) {
  require_large_prime(k);
  mpz_class j0 = k.reduce(j0_in);
  if (j0 == 0) return short_from(k, 0, 1);
  if (j0 == k.reduce(1728)) return short_from(k, 1, 0);
  mpz_class kk = k.mul(j0, k.inv(k.sub(k.from_int(1728), j0)));
  return short_from(k, k.mul(k.from_int(3), kk), k.mul(k.from_int(2), kk));
}

std::vector<FpModel> twists(const FpModel& E) {
  const PrimeField& k = E.field;
  ShortCoeffs s = short_coeffs(E);
  std::vector<FpModel> out;
  if (k.is_zero(s.A)) {
    bool six = k.p % 3 == 1;
    mpz_class c = find_nonresidue(k, six);
    mpz_class B = s.B;
    if (six) {
      for (int i = 0; i < 6; ++i, B = k.mul(B, c)) out.push_back(short_from(k, 0, B));
    } else {
      out.push_back(short_from(k, 0, B));
      out.push_back(short_from(k, 0, k.mul(B, k.mul(c, k.mul(c, c)))));
    }
    return out;
  }
  if (k.is_zero(s.B)) {
    bool four = k.p % 4 == 1;
    mpz_class c = find_nonresidue(k, false);
    mpz_class A = s.A;
    if (four) {
      for (int i = 0; i < 4; ++i, A = k.mul(A, c)) out.push_back(short_from(k, A, 0));
    } else {
      out.push_back(short_from(k, A, 0));
      out.push_back(short_from(k, k.mul(A, k.mul(c, c)), 0));
    }
    return out;
  }
  mpz_class d = find_nonresidue(k, false);
  out.push_back(short_from(k, s.A, s.B));
  out.push_back(short_from(k, k.mul(s.A, k.mul(d, d)), k.mul(s.B, k.mul(d, k.mul(d, d)))));
  return out;
}

mpz_class point_count_naive(const FpModel& E) {
  const PrimeField& k = E.field;
  if (k.p > 1000000) throw PreconditionError("point_count_naive: p must be at most 10^6");
  if (k.p < 3) throw PreconditionError("characteristic 2 is not supported");
  // y^2 + (a1 x + a3) y = rhs  <=>  (2y + a1 x + a3)^2 = 4 rhs + (a1 x + a3)^2.
  using i64 = long long;
  using u128 = unsigned __int128;
  const i64 p = k.p.get_si();
  auto m = [&](i64 a) { return ((a % p) + p) % p; };
  const i64 a1 = m(E.a1.get_si()), a2 = m(E.a2.get_si()), a3 = m(E.a3.get_si()),
            a4 = m(E.a4.get_si()), a6 = m(E.a6.get_si());
  auto mulm = [&](i64 a, i64 b) { return static_cast<i64>(static_cast<u128>(a) * b % p); };
  auto powm = [&](i64 b, i64 e) {
    i64 r = 1;
    while (e) {
      if (e & 1) r = mulm(r, b);
      b = mulm(b, b);
      e >>= 1;
    }
    return r;
  };
  i64 count = 1;
  for (i64 x = 0; x < p; ++x) {
    i64 g = (mulm(a1, x) + a3) % p;
    i64 rhs = (mulm(mulm(mulm(x, x), x), 1) + mulm(a2, mulm(x, x)) + mulm(a4, x) + a6) % p;
    i64 disc = (mulm(4, rhs) + mulm(g, g)) % p;
    if (disc == 0) {
      count += 1;
    } else if (powm(disc, (p - 1) / 2) == 1) {
      count += 2;
    }
  }
  return mpz_class(static_cast<long>(count));
}

FpPoint random_point(const FpModel& E, std::mt19937_64& rng) {
  const PrimeField& k = E.field;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    mpz_class x = k.reduce(mpz_class(std::to_string(rng())));
    auto g = k.add(k.mul(E.a1, x), E.a3);
    auto rhs = k.add(k.add(k.mul(k.mul(x, x), k.add(x, E.a2)), k.mul(E.a4, x)), E.a6);
    auto disc = k.add(k.mul(k.from_int(4), rhs), k.mul(g, g));
    if (k.legendre(disc) == -1) continue;
    auto r = k.sqrt(disc);
    if (rng() & 1) r = k.neg(r);
    auto y = k.mul(k.sub(r, g), k.inv(k.from_int(2)));
    return FpPoint::affine(x, y);
  }
  throw std::runtime_error("random_point: no point found");
}

bool order_probable(const FpModel& E, const mpz_class& n, int trials, std::mt19937_64& rng) {
  for (int i = 0; i < trials; ++i) {
    FpPoint Q = random_point(E, rng);
    if (!mul(E, n, Q).inf) return false;
  }
  return true;
}

}  // namespace genclass
