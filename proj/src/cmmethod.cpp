#include "genclass/cmmethod.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "genclass/errors.hpp"
#include "genclass/qexp.hpp"

namespace genclass {

namespace {

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
using FpPoly = std::vector<mpz_class>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_reduce(const IntPolyUV& f, const mpz_class& p) {
  FpPoly r;
  for (const auto& c : f.coeffs()) {
    mpz_class v;
    mpz_mod(v.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    r.push_back(v);
  }
  trim(r);
  return r;
}

mpz_class modp(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) throw std::domain_error("not invertible");
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, const mpz_class& p) {
  FpPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    mpz_class x = i < a.size() ? a[i] : mpz_class(0);
    if (i < b.size()) x -= b[i];
    r[i] = modp(x, p);
  }
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, const mpz_class& p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& v : r) v = modp(v, p);
  trim(r);
  return r;
}

// a mod b (b nonzero); quotient through q when requested.
FpPoly rem(FpPoly a, const FpPoly& b, const mpz_class& p, FpPoly* q = nullptr) {
  mpz_class li = inv_mod(b.back(), p);
  if (q) q->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    mpz_class c = modp(a.back() * li, p);
    size_t shift = a.size() - b.size();
    if (q) (*q)[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = modp(a[shift + i] - c * b[i], p);
    trim(a);
  }
  return a;
}

FpPoly monic(FpPoly a, const mpz_class& p) {
  if (a.empty()) return a;
  mpz_class li = inv_mod(a.back(), p);
  for (auto& v : a) v = modp(v * li, p);
  return a;
}

FpPoly gcd(FpPoly a, FpPoly b, const mpz_class& p) {
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// base^e mod m.
FpPoly powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m, const mpz_class& p) {
  FpPoly result{1};
  result = rem(result, m, p);
  FpPoly b = rem(base, m, p);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), m, p);
  }
  return result;
}

// Roots of a monic square-free g that splits into distinct linear factors.
void split(const FpPoly& g, const mpz_class& p, std::mt19937_64& rng, std::vector<mpz_class>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(modp(-g[0], p));
    return;
  }
  mpz_class e = (p - 1) / 2;
  gmp_randclass r(gmp_randinit_default);
  r.seed(static_cast<unsigned long>(rng()));
  while (true) {
    mpz_class a = r.get_z_range(p);
    FpPoly h = powmod(FpPoly{a, 1}, e, g, p);
    h = sub(h, FpPoly{1}, p);
    FpPoly d = gcd(g, h, p);
    if (d.size() > 1 && d.size() < g.size()) {
      FpPoly q;
      rem(g, d, p, &q);
      split(d, p, rng, out);
      split(monic(q, p), p, rng, out);
      return;
    }
  }
}

long log2_terms(const std::vector<APComplex>& terms) {
  double m = -1e300;
  for (const auto& t : terms) m = std::max(m, ap_log2abs(t));
  return static_cast<long>(m);
}

mpz_class eval_mod(const IntPolyUV& f, const mpz_class& x, const mpz_class& p) {
  mpz_class r = 0;
  for (long i = f.degree(); i >= 0; --i) r = modp(r * x + f.coeff(i), p);
  return r;
}

bool is_prime(long q) {
  mpz_class z = q;
  return q > 1 && mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

}  // namespace

void validate(const FrobeniusSpec& s) {
  if (s.q < 5 || !is_prime(s.q)) throw PreconditionError("q must be a prime >= 5");
  if (std::gcd(std::labs(s.t), s.q) != 1) throw PreconditionError("gcd(t, q) must be 1");
  if (s.disc() >= 0) throw PreconditionError("t^2 - 4q must be negative");
}

// ---------------------------------------------------------------------------
// Psi_C
// ---------------------------------------------------------------------------

ModularPolynomial compute_psi(int dj, long poleBound, long truncation) {
  if (dj != 2) throw PreconditionError("only d_j = 2 (X0+(119)) is supported");
  PlusJRelation rel;
  try {
    rel = find_plus_j_relation(poleBound, truncation);
  } catch (const PreconditionError&) {
    throw PreconditionError("increase poleBound");
  }
  ModularPolynomial psi;
  psi.dj = dj;
  psi.poleBound = rel.poleBound;
  psi.f = {rel.f0, rel.f1, rel.f2};
  mpz_class g = 0;
  for (const auto& f : psi.f) g = gcd(g, f.content());
  if (psi.f[2].leading() < 0) g = -g;
  for (auto& f : psi.f) {
    std::vector<mpz_class> a = f.a.coeffs(), b = f.b.coeffs();
    for (auto& v : a) v /= g;
    for (auto& v : b) v /= g;
    f = {IntPolyUV(a), IntPolyUV(b)};
  }
  return psi;
}

double psi_residual(const ModularPolynomial& psi, const APComplex& tau, long prec) {
  XYValue v = xy_eval(tau, prec);
  APComplex j = j_eval(tau, prec);
  std::vector<APComplex> terms;
  APComplex jp(APReal::from_long(1, prec));
  APComplex sum(prec);
  for (const auto& f : psi.f) {
    APComplex t = (f.a.eval(v.x) + f.b.eval(v.x) * v.y) * jp;
    sum += t;
    terms.push_back(t);
    jp *= j;
  }
  return ap_log2abs(sum) - static_cast<double>(log2_terms(terms));
}

bool psi_well_formed(const ModularPolynomial& psi) {
  if (static_cast<int>(psi.f.size()) != psi.dj + 1) return false;
  mpz_class g = 0;
  for (const auto& f : psi.f) g = gcd(g, f.content());
  if (g != 1) return false;
  if (psi.f.back().leading() <= 0) return false;
  for (const auto& f : psi.f) {
    if (f.pole_order() > psi.poleBound) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Roots over F_p
// ---------------------------------------------------------------------------

std::vector<mpz_class> fp_roots(const IntPolyUV& f, const mpz_class& p, std::mt19937_64& rng) {
  if (p < 3 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw PreconditionError("p must be an odd prime");
  FpPoly g = fp_reduce(f, p);
  if (g.empty()) throw PreconditionError("polynomial vanishes identically mod p");
  if (g.size() == 1) return {};
  g = monic(g, p);
  FpPoly xp = powmod(FpPoly{0, 1}, p, g, p);
  FpPoly d = gcd(g, sub(xp, FpPoly{0, 1}, p), p);
  std::vector<mpz_class> out;
  split(d, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> fp_roots(const IntPolyUV& f, const mpz_class& p) {
  std::mt19937_64 rng(0);
  return fp_roots(f, p, rng);
}

// ---------------------------------------------------------------------------
// CM constructions
// ---------------------------------------------------------------------------

bool select_twist(const PrimeField& k, const mpz_class& j0, const mpz_class& order, std::mt19937_64& rng,
                  FpModel& out) {
  for (const FpModel& E : twists(curve_from_j(k, j0))) {
    bool ok = k.p <= 1000000 ? point_count_naive(E) == order : order_probable(E, order, 5, rng);
    if (ok) {
      out = E;
      return true;
    }
  }
  return false;
}

CMCurve cm_hilbert(const FrobeniusSpec& spec, std::mt19937_64& rng) {
  validate(spec);
  PrimeField k{mpz_class(spec.q)};
  mpz_class order = spec.q + 1 - spec.t;
  IntPolyUV H = hilbert(spec.disc());
  CMCurve r;
  r.jCandidates = fp_roots(H, k.p, rng);
  if (r.jCandidates.empty()) throw std::logic_error("Hilbert class polynomial has no root mod q");
  for (const auto& j0 : r.jCandidates) {
    if (select_twist(k, j0, order, rng, r.curve)) {
      r.order = order;
      r.j = j0;
      return r;
    }
  }
  throw std::logic_error("no twist has the prescribed order");
}

CMCurve cm_generalized(const FrobeniusSpec& spec, const GenClassFunction& F, const ModularPolynomial& psi,
                       std::mt19937_64& rng) {
  validate(spec);
  const mpz_class p = spec.q;
  PrimeField k{p};
  FpModel E = specialize(x0plus119_model(), k);
  mpz_class order = spec.q + 1 - spec.t;

  // The extra zero of F is rational; its reduction is not a CM point.
  FpPoint Z = FpPoint::infinity();
  if (!F.heegner.inf) {
    QPoint zq = neg(x0plus119_model(), F.heegner);
    Z = specialize<PrimeField>(zq, k);
  }

  NormResult n = norm_to_x(F);
  CMCurve r;
  for (const mpz_class& x : fp_roots(n.Hx, p, rng)) {
    std::vector<mpz_class> ys;
    mpz_class A = eval_mod(F.F.a, x, p), B = eval_mod(F.F.b, x, p);
    if (B != 0) {
      ys.push_back(modp(-A * inv_mod(B, p), p));
    } else if (A == 0) {
      // F vanishes on the whole fibre: both points over x.
      IntPolyUV fib({-(x * x * x - 3 * x * x + x), 3 * x - 1, 1});
      for (const auto& y : fp_roots(fib, p, rng)) ys.push_back(y);
    }
    for (const mpz_class& y : ys) {
      FpPoint P = FpPoint::affine(x, y);
      if (!on_curve(E, P) || points_equal(E, P, Z)) continue;
      std::vector<mpz_class> c;
      for (const auto& f : psi.f) c.push_back(modp(eval_mod(f.a, x, p) + eval_mod(f.b, x, p) * y, p));
      IntPolyUV poly(c);
      if (poly.degree() <= 0) continue;  // common zero of the f_i, or no root
      for (const auto& j0 : fp_roots(poly, p, rng)) {
        if (std::find(r.jCandidates.begin(), r.jCandidates.end(), j0) == r.jCandidates.end()) {
          r.jCandidates.push_back(j0);
        }
      }
    }
  }
  std::sort(r.jCandidates.begin(), r.jCandidates.end());
  for (const auto& j0 : r.jCandidates) {
    if (select_twist(k, j0, order, rng, r.curve)) {
      r.order = order;
      r.j = j0;
      return r;
    }
  }
  throw PreconditionError("degenerate reduction");
}

CMCurve cm_generalized(const FrobeniusSpec& spec, const ModularPolynomial& psi, std::mt19937_64& rng) {
  validate(spec);
  GenClassFunction F = compute_genclass(spec.disc(), CurveFunctionBasis(), GenAlgo::LLL);
  return cm_generalized(spec, F, psi, rng);
}

}  // namespace genclass
