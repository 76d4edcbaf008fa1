#include "genclass/classpoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "genclass/errors.hpp"
#include "genclass/lattice.hpp"
#include "genclass/quadforms.hpp"

namespace genclass {

namespace {

constexpr long kLevel = 119;

double log2_mpz(const mpz_class& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

// Product of (X - r) over roots[lo, hi), balanced.
CPoly product_tree(const std::vector<APComplex>& roots, size_t lo, size_t hi, long prec) {
  if (hi - lo == 1) return {-roots[lo], APComplex(APReal::from_long(1, prec))};
  size_t mid = lo + (hi - lo) / 2;
  return cpoly_mul(product_tree(roots, lo, mid, prec), product_tree(roots, mid, hi, prec));
}

double s_sum_double(long D) {
  mpq_class s = s_sum(D);
  return s.get_d();
}

APComplex eval_xy(const IntPolyXY& f, const XYValue& v) {
  return f.a.eval(v.x) + f.b.eval(v.x) * v.y;
}

mpq_class eval_xy(const IntPolyXY& f, const QPoint& P) {
  return f.a.eval(P.x) + f.b.eval(P.x) * P.y;
}

// Largest |F| contribution at a point, for relative residuals.
double log2_scale(const IntPolyXY& f, const XYValue& v) {
  double lx = std::max(0.0, ap_log2abs(v.x)), ly = std::max(0.0, ap_log2abs(v.y));
  double best = 0;
  for (long i = 0; i <= f.a.degree(); ++i) {
    if (f.a.coeff(i) != 0) best = std::max(best, log2_mpz(f.a.coeff(i)) + static_cast<double>(i) * lx);
  }
  for (long i = 0; i <= f.b.degree(); ++i) {
    if (f.b.coeff(i) != 0) {
      best = std::max(best, log2_mpz(f.b.coeff(i)) + static_cast<double>(i) * lx + ly);
    }
  }
  return best;
}

IntPolyXY make_primitive_positive(IntPolyXY f) {
  mpz_class c = f.content();
  if (c == 0) return f;
  if (f.leading() < 0) c = -c;
  std::vector<mpz_class> a = f.a.coeffs(), b = f.b.coeffs();
  for (auto& v : a) v /= c;
  for (auto& v : b) v /= c;
  return {IntPolyUV(a), IntPolyUV(b)};
}

// The rational point nearest to a complex point on the Eq. 4 model, if close.
bool match_rational_point(const CPoint& P, long prec, QPoint& out) {
  if (P.inf) {
    out = QPoint::infinity();
    return true;
  }
  double scale = std::max({0.0, ap_log2abs(P.x), ap_log2abs(P.y)});
  for (const QPoint& R : x0plus119_rational_points()) {
    if (R.inf) continue;
    APComplex dx = P.x - APComplex(APReal(R.x, prec)), dy = P.y - APComplex(APReal(R.y, prec));
    double d = std::max(ap_log2abs(dx), ap_log2abs(dy));
    if (d < scale - static_cast<double>(prec) / 4) {
      out = R;
      return true;
    }
  }
  // A sum that should be O can come out with a huge x-coordinate.
  if (scale > static_cast<double>(prec) / 4) {
    out = QPoint::infinity();
    return true;
  }
  return false;
}

// Sum of the distinct orbit points under the group law on the Eq. 4 model.
CPoint orbit_sum(const OrbitData& o) {
  ComplexField k(o.evalPrec);
  CModel E = specialize(x0plus119_model(), k);
  CPoint s = CPoint::infinity();
  for (size_t i = 0; i < o.dedupedSize; ++i) {
    s = add(E, s, CPoint::affine(o.point(i).x, o.point(i).y));
  }
  return s;
}

// Checks div F = sum P_i + (-H) - (m+1) O against the exact data.
void check_heegner(const IntPolyXY& F, const QPoint& H, size_t m) {
  long p = F.pole_order();
  if (H.inf) {
    if (p != static_cast<long>(m)) throw PrecisionError("class function has the wrong pole order");
    return;
  }
  if (p != static_cast<long>(m) + 1) throw PrecisionError("class function has the wrong pole order");
  QPoint Z = neg(x0plus119_model(), H);
  if (eval_xy(F, Z) != 0) throw PrecisionError("class function does not vanish at the extra zero");
}

void check_orbit_residuals(const IntPolyXY& F, const OrbitData& o) {
  for (size_t i = 0; i < o.dedupedSize; ++i) {
    APComplex v = eval_xy(F, o.point(i));
    double r = ap_log2abs(v) - log2_scale(F, o.point(i));
    if (r > -static_cast<double>(o.prec) / 2) {
      throw PrecisionError("class function does not vanish on the orbit");
    }
  }
}

void require_real(const OrbitData& o) {
  if (!o.realFlag) throw PreconditionError("K-coefficients unsupported in this operation");
}

// Smallest q with q*v within 2^-bits (relative) of an integer, by continued fractions.
bool small_denominator(const APReal& v, long bits, mpz_class& q) {
  mpfr_t t;
  mpfr_init2(t, static_cast<mpfr_prec_t>(v.prec()));
  mpfr_set(t, v.raw(), MPFR_RNDN);
  mpq_class x;
  mpfr_get_q(x.get_mpq_t(), t);
  mpfr_clear(t);
  mpq_class tol(1);
  tol /= mpz_class(1) << static_cast<unsigned long>(bits);
  mpq_class mag = abs(x) > 1 ? abs(x) : mpq_class(1);
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // convergents h/k
  mpq_class r = x;
  mpz_class limit = mpz_class(1) << static_cast<unsigned long>(bits / 2);
  for (int it = 0; it < 4 * bits; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (k1 > limit) return false;
    mpq_class approx(h1, k1);
    approx.canonicalize();
    if (abs(x - approx) * k1 <= tol * mag) {
      q = k1;
      return true;
    }
    mpq_class frac = r - a;
    if (frac == 0) {
      q = k1;
      return true;
    }
    r = 1 / frac;
  }
  return false;
}

struct TreeNode {
  CPoly A;
  CPoly B;
  CPoint Q;  // extra zero on the odd model
  long pole = 0;
};

void trim_to(CPoly& p, long size) {
  if (size < 0) size = 0;
  if (static_cast<long>(p.size()) > size) p.resize(static_cast<size_t>(size));
}

CPoly scale_poly(const CPoly& p, const APComplex& c) {
  CPoly r = p;
  for (auto& v : r) v *= c;
  return r;
}

// Remainder of c * a by b for a suitable constant c, over Z.
IntPolyUV pseudo_rem(IntPolyUV a, const IntPolyUV& b) {
  const mpz_class& lb = b.leading();
  long db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    mpz_class la = a.leading();
    long shift = a.degree() - db;
    std::vector<mpz_class> t(static_cast<size_t>(shift + 1));
    t[static_cast<size_t>(shift)] = la;
    a = a * lb - b * IntPolyUV(t);
    a = a.primitive();
  }
  return a;
}

IntPolyUV poly_gcd(IntPolyUV a, IntPolyUV b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  a = a.primitive();
  while (!b.is_zero()) {
    b = b.primitive();
    IntPolyUV r = pseudo_rem(a, b);
    a = b;
    b = r;
  }
  if (a.leading() < 0) a = -a;
  return a;
}

// Yun's square-free decomposition: factors[i] has the roots of multiplicity i + 1.
std::vector<IntPolyUV> squarefree_factors(const IntPolyUV& f) {
  std::vector<IntPolyUV> out;
  IntPolyUV fp = f.primitive();
  IntPolyUV a = poly_gcd(fp, fp.derivative());
  IntPolyUV b = poly_divexact(fp, a);
  IntPolyUV c = poly_divexact(fp.derivative(), a);
  IntPolyUV d = c - b.derivative();
  while (b.degree() > 0) {
    a = d.is_zero() ? b : poly_gcd(b, d);
    out.push_back(a);
    b = poly_divexact(b, a);
    c = poly_divexact(d, a);
    d = c - b.derivative();
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hilbert class polynomials
// ---------------------------------------------------------------------------

long hilbert_precision(long D) {
  require_discriminant(D);
  double h = 1.4 * std::numbers::pi * std::sqrt(static_cast<double>(-D)) * s_sum_double(D) / std::log(2.0);
  return static_cast<long>(std::ceil(h)) + 64;
}

IntPolyUV hilbert(long D, long precHint) {
  require_discriminant(D);
  std::vector<QuadForm> forms = enumerate_reduced(D);
  long prec = precHint > 0 ? precHint : hilbert_precision(D);
  for (int attempt = 0; attempt <= 4; ++attempt, prec *= 2) {
    std::vector<APComplex> js;
    js.reserve(forms.size());
    for (const QuadForm& f : forms) js.push_back(j_eval(form_to_tau(f, prec + 32), prec));
    CPoly P = product_tree(js, 0, js.size(), prec);
    std::vector<mpz_class> c;
    if (round_to_integers(P, 0.25, c)) return IntPolyUV(c);
  }
  throw PrecisionError("precision blowup");
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

CMMode default_mode(long D) { return D % kLevel == 0 ? CMMode::Ramified : CMMode::Plus; }

OrbitData orbit(long D, long N, CMMode mode, long prec) {
  if (N != kLevel) throw PreconditionError("only X0+(119) is supported");
  OrbitData o = orbit_from(find_abc(D, N, mode), prec);
  o.mode = mode;
  return o;
}

OrbitData orbit_from(const CMParams& p, long prec) {
  if (p.N != kLevel) throw PreconditionError("only X0+(119) is supported");
  long D = p.D;
  if (p.a <= 0 || p.b * p.b - 4 * p.a * p.c != D || p.c % p.N != 0 || std::gcd(p.a, p.N) != 1) {
    throw PreconditionError("first form must have discriminant D, gcd(a, N) = 1 and N | c");
  }
  NSystem ns = build_nsystem(p);
  OrbitData o;
  o.D = D;
  o.N = p.N;
  o.mode = p.b % p.N == 0 ? CMMode::Ramified : CMMode::Plus;
  o.prec = prec;
  size_t h = ns.members.size();
  double maxIm = 0;
  for (const auto& m : ns.members) {
    maxIm = std::max(maxIm, std::sqrt(static_cast<double>(-D)) / (2.0 * static_cast<double>(m.a)));
  }
  // Basis elements of pole order up to h + 1 grow like |x|^((h+1)/2), |x| ~ |q^(1/119)|^-2.
  double bitsPerX = 4 * std::numbers::pi * maxIm / (static_cast<double>(kLevel) * std::log(2.0)) + 2;
  o.evalPrec = prec + static_cast<long>(std::ceil((static_cast<double>(h) + 2) / 2 * bitsPerX)) + 64;
  for (const auto& m : ns.members) {
    o.members.push_back({m, xy_eval(m.tau(o.evalPrec + 32), o.evalPrec)});
  }

  ComplexField k(o.evalPrec);
  auto same = [&](const XYValue& a, const APComplex& x, const APComplex& y) {
    return k.eq(a.x, x) && k.eq(a.y, y);
  };
  std::vector<size_t> mult;
  for (size_t i = 0; i < h; ++i) {
    bool found = false;
    for (size_t j = 0; j < o.distinct.size(); ++j) {
      const XYValue& q = o.members[o.distinct[j]].value;
      if (same(o.members[i].value, q.x, q.y)) {
        ++mult[j];
        found = true;
        break;
      }
    }
    if (!found) {
      o.distinct.push_back(i);
      mult.push_back(1);
    }
  }
  o.dedupedSize = o.distinct.size();
  for (size_t c : mult) {
    if (c != mult[0]) throw PrecisionError("orbit: uneven point multiplicities");
  }
  o.subfieldDegree = static_cast<int>(mult[0]);

  bool paired = true;
  o.conjugate.assign(o.dedupedSize, -1);
  for (size_t i = 0; i < o.dedupedSize; ++i) {
    const XYValue& v = o.point(i);
    for (size_t j = 0; j < o.dedupedSize; ++j) {
      if (same(o.point(j), v.x.conj(), v.y.conj())) {
        o.conjugate[i] = static_cast<long>(j);
        break;
      }
    }
    if (o.conjugate[i] < 0) paired = false;
  }
  bool theory = is_real_case(p, true);
  if (theory && !paired) throw PrecisionError("orbit: conjugate points not resolved");
  o.realFlag = theory && paired;
  return o;
}

// ---------------------------------------------------------------------------
// Class functions
// ---------------------------------------------------------------------------

std::string GenClassFunction::basis_str() const {
  CurveFunctionBasis B(basis);
  std::vector<BasisElement> els = B.first(basisCoeffs.size());
  std::string out;
  for (size_t i = els.size(); i-- > 0;) {
    const mpz_class& c = basisCoeffs[i];
    if (c == 0) continue;
    // Table style: x before w, then z ("xw^2z").
    std::string mono;
    auto put = [&](const char* v, int e) {
      if (e == 0) return;
      mono += v;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    put("x", els[i].ex);
    put("w", els[i].ew);
    put("y", els[i].ey);
    put("z", els[i].ez);
    mpz_class a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mono.empty()) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str();
      out += mono;
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<mpz_class> to_basis_coeffs(const IntPolyXY& f, const CurveFunctionBasis& basis, size_t k) {
  std::vector<BasisElement> els = basis.first(k);
  std::vector<mpz_class> c(k);
  IntPolyXY r = f;
  for (size_t i = k; i-- > 0;) {
    long p = els[i].pole;
    mpz_class lead = (p % 2 == 0) ? r.a.coeff(p / 2) : r.b.coeff((p - 3) / 2);
    if (lead == 0) continue;
    c[i] = lead;
    IntPolyXY e = els[i].to_xy();
    r = {r.a - e.a * lead, r.b - e.b * lead};
  }
  if (!r.is_zero()) throw PreconditionError("function is not in the span of the first basis elements");
  return c;
}

IntPolyXY from_basis_coeffs(const std::vector<mpz_class>& c, const CurveFunctionBasis& basis) {
  std::vector<BasisElement> els = basis.first(c.size());
  IntPolyXY r;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    IntPolyXY e = els[i].to_xy();
    r = {r.a + e.a * c[i], r.b + e.b * c[i]};
  }
  return r;
}

GenClassFunction genclass_lll(const OrbitData& o, const CurveFunctionBasis& basis) {
  require_real(o);
  size_t m = o.dedupedSize, k = m + 1;
  std::vector<std::vector<APComplex>> rows;
  std::vector<bool> realRows;
  for (size_t i = 0; i < m; ++i) {
    long c = o.conjugate[i];
    if (c < static_cast<long>(i)) continue;  // the conjugate's row covers this point
    rows.push_back(basis_values(basis, k, o.point(i)));
    realRows.push_back(c == static_cast<long>(i));
  }
  mpz_class bound = mpz_class(1) << static_cast<unsigned long>(o.prec / 2);
  RelationResult rel = integer_relation(rows, o.prec, bound, realRows);

  GenClassFunction g;
  g.D = o.D;
  g.basis = basis.id();
  g.realFlag = true;
  g.F = make_primitive_positive(from_basis_coeffs(rel.coeffs, basis));
  if (g.F.pole_order() < static_cast<long>(m)) throw PrecisionError("integer_relation: insufficient precision");
  g.basisCoeffs = to_basis_coeffs(g.F, basis, k);

  QPoint H;
  if (!match_rational_point(orbit_sum(o), o.evalPrec, H)) {
    throw PrecisionError("Heegner point is not a rational point");
  }
  check_heegner(g.F, H, m);
  g.heegner = H;
  return g;
}

GenClassFunction genclass_tree(const OrbitData& o, const CurveFunctionBasis& basis) {
  require_real(o);
  long prec = o.evalPrec;
  ComplexField k(prec);
  ModelChange ch = x0plus119_to_odd();
  CModel E = specialize(x0plus119_model(), k);
  CModel Eo = apply_change(E, ch);
  auto C = [&](long v) { return APComplex(APReal::from_long(v, prec)); };
  // Y = 2y' with Y^2 = f = 4x^3 - 3x^2 - 2x + 1.
  const CPoly f = {C(1), C(-2), C(-3), C(4)};
  const CPoly fprime = {C(-2), C(-6), C(12)};

  size_t m = o.dedupedSize;
  std::vector<TreeNode> level;
  for (size_t i = 0; i < m; ++i) {
    CPoint P = map_point(k, CPoint::affine(o.point(i).x, o.point(i).y), ch);
    level.push_back({{-P.x, C(1)}, {}, neg(Eo, P), 2});
  }

  auto combine = [&](const TreeNode& n1, const TreeNode& n2) {
    TreeNode r;
    r.pole = n1.pole + n2.pole - 1;
    CPoly Cc = cpoly_mul(n1.A, n2.A), Dd = cpoly_mul(n1.B, n2.B);
    CPoly Ee = cpoly_mul(cpoly_add(n1.A, n1.B), cpoly_add(n2.A, n2.B));
    CPoly A = cpoly_add(Cc, cpoly_mul(Dd, f));
    CPoly B = cpoly_sub(cpoly_sub(Ee, Cc), Dd);
    if (n1.Q.inf || n2.Q.inf) {
      r.A = A;
      r.B = B;
      r.Q = n1.Q.inf ? n2.Q : n1.Q;
    } else {
      const CPoint& Q1 = n1.Q;
      const CPoint& Q2 = n2.Q;
      r.Q = add(Eo, Q1, Q2);
      APComplex Y1 = Q1.y * 2L, Y2 = Q2.y * 2L;
      bool vertical = r.Q.inf;
      APComplex lam(prec), nu(prec);
      if (!vertical) {
        if (k.eq(Q1.x, Q2.x)) {
          // Tangent at -Q1.
          lam = cpoly_eval(fprime, Q1.x) / (-Y1 * 2L);
        } else {
          lam = (Y1 - Y2) / (Q2.x - Q1.x);
        }
        nu = -Y1 - lam * Q1.x;
      }
      CPoly A2, B2;
      if (vertical) {
        CPoly lin = {-Q1.x, C(1)};
        A2 = cpoly_mul(A, lin);
        B2 = cpoly_mul(B, lin);
      } else {
        CPoly c = {-nu, -lam};
        A2 = cpoly_add(cpoly_mul(A, c), cpoly_mul(B, f));
        B2 = cpoly_add(A, cpoly_mul(B, c));
      }
      A2 = cpoly_div_linear(cpoly_div_linear(A2, Q1.x), Q2.x);
      B2 = B2.size() >= 3 ? cpoly_div_linear(cpoly_div_linear(B2, Q1.x), Q2.x) : CPoly{};
      r.A = A2;
      r.B = B2;
    }
    trim_to(r.A, r.pole / 2 + 1);
    trim_to(r.B, r.pole >= 3 ? (r.pole - 3) / 2 + 1 : 0);
    return r;
  };

  while (level.size() > 1) {
    std::vector<TreeNode> next;
    for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(combine(level[i], level[i + 1]));
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  TreeNode root = level[0];

  // Back to the Eq. 4 model: Y = 2y + 3x - 1.
  CPoly A = cpoly_add(root.A, cpoly_mul(root.B, CPoly{C(-1), C(3)}));
  CPoly B = scale_poly(root.B, C(2));
  long pole = root.Q.inf ? static_cast<long>(m) : static_cast<long>(m) + 1;
  trim_to(A, pole / 2 + 1);
  trim_to(B, pole >= 3 ? (pole - 3) / 2 + 1 : 0);
  APComplex lead = (pole % 2 == 0) ? A[static_cast<size_t>(pole / 2)] : B[static_cast<size_t>((pole - 3) / 2)];
  if (lead.is_zero()) throw PrecisionError("tree: vanishing leading coefficient");
  APComplex inv = ap_inv(lead);
  std::vector<APComplex> coeffs;
  for (auto& v : A) coeffs.push_back(v * inv);
  for (auto& v : B) coeffs.push_back(v * inv);

  // Denominators of the monic-normalized coefficients multiply to the true leading coefficient.
  mpz_class L = 1;
  long bits = o.prec / 2;
  for (const auto& v : coeffs) {
    if (std::fabs(v.im.to_double()) > 0.25 * std::max(1.0, std::fabs(v.re.to_double()))) {
      throw PrecisionError("tree: coefficients are not real");
    }
    mpz_class q;
    APReal s = v.re * APReal(L, v.re.prec());
    if (!small_denominator(s, bits, q)) throw PrecisionError("tree: rounding failed");
    L *= q;
  }
  std::vector<APComplex> scaled;
  for (const auto& v : coeffs) scaled.push_back(v * APReal(L, prec));
  std::vector<mpz_class> ints;
  if (!round_to_integers(scaled, 0.25, ints)) throw PrecisionError("tree: rounding failed");
  std::vector<mpz_class> ai(ints.begin(), ints.begin() + static_cast<long>(A.size()));
  std::vector<mpz_class> bi(ints.begin() + static_cast<long>(A.size()), ints.end());

  GenClassFunction g;
  g.D = o.D;
  g.basis = basis.id();
  g.realFlag = true;
  g.F = make_primitive_positive({IntPolyUV(ai), IntPolyUV(bi)});
  check_orbit_residuals(g.F, o);
  g.basisCoeffs = to_basis_coeffs(g.F, basis, m + 1);

  QPoint Z;
  CPoint Zc = map_point(k, root.Q, ch.inverse());
  if (!match_rational_point(Zc, prec, Z)) throw PrecisionError("Heegner point is not a rational point");
  g.heegner = neg(x0plus119_model(), Z);
  check_heegner(g.F, g.heegner, m);
  return g;
}

long genclass_precision(long D) {
  require_discriminant(D);
  double h = 1.4 * std::numbers::pi * std::sqrt(static_cast<double>(-D)) * s_sum_double(D) /
             (72.0 * std::log(2.0));
  return std::max(256L, static_cast<long>(std::ceil(h)) + 64);
}

namespace {

template <class MakeOrbit>
GenClassFunction genclass_with_doubling(long D, const CurveFunctionBasis& basis, GenAlgo algo, long precHint,
                                        MakeOrbit make) {
  long prec = precHint;
  if (prec <= 0) {
    if (const char* env = std::getenv("GENCLASS_PREC")) prec = std::atol(env);
  }
  if (prec <= 0) prec = genclass_precision(D);
  for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
    try {
      OrbitData o = make(prec);
      return algo == GenAlgo::LLL ? genclass_lll(o, basis) : genclass_tree(o, basis);
    } catch (const PrecisionError&) {
      if (attempt == 3) throw;
    }
  }
  throw PrecisionError("genclass: insufficient precision");
}

}  // namespace

GenClassFunction compute_genclass(long D, const CurveFunctionBasis& basis, GenAlgo algo, long precHint) {
  CMMode mode = default_mode(D);
  return genclass_with_doubling(D, basis, algo, precHint,
                                [&](long prec) { return orbit(D, kLevel, mode, prec); });
}

GenClassFunction compute_genclass(const CMParams& first, const CurveFunctionBasis& basis, GenAlgo algo,
                                  long precHint) {
  return genclass_with_doubling(first.D, basis, algo, precHint,
                                [&](long prec) { return orbit_from(first, prec); });
}

std::vector<QPoint> x0plus119_rational_points() {
  return {QPoint::infinity(), QPoint::affine(0, 0), QPoint::affine(1, -1), QPoint::affine(0, 1)};
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

IntPolyUV curve_norm(const IntPolyXY& F) {
  const IntPolyUV g({-1, 3});
  const IntPolyUV f({0, 1, -3, 1});
  return F.a * F.a - g * F.a * F.b - f * F.b * F.b;
}

NormResult norm_to_x(const GenClassFunction& fn) {
  NormResult r;
  r.norm = curve_norm(fn.F);
  if (fn.heegner.inf) {
    r.T = IntPolyUV::constant(1);
  } else {
    mpq_class x = fn.heegner.x;
    mpz_class b2 = x.get_den();
    r.T = IntPolyUV({-mpz_class(x.get_num()), b2});
  }
  if (!poly_divides(r.T, r.norm)) throw std::logic_error("norm_to_x: T does not divide the norm");
  IntPolyUV q = poly_divexact(r.norm, r.T);
  IntPolyUV root;
  if (q.degree() >= 2 && q.degree() % 2 == 0 && poly_sqrt(q, root)) {
    r.dPrime = 2;
    r.Hx = root.primitive();
  } else {
    r.dPrime = 1;
    r.Hx = q.primitive();
  }
  if (r.Hx.leading() < 0) r.Hx = -r.Hx;
  IntPolyUV hd = r.dPrime == 2 ? r.Hx * r.Hx : r.Hx;
  r.s = q.leading() / hd.leading();
  if (hd * r.s != q) throw std::logic_error("norm_to_x: norm is not s * Hx^d' * T");
  return r;
}

// ---------------------------------------------------------------------------
// Heights
// ---------------------------------------------------------------------------

APReal mahler_measure(const IntPolyUV& p, long prec) {
  if (p.is_zero()) return APReal::from_long(0, prec);
  APReal M(p.leading(), prec);
  M = ap_abs(M);
  if (p.degree() == 0) return M;
  // Multiple roots would cost accuracy in the root finder, so work per square-free factor.
  APReal one = APReal::from_long(1, prec);
  std::vector<IntPolyUV> parts = squarefree_factors(p);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    CPoly c;
    for (const auto& v : parts[i].coeffs()) c.push_back(APComplex(APReal(v, prec + 32)));
    for (auto& r : cpoly_roots(c, prec + 32)) {
      cpoly_newton_polish(c, r, 4);
      APReal a = ap_abs(r).with_prec(prec);
      if (a > one) {
        for (size_t k = 0; k <= i; ++k) M *= a;
      }
    }
  }
  return M;
}

HeightReport heights(const IntPolyUV& p) {
  HeightReport h;
  h.norm1 = p.norm1();
  h.normInf = p.norm_inf();
  h.mahler = mahler_measure(p);
  h.degree = p.degree();
  h.bitLength = h.normInf == 0 ? 0 : static_cast<long>(mpz_sizeinbase(h.normInf.get_mpz_t(), 2));
  return h;
}

HeightReport heights(const GenClassFunction& f) { return heights(IntPolyUV(f.basisCoeffs)); }

bool measure_inequalities_hold(const HeightReport& h) {
  if (h.normInf > h.norm1) return false;
  if (h.norm1 > (h.degree + 1) * h.normInf) return false;
  long p = h.mahler.prec();
  APReal slack = APReal::from_long(1, p) + ap_ldexp(APReal::from_long(1, p), -40);
  APReal n1(h.norm1, p);
  if (h.mahler > n1 * slack) return false;
  APReal twoN = ap_ldexp(h.mahler, h.degree < 0 ? 0 : h.degree);
  return n1 <= twoN * slack;
}

mpq_class r_curve(long N, bool plusQuotient) {
  if (N < 1) throw PreconditionError("r_curve: N must be positive");
  mpq_class r = N;
  for (long p : prime_factors(N)) r *= mpq_class(p + 1, p);
  if (plusQuotient) r /= 2;
  r.canonicalize();
  return r;
}

double r_practical(const IntPolyUV& hilbertPoly, const GenClassFunction& f) {
  mpz_class m = std::max(f.F.a.norm_inf(), f.F.b.norm_inf());
  double den = log2_mpz(m);
  double num = log2_mpz(hilbertPoly.norm_inf());
  if (den <= 0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace genclass
