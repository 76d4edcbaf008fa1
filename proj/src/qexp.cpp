#include "genclass/qexp.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "genclass/errors.hpp"

namespace genclass {

namespace {

constexpr long kLevel = 119;
constexpr long kMaxSeriesOrder = 6000;

LaurentSeries pow_small(const LaurentSeries& f, int e) {
  LaurentSeries r = LaurentSeries::constant(1, f.denom());
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

APComplex div_long(const APComplex& z, long k) {
  APReal d = APReal::from_long(k, z.prec());
  return {z.re / d, z.im / d};
}

APComplex unit_root_24(long n, long prec) {
  // exp(pi i n / 12)
  long m = ((n % 24) + 24) % 24;
  APReal ang = ap_pi(prec + 8) * APReal::from_long(m, prec + 8) / APReal::from_long(12, prec + 8);
  return {ap_cos(ang).with_prec(prec), ap_sin(ang).with_prec(prec)};
}

long nearest_integer(const APReal& r) {
  APReal half(0.5, r.prec());
  mpz_class n = ap_floor(r + half).round();
  if (!n.fits_slong_p()) throw PreconditionError("argument too large for reduction");
  return n.get_si();
}

}  // namespace

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

LaurentSeries euler_product_series(long order) {
  if (order < 1) throw PreconditionError("euler_product_series: order must be >= 1");
  std::vector<mpz_class> c(static_cast<size_t>(order), 0);
  c[0] = 1;
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2;
    long e2 = k * (3 * k + 1) / 2;
    if (e1 >= order) break;
    int s = (k % 2 == 0) ? 1 : -1;
    c[static_cast<size_t>(e1)] += s;
    if (e2 < order) c[static_cast<size_t>(e2)] += s;
  }
  return LaurentSeries::from_integers(1, 0, std::move(c), order);
}

LaurentSeries eta_series(long order) {
  return euler_product_series(order).with_denom(24).shifted(1);
}

LaurentSeries j_series(long order) {
  if (order < 1) throw PreconditionError("j_series: order must be >= 1");
  long n = order + 2;
  std::vector<mpz_class> e4(static_cast<size_t>(n), 0);
  e4[0] = 1;
  for (long k = 1; k < n; ++k) {
    mpz_class s = 0;
    for (long d = 1; d * d <= k; ++d) {
      if (k % d) continue;
      long d2 = k / d;
      s += mpz_class(d) * d * d;
      if (d2 != d) s += mpz_class(d2) * d2 * d2;
    }
    e4[static_cast<size_t>(k)] = 240 * s;
  }
  LaurentSeries E4 = LaurentSeries::from_integers(1, 0, std::move(e4), n);
  LaurentSeries E4cube = E4 * E4 * E4;
  LaurentSeries delta = series_pow(euler_product_series(n), 24).shifted(1);
  return series_div(E4cube, delta).truncated(order);
}

LaurentSeries w717_series(long order) {
  if (order < 1) throw PreconditionError("w717_series: order must be >= 1");
  LaurentSeries P = euler_product_series(order + 8);
  LaurentSeries a = P.stretched(7).with_denom(kLevel);
  LaurentSeries b = P.stretched(17).with_denom(kLevel);
  LaurentSeries c = P.with_denom(kLevel);
  LaurentSeries d = P.stretched(kLevel);
  LaurentSeries num = a * b;
  LaurentSeries den = c * d;
  return series_div(num, den).shifted(-4).truncated(order);
}

SeriesPoly x_quartic(const LaurentSeries& w) {
  LaurentSeries zero = LaurentSeries::zero(w.denom(), kExactOrder);
  return {w * w + w, -w, w.scaled(-2), zero, LaurentSeries::constant(1, w.denom())};
}

XYSeries xy_series(long order) {
  if (order < 8) throw PreconditionError("xy_series: order must be >= 8");
  static std::mutex mu;
  static XYSeries cache;
  static long cachedOrder = 0;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (cachedOrder >= order) {
      return {cache.x.truncated(order), cache.y.truncated(order)};
    }
  }
  LaurentSeries w = w717_series(order + 8);
  std::vector<mpz_class> seedCoeffs = {1, 1, 1, 1, 2, 2, 3, 3, 4, 5};
  LaurentSeries seed = LaurentSeries::from_integers(kLevel, -2, seedCoeffs, 8);
  LaurentSeries x = series_newton_root(x_quartic(w), seed, order);
  if (x.trunc_order() < order) throw std::runtime_error("xy_series: Newton iteration stalled");
  LaurentSeries y = (x * x - x - w).truncated(order);
  std::lock_guard<std::mutex> lock(mu);
  if (order > cachedOrder) {
    cache = {x, y};
    cachedOrder = order;
  }
  return {x, y};
}

IntPolyXY x0p119_mul(const IntPolyXY& f, const IntPolyXY& g) {
  // y^2 = x^3 - 3x^2 + x - (3x - 1) y
  static const IntPolyUV cubic({0, 1, -3, 1});
  static const IntPolyUV lin({-1, 3});
  IntPolyUV bb = f.b * g.b;
  return {f.a * g.a + bb * cubic, f.a * g.b + f.b * g.a - bb * lin};
}

LaurentSeries xy_poly_series(const IntPolyXY& f, const XYSeries& s) {
  auto horner = [&](const IntPolyUV& p) {
    LaurentSeries acc = LaurentSeries::zero(s.x.denom(), kExactOrder);
    for (long i = p.degree(); i >= 0; --i) {
      acc = acc * s.x + LaurentSeries::constant(mpq_class(p.coeff(i)), s.x.denom());
    }
    return acc;
  };
  LaurentSeries r = horner(f.a);
  if (!f.b.is_zero()) r = r + horner(f.b) * s.y;
  return r;
}

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

IntPolyXY BasisElement::to_xy() const {
  IntPolyXY r{IntPolyUV::constant(1), IntPolyUV()};
  const IntPolyXY W{IntPolyUV({0, -1, 1}), IntPolyUV::constant(-1)};
  const IntPolyXY X{IntPolyUV({0, 1}), IntPolyUV()};
  const IntPolyXY Y{IntPolyUV(), IntPolyUV::constant(1)};
  const IntPolyXY Z{IntPolyUV({0, 1}), IntPolyUV::constant(1)};
  for (int i = 0; i < ew; ++i) r = x0p119_mul(r, W);
  for (int i = 0; i < ex; ++i) r = x0p119_mul(r, X);
  for (int i = 0; i < ey; ++i) r = x0p119_mul(r, Y);
  for (int i = 0; i < ez; ++i) r = x0p119_mul(r, Z);
  return r;
}

std::string BasisElement::str() const {
  std::string s;
  auto add = [&](const char* v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  add("w", ew);
  add("x", ex);
  add("y", ey);
  add("z", ez);
  return s.empty() ? "1" : s;
}

CurveFunctionBasis CurveFunctionBasis::from_name(const std::string& name) {
  if (name == "standard") return CurveFunctionBasis(BasisId::Standard);
  if (name == "etaMixed") return CurveFunctionBasis(BasisId::EtaMixed);
  throw PreconditionError("unknown basis '" + name + "'");
}

BasisElement CurveFunctionBasis::element_with_pole(long p) const {
  if (!has_pole(p)) throw PreconditionError("no basis element of pole order " + std::to_string(p));
  BasisElement e;
  e.pole = p;
  if (id_ == BasisId::Standard) {
    if (p % 2 == 0) {
      e.ex = static_cast<int>(p / 2);
    } else {
      e.ex = static_cast<int>((p - 3) / 2);
      e.ey = 1;
    }
    return e;
  }
  switch (p % 4) {
    case 0:
      e.ew = static_cast<int>(p / 4);
      break;
    case 2:
      e.ew = static_cast<int>((p - 2) / 4);
      e.ex = 1;
      break;
    case 3:
      e.ew = static_cast<int>((p - 3) / 4);
      e.ez = 1;
      break;
    default:
      e.ew = static_cast<int>((p - 5) / 4);
      e.ex = 1;
      e.ez = 1;
      break;
  }
  return e;
}

std::vector<BasisElement> CurveFunctionBasis::first(size_t k) const {
  std::vector<BasisElement> out;
  for (long p = 0; out.size() < k; ++p) {
    if (has_pole(p)) out.push_back(element_with_pole(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

APComplex eta_eval(const APComplex& tau_in, long prec) {
  if (tau_in.im.sign() <= 0) throw PreconditionError("eta_eval: Im(tau) must be positive");
  double lim = ap_log2abs(tau_in.im);
  long wp = prec + 32 + (lim < 0 ? static_cast<long>(-3 * lim) : 0);
  APComplex tau = tau_in.with_prec(wp);
  APComplex mult(APReal::from_long(1, wp));
  APReal one = APReal::from_long(1, wp);
  for (int step = 0; step < 10000; ++step) {
    long n = nearest_integer(tau.re);
    if (n != 0) {
      tau.re -= APReal::from_long(n, wp);
      mult *= unit_root_24(n, wp);
    }
    if (ap_norm(tau) < one) {
      // eta(tau) = eta(-1/tau) / sqrt(-i tau)
      APComplex mi_tau(tau.im, -tau.re);
      mult /= ap_sqrt(mi_tau);
      tau = -ap_inv(tau);
    } else {
      break;
    }
  }
  APComplex q = ap_exp2pii(tau);
  APComplex sum(APReal::from_long(1, wp));
  double lq = ap_log2abs(q);
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2;
    if (lq * static_cast<double>(e1) < -static_cast<double>(wp) - 8) break;
    APComplex t = ap_pow(q, e1) + ap_pow(q, e1 + k);
    if (k % 2) {
      sum -= t;
    } else {
      sum += t;
    }
  }
  APComplex q24 = ap_exp2pii(div_long(tau, 24));
  return (mult * q24 * sum).with_prec(prec);
}

namespace {

std::mutex g_jMutex;
LaurentSeries g_jCache;

LaurentSeries j_series_cached(long order) {
  std::lock_guard<std::mutex> lock(g_jMutex);
  if (g_jCache.is_zero() || g_jCache.trunc_order() < order) {
    long n = std::max(order, g_jCache.is_zero() ? 0L : g_jCache.trunc_order() * 3 / 2);
    g_jCache = j_series(n);
  }
  return g_jCache;
}

}  // namespace

APComplex j_eval(const APComplex& tau_in, long prec) {
  if (tau_in.im.sign() <= 0) throw PreconditionError("j_eval: Im(tau) must be positive");
  double lim = ap_log2abs(tau_in.im);
  long wp = prec + 32 + (lim < 0 ? static_cast<long>(-3 * lim) : 0);
  APComplex tau = tau_in.with_prec(wp);
  APReal one = APReal::from_long(1, wp);
  for (int step = 0; step < 10000; ++step) {
    long n = nearest_integer(tau.re);
    if (n != 0) tau.re -= APReal::from_long(n, wp);
    if (ap_norm(tau) < one) {
      tau = -ap_inv(tau);
    } else {
      break;
    }
  }
  APComplex q = ap_exp2pii(tau);
  // Coefficients of j grow like exp(4 pi sqrt(n)).
  double lq = -ap_log2abs(q);
  double lj = std::max(0.0, lq);  // log2 |j| is about log2 |1/q|
  long n = 8;
  while (4 * M_PI * std::sqrt(static_cast<double>(n)) * M_LOG2E - lq * static_cast<double>(n) >
         -static_cast<double>(wp) - lj - 16) {
    ++n;
  }
  LaurentSeries js = j_series_cached(n).truncated(n);
  return eval_series_at_nome(js, q, wp).value.with_prec(prec);
}

APComplex w717_eval(const APComplex& tau, long prec) {
  long wp = prec + 16;
  APComplex t = tau.with_prec(wp + 32);
  APComplex n1 = eta_eval(div_long(t, 7), wp);
  APComplex n2 = eta_eval(div_long(t, 17), wp);
  APComplex d1 = eta_eval(t, wp);
  APComplex d2 = eta_eval(div_long(t, kLevel), wp);
  return (n1 * n2 / (d1 * d2)).with_prec(prec);
}

namespace {

// Value of f at (x, y) together with log2 of the sum of absolute term sizes.
APComplex eval_xy_scaled(const IntPolyXY& f, const APComplex& x, const APComplex& y,
                         double& log2scale) {
  double lx = ap_log2abs(x), ly = ap_log2abs(y);
  double best = -1e300;
  auto horner = [&](const IntPolyUV& p, double extra) {
    APComplex acc(x.prec());
    for (long i = p.degree(); i >= 0; --i) {
      acc *= x;
      const mpz_class& c = p.coeffs()[static_cast<size_t>(i)];
      if (c != 0) {
        acc.re += APReal(c, x.prec());
        double t = std::log2(std::fabs(c.get_d())) + static_cast<double>(i) * lx + extra;
        best = std::max(best, t);
      }
    }
    return acc;
  };
  APComplex v = horner(f.a, 0.0);
  if (!f.b.is_zero()) v += horner(f.b, ly) * y;
  long terms = static_cast<long>(f.a.coeffs().size() + f.b.coeffs().size()) + 1;
  log2scale = best + std::log2(static_cast<double>(terms));
  return v;
}

// log2 of the worse of the two relation residuals at (x, y), relative to scale.
double plus_j_residual(const PlusJRelation& rel, const APComplex& x, const APComplex& y,
                       const APComplex& S, const APComplex& T) {
  double s0, s1, s2;
  APComplex f0 = eval_xy_scaled(rel.f0, x, y, s0);
  APComplex f1 = eval_xy_scaled(rel.f1, x, y, s1);
  APComplex f2 = eval_xy_scaled(rel.f2, x, y, s2);
  double sc1 = std::max(s1, s2 + ap_log2abs(S));
  double sc0 = std::max(s0, s2 + ap_log2abs(T));
  double r1 = ap_log2abs(f2 * S + f1) - sc1;
  double r0 = ap_log2abs(f2 * T - f0) - sc0;
  return std::max(r1, r0);
}

XYValue xy_eval_modular(const APComplex& tau, long prec) {
  const PlusJRelation& rel = plus_j_relation();
  long pw = std::max(prec, 64L) + 64;
  for (int attempt = 0; attempt < 4; ++attempt, pw *= 2) {
    APComplex w = w717_eval(tau, pw);
    APComplex one(APReal::from_long(1, pw));
    CPoly quartic = {w * w + w, -w, w * -2L, APComplex(pw), one};
    std::vector<APComplex> roots = cpoly_roots(quartic, pw);
    if (roots.size() != 4) continue;
    APComplex j1 = j_eval(tau, pw);
    APComplex j2 = j_eval(div_long(tau.with_prec(pw + 32), kLevel), pw);
    APComplex S = j1 + j2, T = j1 * j2;
    std::vector<double> res;
    for (auto& r : roots) {
      cpoly_newton_polish(quartic, r, 8);
      APComplex y = r * r - r - w;
      res.push_back(plus_j_residual(rel, r, y, S, T));
    }
    std::vector<size_t> idx = {0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return res[a] < res[b]; });
    double best = res[idx[0]], second = res[idx[1]];
    if (best < -static_cast<double>(pw) / 2 && second - best > 32) {
      APComplex x = roots[idx[0]];
      APComplex y = x * x - x - w;
      return {x.with_prec(prec), y.with_prec(prec), w.with_prec(prec)};
    }
  }
  throw PrecisionError("xy_eval: could not separate the quartic branches");
}

XYValue xy_eval_series(const APComplex& tau, long prec) {
  long wp = prec + 32;
  APComplex nome = ap_exp2pii(div_long(tau.with_prec(wp + 32), kLevel)).with_prec(wp);
  double lq = -ap_log2abs(nome);
  if (lq <= 0) throw PreconditionError("xy_eval: Im(tau) must be positive");
  // Coefficients of x grow subexponentially; allow a generous margin.
  long order = static_cast<long>(std::ceil((static_cast<double>(wp) + 64) / lq * 1.25)) + 64;
  if (order > kMaxSeriesOrder) {
    throw PrecisionError("xy_eval: precision unreachable at available truncation order " +
                         std::to_string(kMaxSeriesOrder) + " (needs about " +
                         std::to_string(order) + ")");
  }
  XYSeries s = xy_series(order);
  SeriesValue xv = eval_series_at_nome(s.x, nome, wp);
  SeriesValue yv = eval_series_at_nome(s.y, nome, wp);
  double mag = std::max({0.0, ap_log2abs(xv.value), ap_log2abs(yv.value)});
  double tail = std::max(ap_log2abs(xv.tailBound), ap_log2abs(yv.tailBound));
  if (tail > mag - static_cast<double>(prec)) {
    throw PrecisionError("xy_eval: series tail too large at truncation order " +
                         std::to_string(order) + "; a higher order is needed");
  }
  APComplex w = xv.value * xv.value - xv.value - yv.value;
  return {xv.value.with_prec(prec), yv.value.with_prec(prec), w.with_prec(prec)};
}

}  // namespace

XYValue xy_eval(const APComplex& tau, long prec, EvalMethod method) {
  if (tau.im.sign() <= 0) throw PreconditionError("xy_eval: Im(tau) must be positive");
  return method == EvalMethod::Series ? xy_eval_series(tau, prec) : xy_eval_modular(tau, prec);
}

std::vector<APComplex> basis_values(const CurveFunctionBasis& basis, size_t k, const XYValue& v) {
  std::vector<BasisElement> els = basis.first(k);
  long p = v.x.prec();
  APComplex z = v.x + v.y;
  auto powers = [&](const APComplex& base, int maxE) {
    std::vector<APComplex> out{APComplex(APReal::from_long(1, p))};
    for (int i = 1; i <= maxE; ++i) out.push_back(out.back() * base);
    return out;
  };
  int mw = 0, mx = 0, my = 0, mz = 0;
  for (auto& e : els) {
    mw = std::max(mw, e.ew);
    mx = std::max(mx, e.ex);
    my = std::max(my, e.ey);
    mz = std::max(mz, e.ez);
  }
  auto pw = powers(v.w, mw), px = powers(v.x, mx), py = powers(v.y, my), pz = powers(z, mz);
  std::vector<APComplex> out;
  out.reserve(els.size());
  for (auto& e : els) {
    out.push_back(pw[static_cast<size_t>(e.ew)] * px[static_cast<size_t>(e.ex)] *
                  py[static_cast<size_t>(e.ey)] * pz[static_cast<size_t>(e.ez)]);
  }
  return out;
}

std::vector<APComplex> basis_eval(const CurveFunctionBasis& basis, size_t k, const APComplex& tau,
                                  long prec, EvalMethod method) {
  long need = prec + 64;
  for (int attempt = 0; attempt < 3; ++attempt) {
    XYValue v = xy_eval(tau, need, method);
    std::vector<APComplex> vals = basis_values(basis, k, v);
    double mag = 0;
    for (auto& c : vals) mag = std::max(mag, ap_log2abs(c));
    long want = prec + static_cast<long>(std::ceil(mag)) + 32 + static_cast<long>(k);
    if (want <= need) {
      for (auto& c : vals) c = c.with_prec(prec + static_cast<long>(std::ceil(mag)) + 16);
      return vals;
    }
    need = want + 32;
  }
  throw PrecisionError("basis_eval: magnitude estimate did not settle");
}

// ---------------------------------------------------------------------------
// Relation with j(z), j(z/119)
// ---------------------------------------------------------------------------

namespace {

// Standard basis series indexed by pole order (index 1 unused).
std::vector<LaurentSeries> standard_series_table(const XYSeries& s, long maxPole) {
  std::vector<LaurentSeries> t(static_cast<size_t>(maxPole + 1));
  LaurentSeries xp = LaurentSeries::constant(1, kLevel);
  for (long i = 0; 2 * i <= maxPole; ++i) {
    t[static_cast<size_t>(2 * i)] = xp;
    if (2 * i + 3 <= maxPole) t[static_cast<size_t>(2 * i + 3)] = xp * s.y;
    xp = xp * s.x;
  }
  return t;
}

bool greedy_standard(const LaurentSeries& g_in, const std::vector<LaurentSeries>& table,
                     long checkUpTo, IntPolyXY& out) {
  LaurentSeries g = g_in;
  out = IntPolyXY{};
  if (g.is_zero()) return true;
  long m = -g.val();
  if (m >= static_cast<long>(table.size())) return false;
  for (long p = m; p >= 0; --p) {
    if (g.is_zero()) break;
    mpq_class c = g.coeff(-p);
    if (c == 0) continue;
    if (p == 1 || c.get_den() != 1) return false;
    g = g - table[static_cast<size_t>(p)].scaled(c);
    mpz_class ci = c.get_num();
    if (p % 2 == 0) {
      out.a.set_coeff(p / 2, out.a.coeff(p / 2) + ci);
    } else {
      out.b.set_coeff((p - 3) / 2, out.b.coeff((p - 3) / 2) + ci);
    }
  }
  if (g.trunc_order() <= checkUpTo) {
    throw std::runtime_error("series_to_standard: series truncated below the check order");
  }
  for (long e = 0; e <= checkUpTo; ++e) {
    if (g.coeff(e) != 0) return false;
  }
  return true;
}

}  // namespace

bool series_to_standard(const LaurentSeries& g, const XYSeries& s, long checkUpTo, IntPolyXY& out) {
  long m = std::max(0L, -g.val());
  return greedy_standard(g, standard_series_table(s, m), checkUpTo, out);
}

PlusJRelation find_plus_j_relation(long maxPole, long checkUpTo) {
  // S = j(z) + j(z/119) has pole 119 at infinity; T = j(z) j(z/119) has pole 120.
  for (long k = 0; 120 + 4 * k <= maxPole; ++k) {
    long pole = 120 + 4 * k;
    long ord = checkUpTo + pole + 8;
    XYSeries s = xy_series(ord);
    std::vector<LaurentSeries> table = standard_series_table(s, pole);
    LaurentSeries w = w717_series(ord);
    LaurentSeries wk = pow_small(w, static_cast<int>(k));
    long jOrder = ord + pole;
    LaurentSeries jz = j_series(jOrder / kLevel + 2).with_denom(kLevel);
    LaurentSeries jN = j_series(jOrder).stretched(kLevel);
    LaurentSeries S = jz + jN;
    LaurentSeries T = jz * jN;
    PlusJRelation rel;
    rel.poleBound = pole;
    if (!greedy_standard(wk, table, checkUpTo, rel.f2)) continue;
    if (!greedy_standard(-(S * wk), table, checkUpTo, rel.f1)) continue;
    if (!greedy_standard(T * wk, table, checkUpTo, rel.f0)) continue;
    return rel;
  }
  throw PreconditionError("no relation with pole order <= " + std::to_string(maxPole));
}

const PlusJRelation& plus_j_relation() {
  static const PlusJRelation rel = find_plus_j_relation(400);
  return rel;
}

}  // namespace genclass
