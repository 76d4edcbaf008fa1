#include "genclass/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genclass/errors.hpp"

namespace genclass {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  }
  return s;
}

// round(a / b) for b > 0.
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class t = 2 * a + b;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * b).get_mpz_t());
  return q;
}

// Integral LLL (Cohen, Algorithm 2.6.7) with the d_i and lambda_{k,j} kept as integers.
class IntegralLLL {
 public:
  IntegralLLL(IntLattice b, const mpq_class& delta)
      : b_(std::move(b)), n_(b_.size()), d_(n_ + 1), lam_(n_, std::vector<mpz_class>(n_)) {
    num_ = delta.get_num();
    den_ = delta.get_den();
  }

  IntLattice run() {
    if (n_ == 0) return b_;
    d_[0] = 1;
    d_[1] = dot(b_[0], b_[0]);
    if (d_[1] == 0) throw PreconditionError("lll_reduce: rows are linearly dependent");
    size_t k = 1, kmax = 0;
    while (k < n_) {
      if (k > kmax) {
        kmax = k;
        for (size_t j = 0; j <= k; ++j) {
          mpz_class u = dot(b_[k], b_[j]);
          for (size_t i = 0; i < j; ++i) {
            u = (d_[i + 1] * u - lam_[k][i] * lam_[j][i]) / d_[i];
          }
          if (j < k) {
            lam_[k][j] = u;
          } else {
            if (u == 0) throw PreconditionError("lll_reduce: rows are linearly dependent");
            d_[k + 1] = u;
          }
        }
      }
      red(k, k - 1);
      // Lovasz: d_k d_{k-2} + lambda^2 >= delta d_{k-1}^2 (1-based indices).
      mpz_class lhs = den_ * (d_[k + 1] * d_[k - 1] + lam_[k][k - 1] * lam_[k][k - 1]);
      mpz_class rhs = num_ * d_[k] * d_[k];
      if (lhs < rhs) {
        swap(k, kmax);
        if (k > 1) --k;
      } else {
        for (size_t l = k - 1; l-- > 0;) red(k, l);
        ++k;
      }
    }
    return b_;
  }

 private:
  void red(size_t k, size_t l) {
    mpz_class two = 2 * lam_[k][l];
    if (abs(two) <= d_[l + 1]) return;
    mpz_class q = round_div(lam_[k][l], d_[l + 1]);
    for (size_t i = 0; i < b_[k].size(); ++i) {
      if (b_[l][i] != 0) mpz_submul(b_[k][i].get_mpz_t(), q.get_mpz_t(), b_[l][i].get_mpz_t());
    }
    lam_[k][l] -= q * d_[l + 1];
    for (size_t i = 0; i < l; ++i) lam_[k][i] -= q * lam_[l][i];
  }

  void swap(size_t k, size_t kmax) {
    std::swap(b_[k], b_[k - 1]);
    for (size_t j = 0; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    mpz_class lam = lam_[k][k - 1];
    mpz_class B = (d_[k - 1] * d_[k + 1] + lam * lam) / d_[k];
    for (size_t i = k + 1; i <= kmax; ++i) {
      mpz_class t = lam_[i][k];
      lam_[i][k] = (d_[k + 1] * lam_[i][k - 1] - lam * t) / d_[k];
      lam_[i][k - 1] = (B * t + lam * lam_[i][k]) / d_[k + 1];
    }
    d_[k] = B;
  }

  IntLattice b_;
  size_t n_;
  std::vector<mpz_class> d_;
  std::vector<std::vector<mpz_class>> lam_;
  mpz_class num_, den_;
};


// Schnorr-Euchner LLL: exact integer rows and an exact Gram matrix kept up
// to date under row operations; Gram-Schmidt data in long double.
class FloatLLL {
 public:
  FloatLLL(IntLattice b, long double delta) : b_(std::move(b)), n_(b_.size()), delta_(delta) {
    G_.assign(n_, std::vector<mpz_class>(n_));
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j <= i; ++j) G_[i][j] = G_[j][i] = dot(b_[i], b_[j]);
    mu_.assign(n_, std::vector<long double>(n_, 0));
    r_.assign(n_, std::vector<long double>(n_, 0));
    B_.assign(n_, 0);
  }

  // False when the iteration did not settle (precision trouble).
  bool run(long maxIter) {
    size_t k = 0;
    long iter = 0;
    while (k < n_) {
      if (++iter > maxIter) return false;
      bool settled = false;
      for (int rep = 0; rep < 64 && !settled; ++rep) {
        gso_row(k);
        settled = true;
        for (size_t j = k; j-- > 0;) {
          if (std::fabs(mu_[k][j]) <= 0.51L) continue;
          long double rq = std::nearbyint(mu_[k][j]);
          mpz_class q = to_mpz(rq);
          settled = false;
          sub_row(k, j, q);
          for (size_t i = 0; i < j; ++i) mu_[k][i] -= rq * mu_[j][i];
          mu_[k][j] -= rq;
        }
      }
      if (!settled) return false;
      if (!(B_[k] > 0)) {
        if (G_[k][k] == 0) throw PreconditionError("lll_reduce: rows are linearly dependent");
        return false;
      }
      if (k == 0) {
        k = 1;
        continue;
      }
      if (B_[k] < (delta_ - mu_[k][k - 1] * mu_[k][k - 1]) * B_[k - 1]) {
        swap_rows(k - 1, k);
        k = k - 1;
      } else {
        ++k;
      }
    }
    return true;
  }

  const IntLattice& basis() const { return b_; }

 private:
  static long double to_ld(const mpz_class& z) {
    long e;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
  }

  static mpz_class to_mpz(long double v) {
    int e;
    long double m = std::frexp(v, &e);
    if (e <= 63) return mpz_class(static_cast<long>(v));
    mpz_class z(static_cast<long>(std::ldexp(m, 63)));
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(e - 63));
    return z;
  }

  void gso_row(size_t k) {
    for (size_t j = 0; j <= k; ++j) {
      long double r = to_ld(G_[k][j]);
      for (size_t i = 0; i < j; ++i) r -= mu_[j][i] * r_[k][i];
      r_[k][j] = r;
      if (j < k) {
        mu_[k][j] = r / B_[j];
      } else {
        B_[k] = r;
      }
    }
  }

  // b_k -= q b_j with the Gram matrix updated to match.
  void sub_row(size_t k, size_t j, const mpz_class& q) {
    for (size_t c = 0; c < b_[k].size(); ++c) {
      if (b_[j][c] != 0) mpz_submul(b_[k][c].get_mpz_t(), q.get_mpz_t(), b_[j][c].get_mpz_t());
    }
    mpz_class gkk = G_[k][k] - 2 * q * G_[k][j] + q * q * G_[j][j];
    for (size_t i = 0; i < n_; ++i) {
      if (i == k) continue;
      G_[k][i] -= q * G_[j][i];
      G_[i][k] = G_[k][i];
    }
    G_[k][k] = gkk;
  }

  void swap_rows(size_t a, size_t b) {
    std::swap(b_[a], b_[b]);
    std::swap(G_[a], G_[b]);
    for (size_t i = 0; i < n_; ++i) std::swap(G_[i][a], G_[i][b]);
  }

  IntLattice b_;
  size_t n_;
  long double delta_;
  std::vector<std::vector<mpz_class>> G_;
  std::vector<std::vector<long double>> mu_, r_;
  std::vector<long double> B_;
};

}  // namespace

IntLattice lll_reduce(const IntLattice& L, const mpq_class& delta) {
  if (delta <= mpq_class(1, 4) || delta >= 1) throw PreconditionError("lll_reduce: delta must be in (1/4, 1)");
  for (const auto& r : L) {
    if (r.size() != L[0].size()) throw PreconditionError("lll_reduce: rows of unequal length");
  }
  return IntegralLLL(L, delta).run();
}

RelationResult integer_relation(const std::vector<std::vector<APComplex>>& values, long prec,
                                const mpz_class& coeffBound, const std::vector<bool>& realRows) {
  if (values.empty() || values[0].empty()) throw PreconditionError("integer_relation: no values");
  size_t k = values[0].size();
  std::vector<std::pair<size_t, bool>> cols;  // (row, imaginary part?)
  for (size_t r = 0; r < values.size(); ++r) {
    if (values[r].size() != k) throw PreconditionError("integer_relation: ragged value matrix");
    cols.push_back({r, false});
    bool real = r < realRows.size() && realRows[r];
    if (!real) cols.push_back({r, true});
  }
  // Scaled values at full precision.
  std::vector<std::vector<mpz_class>> V(k, std::vector<mpz_class>(cols.size()));
  long maxBits = 0;
  for (size_t i = 0; i < k; ++i) {
    for (size_t c = 0; c < cols.size(); ++c) {
      const APComplex& v = values[cols[c].first][i];
      const APReal& part = cols[c].second ? v.im : v.re;
      V[i][c] = ap_ldexp(part, prec).round();
      maxBits = std::max(maxBits, static_cast<long>(mpz_sizeinbase(V[i][c].get_mpz_t(), 2)));
    }
  }
  // Reduce with progressively more bits of the values, carrying the
  // unimodular transform (the identity block) from stage to stage. The final
  // stage is the full embedding.
  // Small steps keep each stage well conditioned for long double arithmetic.
  const long step = 24;
  IntLattice U(k, std::vector<mpz_class>(k, 0));
  for (size_t i = 0; i < k; ++i) U[i][i] = 1;
  IntLattice R;
  for (long shift = std::max(0L, maxBits - step);; shift = std::max(0L, shift - step)) {
    IntLattice L(k, std::vector<mpz_class>(k + cols.size(), 0));
    for (size_t r = 0; r < k; ++r) {
      for (size_t i = 0; i < k; ++i) L[r][i] = U[r][i];
      for (size_t c = 0; c < cols.size(); ++c) {
        mpz_class acc = 0;
        for (size_t i = 0; i < k; ++i) {
          if (U[r][i] == 0) continue;
          mpz_class t;
          mpz_fdiv_q_2exp(t.get_mpz_t(), V[i][c].get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
          acc += U[r][i] * t;
        }
        L[r][k + c] = acc;
      }
    }
    FloatLLL f(L, 0.99L);
    bool ok = f.run(200000 + 2000 * static_cast<long>(k * k));
    R = ok ? f.basis() : lll_reduce(L);
    for (size_t r = 0; r < k; ++r) U[r].assign(R[r].begin(), R[r].begin() + static_cast<long>(k));
    if (shift == 0) break;
  }

  RelationResult best;
  bool found = false;
  double threshold = -static_cast<double>(prec) / 2;
  mpz_class bestNorm;
  for (const auto& row : R) {
    std::vector<mpz_class> a(row.begin(), row.begin() + static_cast<long>(k));
    bool nonzero = false, bounded = true;
    mpz_class norm = 0;
    for (const auto& c : a) {
      if (c != 0) nonzero = true;
      if (abs(c) > coeffBound) bounded = false;
      norm += c * c;
    }
    if (!nonzero || !bounded) continue;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& vr : values) {
      long wp = vr[0].prec();
      APComplex s(wp);
      for (size_t i = 0; i < k; ++i) {
        if (a[i] != 0) s += vr[i] * APReal(a[i], wp);
      }
      worst = std::max(worst, s.is_zero() ? -1e300 : ap_log2abs(s));
    }
    if (worst < threshold && (!found || norm < bestNorm)) {
      found = true;
      bestNorm = norm;
      best.coeffs = a;
      best.residualLog2 = worst;
    }
  }
  if (!found) throw PrecisionError("integer_relation: insufficient precision");
  return best;
}

}  // namespace genclass
