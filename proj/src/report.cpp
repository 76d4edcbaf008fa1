#include "genclass/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "genclass/classpoly.hpp"
#include "genclass/errors.hpp"
#include "genclass/nsystem.hpp"
#include "genclass/quadforms.hpp"

namespace genclass {

namespace {

double ln_mpz(const mpz_class& v) {
  if (v == 0) return 0;
  long e = 0;
  double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

long bits(const mpz_class& v) { return v == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

}  // namespace

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> report_population(long dmin, long dmax, bool primeClassNumber, ReportFamily family) {
  if (dmin > dmax) std::swap(dmin, dmax);
  if (dmax >= 0) throw PreconditionError("report: discriminants must be negative");
  std::vector<long> out;
  for (long D = dmax; D >= dmin; --D) {
    if (!is_fundamental_discriminant(D)) continue;
    if (family == ReportFamily::Ramified) {
      if (D % 119 != 0) continue;
    } else {
      if (D % 7 == 0 || D % 17 == 0) continue;
      try {
        find_abc(D, 119, CMMode::Plus);
      } catch (const PreconditionError&) {
        continue;
      }
    }
    if (primeClassNumber && !is_prime_long(class_number(D))) continue;
    out.push_back(D);
  }
  return out;
}

ReportRow report_row(long D) {
  ReportRow r;
  r.D = D;
  r.classNumber = class_number(D);
  IntPolyUV H = hilbert(D);
  GenClassFunction f = compute_genclass(D, CurveFunctionBasis(), GenAlgo::LLL);
  mpz_class hinf = H.norm_inf();
  mpz_class finf = std::max(f.F.a.norm_inf(), f.F.b.norm_inf());
  r.logHinfHilbert = ln_mpz(hinf);
  r.logHinfGen = ln_mpz(finf);
  r.bitLenHilbert = bits(hinf);
  r.bitLenGen = bits(finf);
  r.rPractical = r_practical(H, f);
  r.realFlag = f.realFlag;
  r.subfieldDegree = default_mode(D) == CMMode::Ramified ? 2 : 1;
  return r;
}

std::vector<ReportRow> build_report(const std::vector<long>& discriminants, unsigned jobs) {
  std::vector<ReportRow> rows(discriminants.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failMutex;
  auto work = [&] {
    for (size_t i = next++; i < discriminants.size(); i = next++) {
      try {
        rows[i] = report_row(discriminants[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failMutex);
        if (!failure) failure = std::current_exception();
        next = discriminants.size();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(discriminants.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) { return a.D > b.D; });
  return rows;
}

std::string report_csv_header() {
  return "D,classNumber,rPractical,logHinfHilbert,logHinfGen,bitLenHilbert,bitLenGen,realFlag,subfieldDegree";
}

std::string report_csv_line(const ReportRow& r) {
  char rp[64];
  if (std::isinf(r.rPractical)) {
    std::snprintf(rp, sizeof rp, "inf");
  } else {
    std::snprintf(rp, sizeof rp, "%.6f", r.rPractical);
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%ld,%ld,%s,%.6f,%.6f,%ld,%ld,%d,%d", r.D, r.classNumber, rp, r.logHinfHilbert,
                r.logHinfGen, r.bitLenHilbert, r.bitLenGen, r.realFlag ? 1 : 0, r.subfieldDegree);
  return buf;
}

}  // namespace genclass
