#pragma once

#include <string>
#include <vector>

namespace genclass {

enum class ReportFamily { Plus, Ramified };

struct ReportRow {
  long D = 0;
  long classNumber = 0;
  double rPractical = 0;
  double logHinfHilbert = 0;  // natural log of |H_D[j]|_inf
  double logHinfGen = 0;      // natural log of |F|_inf in the standard basis
  long bitLenHilbert = 0;
  long bitLenGen = 0;
  bool realFlag = false;
  int subfieldDegree = 1;
};

// Fundamental D in [dmin, dmax] (both negative) that admit a real class function on X0+(119):
// Plus family: gcd(D, 119) = 1 and a form with gcd(c/119, 119) = 1 exists; Ramified: 119 | D.
std::vector<long> report_population(long dmin, long dmax, bool primeClassNumber, ReportFamily family);

ReportRow report_row(long D);

// Rows are computed on `jobs` threads and returned sorted by |D|.
std::vector<ReportRow> build_report(const std::vector<long>& discriminants, unsigned jobs);

std::string report_csv_header();
std::string report_csv_line(const ReportRow& r);

bool is_prime_long(long n);

}  // namespace genclass
