#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "genclass/classpoly.hpp"
#include "genclass/cmmethod.hpp"
#include "genclass/errors.hpp"
#include "genclass/nsystem.hpp"
#include "genclass/quadforms.hpp"
#include "genclass/report.hpp"
#include "genclass/serialize.hpp"

namespace py = pybind11;
using namespace genclass;

namespace {

py::int_ to_py(const mpz_class& v) { return py::int_(py::module_::import("builtins").attr("int")(v.get_str())); }

mpz_class from_py(const py::int_& v) { return mpz_class(std::string(py::str(py::handle(v)))); }

py::list coeffs(const IntPolyUV& p) {
  py::list out;
  for (long i = 0; i <= p.degree(); ++i) out.append(to_py(p.coeff(i)));
  return out;
}

IntPolyUV poly_from(const std::vector<py::int_>& c) {
  std::vector<mpz_class> v;
  for (const auto& x : c) v.push_back(from_py(x));
  return IntPolyUV(v);
}

py::object fraction(const mpq_class& q) {
  return py::module_::import("fractions").attr("Fraction")(to_py(q.get_num()), to_py(q.get_den()));
}

py::dict function_dict(const GenClassFunction& f) {
  py::dict d;
  d["D"] = f.D;
  d["A"] = coeffs(f.F.a);
  d["B"] = coeffs(f.F.b);
  d["basis"] = basis_file_id(f.basis);
  d["basis_coeffs"] = [&] {
    py::list l;
    for (const auto& c : f.basisCoeffs) l.append(to_py(c));
    return l;
  }();
  d["expression"] = f.basis_str();
  d["heegner"] = f.heegner.inf ? py::object(py::none())
                               : py::object(py::make_tuple(fraction(f.heegner.x), fraction(f.heegner.y)));
  d["real"] = f.realFlag;
  d["text"] = format_genclass(f);
  return d;
}

}  // namespace

PYBIND11_MODULE(_genclass, m) {
  m.doc() = "Hilbert and generalized class polynomials on X0+(119)";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);

  m.def("class_number", &class_number, py::arg("D"));
  m.def(
      "hilbert", [](long D) { return coeffs(hilbert(D)); }, py::arg("D"),
      "Coefficients of H_D[j], lowest degree first.");
  m.def(
      "genclass",
      [](long D, const std::string& basis, const std::string& algo, long b) {
        if (basis != "standard" && basis != "etamixed") throw PreconditionError("unknown basis '" + basis + "'");
        if (algo != "lll" && algo != "tree") throw PreconditionError("unknown algorithm '" + algo + "'");
        CurveFunctionBasis fb(basis == "standard" ? BasisId::Standard : BasisId::EtaMixed);
        GenAlgo a = algo == "lll" ? GenAlgo::LLL : GenAlgo::Tree;
        if (b == 0) return function_dict(compute_genclass(D, fb, a));
        if ((b * b - D) % 476 != 0) throw PreconditionError("b must satisfy b^2 = D (mod 476)");
        return function_dict(compute_genclass(CMParams{D, 119, 1, b, (b * b - D) / 4}, fb, a));
      },
      py::arg("D"), py::arg("basis") = "standard", py::arg("algo") = "lll", py::arg("b") = 0,
      "Generalized class function F = A(x) + B(x) y on X0+(119).");
  m.def(
      "norm_to_x",
      [](long D) {
        NormResult n = norm_to_x(compute_genclass(D, CurveFunctionBasis(), GenAlgo::LLL));
        py::dict d;
        d["norm"] = coeffs(n.norm);
        d["Hx"] = coeffs(n.Hx);
        d["T"] = coeffs(n.T);
        d["s"] = to_py(n.s);
        d["d_prime"] = n.dPrime;
        return d;
      },
      py::arg("D"));
  m.def(
      "nsystem",
      [](long D, long N) {
        NSystem ns = build_nsystem(find_abc(D, N, N == 119 ? default_mode(D) : CMMode::Generic));
        std::vector<std::tuple<long, long, long>> out;
        for (const auto& p : ns.members) out.emplace_back(p.a, p.b, p.c);
        return out;
      },
      py::arg("D"), py::arg("N") = 119);
  m.def(
      "density", [](long N, bool fundamental) { return fraction(density(N, fundamental)); }, py::arg("N"),
      py::arg("fundamental") = false);
  m.def(
      "r_curve", [](long N, bool plus) { return fraction(r_curve(N, plus)); }, py::arg("N"),
      py::arg("plus") = false);
  m.def(
      "heights",
      [](const std::vector<py::int_>& c) {
        HeightReport h = heights(poly_from(c));
        py::dict d;
        d["norm1"] = to_py(h.norm1);
        d["norm_inf"] = to_py(h.normInf);
        d["mahler"] = h.mahler.to_double();
        d["degree"] = h.degree;
        d["inequalities_hold"] = measure_inequalities_hold(h);
        return d;
      },
      py::arg("coeffs"), "Norms and Mahler measure of an integer polynomial (lowest degree first).");
  m.def(
      "fp_roots",
      [](const std::vector<py::int_>& c, const py::int_& p) {
        py::list out;
        for (const auto& r : fp_roots(poly_from(c), from_py(p))) out.append(to_py(r));
        return out;
      },
      py::arg("coeffs"), py::arg("p"));
  m.def(
      "cm",
      [](long t, long q, const std::string& via, unsigned long seed) {
        std::mt19937_64 rng(seed);
        FrobeniusSpec spec{t, q};
        CMCurve c = via == "hilbert" ? cm_hilbert(spec, rng) : cm_generalized(spec, compute_psi(), rng);
        py::dict d;
        d["q"] = q;
        d["a1"] = to_py(c.curve.a1);
        d["a2"] = to_py(c.curve.a2);
        d["a3"] = to_py(c.curve.a3);
        d["a4"] = to_py(c.curve.a4);
        d["a6"] = to_py(c.curve.a6);
        d["count"] = to_py(q <= 1000000 ? point_count_naive(c.curve) : c.order);
        d["j"] = to_py(c.j);
        return d;
      },
      py::arg("t"), py::arg("q"), py::arg("via") = "hilbert", py::arg("seed") = 0);
  m.def(
      "report_row",
      [](long D) {
        ReportRow r = report_row(D);
        py::dict d;
        d["D"] = r.D;
        d["class_number"] = r.classNumber;
        d["r_practical"] = r.rPractical;
        d["log_hinf_hilbert"] = r.logHinfHilbert;
        d["log_hinf_gen"] = r.logHinfGen;
        d["real"] = r.realFlag;
        d["subfield_degree"] = r.subfieldDegree;
        return d;
      },
      py::arg("D"));
}
