#include "genclass/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "genclass/errors.hpp"

namespace genclass {

namespace {

void write_monomials(std::ostringstream& out, const IntPolyXY& f) {
  // (pole, degX, degY, coeff), highest pole first.
  std::vector<std::tuple<long, long, long, mpz_class>> terms;
  for (long i = 0; i <= f.a.degree(); ++i) {
    if (f.a.coeff(i) != 0) terms.emplace_back(2 * i, i, 0, f.a.coeff(i));
  }
  for (long i = 0; i <= f.b.degree(); ++i) {
    if (f.b.coeff(i) != 0) terms.emplace_back(2 * i + 3, i, 1, f.b.coeff(i));
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  for (const auto& [pole, dx, dy, c] : terms) out << c.get_str() << ' ' << dx << ' ' << dy << '\n';
}

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      kv[tok] = "";
      continue;
    }
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw PreconditionError("missing header field '" + key + "'");
  return it->second;
}

void add_monomial(IntPolyXY& f, const std::string& line) {
  std::istringstream in(line);
  std::string c;
  long dx = -1, dy = -1;
  if (!(in >> c >> dx >> dy) || dx < 0 || dy < 0 || dy > 1) {
    throw PreconditionError("bad monomial line '" + line + "'");
  }
  mpz_class v;
  if (v.set_str(c, 10) != 0) throw PreconditionError("bad coefficient '" + c + "'");
  if (dy == 0) {
    f.a.set_coeff(dx, f.a.coeff(dx) + v);
  } else {
    f.b.set_coeff(dx, f.b.coeff(dx) + v);
  }
}

}  // namespace

std::string basis_file_id(BasisId id) { return id == BasisId::Standard ? "standard" : "etamixed"; }

std::string format_genclass(const GenClassFunction& f, long N) {
  std::ostringstream out;
  out << "D=" << f.D << " N=" << N << " curve=x0plus119 basis=" << basis_file_id(f.basis)
      << " real=" << (f.realFlag ? 1 : 0) << '\n';
  write_monomials(out, f.F);
  return out.str();
}

std::string format_hilbert(long D, const IntPolyUV& H) {
  std::ostringstream out;
  out << "D=" << D << " N=1 curve=j basis=standard real=1\n";
  for (long i = H.degree(); i >= 0; --i) {
    if (H.coeff(i) != 0) out << H.coeff(i).get_str() << ' ' << i << " 0\n";
  }
  return out.str();
}

StoredClassFunction parse_genclass(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("empty class function file");
  auto kv = parse_header(line);
  StoredClassFunction s;
  s.D = std::stol(need(kv, "D"));
  s.N = std::stol(need(kv, "N"));
  s.curve = need(kv, "curve");
  const std::string& b = need(kv, "basis");
  if (b == "standard") {
    s.basis = BasisId::Standard;
  } else if (b == "etamixed") {
    s.basis = BasisId::EtaMixed;
  } else {
    throw PreconditionError("unknown basis '" + b + "'");
  }
  s.real = need(kv, "real") == "1";
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    add_monomial(s.F, line);
  }
  return s;
}

std::string format_psi(const ModularPolynomial& psi) {
  std::ostringstream out;
  out << "PSI curve=" << psi.curve << " dj=" << psi.dj << " poleBound=" << psi.poleBound << '\n';
  for (size_t i = 0; i < psi.f.size(); ++i) {
    out << "Z^" << i << '\n';
    write_monomials(out, psi.f[i]);
  }
  return out.str();
}

ModularPolynomial parse_psi(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("empty Psi file");
  auto kv = parse_header(line);
  if (!kv.count("PSI")) throw PreconditionError("not a Psi file");
  ModularPolynomial psi;
  psi.curve = need(kv, "curve");
  psi.dj = std::stoi(need(kv, "dj"));
  psi.poleBound = std::stol(need(kv, "poleBound"));
  psi.f.assign(static_cast<size_t>(psi.dj) + 1, IntPolyXY{});
  long cur = -1;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("Z^", 0) == 0) {
      cur = std::stol(line.substr(2));
      if (cur < 0 || cur > psi.dj) throw PreconditionError("bad Z-degree line '" + line + "'");
      continue;
    }
    if (cur < 0) throw PreconditionError("monomial before the first Z-degree line");
    add_monomial(psi.f[static_cast<size_t>(cur)], line);
  }
  return psi;
}

void save_psi(const ModularPolynomial& psi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << format_psi(psi);
}

ModularPolynomial load_psi(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_psi(s.str());
}

}  // namespace genclass
