#include "racah/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "racah/error.hpp"

namespace racah {

std::string format_double(double x) {
  if (x == 0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational parse_rational(const std::string& text) {
  std::string t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  if (t.empty()) throw InvalidInput("empty number");
  try {
    if (auto dot = t.find('.'); dot != std::string::npos) {
      if (t.find_first_of("eE/") != std::string::npos) throw InvalidInput("bad number '" + text + "'");
      std::string digits = t.substr(0, dot) + t.substr(dot + 1);
      if (digits == "-" || digits == "+" || digits.empty()) throw InvalidInput("bad number '" + text + "'");
      if (digits.front() == '+') digits.erase(digits.begin());
      Integer den = 1;
      for (std::size_t i = dot + 1; i < t.size(); ++i) den *= 10;
      Rational r(Integer(digits, 10), den);
      r.canonicalize();
      return r;
    }
    if (t.front() == '+') t.erase(t.begin());
    Rational r(t, 10);
    if (r.get_den() == 0) throw InvalidInput("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("bad number '" + text + "'");
  }
}

std::string rational_str(const Rational& x) { return x.get_str(); }

namespace {

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) {
    // Shortest decimal form of the double, then exact.
    std::ostringstream os;
    os << v;
    return parse_rational(os.str());
  }
  throw InvalidInput("expected a number");
}

}  // namespace

ParamFile param_file_from_json(const nlohmann::json& j) {
  ParamFile p;
  try {
    if (!j.is_object()) throw InvalidInput("parameter file must be a JSON object");
    p.ell = j.value("ell", 2);
    p.N = j.value("N", 1);
    p.group = j.value("group", std::string("O"));
    p.coulomb.ell = p.ell;
    if (j.contains("coulomb")) {
      const auto& c = j.at("coulomb");
      p.coulomb.scheme = parse_coulomb_scheme(c.value("scheme", std::string("capital")));
      for (const auto& v : c.at("values")) p.coulomb.values.push_back(json_rational(v));
    } else {
      p.coulomb.values.assign(p.ell + 1, Rational(0));
    }
    if (static_cast<int>(p.coulomb.values.size()) != p.ell + 1)
      throw InvalidInput("coulomb.values needs l+1 entries");
    p.zeta = j.value("zeta", 0.0);
    if (j.contains("bkq"))
      for (const auto& b : j.at("bkq"))
        p.bkq[{b.at("k").get<int>(), b.at("q").get<int>()}] += cplx(b.value("re", 0.0), b.value("im", 0.0));
    if (j.contains("dq")) {
      p.dq = j.at("dq").get<double>();
      for (const auto& [kq, v] : cubic_bkq(*p.dq)) p.bkq[kq] += v;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed parameter file: ") + e.what());
  }
  if (p.ell < 0 || p.N < 0 || p.N > 2 * (2 * p.ell + 1)) throw InvalidInput("invalid l or N");
  return p;
}

ParamFile load_param_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
  return param_file_from_json(j);
}

nlohmann::json to_json(const ParamFile& p) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : p.coulomb.values) vals.push_back(rational_str(v));
  nlohmann::json bkq = nlohmann::json::array();
  for (const auto& [kq, v] : p.bkq)
    bkq.push_back({{"k", kq.first}, {"q", kq.second}, {"re", v.real()}, {"im", v.imag()}});
  return {{"ell", p.ell},
          {"N", p.N},
          {"group", p.group},
          {"coulomb", {{"scheme", scheme_name(p.coulomb.scheme)}, {"values", vals}}},
          {"zeta", p.zeta},
          {"bkq", bkq}};
}

EnergyMatrix assemble_matrix(const ParamFile& p, const SymmetryChain& chain) {
  auto basis = enumerate_basis(p.ell, p.N, chain);
  EnergyMatrix m = coulomb_matrix(p.ell, p.N, to_slater_capital(p.coulomb), basis);
  if (p.zeta != 0) m += spinorbit_matrix(p.ell, p.N, p.zeta, basis);
  if (!p.bkq.empty()) m += crystalfield_matrix(p.ell, p.N, dk_from_bkq(p.ell, p.bkq, chain), basis, chain);
  return m;
}

std::string levels_csv(const LevelReport& r) {
  std::ostringstream os;
  os << "energy,irrep,degeneracy\n";
  for (const auto& l : r.levels) {
    std::string irreps;
    for (const auto& [name, n] : l.irreps) {
      if (!irreps.empty()) irreps += "+";
      irreps += name;
      if (n > 1 && l.irreps.size() > 1) irreps += "(" + std::to_string(n) + ")";
    }
    os << format_double(l.energy) << ',' << irreps << ',' << l.degeneracy << '\n';
  }
  return os.str();
}

std::string v_block_csv(int g1, int g2, int g3, const std::vector<cplx>& block, const SymmetryChain& chain) {
  std::ostringstream os;
  const int d1 = chain.irrep_dim(g1), d2 = chain.irrep_dim(g2), d3 = chain.irrep_dim(g3);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b)
      for (int c = 0; c < d3; ++c) {
        cplx v = block[(a * d2 + b) * d3 + c];
        os << chain.irrep_name(g1) << ',' << chain.irrep_name(g2) << ',' << chain.irrep_name(g3) << ','
           << chain.component_name(g1, a) << ',' << chain.component_name(g2, b) << ','
           << chain.component_name(g3, c) << ',' << format_double(v.real()) << ',' << format_double(v.imag())
           << '\n';
      }
  return os.str();
}

}  // namespace racah
