#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "racah/chain.hpp"
#include "racah/crystalfield.hpp"
#include "racah/error.hpp"
#include "racah/io.hpp"
#include "racah/mub.hpp"
#include "racah/params.hpp"
#include "racah/wigner.hpp"

using namespace racah;
using nlohmann::json;

namespace {

std::vector<HalfInt> halfints(const std::vector<std::string>& v, std::size_t n, const char* what) {
  if (v.size() != n) throw InvalidInput(std::string(what) + " needs " + std::to_string(n) + " values");
  std::vector<HalfInt> out;
  for (const auto& s : v) out.push_back(HalfInt::parse(s));
  return out;
}

json value_json(const SqrtRationalSum& x, bool exact) {
  if (exact) return {{"value", to_json(x)}, {"text", x.str()}};
  return {{"value", x.to_double()}};
}

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// Integers print as integers, everything else as a double unless exact.
json rational_json(const Rational& x, bool exact) {
  if (x.get_den() == 1 && x.get_num().fits_slong_p()) return x.get_num().get_si();
  if (exact) return rational_str(x);
  return x.get_d();
}

std::shared_ptr<const SymmetryChain> chain_for(const std::string& group, double r, int a) {
  if (group.size() > 1 && group[0] == 'C' && group.find_first_not_of("0123456789", 1) == std::string::npos)
    return SymmetryChain::cyclic(std::stoi(group.substr(1)), r, a);
  return SymmetryChain::by_name(group);
}

struct SweepSpec {
  std::string name;
  double lo = 0, hi = 0;
  int n = 0;
};

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec s;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4) throw InvalidInput("sweep must be NAME:lo:hi:n");
  s.name = parts[0];
  if (s.name != "Dq" && s.name != "dq") throw Unsupported("only Dq sweeps are available");
  try {
    s.lo = std::stod(parts[1]);
    s.hi = std::stod(parts[2]);
    s.n = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw InvalidInput("bad sweep '" + text + "'");
  }
  if (s.n < 1) throw InvalidInput("sweep needs at least one point");
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
}

RationalMatrix parse_custom_matrix(const std::string& text) {
  RationalMatrix m;
  std::stringstream rows(text);
  for (std::string row; std::getline(rows, row, ';');) {
    std::vector<Rational> r;
    std::stringstream cells(row);
    for (std::string c; std::getline(cells, c, ',');) r.push_back(parse_rational(c));
    m.push_back(r);
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner-Racah algebra for SU(2) > G chains, weak-field crystal-field matrices and MUBs"};
  app.require_subcommand(1);
  app.fallthrough();
  bool exact = false;
  app.add_flag("--exact", exact, "Exact output where available");

  // wigner
  auto* wig = app.add_subcommand("wigner", "Coupling and recoupling coefficients");
  wig->require_subcommand(1);
  std::vector<std::string> wj, wm;
  auto* w3 = wig->add_subcommand("3jm", "3-jm symbol");
  w3->add_option("--j", wj)->required()->expected(3);
  w3->add_option("--m", wm)->required()->expected(3);
  auto* wcg = wig->add_subcommand("cg", "Clebsch-Gordan coefficient <j1 m1 j2 m2|j m>");
  wcg->add_option("--j", wj)->required()->expected(3);
  wcg->add_option("--m", wm)->required()->expected(3);
  auto* w6 = wig->add_subcommand("6j", "6-j symbol");
  w6->add_option("--j", wj)->required()->expected(6);
  auto* w9 = wig->add_subcommand("9j", "9-j symbol, row by row");
  w9->add_option("--j", wj)->required()->expected(9);

  // reduce
  auto* red = app.add_subcommand("reduce", "Reduction table of SU(2) > G for one j");
  std::string group = "O";
  std::string jtext;
  double cyc_r = 0;
  int cyc_a = 0;
  red->add_option("--group", group);
  red->add_option("--j", jtext)->required();
  red->add_option("--r", cyc_r, "r for C<d>");
  red->add_option("--a", cyc_a, "a for C<d>");

  // fsym / fbar
  std::vector<std::string> fj, flabels;
  auto* fs = app.add_subcommand("fsym", "f symbol (j1 j2 k; c1 c2 c)");
  fs->add_option("--group", group);
  fs->add_option("--j", fj)->required()->expected(3);
  fs->add_option("--labels", flabels, "e.g. T1:0 T2:1 A2")->required()->expected(3);
  auto* fb = app.add_subcommand("fbar", "Symmetrized f symbol (j1 j2 j3; c1 c2 c3)");
  fb->add_option("--group", group);
  fb->add_option("--j", fj)->required()->expected(3);
  fb->add_option("--labels", flabels)->required()->expected(3);

  // vsym
  auto* vs = app.add_subcommand("vsym", "V coefficients of the group as CSV");
  std::string phases = "standard";
  std::vector<std::string> virreps;
  vs->add_option("--group", group);
  vs->add_option("--phases", phases)->check(CLI::IsMember({"standard", "griffith"}));
  vs->add_option("--irreps", virreps, "one triple; default all")->expected(3);

  // cf
  auto* cf = app.add_subcommand("cf", "Weak-field energy matrices");
  cf->require_subcommand(1);
  std::string pfile, sweep;
  auto* cfm = cf->add_subcommand("matrix", "Block-diagonal energy matrix as JSON");
  cfm->add_option("--params", pfile)->required();
  auto* cfl = cf->add_subcommand("levels", "Energy levels as CSV");
  cfl->add_option("--params", pfile)->required();
  cfl->add_option("--sweep", sweep, "Dq:lo:hi:n");

  // params
  auto* par = app.add_subcommand("params", "Parameter conversions and lists");
  par->require_subcommand(1);
  std::string from = "slater", to = "racah", custom, family = "all";
  std::vector<std::string> values;
  int ell = -1;
  auto* pc = par->add_subcommand("convert", "Convert Coulomb parameters between schemes");
  pc->add_option("--from", from);
  pc->add_option("--to", to);
  pc->add_option("--values", values)->required()->delimiter(',');
  pc->add_option("--ell", ell, "defaults to the number of values minus one");
  pc->add_option("--matrix", custom, "custom scheme rows, e.g. '1,0;0,1'");
  auto* pe = par->add_subcommand("enumerate", "Effective-Hamiltonian parameter list");
  pe->add_option("--ell", ell)->required();
  pe->add_option("--group", group);
  pe->add_option("--family", family)->check(CLI::IsMember({"all", "coulomb", "spin-orbit", "ligand-field", "isotropic"}));

  // mub
  auto* mub = app.add_subcommand("mub", "Mutually unbiased bases from SU(2) > C_d");
  mub->require_subcommand(1);
  int md = 2, ma = 0;
  double mr = 0;
  auto* mb = mub->add_subcommand("basis", "Basis B_ra as JSON");
  mb->add_option("--d", md)->required();
  mb->add_option("--r", mr);
  mb->add_option("--a", ma);
  auto* mrp = mub->add_subcommand("report", "Pairwise overlaps of B_r0..B_r,d-1 and the computational basis");
  mrp->add_option("--d", md)->required();
  mrp->add_option("--r", mr);
  auto* mp = mub->add_subcommand("partition", "Cartan partition for prime d");
  mp->add_option("--d", md)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    json out;
    if (*wig) {
      if (*w3) {
        auto j = halfints(wj, 3, "--j");
        auto m = halfints(wm, 3, "--m");
        out = value_json(three_jm(j[0], j[1], j[2], m[0], m[1], m[2]), exact);
      } else if (*wcg) {
        auto j = halfints(wj, 3, "--j");
        auto m = halfints(wm, 3, "--m");
        out = value_json(cg(j[0], m[0], j[1], m[1], j[2], m[2]), exact);
      } else if (*w6) {
        auto j = halfints(wj, 6, "--j");
        out = value_json(six_j(j[0], j[1], j[2], j[3], j[4], j[5]), exact);
      } else {
        auto j = halfints(wj, 9, "--j");
        out = value_json(nine_j({{{j[0], j[1], j[2]}, {j[3], j[4], j[5]}, {j[6], j[7], j[8]}}}), exact);
      }
    } else if (*red) {
      auto chain = chain_for(group, cyc_r, cyc_a);
      out = to_json(chain->table(HalfInt::parse(jtext)), *chain, exact);
    } else if (*fs || *fb) {
      auto chain = chain_for(group, 0, 0);
      auto j = halfints(fj, 3, "--j");
      std::vector<ChainLabel> c;
      for (const auto& l : flabels) c.push_back(chain->parse_label(l));
      if (*fs) {
        if (exact)
          if (auto e = f_symbol_exact(j[0], j[1], j[2], c[0], c[1], c[2], *chain)) out = {{"value", to_json(*e)}, {"text", e->str()}};
        if (out.is_null()) out = {{"value", complex_json(f_symbol(j[0], j[1], j[2], c[0], c[1], c[2], *chain))}};
      } else {
        if (exact)
          if (auto e = fbar_symbol_exact(j[0], j[1], j[2], c[0], c[1], c[2], *chain)) out = {{"value", to_json(*e)}, {"text", e->str()}};
        if (out.is_null()) out = {{"value", complex_json(fbar_symbol(j[0], j[1], j[2], c[0], c[1], c[2], *chain))}};
      }
    } else if (*vs) {
      auto chain = chain_for(group, 0, 0);
      VPhaseConvention ph = phases == "griffith" ? VPhaseConvention::griffith(*chain) : VPhaseConvention::standard();
      std::vector<std::array<int, 3>> triples;
      if (!virreps.empty()) {
        triples.push_back({chain->irrep_index(virreps[0]), chain->irrep_index(virreps[1]), chain->irrep_index(virreps[2])});
      } else {
        const int count = chain->irrep_count();
        for (int a = 0; a < count; ++a)
          for (int b = a; b < count; ++b)
            for (int c = b; c < count; ++c)
              if (chain->triple_multiplicity(a, b, c) == 1) triples.push_back({a, b, c});
      }
      std::cout << "G1,G2,G3,g1,g2,g3,value_re,value_im\n";
      for (auto [a, b, c] : triples) std::cout << v_block_csv(a, b, c, v_block(a, b, c, *chain, ph), *chain);
      return 0;
    } else if (*cf) {
      json raw = read_json_file(pfile);
      ParamFile p = param_file_from_json(raw);
      auto chain = chain_for(p.group, 0, 0);
      if (*cfm) {
        out = to_json(assemble_matrix(p, *chain), *chain);
      } else if (sweep.empty()) {
        std::cout << levels_csv(diagonalize_levels(assemble_matrix(p, *chain), *chain));
        return 0;
      } else {
        SweepSpec s = parse_sweep(sweep);
        std::vector<std::future<std::string>> jobs;
        for (int i = 0; i < s.n; ++i) {
          double dq = s.n == 1 ? s.lo : s.lo + (s.hi - s.lo) * i / (s.n - 1);
          jobs.push_back(std::async(std::launch::async, [raw, dq, chain]() {
            json j = raw;
            j["dq"] = dq;
            ParamFile pp = param_file_from_json(j);
            std::string csv = levels_csv(diagonalize_levels(assemble_matrix(pp, *chain), *chain));
            std::stringstream in(csv), res;
            std::string line;
            std::getline(in, line);  // header
            while (std::getline(in, line)) res << format_double(dq) << ',' << line << '\n';
            return res.str();
          }));
        }
        std::cout << "Dq,energy,irrep,degeneracy\n";
        for (auto& f : jobs) std::cout << f.get();
        return 0;
      }
    } else if (*par) {
      if (*pc) {
        CoulombParams in;
        for (const auto& v : values) in.values.push_back(parse_rational(v));
        in.ell = ell >= 0 ? ell : static_cast<int>(in.values.size()) - 1;
        in.scheme = parse_coulomb_scheme(from);
        CoulombScheme target = parse_coulomb_scheme(to);
        RationalMatrix cm = custom.empty() ? RationalMatrix{} : parse_custom_matrix(custom);
        CoulombParams res = convert_coulomb_params(in, target, cm);
        json vals = json::object();
        auto names = scheme_value_names(res.ell, target);
        for (std::size_t i = 0; i < names.size(); ++i) vals[names[i]] = rational_json(res.values[i], exact);
        out = {{"ell", res.ell}, {"scheme", scheme_name(target)}, {"values", vals},
               {"laporte_platt", laporte_platt_check(to_slater_capital(in, cm)).holds}};
      } else {
        auto chain = chain_for(group, 0, 0);
        auto labels = enumerate_effective_params(ell, *chain, parse_param_family(family));
        json list = json::array();
        for (const auto& l : labels) list.push_back(l.str(ell, chain->branching(chain->identity_irrep(), l.k)));
        out = {{"ell", ell}, {"group", group}, {"family", family}, {"count", labels.size()}, {"labels", list}};
      }
    } else if (*mub) {
      if (*mb) {
        if (md < 2) throw InvalidInput("dimension must be at least 2");
        out = to_json(mub_basis({md, mr, ((ma % md) + md) % md}));
      } else if (*mrp) {
        out = to_json(unbiasedness_report(md, mr), md, mr);
      } else {
        out = partition_json(md, cartan_partition(md));
      }
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
