#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "racah/crystalfield.hpp"
#include "racah/params.hpp"

namespace racah {

// Round-trip safe: 17 significant digits.
std::string format_double(double x);

// "3", "-1/2", "0.25" (decimals are converted exactly).
Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& x);

// {ell, N, group, coulomb: {scheme, values}, zeta, bkq: [{k, q, re, im}]}.
// A "dq" entry adds the cubic B^4_q set for that Dq.
struct ParamFile {
  int ell = 2;
  int N = 1;
  std::string group = "O";
  CoulombParams coulomb;
  double zeta = 0;
  BkqSet bkq;
  std::optional<double> dq;
};

ParamFile param_file_from_json(const nlohmann::json& j);
ParamFile load_param_file(const std::string& path);
nlohmann::json to_json(const ParamFile& p);

// Full matrix of a parameter set: Coulomb + spin-orbit + crystal field.
EnergyMatrix assemble_matrix(const ParamFile& p, const SymmetryChain& chain);

std::string levels_csv(const LevelReport& r);
std::string v_block_csv(int g1, int g2, int g3, const std::vector<cplx>& block, const SymmetryChain& chain);

}  // namespace racah
