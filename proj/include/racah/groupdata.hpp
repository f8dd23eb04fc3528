#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "racah/halfint.hpp"

namespace racah {

struct ClassInfo {
  int size = 1;
  double angle = 0;         // SU(2) rotation angle; double groups use [0, 4pi)
  bool double_partner = false;  // barred class of a double group
  int square_class = -1;    // class of R^2, -1 when unknown
};

struct IrrepInfo {
  std::string label;
  int dim = 1;
  std::vector<std::complex<double>> chars;  // one per class
  bool spinor = false;
};

struct GroupTable {
  std::string name;
  int order = 0;
  std::vector<ClassInfo> classes;
  std::vector<IrrepInfo> irreps;
  bool double_group = false;  // classes carry SU(2) angles, half-integer j allowed
  std::string double_cover;   // name of the double group used for half-integer j

  int irrep_index(const std::string& label) const;  // throws InvalidInput
  const IrrepInfo& irrep(const std::string& label) const { return irreps[irrep_index(label)]; }
  bool has_square_map() const;
  void validate() const;  // class sizes, identity row, row orthogonality
};

struct IrrepLabel {
  std::string group;
  std::string name;
};

// Built-in tables: "O", "O*", "C<d>" for d >= 1; further tables are read
// from the JSON files or directories listed in RACAH_GROUP_PATH.
std::shared_ptr<const GroupTable> group_table(const std::string& name);
void register_group_table(GroupTable table);

GroupTable group_table_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GroupTable& g);

// SU(2) character chi^(j)(omega) = sin((2j+1)omega/2)/sin(omega/2).
double su2_character(HalfInt j, double omega);

// sigma(c | a (x) b).  "U1" labels are projections m written as half-integers.
int kron_multiplicity(const IrrepLabel& a, const IrrepLabel& b, const IrrepLabel& c);
// sigma(identity | a (x) b (x) c).
int triple_multiplicity(const IrrepLabel& a, const IrrepLabel& b, const IrrepLabel& c);
int branching_multiplicity(const IrrepLabel& gamma, HalfInt j);
int frobenius_schur(const IrrepLabel& a);
HalfInt quasi_momentum(const IrrepLabel& gamma);

// Frobenius-Schur indicator of the SU(2) irrep (j) from the Weyl integral.
int frobenius_schur_su2(HalfInt j);

inline constexpr int quasi_momentum_twice_bound = 60;

}  // namespace racah
