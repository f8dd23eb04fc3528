#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "racah/exactnum.hpp"
#include "racah/halfint.hpp"

namespace racah {

using cplx = std::complex<double>;

// (a, Gamma, gamma); Gamma is an index into the chain's irrep list.
struct ChainLabel {
  int a = 0;
  int irrep = 0;
  int gamma = 0;
  auto operator<=>(const ChainLabel&) const = default;
};

// U^j with rows m = j, j-1, ..., -j and one column per (a, Gamma, gamma).
struct ReductionTable {
  HalfInt j;
  std::string group;
  std::vector<ChainLabel> columns;
  Eigen::MatrixXcd numeric;
  std::optional<std::vector<ExactComplex>> exact;  // row-major, when known exactly

  int dim() const { return j.twice() + 1; }
  static int row_of(HalfInt j, HalfInt m) { return (j.twice() - m.twice()) / 2; }
  static HalfInt m_of(HalfInt j, int row) { return HalfInt::from_twice(j.twice() - 2 * row); }
  int column_index(const ChainLabel& c) const;  // throws InvalidInput
  std::optional<int> find_column(const ChainLabel& c) const;
  const ExactComplex& exact_at(int row, int col) const { return (*exact)[row * columns.size() + col]; }
};

class SymmetryChain;

nlohmann::json to_json(const ReductionTable& t, const SymmetryChain& chain, bool exact = false);

class SymmetryChain {
 public:
  enum class Kind { octahedral, axial, cyclic, tabulated };

  // SU(2) > O*; `real_variant` replaces i by 1 in the reference vectors.
  static std::shared_ptr<const SymmetryChain> octahedral(bool real_variant = false);
  // SU(2) > U(1): identity tables.
  static std::shared_ptr<const SymmetryChain> axial();
  // SU(2) > C_d with the v_ra eigenbasis; tables exist only for 2j+1 = d.
  static std::shared_ptr<const SymmetryChain> cyclic(int d, double r, int a);
  // Chain backed by tables read from JSON; irreps are named by the tables.
  static std::shared_ptr<const SymmetryChain> tabulated(const std::string& name,
                                                       const std::vector<nlohmann::json>& tables);
  // "O", "O-real", "U1", "C<d>" (r = a = 0).
  static std::shared_ptr<const SymmetryChain> by_name(const std::string& name);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  // Group used for character computations ("O*" for the octahedral chain).
  const std::string& character_group() const { return char_group_; }

  int irrep_count() const { return static_cast<int>(irreps_.size()); }
  int irrep_index(const std::string& label) const;
  std::string irrep_name(int irrep) const;
  int irrep_dim(int irrep) const;
  int identity_irrep() const { return 0; }
  std::string component_name(int irrep, int gamma) const;
  std::string label_str(const ChainLabel& c) const;
  // Parses "Gamma", "Gamma:gamma" or "Gamma#a:gamma"; gamma may be a name or index.
  ChainLabel parse_label(const std::string& text) const;

  int branching(int irrep, HalfInt j) const;
  HalfInt quasi_momentum(int irrep) const;
  int triple_multiplicity(int g1, int g2, int g3) const;

  const ReductionTable& table(HalfInt j) const;

  // Group elements as (angle, axis) rotations, for the octahedral chain.
  struct Element {
    double angle;
    std::array<double, 3> axis;
    int cls;
  };
  const std::vector<Element>& elements() const { return elements_; }

 private:
  SymmetryChain() = default;
  ReductionTable build_table(HalfInt j) const;
  ReductionTable build_octahedral(HalfInt j) const;
  const Eigen::MatrixXcd& reference(int irrep) const;

  Kind kind_ = Kind::axial;
  std::string name_;
  std::string char_group_;
  bool real_variant_ = false;
  int cyclic_d_ = 0;
  double cyclic_r_ = 0;
  int cyclic_a_ = 0;
  std::vector<std::string> irreps_;
  std::vector<int> dims_;
  std::vector<std::vector<std::string>> component_names_;
  std::vector<Element> elements_;
  std::map<int, std::shared_ptr<ReductionTable>> tabulated_;

  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const ReductionTable>> tables_;
  mutable std::map<int, Eigen::MatrixXcd> references_;
  mutable std::map<int, std::optional<std::vector<ExactComplex>>> reference_exact_;
};

// Wigner D-matrix exp(-i angle n.J) in the m = j..-j basis.
Eigen::MatrixXcd wigner_d(HalfInt j, double angle, const std::array<double, 3>& axis);

// Applies U^j-dagger: out_c = sum_m in_m (jm|jc)^*.
Eigen::VectorXcd adapt_components(const Eigen::VectorXcd& coeffs, const ReductionTable& table);

cplx adapted_cgc(HalfInt j1, const ChainLabel& c1, HalfInt j2, const ChainLabel& c2, HalfInt j,
                 const ChainLabel& c, const SymmetryChain& chain);
cplx f_symbol(HalfInt j1, HalfInt j2, HalfInt k, const ChainLabel& c1, const ChainLabel& c2,
              const ChainLabel& c, const SymmetryChain& chain);
// Same quantity through the adapted coupling coefficient.
cplx f_symbol_via_cgc(HalfInt j1, HalfInt j2, HalfInt k, const ChainLabel& c1, const ChainLabel& c2,
                      const ChainLabel& c, const SymmetryChain& chain);
cplx one_jagamma(HalfInt j, const ChainLabel& c1, const ChainLabel& c2, const SymmetryChain& chain);
cplx fbar_symbol(HalfInt j1, HalfInt j2, HalfInt j3, const ChainLabel& c1, const ChainLabel& c2,
                 const ChainLabel& c3, const SymmetryChain& chain);

// Exact variants; empty when a table involved has no exact form.
std::optional<ExactComplex> adapted_cgc_exact(HalfInt j1, const ChainLabel& c1, HalfInt j2, const ChainLabel& c2,
                                              HalfInt j, const ChainLabel& c, const SymmetryChain& chain);
std::optional<ExactComplex> f_symbol_exact(HalfInt j1, HalfInt j2, HalfInt k, const ChainLabel& c1,
                                           const ChainLabel& c2, const ChainLabel& c, const SymmetryChain& chain);
std::optional<ExactComplex> one_jagamma_exact(HalfInt j, const ChainLabel& c1, const ChainLabel& c2,
                                              const SymmetryChain& chain);
std::optional<ExactComplex> fbar_symbol_exact(HalfInt j1, HalfInt j2, HalfInt j3, const ChainLabel& c1,
                                              const ChainLabel& c2, const ChainLabel& c3,
                                              const SymmetryChain& chain);

// Phase x(G1 G2 G3), symmetric in its arguments; missing triples give +1.
struct VPhaseConvention {
  std::map<std::array<int, 3>, cplx> phases;
  cplx x(int g1, int g2, int g3) const;
  void set(int g1, int g2, int g3, cplx value);
  static VPhaseConvention standard() { return {}; }
  // x(E T2 T2) = x(T1 T1 T1) = x(T1 T1 T2) = x(T2 T2 T2) = -1.
  static VPhaseConvention griffith(const SymmetryChain& chain);
};

// All V(G1 G2 G3; g1 g2 g3) for one irrep triple, indexed
// [(g1 * dim2 + g2) * dim3 + g3].
std::vector<cplx> v_block(int g1, int g2, int g3, const SymmetryChain& chain, const VPhaseConvention& phases);
cplx v_symbol(int g1, int g2, int g3, int c1, int c2, int c3, const SymmetryChain& chain,
              const VPhaseConvention& phases);
// The closed form valid when two of the irreps stay irreducible at their
// quasi angular momentum; empty when it does not apply.
std::optional<cplx> v_symbol_shortcut(int g1, int g2, int g3, int c1, int c2, int c3, const SymmetryChain& chain,
                                      const VPhaseConvention& phases);

struct ReducedBlock {
  ChainLabel c1, c2, c3;  // gamma fields unused
  cplx coefficient;
  double residual;
};

// Racah-lemma factorization of every (a1 G1, a2 G2, a3 G3) block of fbar;
// blocks whose irrep triple has multiplicity > 1 are skipped.
std::vector<ReducedBlock> racah_factorize(HalfInt j1, HalfInt j2, HalfInt j3, const SymmetryChain& chain,
                                          const VPhaseConvention& phases = VPhaseConvention::standard());

}  // namespace racah
