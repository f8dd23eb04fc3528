#include "racah/chain.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "racah/error.hpp"
#include "racah/groupdata.hpp"
#include "racah/wigner.hpp"

namespace racah {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kExactSnapMaxTwiceJ = 12;
constexpr int kMaxTwiceJ = 60;

// Twice-m <-> irrep index for U(1): 0, 1/2, -1/2, 1, -1, ...
int u1_index(HalfInt m) { return m.twice() > 0 ? 2 * m.twice() - 1 : -2 * m.twice(); }
HalfInt u1_m(int idx) { return HalfInt::from_twice(idx % 2 == 1 ? (idx + 1) / 2 : -idx / 2); }

// Rotate so that the earliest component of (nearly) maximal modulus is real positive.
void fix_phase(Eigen::VectorXcd& v) {
  double mx = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= mx - 1e-9) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

// Orthonormal basis of the range of M, visiting columns in order.
std::vector<Eigen::VectorXcd> range_basis(const Eigen::MatrixXcd& M, int count) {
  std::vector<Eigen::VectorXcd> out;
  for (Eigen::Index c = 0; c < M.cols() && static_cast<int>(out.size()) < count; ++c) {
    Eigen::VectorXcd v = M.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : out) v -= u.dot(v) * u;
    double n = v.norm();
    if (n < 1e-8) continue;
    v /= n;
    fix_phase(v);
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != count) throw InternalError("projection produced too few vectors");
  return out;
}

bool snap_complex(cplx z, ExactComplex& out) {
  SqrtRationalSum re, im;
  if (!snap_signed_sqrt(z.real(), re) || !snap_signed_sqrt(z.imag(), im)) return false;
  out = ExactComplex(re, im);
  return true;
}

// Exact unitarity check of columns (complex inner products).
bool exactly_unitary(const std::vector<ExactComplex>& e, int rows, int cols) {
  for (int a = 0; a < cols; ++a) {
    for (int b = a; b < cols; ++b) {
      ExactComplex s;
      for (int r = 0; r < rows; ++r) {
        const auto& x = e[r * cols + a];
        const auto& y = e[r * cols + b];
        if (x.is_zero() || y.is_zero()) continue;
        s += x.conj() * y;
      }
      if (!(s == ExactComplex(a == b ? 1 : 0))) return false;
    }
  }
  return true;
}

struct Ref {
  Eigen::MatrixXcd m;
  std::vector<ExactComplex> e;  // row-major
};

Ref make_ref(int rows, int cols, const std::vector<std::tuple<int, int, ExactComplex>>& entries) {
  Ref r;
  r.m = Eigen::MatrixXcd::Zero(rows, cols);
  r.e.assign(rows * cols, ExactComplex());
  for (const auto& [i, k, v] : entries) {
    r.m(i, k) = v.to_complex();
    r.e[i * cols + k] = v;
  }
  return r;
}

}  // namespace

int ReductionTable::column_index(const ChainLabel& c) const {
  if (auto k = find_column(c)) return *k;
  throw InvalidInput("label (a=" + std::to_string(c.a) + ", irrep " + std::to_string(c.irrep) + ", gamma " +
                     std::to_string(c.gamma) + ") not present for j=" + j.str());
}

std::optional<int> ReductionTable::find_column(const ChainLabel& c) const {
  for (std::size_t k = 0; k < columns.size(); ++k)
    if (columns[k] == c) return static_cast<int>(k);
  return std::nullopt;
}

Eigen::MatrixXcd wigner_d(HalfInt j, double angle, const std::array<double, 3>& axis) {
  const int n = j.dim();
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(n, n), jz = Eigen::MatrixXcd::Zero(n, n);
  const double jj = j.value();
  for (int r = 0; r < n; ++r) {
    double m = jj - r;
    jz(r, r) = m;
    if (r > 0) jp(r - 1, r) = std::sqrt((jj - m) * (jj + m + 1));  // J+|m> -> |m+1>
  }
  Eigen::MatrixXcd jm = jp.adjoint();
  Eigen::MatrixXcd jx = (jp + jm) / 2.0;
  Eigen::MatrixXcd jy = (jp - jm) / cplx(0, 2);
  double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  Eigen::MatrixXcd h = (axis[0] * jx + axis[1] * jy + axis[2] * jz) / len;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(n);
  for (int i = 0; i < n; ++i) phases(i) = std::polar(1.0, -angle * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// chain construction

std::shared_ptr<const SymmetryChain> SymmetryChain::octahedral(bool real_variant) {
  static std::shared_ptr<const SymmetryChain> cached[2];
  static std::mutex m;
  std::lock_guard lock(m);
  auto& slot = cached[real_variant ? 1 : 0];
  if (slot) return slot;
  auto c = std::shared_ptr<SymmetryChain>(new SymmetryChain());
  c->kind_ = Kind::octahedral;
  c->name_ = real_variant ? "O-real" : "O";
  c->char_group_ = "O*";
  c->real_variant_ = real_variant;
  auto g = group_table("O*");
  for (const auto& ir : g->irreps) {
    c->irreps_.push_back(ir.label);
    c->dims_.push_back(ir.dim);
  }
  c->component_names_ = {{"a1"}, {"a2"}, {"theta", "epsilon"}, {"x", "y", "z"}, {"x", "y", "z"},
                         {"0", "1"}, {"0", "1"}, {"0", "1", "2", "3"}};
  // O* elements, class by class (E, Ebar, 8C3, 8C3bar, 6C2, 6C4, 6C4bar, 12C2').
  auto& el = c->elements_;
  el.push_back({0, {0, 0, 1}, 0});
  el.push_back({2 * pi, {0, 0, 1}, 1});
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        el.push_back({2 * pi / 3, {double(sx), double(sy), double(sz)}, 2});
        el.push_back({2 * pi / 3 + 2 * pi, {double(sx), double(sy), double(sz)}, 3});
      }
  const std::array<std::array<double, 3>, 6> coord = {{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};
  for (const auto& ax : coord) el.push_back({pi, ax, 4});
  for (const auto& ax : coord) el.push_back({pi / 2, ax, 5});
  for (const auto& ax : coord) el.push_back({pi / 2 + 2 * pi, ax, 6});
  const std::array<std::array<double, 3>, 6> diag = {{{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}}};
  for (const auto& ax : diag) {
    el.push_back({pi, ax, 7});
    el.push_back({pi, {-ax[0], -ax[1], -ax[2]}, 7});
  }
  if (el.size() != 48) throw InternalError("O* element list incomplete");
  slot = c;
  return slot;
}

std::shared_ptr<const SymmetryChain> SymmetryChain::axial() {
  static std::shared_ptr<const SymmetryChain> cached = [] {
    auto c = std::shared_ptr<SymmetryChain>(new SymmetryChain());
    c->kind_ = Kind::axial;
    c->name_ = "U1";
    c->char_group_ = "U1";
    return c;
  }();
  return cached;
}

std::shared_ptr<const SymmetryChain> SymmetryChain::cyclic(int d, double r, int a) {
  if (d < 1 || d > kMaxTwiceJ + 1) throw InvalidInput("cyclic order out of range");
  auto c = std::shared_ptr<SymmetryChain>(new SymmetryChain());
  c->kind_ = Kind::cyclic;
  c->name_ = "C" + std::to_string(d);
  c->char_group_ = c->name_;
  c->cyclic_d_ = d;
  c->cyclic_r_ = r;
  c->cyclic_a_ = ((a % d) + d) % d;
  for (int al = 0; al < d; ++al) {
    c->irreps_.push_back(std::to_string(al));
    c->dims_.push_back(1);
  }
  return c;
}

std::shared_ptr<const SymmetryChain> SymmetryChain::tabulated(const std::string& name,
                                                              const std::vector<nlohmann::json>& tables) {
  auto c = std::shared_ptr<SymmetryChain>(new SymmetryChain());
  c->kind_ = Kind::tabulated;
  c->name_ = name;
  c->char_group_ = name;
  std::shared_ptr<const GroupTable> g;
  try {
    g = group_table(name);
  } catch (const Unsupported&) {
  }
  if (g) {
    for (const auto& ir : g->irreps) {
      c->irreps_.push_back(ir.label);
      c->dims_.push_back(ir.dim);
    }
  }
  try {
    for (const auto& tj : tables) {
      if (tj.at("group").get<std::string>() != name) throw InvalidInput("table group does not match chain " + name);
      auto t = std::make_shared<ReductionTable>();
      t->j = HalfInt::from_twice(tj.at("two_j").get<int>());
      t->group = name;
      struct Item {
        ChainLabel c;
        int row;
        cplx v;
      };
      std::vector<Item> items;
      std::map<int, int> max_gamma;
      for (const auto& e : tj.at("entries")) {
        std::string irrep = e.at("irrep").get<std::string>();
        auto it = std::find(c->irreps_.begin(), c->irreps_.end(), irrep);
        int idx;
        if (it == c->irreps_.end()) {
          if (g) throw InvalidInput("irrep " + irrep + " not in group " + name);
          c->irreps_.push_back(irrep);
          c->dims_.push_back(0);
          idx = static_cast<int>(c->irreps_.size()) - 1;
        } else {
          idx = static_cast<int>(it - c->irreps_.begin());
        }
        ChainLabel lab{e.at("a").get<int>(), idx, e.at("gamma").get<int>()};
        HalfInt m = HalfInt::from_twice(e.at("two_m").get<int>());
        if (!valid_projection(t->j, m)) throw InvalidInput("bad two_m in reduction table");
        items.push_back({lab, ReductionTable::row_of(t->j, m), {e.value("re", 0.0), e.value("im", 0.0)}});
        if (!g) c->dims_[idx] = std::max(c->dims_[idx], lab.gamma + 1);
      }
      std::set<ChainLabel> cols;
      for (const auto& it : items) cols.insert(it.c);
      t->columns.assign(cols.begin(), cols.end());
      if (static_cast<int>(t->columns.size()) != t->dim()) throw InvalidInput("reduction table is not square");
      t->numeric = Eigen::MatrixXcd::Zero(t->dim(), t->dim());
      for (const auto& it : items) t->numeric(it.row, t->column_index(it.c)) = it.v;
      Eigen::MatrixXcd u = t->numeric.adjoint() * t->numeric;
      if ((u - Eigen::MatrixXcd::Identity(t->dim(), t->dim())).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidInput("reduction table is not unitary");
      c->tabulated_[t->j.twice()] = t;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed reduction table: ") + e.what());
  }
  if (c->irreps_.empty()) throw InvalidInput("no irreps for chain " + name);
  for (auto& d : c->dims_)
    if (d == 0) d = 1;
  c->component_names_.resize(c->irreps_.size());
  return c;
}

std::shared_ptr<const SymmetryChain> SymmetryChain::by_name(const std::string& name) {
  if (name == "O" || name == "O*") return octahedral(false);
  if (name == "O-real" || name == "O*-real") return octahedral(true);
  if (name == "U1" || name == "U(1)") return axial();
  if (name.size() > 1 && name[0] == 'C' && name.find_first_not_of("0123456789", 1) == std::string::npos)
    return cyclic(std::stoi(name.substr(1)), 0.0, 0);
  throw Unsupported("no reduction tables for group '" + name + "'");
}

// ---------------------------------------------------------------------------
// labels

int SymmetryChain::irrep_index(const std::string& label) const {
  if (kind_ == Kind::axial) return u1_index(HalfInt::parse(label));
  for (std::size_t i = 0; i < irreps_.size(); ++i)
    if (irreps_[i] == label) return static_cast<int>(i);
  throw InvalidInput("chain " + name_ + " has no irrep '" + label + "'");
}

std::string SymmetryChain::irrep_name(int irrep) const {
  if (kind_ == Kind::axial) return u1_m(irrep).str();
  if (irrep < 0 || irrep >= static_cast<int>(irreps_.size())) throw InvalidInput("irrep index out of range");
  return irreps_[irrep];
}

int SymmetryChain::irrep_dim(int irrep) const {
  if (kind_ == Kind::axial) return 1;
  if (irrep < 0 || irrep >= static_cast<int>(dims_.size())) throw InvalidInput("irrep index out of range");
  return dims_[irrep];
}

std::string SymmetryChain::component_name(int irrep, int gamma) const {
  if (kind_ == Kind::octahedral && irrep < static_cast<int>(component_names_.size()) &&
      gamma < static_cast<int>(component_names_[irrep].size()))
    return component_names_[irrep][gamma];
  return std::to_string(gamma);
}

std::string SymmetryChain::label_str(const ChainLabel& c) const {
  std::string s = irrep_name(c.irrep);
  if (c.a != 0) s += "#" + std::to_string(c.a);
  return s + ":" + component_name(c.irrep, c.gamma);
}

ChainLabel SymmetryChain::parse_label(const std::string& text) const {
  std::string irrep = text, comp;
  int a = 0;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    irrep = text.substr(0, colon);
    comp = text.substr(colon + 1);
  }
  if (auto hash = irrep.find('#'); hash != std::string::npos) {
    try {
      a = std::stoi(irrep.substr(hash + 1));
    } catch (const std::logic_error&) {
      throw InvalidInput("bad branching index in label '" + text + "'");
    }
    irrep = irrep.substr(0, hash);
  }
  int idx = irrep_index(irrep);
  int gamma = 0;
  if (!comp.empty()) {
    bool found = false;
    for (int g = 0; g < irrep_dim(idx); ++g) {
      if (component_name(idx, g) == comp) {
        gamma = g;
        found = true;
        break;
      }
    }
    if (!found) {
      try {
        std::size_t pos = 0;
        gamma = std::stoi(comp, &pos);
        if (pos != comp.size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw InvalidInput("bad component in label '" + text + "'");
      }
    }
  }
  if (gamma < 0 || gamma >= irrep_dim(idx) || a < 0) throw InvalidInput("label out of range: '" + text + "'");
  return {a, idx, gamma};
}

int SymmetryChain::branching(int irrep, HalfInt j) const {
  switch (kind_) {
    case Kind::axial:
      return valid_projection(j, u1_m(irrep)) ? 1 : 0;
    case Kind::cyclic:
      return (j.twice() + 1 == cyclic_d_ && irrep >= 0 && irrep < cyclic_d_) ? 1 : 0;
    case Kind::octahedral:
      return branching_multiplicity({char_group_, irrep_name(irrep)}, j);
    case Kind::tabulated: {
      int n = 0;
      for (const auto& c : table(j).columns)
        if (c.irrep == irrep && c.gamma == 0) ++n;
      return n;
    }
  }
  return 0;
}

HalfInt SymmetryChain::quasi_momentum(int irrep) const {
  switch (kind_) {
    case Kind::axial:
      return abs(u1_m(irrep));
    case Kind::octahedral:
      return racah::quasi_momentum({char_group_, irrep_name(irrep)});
    case Kind::cyclic:
      return HalfInt::from_twice(cyclic_d_ - 1);
    case Kind::tabulated:
      for (const auto& [t, tab] : tabulated_)
        if (branching(irrep, HalfInt::from_twice(t)) == 1) return HalfInt::from_twice(t);
      throw Unsupported("no tabulated j carries irrep " + irrep_name(irrep) + " once");
  }
  return {};
}

int SymmetryChain::triple_multiplicity(int g1, int g2, int g3) const {
  switch (kind_) {
    case Kind::axial:
      return (u1_m(g1) + u1_m(g2) + u1_m(g3) == HalfInt(0)) ? 1 : 0;
    case Kind::cyclic:
      return ((g1 + g2 + g3) % cyclic_d_ == 0) ? 1 : 0;
    default:
      return racah::triple_multiplicity({char_group_, irrep_name(g1)}, {char_group_, irrep_name(g2)},
                                        {char_group_, irrep_name(g3)});
  }
}

// ---------------------------------------------------------------------------
// tables

const ReductionTable& SymmetryChain::table(HalfInt j) const {
  if (j.twice() < 0) throw InvalidInput("negative j");
  if (j.twice() > kMaxTwiceJ) throw Unsupported("reduction tables are generated up to j = 30");
  {
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(j.twice()); it != tables_.end()) return *it->second;
  }
  auto t = std::make_shared<const ReductionTable>(build_table(j));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = tables_.try_emplace(j.twice(), t);
  return *it->second;
}

ReductionTable SymmetryChain::build_table(HalfInt j) const {
  const int n = j.dim();
  ReductionTable t;
  t.j = j;
  t.group = name_;
  switch (kind_) {
    case Kind::axial: {
      t.numeric = Eigen::MatrixXcd::Identity(n, n);
      std::vector<ExactComplex> e(n * n);
      for (int r = 0; r < n; ++r) {
        t.columns.push_back({0, u1_index(ReductionTable::m_of(j, r)), 0});
        e[r * n + r] = ExactComplex(1);
      }
      t.exact = std::move(e);
      return t;
    }
    case Kind::cyclic: {
      if (n != cyclic_d_)
        throw Unsupported("the C" + std::to_string(cyclic_d_) + " chain only reduces j with 2j+1 = " +
                          std::to_string(cyclic_d_));
      // |j alpha; r a> = (2j+1)^{-1/2} sum_m q^{(j+m)(j-m+1)a/2 - jmr + (j+m)alpha} |j m>
      t.numeric = Eigen::MatrixXcd::Zero(n, n);
      const double jj = j.value();
      for (int al = 0; al < n; ++al) {
        t.columns.push_back({0, al, 0});
        for (int r = 0; r < n; ++r) {
          double m = jj - r;
          double ex = (jj + m) * (jj - m + 1) * cyclic_a_ / 2.0 - jj * m * cyclic_r_ + (jj + m) * al;
          t.numeric(r, al) = std::polar(1.0 / std::sqrt(double(n)), 2 * pi * ex / n);
        }
      }
      return t;
    }
    case Kind::tabulated: {
      auto it = tabulated_.find(j.twice());
      if (it == tabulated_.end()) throw Unsupported("no tabulated reduction for j=" + j.str() + " in " + name_);
      return *it->second;
    }
    case Kind::octahedral:
      return build_octahedral(j);
  }
  return t;
}

const Eigen::MatrixXcd& SymmetryChain::reference(int irrep) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = references_.find(irrep); it != references_.end()) return it->second;
  }
  const ExactComplex eI = real_variant_ ? ExactComplex(1) : ExactComplex::i_unit();
  const ExactComplex h = ExactComplex(SqrtRationalSum::sqrt(Rational(1, 2)));
  std::optional<Ref> ref;
  const std::string& name = irreps_[irrep];
  if (name == "A1") {
    ref = make_ref(1, 1, {{0, 0, ExactComplex(1)}});
  } else if (name == "A2") {  // j = 3, rows m = 3..-3
    ref = make_ref(7, 1, {{1, 0, h}, {5, 0, -h}});
  } else if (name == "E") {  // j = 2
    ref = make_ref(5, 2, {{2, 0, ExactComplex(1)}, {0, 1, h}, {4, 1, h}});
  } else if (name == "T1") {  // j = 1
    ref = make_ref(3, 3, {{0, 0, -(eI * h)}, {2, 0, eI * h}, {0, 1, h}, {2, 1, h}, {1, 2, eI}});
  } else if (name == "T2") {  // j = 2
    ref = make_ref(5, 3, {{1, 0, eI * h}, {3, 0, eI * h}, {1, 1, h}, {3, 1, -h}, {0, 2, -(eI * h)}, {4, 2, eI * h}});
  }
  Eigen::MatrixXcd m;
  std::optional<std::vector<ExactComplex>> exact;
  if (ref) {
    m = ref->m;
    exact = ref->e;
  } else {
    HalfInt jh = quasi_momentum(irrep);
    const int n = jh.dim(), dim = dims_[irrep];
    if (dim == n) {
      m = Eigen::MatrixXcd::Identity(n, n);
      std::vector<ExactComplex> e(n * n);
      for (int r = 0; r < n; ++r) e[r * n + r] = ExactComplex(1);
      exact = std::move(e);
    } else {
      auto g = group_table(char_group_);
      const auto& chars = g->irreps[irrep].chars;
      Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
      for (const auto& el : elements_) p += std::conj(chars[el.cls]) * wigner_d(jh, el.angle, el.axis);
      p *= double(dim) / double(elements_.size());
      auto basis = range_basis(p, dim);
      m.resize(n, dim);
      for (int k = 0; k < dim; ++k) m.col(k) = basis[k];
      std::vector<ExactComplex> e(n * dim);
      bool ok = true;
      for (int r = 0; r < n && ok; ++r)
        for (int k = 0; k < dim && ok; ++k) ok = snap_complex(m(r, k), e[r * dim + k]);
      if (ok && exactly_unitary(e, n, dim)) exact = std::move(e);
    }
  }
  std::lock_guard lock(mutex_);
  reference_exact_.try_emplace(irrep, exact);
  auto [it, inserted] = references_.try_emplace(irrep, m);
  return it->second;
}

ReductionTable SymmetryChain::build_octahedral(HalfInt j) const {
  const int n = j.dim();
  ReductionTable t;
  t.j = j;
  t.group = name_;
  t.numeric = Eigen::MatrixXcd::Zero(n, n);
  std::vector<Eigen::MatrixXcd> dj;
  auto get_dj = [&]() -> const std::vector<Eigen::MatrixXcd>& {
    if (dj.empty())
      for (const auto& el : elements_) dj.push_back(wigner_d(j, el.angle, el.axis));
    return dj;
  };
  std::vector<ExactComplex> exact(n * n);
  bool is_exact = true;
  int col = 0;
  for (int g = 0; g < static_cast<int>(irreps_.size()); ++g) {
    int sigma = branching(g, j);
    if (sigma == 0) continue;
    const int dim = dims_[g];
    HalfInt jh = quasi_momentum(g);
    const Eigen::MatrixXcd& ref = reference(g);
    std::optional<std::vector<ExactComplex>> ref_exact;
    {
      std::lock_guard lock(mutex_);
      ref_exact = reference_exact_.at(g);
    }
    if (jh == j) {
      if (sigma != 1) throw InternalError("quasi angular momentum with multiplicity");
      for (int k = 0; k < dim; ++k) {
        t.columns.push_back({0, g, k});
        t.numeric.col(col) = ref.col(k);
        if (ref_exact)
          for (int r = 0; r < n; ++r) exact[r * n + col] = (*ref_exact)[r * dim + k];
        else
          is_exact = false;
        ++col;
      }
      continue;
    }
    // Projection with the reference representation D^Gamma = ref^+ D^(jh) ref.
    std::vector<Eigen::MatrixXcd> proj(dim, Eigen::MatrixXcd::Zero(n, n));  // M_{gamma 0}
    const auto& djs = get_dj();
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      Eigen::MatrixXcd dg = ref.adjoint() * wigner_d(jh, elements_[e].angle, elements_[e].axis) * ref;
      for (int k = 0; k < dim; ++k) proj[k] += std::conj(dg(k, 0)) * djs[e];
    }
    for (auto& p : proj) p *= double(dim) / double(elements_.size());
    auto us = range_basis(proj[0], sigma);
    for (int a = 0; a < sigma; ++a) {
      for (int k = 0; k < dim; ++k) {
        Eigen::VectorXcd v = proj[k] * us[a];
        if (std::abs(v.norm() - 1.0) > 1e-9) throw InternalError("projected component not normalized");
        t.columns.push_back({a, g, k});
        t.numeric.col(col) = v;
        ++col;
      }
    }
    is_exact = false;  // decided below by snapping
  }
  if (col != n) throw InternalError("branching rule does not exhaust (j)");
  if (!is_exact || col != n) {
    // Snap the generated entries to signed square roots of rationals.
    is_exact = j.twice() <= kExactSnapMaxTwiceJ;
    for (int r = 0; r < n && is_exact; ++r)
      for (int k = 0; k < n && is_exact; ++k) is_exact = snap_complex(t.numeric(r, k), exact[r * n + k]);
    if (is_exact) is_exact = exactly_unitary(exact, n, n);
  }
  if (is_exact) t.exact = std::move(exact);
  return t;
}

nlohmann::json to_json(const ReductionTable& t, const SymmetryChain& chain, bool exact) {
  nlohmann::json j;
  j["group"] = t.group;
  j["two_j"] = t.j.twice();
  j["entries"] = nlohmann::json::array();
  for (int r = 0; r < t.dim(); ++r) {
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
      cplx v = t.numeric(r, k);
      if (std::abs(v) < 1e-15) continue;
      const auto& c = t.columns[k];
      nlohmann::json e{{"two_m", ReductionTable::m_of(t.j, r).twice()},
                       {"a", c.a},
                       {"irrep", chain.irrep_name(c.irrep)},
                       {"gamma", c.gamma},
                       {"re", v.real()},
                       {"im", v.imag()}};
      if (exact && t.exact) e["exact"] = to_json(t.exact_at(r, static_cast<int>(k)));
      j["entries"].push_back(e);
    }
  }
  return j;
}

Eigen::VectorXcd adapt_components(const Eigen::VectorXcd& coeffs, const ReductionTable& table) {
  if (coeffs.size() != table.dim()) throw InvalidInput("component vector length does not match 2j+1");
  return table.numeric.adjoint() * coeffs;
}

// ---------------------------------------------------------------------------
// symbols

namespace {

struct NumericPolicy {
  using S = cplx;
  static bool available(const ReductionTable&) { return true; }
  static S coef(const ReductionTable& t, int r, int c) { return t.numeric(r, c); }
  static bool zero(const S& s) { return s == S(0); }
  static S conj(const S& s) { return std::conj(s); }
  static S tjm(HalfInt a, HalfInt b, HalfInt c, HalfInt x, HalfInt y, HalfInt z) {
    return three_jm_value(a, b, c, x, y, z);
  }
  static S cgc(HalfInt a, HalfInt x, HalfInt b, HalfInt y, HalfInt c, HalfInt z) {
    return cg_value(a, x, b, y, c, z);
  }
  static S inv_sqrt(int n) { return 1.0 / std::sqrt(double(n)); }
};

struct ExactPolicy {
  using S = ExactComplex;
  static bool available(const ReductionTable& t) { return t.exact.has_value(); }
  static const S& coef(const ReductionTable& t, int r, int c) { return t.exact_at(r, c); }
  static bool zero(const S& s) { return s.is_zero(); }
  static S conj(const S& s) { return s.conj(); }
  static S tjm(HalfInt a, HalfInt b, HalfInt c, HalfInt x, HalfInt y, HalfInt z) { return three_jm(a, b, c, x, y, z); }
  static S cgc(HalfInt a, HalfInt x, HalfInt b, HalfInt y, HalfInt c, HalfInt z) { return cg(a, x, b, y, c, z); }
  static S inv_sqrt(int n) { return SqrtRationalSum::sqrt(Rational(1, n)); }
};

template <class P>
typename P::S adapted_cgc_impl(HalfInt j1, const ChainLabel& c1, HalfInt j2, const ChainLabel& c2, HalfInt j,
                               const ChainLabel& c, const SymmetryChain& chain) {
  using S = typename P::S;
  const auto &T1 = chain.table(j1), &T2 = chain.table(j2), &T = chain.table(j);
  const int k1 = T1.column_index(c1), k2 = T2.column_index(c2), k = T.column_index(c);
  S sum{};
  if (!triangle(j1, j2, j)) return sum;
  for (int r1 = 0; r1 < T1.dim(); ++r1) {
    const S& u1 = P::coef(T1, r1, k1);
    if (P::zero(u1)) continue;
    HalfInt m1 = ReductionTable::m_of(j1, r1);
    for (int r2 = 0; r2 < T2.dim(); ++r2) {
      const S& u2 = P::coef(T2, r2, k2);
      if (P::zero(u2)) continue;
      HalfInt m2 = ReductionTable::m_of(j2, r2);
      HalfInt m = m1 + m2;
      if (!valid_projection(j, m)) continue;
      const S& u = P::coef(T, ReductionTable::row_of(j, m), k);
      if (P::zero(u)) continue;
      S v = P::cgc(j1, m1, j2, m2, j, m);
      if (P::zero(v)) continue;
      sum += P::conj(u1) * P::conj(u2) * v * u;
    }
  }
  return sum;
}

template <class P>
typename P::S f_impl(HalfInt j1, HalfInt j2, HalfInt kk, const ChainLabel& c1, const ChainLabel& c2,
                     const ChainLabel& c, const SymmetryChain& chain) {
  using S = typename P::S;
  const auto &T1 = chain.table(j1), &T2 = chain.table(j2), &Tk = chain.table(kk);
  const int k1 = T1.column_index(c1), k2 = T2.column_index(c2), k = Tk.column_index(c);
  S sum{};
  if (!triangle(j1, kk, j2)) return sum;
  for (int r1 = 0; r1 < T1.dim(); ++r1) {
    const S& u1 = P::coef(T1, r1, k1);
    if (P::zero(u1)) continue;
    HalfInt m1 = ReductionTable::m_of(j1, r1);
    for (int r2 = 0; r2 < T2.dim(); ++r2) {
      const S& u2 = P::coef(T2, r2, k2);
      if (P::zero(u2)) continue;
      HalfInt m2 = ReductionTable::m_of(j2, r2);
      HalfInt q = m1 - m2;
      if (!valid_projection(kk, q)) continue;
      const S& uk = P::coef(Tk, ReductionTable::row_of(kk, q), k);
      if (P::zero(uk)) continue;
      S t = P::tjm(j1, kk, j2, -m1, q, m2);
      if (P::zero(t)) continue;
      S term = P::conj(u1) * uk * u2 * t;
      if (phase(j1 - m1) < 0) term = -term;
      sum += term;
    }
  }
  return sum;
}

template <class P>
typename P::S one_jagamma_impl(HalfInt j, const ChainLabel& c1, const ChainLabel& c2, const SymmetryChain& chain) {
  using S = typename P::S;
  const auto& T = chain.table(j);
  const int k1 = T.column_index(c1), k2 = T.column_index(c2);
  S sum{};
  for (int r = 0; r < T.dim(); ++r) {
    HalfInt m = ReductionTable::m_of(j, r);
    const S& u1 = P::coef(T, r, k1);
    const S& u2 = P::coef(T, ReductionTable::row_of(j, -m), k2);
    if (P::zero(u1) || P::zero(u2)) continue;
    S term = P::conj(u1) * P::conj(u2);
    if (phase(j + m) < 0) term = -term;
    sum += term;
  }
  return sum;
}

template <class P>
typename P::S fbar_impl(HalfInt j1, HalfInt j2, HalfInt j3, const ChainLabel& c1, const ChainLabel& c2,
                        const ChainLabel& c3, const SymmetryChain& chain) {
  using S = typename P::S;
  const auto &T1 = chain.table(j1), &T2 = chain.table(j2), &T3 = chain.table(j3);
  const int k1 = T1.column_index(c1), k2 = T2.column_index(c2), k3 = T3.column_index(c3);
  S sum{};
  if (!triangle(j1, j2, j3)) return sum;
  for (int r1 = 0; r1 < T1.dim(); ++r1) {
    const S& u1 = P::coef(T1, r1, k1);
    if (P::zero(u1)) continue;
    HalfInt m1 = ReductionTable::m_of(j1, r1);
    for (int r2 = 0; r2 < T2.dim(); ++r2) {
      const S& u2 = P::coef(T2, r2, k2);
      if (P::zero(u2)) continue;
      HalfInt m2 = ReductionTable::m_of(j2, r2);
      HalfInt m3 = -(m1 + m2);
      if (!valid_projection(j3, m3)) continue;
      const S& u3 = P::coef(T3, ReductionTable::row_of(j3, m3), k3);
      if (P::zero(u3)) continue;
      S t = P::tjm(j1, j2, j3, m1, m2, m3);
      if (P::zero(t)) continue;
      sum += t * P::conj(u1) * P::conj(u2) * P::conj(u3);
    }
  }
  return sum;
}

template <class... Tables>
bool all_exact(const Tables&... ts) {
  return (ts.exact.has_value() && ...);
}

}  // namespace

cplx adapted_cgc(HalfInt j1, const ChainLabel& c1, HalfInt j2, const ChainLabel& c2, HalfInt j, const ChainLabel& c,
                 const SymmetryChain& chain) {
  return adapted_cgc_impl<NumericPolicy>(j1, c1, j2, c2, j, c, chain);
}

cplx f_symbol(HalfInt j1, HalfInt j2, HalfInt k, const ChainLabel& c1, const ChainLabel& c2, const ChainLabel& c,
              const SymmetryChain& chain) {
  return f_impl<NumericPolicy>(j1, j2, k, c1, c2, c, chain);
}

cplx f_symbol_via_cgc(HalfInt j1, HalfInt j2, HalfInt k, const ChainLabel& c1, const ChainLabel& c2,
                      const ChainLabel& c, const SymmetryChain& chain) {
  cplx v = std::conj(adapted_cgc(j2, c2, k, c, j1, c1, chain)) / std::sqrt(double(j1.dim()));
  return (k.twice() % 2 == 0) ? v : -v;
}

cplx one_jagamma(HalfInt j, const ChainLabel& c1, const ChainLabel& c2, const SymmetryChain& chain) {
  return one_jagamma_impl<NumericPolicy>(j, c1, c2, chain);
}

cplx fbar_symbol(HalfInt j1, HalfInt j2, HalfInt j3, const ChainLabel& c1, const ChainLabel& c2, const ChainLabel& c3,
                 const SymmetryChain& chain) {
  return fbar_impl<NumericPolicy>(j1, j2, j3, c1, c2, c3, chain);
}

std::optional<ExactComplex> adapted_cgc_exact(HalfInt j1, const ChainLabel& c1, HalfInt j2, const ChainLabel& c2,
                                              HalfInt j, const ChainLabel& c, const SymmetryChain& chain) {
  if (!all_exact(chain.table(j1), chain.table(j2), chain.table(j))) return std::nullopt;
  return adapted_cgc_impl<ExactPolicy>(j1, c1, j2, c2, j, c, chain);
}

std::optional<ExactComplex> f_symbol_exact(HalfInt j1, HalfInt j2, HalfInt k, const ChainLabel& c1,
                                           const ChainLabel& c2, const ChainLabel& c, const SymmetryChain& chain) {
  if (!all_exact(chain.table(j1), chain.table(j2), chain.table(k))) return std::nullopt;
  return f_impl<ExactPolicy>(j1, j2, k, c1, c2, c, chain);
}

std::optional<ExactComplex> one_jagamma_exact(HalfInt j, const ChainLabel& c1, const ChainLabel& c2,
                                              const SymmetryChain& chain) {
  if (!all_exact(chain.table(j))) return std::nullopt;
  return one_jagamma_impl<ExactPolicy>(j, c1, c2, chain);
}

std::optional<ExactComplex> fbar_symbol_exact(HalfInt j1, HalfInt j2, HalfInt j3, const ChainLabel& c1,
                                              const ChainLabel& c2, const ChainLabel& c3,
                                              const SymmetryChain& chain) {
  if (!all_exact(chain.table(j1), chain.table(j2), chain.table(j3))) return std::nullopt;
  return fbar_impl<ExactPolicy>(j1, j2, j3, c1, c2, c3, chain);
}

// ---------------------------------------------------------------------------
// V symbols

namespace {
std::array<int, 3> sorted3(int a, int b, int c) {
  std::array<int, 3> k{a, b, c};
  std::sort(k.begin(), k.end());
  return k;
}
}  // namespace

cplx VPhaseConvention::x(int g1, int g2, int g3) const {
  auto it = phases.find(sorted3(g1, g2, g3));
  return it == phases.end() ? cplx(1, 0) : it->second;
}

void VPhaseConvention::set(int g1, int g2, int g3, cplx value) {
  if (std::abs(std::abs(value) - 1.0) > 1e-12) throw InvalidInput("V phase must have modulus 1");
  phases[sorted3(g1, g2, g3)] = value;
}

VPhaseConvention VPhaseConvention::griffith(const SymmetryChain& chain) {
  VPhaseConvention p;
  const int E = chain.irrep_index("E"), T1 = chain.irrep_index("T1"), T2 = chain.irrep_index("T2");
  p.set(E, T2, T2, -1);
  p.set(T1, T1, T1, -1);
  p.set(T1, T1, T2, -1);
  p.set(T2, T2, T2, -1);
  return p;
}

namespace {

void check_multiplicity_free(int g1, int g2, int g3, const SymmetryChain& chain) {
  if (chain.triple_multiplicity(g1, g2, g3) > 1)
    throw Unsupported("triple " + chain.irrep_name(g1) + " x " + chain.irrep_name(g2) + " x " +
                      chain.irrep_name(g3) + " is not multiplicity free");
}

}  // namespace

std::vector<cplx> v_block(int g1, int g2, int g3, const SymmetryChain& chain, const VPhaseConvention& phases) {
  check_multiplicity_free(g1, g2, g3, chain);
  const HalfInt j1 = chain.quasi_momentum(g1), j2 = chain.quasi_momentum(g2), j3 = chain.quasi_momentum(g3);
  const int d1 = chain.irrep_dim(g1), d2 = chain.irrep_dim(g2), d3 = chain.irrep_dim(g3);
  std::vector<cplx> out(d1 * d2 * d3, cplx(0));
  double norm2 = 0;
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b)
      for (int c = 0; c < d3; ++c) {
        cplx v = fbar_symbol(j1, j2, j3, {0, g1, a}, {0, g2, b}, {0, g3, c}, chain);
        out[(a * d2 + b) * d3 + c] = v;
        norm2 += std::norm(v);
      }
  if (norm2 < 1e-24) {
    std::fill(out.begin(), out.end(), cplx(0));
    return out;
  }
  const cplx scale = phases.x(g1, g2, g3) / std::sqrt(norm2);
  for (auto& v : out) v *= scale;
  return out;
}

cplx v_symbol(int g1, int g2, int g3, int c1, int c2, int c3, const SymmetryChain& chain,
              const VPhaseConvention& phases) {
  const int d2 = chain.irrep_dim(g2), d3 = chain.irrep_dim(g3);
  if (c1 < 0 || c1 >= chain.irrep_dim(g1) || c2 < 0 || c2 >= d2 || c3 < 0 || c3 >= d3)
    throw InvalidInput("V-symbol component out of range");
  return v_block(g1, g2, g3, chain, phases)[(c1 * d2 + c2) * d3 + c3];
}

std::optional<cplx> v_symbol_shortcut(int g1, int g2, int g3, int c1, int c2, int c3, const SymmetryChain& chain,
                                      const VPhaseConvention& phases) {
  check_multiplicity_free(g1, g2, g3, chain);
  const std::array<int, 3> g{g1, g2, g3};
  std::array<HalfInt, 3> jh{};
  int irreducible = 0, other = 2;
  for (int i = 0; i < 3; ++i) {
    jh[i] = chain.quasi_momentum(g[i]);
    if (chain.irrep_dim(g[i]) == jh[i].dim()) ++irreducible;
  }
  if (irreducible < 2) return std::nullopt;
  for (int i = 2; i >= 0; --i)
    if (chain.irrep_dim(g[i]) != jh[i].dim()) other = i;
  cplx f = fbar_symbol(jh[0], jh[1], jh[2], {0, g1, c1}, {0, g2, c2}, {0, g3, c3}, chain);
  return phases.x(g1, g2, g3) * std::sqrt(double(jh[other].dim()) / chain.irrep_dim(g[other])) * f;
}

std::vector<ReducedBlock> racah_factorize(HalfInt j1, HalfInt j2, HalfInt j3, const SymmetryChain& chain,
                                          const VPhaseConvention& phases) {
  const auto &T1 = chain.table(j1), &T2 = chain.table(j2), &T3 = chain.table(j3);
  auto blocks = [](const ReductionTable& t) {
    std::vector<ChainLabel> out;
    for (const auto& c : t.columns)
      if (c.gamma == 0) out.push_back(c);
    return out;
  };
  std::vector<ReducedBlock> result;
  for (const auto& b1 : blocks(T1))
    for (const auto& b2 : blocks(T2))
      for (const auto& b3 : blocks(T3)) {
        if (chain.triple_multiplicity(b1.irrep, b2.irrep, b3.irrep) > 1) continue;
        const int d1 = chain.irrep_dim(b1.irrep), d2 = chain.irrep_dim(b2.irrep), d3 = chain.irrep_dim(b3.irrep);
        auto v = v_block(b1.irrep, b2.irrep, b3.irrep, chain, phases);
        std::vector<cplx> f(v.size());
        for (int a = 0; a < d1; ++a)
          for (int b = 0; b < d2; ++b)
            for (int c = 0; c < d3; ++c)
              f[(a * d2 + b) * d3 + c] = fbar_symbol(j1, j2, j3, {b1.a, b1.irrep, a}, {b2.a, b2.irrep, b},
                                                     {b3.a, b3.irrep, c}, chain);
        double vv = 0;
        cplx vf = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
          vv += std::norm(v[i]);
          vf += std::conj(v[i]) * f[i];
        }
        cplx coef = vv > 0 ? vf / vv : cplx(0);
        double res = 0;
        for (std::size_t i = 0; i < v.size(); ++i) res = std::max(res, std::abs(f[i] - coef * v[i]));
        if (res > 1e-10)
          throw InternalError("Racah-lemma factorization failed for block " + chain.irrep_name(b1.irrep) + " " +
                              chain.irrep_name(b2.irrep) + " " + chain.irrep_name(b3.irrep));
        result.push_back({b1, b2, b3, coef, res});
      }
  return result;
}

}  // namespace racah
