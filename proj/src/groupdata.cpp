#include "racah/groupdata.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <mutex>
#include <numbers>
#include <sstream>

#include "racah/error.hpp"

namespace racah {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

int round_multiplicity(cd v, const std::string& what) {
  double r = std::round(v.real());
  if (std::abs(v.real() - r) > 1e-6 || std::abs(v.imag()) > 1e-6 || r < -0.5)
    throw InternalError("non-integral multiplicity for " + what);
  return static_cast<int>(r);
}

GroupTable make_O() {
  GroupTable g;
  g.name = "O";
  g.order = 24;
  g.double_cover = "O*";
  g.classes = {{1, 0, false, 0}, {8, 2 * pi / 3, false, 1}, {3, pi, false, 0}, {6, pi / 2, false, 2}, {6, pi, false, 0}};
  g.irreps = {{"A1", 1, {1, 1, 1, 1, 1}, false},
              {"A2", 1, {1, 1, 1, -1, -1}, false},
              {"E", 2, {2, -1, 2, 0, 0}, false},
              {"T1", 3, {3, 0, -1, 1, -1}, false},
              {"T2", 3, {3, 0, -1, -1, 1}, false}};
  return g;
}

GroupTable make_O_double() {
  const double s2 = std::sqrt(2.0);
  GroupTable g;
  g.name = "O*";
  g.order = 48;
  g.double_group = true;
  // E, Ebar, 8C3, 8C3bar, 6C2, 6C4, 6C4bar, 12C2'
  g.classes = {{1, 0, false, 0},          {1, 2 * pi, true, 0},       {8, 2 * pi / 3, false, 3},
               {8, 8 * pi / 3, true, 3},  {6, pi, false, 1},          {6, pi / 2, false, 4},
               {6, 5 * pi / 2, true, 4},  {12, pi, false, 1}};
  g.irreps = {{"A1", 1, {1, 1, 1, 1, 1, 1, 1, 1}, false},
              {"A2", 1, {1, 1, 1, 1, 1, -1, -1, -1}, false},
              {"E", 2, {2, 2, -1, -1, 2, 0, 0, 0}, false},
              {"T1", 3, {3, 3, 0, 0, -1, 1, 1, -1}, false},
              {"T2", 3, {3, 3, 0, 0, -1, -1, -1, 1}, false},
              {"E1/2", 2, {2, -2, 1, -1, 0, s2, -s2, 0}, true},
              {"E5/2", 2, {2, -2, 1, -1, 0, -s2, s2, 0}, true},
              {"G3/2", 4, {4, -4, -1, 1, 0, 0, 0, 0}, true}};
  return g;
}

GroupTable make_cyclic(int d) {
  GroupTable g;
  g.name = "C" + std::to_string(d);
  g.order = d;
  for (int k = 0; k < d; ++k) g.classes.push_back({1, 2 * pi * k / d, false, (2 * k) % d});
  for (int m = 0; m < d; ++m) {
    IrrepInfo ir{std::to_string(m), 1, {}, false};
    for (int k = 0; k < d; ++k) ir.chars.push_back(std::polar(1.0, 2 * pi * double(m) * k / d));
    g.irreps.push_back(ir);
  }
  return g;
}

cd parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw InvalidInput("character must be a number, [re, im] or {re, im}");
}

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const GroupTable>> tables;
  std::optional<std::string> loaded_path;  // RACAH_GROUP_PATH value last scanned
};

Registry& registry() {
  static Registry r;
  return r;
}

void load_file(const std::filesystem::path& p, std::map<std::string, std::shared_ptr<const GroupTable>>& out) {
  std::ifstream in(p);
  if (!in) throw InvalidInput("cannot open group table " + p.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed group table " + p.string() + ": " + e.what());
  }
  auto add = [&](const nlohmann::json& item) {
    GroupTable g = group_table_from_json(item);
    const std::string name = g.name;
    out[name] = std::make_shared<const GroupTable>(std::move(g));
  };
  if (j.is_array()) {
    for (const auto& item : j) add(item);
  } else {
    add(j);
  }
}

void load_group_path(std::map<std::string, std::shared_ptr<const GroupTable>>& out) {
  const char* env = std::getenv("RACAH_GROUP_PATH");
  if (!env) return;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ':')) {
    if (item.empty()) continue;
    std::filesystem::path p(item);
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(p))
        if (e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) load_file(f, out);
    } else if (std::filesystem::exists(p)) {
      load_file(p, out);
    }
  }
}

bool is_u1(const std::string& g) { return g == "U1" || g == "U(1)"; }
bool is_su2(const std::string& g) { return g == "SU2" || g == "SU(2)"; }

HalfInt u1_m(const IrrepLabel& l) { return HalfInt::parse(l.name); }

void same_group(const IrrepLabel& a, const IrrepLabel& b) {
  if (a.group != b.group) throw InvalidInput("irreps from different groups: " + a.group + ", " + b.group);
}

}  // namespace

int GroupTable::irrep_index(const std::string& label) const {
  for (std::size_t i = 0; i < irreps.size(); ++i)
    if (irreps[i].label == label) return static_cast<int>(i);
  throw InvalidInput("group " + name + " has no irrep '" + label + "'");
}

bool GroupTable::has_square_map() const {
  for (const auto& c : classes)
    if (c.square_class < 0 || c.square_class >= static_cast<int>(classes.size())) return false;
  return !classes.empty();
}

void GroupTable::validate() const {
  if (classes.empty() || irreps.empty()) throw InvalidInput("group " + name + ": empty table");
  int total = 0;
  for (const auto& c : classes) total += c.size;
  if (total != order) throw InvalidInput("group " + name + ": class sizes do not sum to the order");
  bool identity = false;
  for (const auto& ir : irreps) {
    if (ir.chars.size() != classes.size()) throw InvalidInput("group " + name + ": character row length mismatch");
    bool ones = true;
    for (auto c : ir.chars) ones = ones && std::abs(c - cd(1, 0)) < 1e-12;
    identity = identity || ones;
  }
  if (!identity) throw InvalidInput("group " + name + ": no identity irrep");
  for (std::size_t a = 0; a < irreps.size(); ++a) {
    for (std::size_t b = 0; b < irreps.size(); ++b) {
      cd s = 0;
      for (std::size_t k = 0; k < classes.size(); ++k)
        s += double(classes[k].size) * std::conj(irreps[a].chars[k]) * irreps[b].chars[k];
      s /= double(order);
      if (std::abs(s - cd(a == b ? 1.0 : 0.0)) > 1e-9)
        throw InvalidInput("group " + name + ": character rows not orthonormal");
    }
  }
}

GroupTable group_table_from_json(const nlohmann::json& j) {
  try {
    GroupTable g;
    g.name = j.at("name").get<std::string>();
    g.order = j.at("order").get<int>();
    g.double_group = j.value("double_group", false);
    g.double_cover = j.value("double_cover", std::string());
    for (const auto& c : j.at("classes")) {
      ClassInfo ci;
      ci.size = c.at("size").get<int>();
      ci.angle = c.at("angle").get<double>();
      ci.square_class = c.value("square_class_index", -1);
      ci.double_partner = c.value("double_partner", false);
      g.classes.push_back(ci);
    }
    for (const auto& r : j.at("irreps")) {
      IrrepInfo ir;
      ir.label = r.at("label").get<std::string>();
      ir.dim = r.at("dim").get<int>();
      ir.spinor = r.value("spinor", false);
      for (const auto& c : r.at("chars")) ir.chars.push_back(parse_complex(c));
      g.irreps.push_back(ir);
    }
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed group table: ") + e.what());
  }
}

nlohmann::json to_json(const GroupTable& g) {
  nlohmann::json j;
  j["name"] = g.name;
  j["order"] = g.order;
  if (g.double_group) j["double_group"] = true;
  if (!g.double_cover.empty()) j["double_cover"] = g.double_cover;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : g.classes) {
    nlohmann::json cj{{"size", c.size}, {"angle", c.angle}, {"square_class_index", c.square_class}};
    if (c.double_partner) cj["double_partner"] = true;
    j["classes"].push_back(cj);
  }
  j["irreps"] = nlohmann::json::array();
  for (const auto& r : g.irreps) {
    nlohmann::json chars = nlohmann::json::array();
    for (auto c : r.chars) chars.push_back({{"re", c.real()}, {"im", c.imag()}});
    nlohmann::json rj{{"label", r.label}, {"dim", r.dim}, {"chars", chars}};
    if (r.spinor) rj["spinor"] = true;
    j["irreps"].push_back(rj);
  }
  return j;
}

void register_group_table(GroupTable table) {
  table.validate();
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  const std::string name = table.name;
  reg.tables[name] = std::make_shared<const GroupTable>(std::move(table));
}

std::shared_ptr<const GroupTable> group_table(const std::string& name) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  if (reg.tables.empty()) {
    reg.tables["O"] = std::make_shared<const GroupTable>(make_O());
    reg.tables["O*"] = std::make_shared<const GroupTable>(make_O_double());
  }
  if (auto it = reg.tables.find(name); it != reg.tables.end()) return it->second;
  if (name.size() > 1 && name[0] == 'C' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    int d = std::stoi(name.substr(1));
    if (d < 1 || d > 1000) throw InvalidInput("cyclic group order out of range: " + name);
    auto g = std::make_shared<const GroupTable>(make_cyclic(d));
    reg.tables[name] = g;
    return g;
  }
  const char* env = std::getenv("RACAH_GROUP_PATH");
  if (env && reg.loaded_path != env) {
    reg.loaded_path = env;
    std::map<std::string, std::shared_ptr<const GroupTable>> extra;
    load_group_path(extra);
    for (auto& [n, g] : extra) reg.tables.emplace(n, g);
    if (auto it = reg.tables.find(name); it != reg.tables.end()) return it->second;
  }
  throw Unsupported("no character table for group '" + name + "'");
}

double su2_character(HalfInt j, double omega) {
  double n = j.twice() + 1;
  double s = std::sin(omega / 2);
  if (std::abs(s) < 1e-12) return n * std::cos(n * omega / 2) / std::cos(omega / 2);
  return std::sin(n * omega / 2) / s;
}

int kron_multiplicity(const IrrepLabel& a, const IrrepLabel& b, const IrrepLabel& c) {
  same_group(a, b);
  same_group(a, c);
  if (is_u1(a.group)) return u1_m(a) + u1_m(b) == u1_m(c) ? 1 : 0;
  auto g = group_table(a.group);
  const auto &A = g->irrep(a.name), &B = g->irrep(b.name), &C = g->irrep(c.name);
  cd s = 0;
  for (std::size_t k = 0; k < g->classes.size(); ++k)
    s += double(g->classes[k].size) * std::conj(C.chars[k]) * A.chars[k] * B.chars[k];
  return round_multiplicity(s / double(g->order), "kron product in " + g->name);
}

int triple_multiplicity(const IrrepLabel& a, const IrrepLabel& b, const IrrepLabel& c) {
  same_group(a, b);
  same_group(a, c);
  if (is_u1(a.group)) return u1_m(a) + u1_m(b) + u1_m(c) == HalfInt(0) ? 1 : 0;
  auto g = group_table(a.group);
  int total = 0;
  for (const auto& x : g->irreps) {
    IrrepLabel xl{a.group, x.label};
    int ab = kron_multiplicity(a, b, xl);
    if (ab == 0) continue;
    // sigma(identity | x (x) c) = sigma(conj(c) | x)
    cd s = 0;
    for (std::size_t k = 0; k < g->classes.size(); ++k)
      s += double(g->classes[k].size) * x.chars[k] * g->irrep(c.name).chars[k];
    total += ab * round_multiplicity(s / double(g->order), "triple product");
  }
  return total;
}

int branching_multiplicity(const IrrepLabel& gamma, HalfInt j) {
  if (j.twice() < 0) throw InvalidInput("negative j");
  if (is_u1(gamma.group)) {
    HalfInt m = u1_m(gamma);
    return valid_projection(j, m) ? 1 : 0;
  }
  auto g = group_table(gamma.group);
  if (!j.is_integer() && !g->double_group) {
    if (g->double_cover.empty())
      throw Unsupported("half-integer j needs a double group; " + g->name + " has none");
    return branching_multiplicity({g->double_cover, gamma.name}, j);
  }
  const auto& G = g->irrep(gamma.name);
  cd s = 0;
  for (std::size_t k = 0; k < g->classes.size(); ++k)
    s += double(g->classes[k].size) * std::conj(G.chars[k]) * su2_character(j, g->classes[k].angle);
  return round_multiplicity(s / double(g->order), "branching of j=" + j.str() + " in " + g->name);
}

int frobenius_schur_su2(HalfInt j) {
  // c_j = (1/pi) int_0^{2pi} chi^j(2w) sin^2(w/2) dw; the integrand is a
  // trigonometric polynomial, so the uniform rule below is exact.
  const int n = 4 * (j.twice() + 4);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    double w = 2 * pi * i / n;
    double s = std::sin(w / 2);
    sum += su2_character(j, 2 * w) * s * s;
  }
  double v = sum * (2 * pi / n) / pi;
  return static_cast<int>(std::lround(v));
}

int frobenius_schur(const IrrepLabel& a) {
  if (is_u1(a.group)) return u1_m(a) == HalfInt(0) ? 1 : 0;
  if (is_su2(a.group)) return frobenius_schur_su2(HalfInt::parse(a.name));
  auto g = group_table(a.group);
  if (!g->has_square_map()) throw Unsupported("group " + g->name + " has no class-squaring map");
  const auto& A = g->irrep(a.name);
  cd s = 0;
  for (const auto& c : g->classes) s += double(c.size) * A.chars[c.square_class];
  s /= double(g->order);
  double r = std::round(s.real());
  if (std::abs(s.real() - r) > 1e-6 || std::abs(s.imag()) > 1e-6) throw InternalError("non-integral Frobenius-Schur value");
  return static_cast<int>(r);
}

HalfInt quasi_momentum(const IrrepLabel& gamma) {
  if (is_u1(gamma.group)) return abs(u1_m(gamma));
  auto g = group_table(gamma.group);
  const auto& G = g->irrep(gamma.name);
  bool half = g->double_group && G.spinor;
  for (int t = half ? 1 : 0; t <= quasi_momentum_twice_bound; t += 2) {
    if (!g->double_group && t % 2 != 0) continue;
    if (branching_multiplicity(gamma, HalfInt::from_twice(t)) == 1) return HalfInt::from_twice(t);
  }
  throw Unsupported("quasi angular momentum of " + gamma.name + " exceeds j = 30");
}

}  // namespace racah
