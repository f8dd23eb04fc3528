#include "racah/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "racah/error.hpp"

namespace racah {

namespace {

constexpr double pi = std::numbers::pi;

cplx qpow(int d, double e) { return std::polar(1.0, 2 * pi * e / d); }

void check(const MubParams& p) {
  if (p.d < 2) throw InvalidInput("dimension must be at least 2");
  if (p.a < 0 || p.a >= p.d) throw InvalidInput("a must lie in [0, d)");
}

int mod(long x, int d) { return static_cast<int>(((x % d) + d) % d); }

}  // namespace

cplx MubParams::q() const { return qpow(d, 1); }

Eigen::MatrixXcd vra_matrix(const MubParams& p) {
  check(p);
  const int d = p.d;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 1; n < d; ++n) v(n - 1, n) = qpow(d, double(n) * p.a);
  v(d - 1, 0) = std::polar(1.0, pi * (d - 1) * p.r);
  return v;
}

Eigen::VectorXcd mub_vector(const MubParams& p, int alpha) {
  check(p);
  const int d = p.d;
  if (alpha < 0 || alpha >= d) throw InvalidInput("alpha must lie in [0, d)");
  Eigen::VectorXcd v(d);
  const cplx global = qpow(d, (d - 1.0) * (d - 1.0) * p.r / 4) / std::sqrt(double(d));
  for (int n = 0; n < d; ++n) {
    double e = n * (d - n) * p.a / 2.0 - n * (d - 1) * p.r / 2 + double(n) * alpha;
    v(d - 1 - n) = global * qpow(d, e);
  }
  return v;
}

cplx mub_eigenvalue(const MubParams& p, int alpha) {
  return qpow(p.d, (p.d - 1) * (p.r + p.a) / 2 - alpha);
}

MubBasis mub_basis(const MubParams& p) {
  MubBasis b{p, {}};
  for (int al = 0; al < p.d; ++al) b.vectors.push_back(mub_vector(p, al));
  return b;
}

Eigen::MatrixXcd hra_matrix(const MubParams& p) {
  Eigen::MatrixXcd h(p.d, p.d);
  for (int al = 0; al < p.d; ++al) h.col(al) = mub_vector(p, al);
  return h;
}

WeylPair weyl_pair(int d, double r) {
  if (d < 2) throw InvalidInput("dimension must be at least 2");
  WeylPair w;
  w.X = Eigen::MatrixXcd::Zero(d, d);
  w.Z = Eigen::MatrixXcd::Zero(d, d);
  w.P = Eigen::MatrixXcd::Identity(d, d);
  for (int n = 0; n < d; ++n) {
    w.X(n, (n + 1) % d) = 1;
    w.Z(n, n) = qpow(d, n);
  }
  w.P(d - 1, d - 1) = std::polar(1.0, pi * (d - 1) * r);
  return w;
}

Eigen::MatrixXcd pauli(int d, int a, int b) {
  if (d < 2) throw InvalidInput("dimension must be at least 2");
  // (X^a Z^b)_{n, n+a} = q^{(n+a) b}
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    int c = mod(n + a, d);
    m(n, c) = qpow(d, double(c) * mod(b, d));
  }
  return m;
}

std::vector<Eigen::MatrixXcd> pauli_set(int d) {
  std::vector<Eigen::MatrixXcd> out;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out.push_back(pauli(d, a, b));
  return out;
}

UnbiasednessReport unbiasedness_report(int d, double r) {
  if (d < 2) throw InvalidInput("dimension must be at least 2");
  std::vector<Eigen::MatrixXcd> bases;
  for (int a = 0; a < d; ++a) bases.push_back(hra_matrix({d, r, a}));
  bases.push_back(Eigen::MatrixXcd::Identity(d, d));
  UnbiasednessReport rep(d + 1, std::vector<OverlapRange>(d + 1));
  for (int i = 0; i <= d; ++i)
    for (int k = 0; k <= d; ++k) {
      Eigen::MatrixXd g = (bases[i].adjoint() * bases[k]).cwiseAbs();
      rep[i][k] = {g.minCoeff(), g.maxCoeff()};
    }
  return rep;
}

cplx gauss_sum(long u, long v, long w) {
  if (u == 0 || w == 0) throw InvalidInput("Gauss sum needs u w != 0");
  if (std::gcd(u, w) != 1) throw InvalidInput("Gauss sum needs gcd(u, w) = 1");
  if ((((u * w + v) % 2) + 2) % 2 != 0) throw InvalidInput("Gauss sum needs u w + v even");
  cplx s = 0;
  const long n = std::labs(w);
  for (long k = 0; k < n; ++k) {
    // reduce the exponent mod 2w to keep the angle small
    long e = (u * k % (2 * n) * k + v * k) % (2 * n);
    s += std::polar(1.0, pi * double(e) / double(w));
  }
  return s;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::vector<std::vector<std::pair<int, int>>> cartan_partition(int p) {
  if (p < 2) throw InvalidInput("p must be at least 2");
  if (!is_prime(p)) throw Unsupported("the Cartan partition is built for prime p only");
  std::vector<std::vector<std::pair<int, int>>> sets(p + 1);
  for (int a = 1; a < p; ++a) {
    sets[0].push_back({0, a});
    sets[1].push_back({a, 0});
  }
  for (int c = 1; c < p; ++c)
    for (int a = 1; a < p; ++a) sets[c + 1].push_back({a, c * a % p});
  return sets;
}

nlohmann::json to_json(const MubBasis& b) {
  nlohmann::json vecs = nlohmann::json::array();
  for (const auto& v : b.vectors) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < v.size(); ++k) row.push_back({{"re", v(k).real()}, {"im", v(k).imag()}});
    vecs.push_back(row);
  }
  return {{"d", b.params.d}, {"r", b.params.r}, {"a", b.params.a}, {"vectors", vecs}};
}

nlohmann::json partition_json(int p, const std::vector<std::vector<std::pair<int, int>>>& sets) {
  nlohmann::json js = nlohmann::json::array();
  for (const auto& s : sets) {
    nlohmann::json one = nlohmann::json::array();
    for (auto [a, b] : s) one.push_back({a, b});
    js.push_back(one);
  }
  return {{"p", p}, {"sets", js}};
}

nlohmann::json to_json(const UnbiasednessReport& rep, int d, double r) {
  nlohmann::json pairs = nlohmann::json::array();
  auto name = [d](int i) { return i == d ? std::string("computational") : "B_a" + std::to_string(i); };
  for (std::size_t i = 0; i < rep.size(); ++i)
    for (std::size_t k = i + 1; k < rep.size(); ++k)
      pairs.push_back({{"first", name(int(i))}, {"second", name(int(k))}, {"min", rep[i][k].min}, {"max", rep[i][k].max}});
  return {{"d", d}, {"r", r}, {"pairs", pairs}};
}

}  // namespace racah
