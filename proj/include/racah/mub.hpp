#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include <json.hpp>

namespace racah {

using cplx = std::complex<double>;

// Vectors live on the computational basis phi_0..phi_{d-1}; phi_k = |j, m>
// with k = j - m, so component k equals row k of the SU(2) > C_d table.
struct MubParams {
  int d = 2;
  double r = 0;
  int a = 0;
  cplx q() const;
};

struct MubBasis {
  MubParams params;
  std::vector<Eigen::VectorXcd> vectors;  // indexed by alpha
};

struct WeylPair {
  Eigen::MatrixXcd X;  // X phi_k = phi_{k-1}, X phi_0 = phi_{d-1}
  Eigen::MatrixXcd Z;  // diag(q^k)
  Eigen::MatrixXcd P;  // diag(1, ..., 1, e^{i pi (d-1) r})
};

Eigen::MatrixXcd vra_matrix(const MubParams& p);
Eigen::VectorXcd mub_vector(const MubParams& p, int alpha);
// q^{(d-1)(r+a)/2 - alpha}
cplx mub_eigenvalue(const MubParams& p, int alpha);
MubBasis mub_basis(const MubParams& p);
// Columns are the mub vectors.
Eigen::MatrixXcd hra_matrix(const MubParams& p);

WeylPair weyl_pair(int d, double r = 0);
// X^a Z^b
Eigen::MatrixXcd pauli(int d, int a, int b);
// All d^2 products, ordered (a, b) lexicographically.
std::vector<Eigen::MatrixXcd> pauli_set(int d);

struct OverlapRange {
  double min = 0;
  double max = 0;
};
// Rows/columns 0..d-1 are B_{r a}, row d the computational basis.
using UnbiasednessReport = std::vector<std::vector<OverlapRange>>;
UnbiasednessReport unbiasedness_report(int d, double r);

// sum_{k=0}^{|w|-1} exp(i pi (u k^2 + v k) / w)
cplx gauss_sum(long u, long v, long w);

bool is_prime(long n);
// p+1 sets of (a, b) exponent pairs of X^a Z^b.
std::vector<std::vector<std::pair<int, int>>> cartan_partition(int p);

nlohmann::json to_json(const MubBasis& b);
nlohmann::json partition_json(int p, const std::vector<std::vector<std::pair<int, int>>>& sets);
nlohmann::json to_json(const UnbiasednessReport& rep, int d, double r);

}  // namespace racah
