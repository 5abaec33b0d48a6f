#pragma once

#include "qecwb/dense.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qecwb {

/// An operator with a label. Kraus errors use bitstring labels ("0100",
/// leftmost character is qubit 1); recovery operators use names ("R1").
struct LabeledOperator {
  std::string label;
  int weight = 0;
  Matrix op;
};

struct KrausChannel {
  int n_qubits = 1;
  double param = 0.0;
  std::vector<LabeledOperator> kraus;

  Eigen::Index dim() const { return Eigen::Index{1} << n_qubits; }
  const LabeledOperator& at(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;
};

struct ChannelCertificate {
  bool trace_preserving = false;
  bool unital = false;
  double max_deviation = 0.0;      // ||sum A^dag A - I||_max
  double unital_deviation = 0.0;   // ||sum A A^dag - I||_max
};

Matrix pauli_x();
Matrix pauli_z();
Matrix hadamard();

KrausChannel bitflip_single(double p);
KrausChannel phaseflip_single(double p);
KrausChannel ad_single(double gamma);

/// n-fold tensor power of a single-qubit channel. Operators are grouped by
/// weight (number of non-identity factors); within a weight group labels
/// run in descending lexicographic order, e.g. 1100, 1010, 1001, 0110, ...
KrausChannel enlarge(const KrausChannel& single, int n);

/// Keep the operators with the given labels, in the given order.
KrausChannel select(const KrausChannel& channel, const std::vector<std::string>& labels);

/// Keep the first `count` operators.
KrausChannel leading(const KrausChannel& channel, std::size_t count);

Matrix apply(const KrausChannel& channel, const Matrix& rho);

Matrix sum_dagger_product(std::span<const LabeledOperator> ops);
double completeness_defect(std::span<const LabeledOperator> ops);

ChannelCertificate certify(const KrausChannel& channel, double tol = 1e-10);

}  // namespace qecwb
