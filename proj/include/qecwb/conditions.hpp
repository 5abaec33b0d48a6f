#pragma once

#include "qecwb/channels.hpp"
#include "qecwb/codes.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qecwb {

struct DetectabilityReport {
  Complex lambda;      // tr(P A P) / tr(P)
  double residual = 0; // ||P A P - lambda P||_max
  Complex zero_one;    // <0_L|A|1_L>
  Complex one_zero;    // <1_L|A|0_L>
  Complex zero_zero;
  Complex one_one;
  bool detectable = false;
};

DetectabilityReport detectability(const QuantumCode& code, const Matrix& a, double tol = 1e-10);

/// Restricted block <i_L|A_l^dag A_m|j_L> for one ordered error pair, l <= m.
struct KLBlock {
  std::size_t l = 0;
  std::size_t m = 0;
  Eigen::Matrix2cd block;
  double offdiag = 0;        // max(|b01|, |b10|)
  double diag_mismatch = 0;  // |b00 - b11|
  double violation() const { return std::max(offdiag, diag_mismatch); }
};

struct KLGram {
  std::vector<std::string> labels;
  std::vector<KLBlock> blocks;   // l outer, m inner, l <= m
  std::vector<double> eig_min;   // per error, from the (l, l) block
  std::vector<double> eig_max;
  double max_offdiag_violation = 0;
  double max_diag_mismatch = 0;

  const KLBlock& block(std::size_t l, std::size_t m) const;
};

KLGram kl_gram(const QuantumCode& code, std::span<const LabeledOperator> errors);

struct CorrectabilityVerdict {
  std::vector<std::string> errors;
  bool exact = false;
  double violation = 0;
  std::optional<std::pair<std::string, std::string>> witness;  // pair with the largest violation
};

CorrectabilityVerdict exact_correctable(const QuantumCode& code,
                                        std::span<const LabeledOperator> errors,
                                        double tol = 1e-10);

struct CodeWithErrors {
  QuantumCode code;
  std::vector<LabeledOperator> errors;
};

using CodeFamily = std::function<CodeWithErrors(double)>;

/// Violations below this floor at every sample count as exactly zero.
inline constexpr double exact_violation_floor = 1e-13;
/// Smallest log-log slope accepted as first-order correctable.
inline constexpr double first_order_slope = 1.9;

struct OrderEstimate {
  double slope = 0;
  bool exact = false;
  bool first_order = false;
  std::vector<double> gammas;
  std::vector<double> violations;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

OrderEstimate violation_order(const CodeFamily& family, std::span<const double> gammas);

struct PairOrder {
  std::size_t l = 0;
  std::size_t m = 0;
  OrderEstimate order;
};

struct FirstOrderReport {
  OrderEstimate overall;
  std::vector<PairOrder> pairs;  // scan order: l outer, m inner, l <= m
  std::optional<std::pair<std::string, std::string>> witness;  // first failing pair in reverse scan order
  bool correctable = false;
};

FirstOrderReport first_order_correctability(const CodeFamily& family, std::span<const double> gammas);

/// The weight <= 1 amplitude damping errors on four qubits.
std::vector<LabeledOperator> ad_weight_one_errors(double gamma);

struct PairClassification {
  int i = 0;
  int j = 0;
  bool good = false;
  std::optional<std::pair<std::string, std::string>> witness;
  double slope = 0;
};

PairClassification classify_pair(const SelfComplementaryPair& pair);
PairClassification classify_pair(const SelfComplementaryPair& pair, std::span<const double> gammas);

/// sum_k <psi|A_k^dag A_k|psi> for a codespace state.
double detection_probability(const QuantumCode& code, std::span<const LabeledOperator> errors,
                             const StateVector& state);

/// Same sum for the maximally mixed code state P_C / 2.
double detection_probability(const QuantumCode& code, std::span<const LabeledOperator> errors);

}  // namespace qecwb
