#pragma once

#include "qecwb/channels.hpp"
#include "qecwb/codes.hpp"
#include "qecwb/recovery.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace qecwb {

struct FidelityTerm {
  std::size_t k = 0;   // recovery operator index
  std::size_t l = 0;   // Kraus index
  Complex trace;       // <0_L|R_k A_l|0_L> + <1_L|R_k A_l|1_L>
  double contribution = 0;  // |trace|^2 / 4
};

struct FidelityResult {
  double value = 0;
  std::vector<FidelityTerm> terms;           // R_k against A_l, k-major
  std::vector<FidelityTerm> leftover_terms;  // O against A_l (k = ops.size())
};

/// F = (1/4) sum_{k,l} |Tr(R_k A_l)_C|^2, with the leftover projector O of
/// the recovery counted as one more Kraus operator.
FidelityResult entanglement_fidelity(const QuantumCode& code, const RecoveryOperation& recovery,
                                     const KrausChannel& channel);

/// (k, l) pairs among the R_k terms whose contribution exceeds tol.
std::vector<std::pair<std::size_t, std::size_t>> nonvanishing_terms(const FidelityResult& result,
                                                                   double tol = 1e-14);
std::vector<std::pair<std::size_t, std::size_t>> nonvanishing_leftover_terms(const FidelityResult& result,
                                                                            double tol = 1e-14);

/// (1/4) sum_k |Tr A_k|^2 for a single-qubit channel.
double baseline_no_qec(const KrausChannel& channel);

struct Interval {
  double lo = 0;
  double hi = 0;
};

struct ThresholdReport {
  std::vector<Interval> coding_useful;  // sample intervals with F_code >= F_baseline
  bool useful_everywhere = false;
  std::optional<double> failure_threshold;  // end of the first 1 - F <= p stretch
};

using Curve = std::function<double(double)>;

ThresholdReport threshold_analysis(const Curve& code_fidelity, const Curve& baseline,
                                   int samples = 1001, double bisection_tol = 1e-12);

struct SeriesEstimate {
  double c0 = 0;
  double c1 = 0;
  double c2 = 0;
  double c3 = 0;  // absorbs the cubic remainder so c2 is not biased by it
  double residual = 0;  // max |fit - F| over the samples
  std::vector<double> gammas_used;
};

/// Least-squares fit of c0 + c1 g + c2 g^2 (+ c3 g^3 when at least four
/// samples are given) over gammas in (0, 1e-2].
SeriesEstimate second_order_coeff(const Curve& curve, std::span<const double> gammas);

// Convenience curves used by the command-line tool and the tests.
double bitflip_code_fidelity(double p);
double bitflip_baseline(double p);
double ad_qec_fidelity(double gamma);
double ad_cp_fidelity(double gamma);
double ad_fletcher_fidelity(double gamma, Complex a, Complex b);
double ad_baseline(double gamma);

}  // namespace qecwb
