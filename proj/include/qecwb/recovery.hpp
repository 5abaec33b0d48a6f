#pragma once

#include "qecwb/channels.hpp"
#include "qecwb/codes.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qecwb {

struct PolarDecomposition {
  Matrix u;
  Matrix j;                              // sqrt(P A^dag A P)
  std::vector<StateVector> basis_used;   // eigenvectors |v_l> of P A^dag A P, ascending
  std::vector<StateVector> images;       // |E_l>, same order as basis_used
  RealVector singular_values;            // sqrt of the eigenvalues, clamped at 0
};

/// A P = U J. Range directions map as |E_l> = A P |v_l> / lambda_l; kernel
/// directions are completed by Gram-Schmidt, first from the kernel
/// eigenvectors themselves and then from computational basis vectors in
/// index order.
PolarDecomposition polar_decompose(const Matrix& a, const Matrix& p);

struct ResidueResult {
  Matrix pi;
  double lambda_min_times_p = 0;
  double max_singular_value = 0;
  double bound = 0;  // sqrt(p_l) - sqrt(lambda_l p_l)
  bool bound_ok = false;
};

struct ResidueParameters {
  double p_l = 0;       // largest eigenvalue of the codespace block of A^dag A
  double lambda_l = 1;  // smallest over largest
};

ResidueParameters residue_parameters(const QuantumCode& code, const Matrix& a);

/// pi = sqrt(P A^dag A P) - sqrt(lambda_l p_l) P. The product lambda_l p_l
/// must equal the smallest codespace eigenvalue of P A^dag A P within 1e-9.
ResidueResult residue(const Matrix& a, const Matrix& p, double p_l, double lambda_l);

enum class RecoveryKind { standard_qec, code_projected, fletcher, repetition, polar };

const char* to_string(RecoveryKind kind);

struct RecoveryOperation {
  RecoveryKind kind = RecoveryKind::repetition;
  std::vector<LabeledOperator> ops;
  std::optional<Matrix> leftover;                  // projector O on the unused states
  std::optional<std::pair<Complex, Complex>> params;  // (a, b) for the Fletcher family

  Eigen::Index dim() const;
  /// ||sum R^dag R (+ O^dag O) - I||_max
  double completeness_defect() const;
  bool complete(double tol = 1e-10) const { return completeness_defect() <= tol; }
};

RecoveryOperation repetition_recovery();
RecoveryOperation standard_ad_recovery(double gamma);
RecoveryOperation cp_recovery();
RecoveryOperation fletcher_recovery(Complex a, Complex b);

/// R_k = P_C U_k^dag for each error, with O the projector complementary to
/// the union of the ranges U_k(C). Requires unambiguous syndromes
/// (P_C U_l^dag U_m P_C = delta_lm P_C within `tol`).
RecoveryOperation polar_recovery(const QuantumCode& code, std::span<const LabeledOperator> errors,
                                 double tol = 1e-10);

}  // namespace qecwb
