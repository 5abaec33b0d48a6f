#pragma once

#include "qecwb/dense.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qecwb {

struct QuantumCode {
  std::string name;
  int n_qubits = 0;
  StateVector zero_logical;
  StateVector one_logical;
  Matrix projector;

  Eigen::Index dim() const { return Eigen::Index{1} << n_qubits; }
};

/// Validates orthonormality (1e-12) and caches the projector.
QuantumCode make_code(std::string name, StateVector zero, StateVector one);

/// Bitstring to basis index, leftmost bit most significant.
std::size_t basis_index(std::string_view bits);
std::string bit_label(std::size_t index, int n_qubits);
StateVector basis_state(std::string_view bits);

/// (|a> + |~a>)/sqrt(2)
StateVector self_complementary_state(std::string_view bits);

QuantumCode repetition3();
QuantumCode leung4();
QuantumCode grassl4();
QuantumCode third4();

/// The eight representatives a of v_1..v_8, in order.
const std::vector<std::string>& self_complementary_representatives();
std::vector<StateVector> self_complementary_basis();

struct SelfComplementaryPair {
  int i = 0;  // 1-based, i < j
  int j = 0;
  StateVector first;
  StateVector second;

  QuantumCode code() const;
};

std::vector<SelfComplementaryPair> enumerate_pairs();

/// perm[k] is the position qubit k is moved to (both 0-based, qubit 0 leftmost).
using QubitPermutation = std::vector<int>;

Matrix permutation_operator(const QubitPermutation& perm);

/// Searches all n! qubit permutations for one mapping the codespace of `from`
/// onto the codespace of `to`.
std::optional<QubitPermutation> permutation_equivalent(const QuantumCode& from,
                                                       const QuantumCode& to,
                                                       double tol = 1e-10);

}  // namespace qecwb
