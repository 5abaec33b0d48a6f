#include "qecwb/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qecwb {

QuantumCode make_code(std::string name, StateVector zero, StateVector one)
{
  if (zero.size() != one.size() || zero.size() == 0) {
    throw std::invalid_argument("make_code: codewords must share a nonzero dimension");
  }
  const auto dim = static_cast<std::size_t>(zero.size());
  if ((dim & (dim - 1)) != 0) throw std::invalid_argument("make_code: dimension is not 2^n");
  constexpr double tol = 1e-12;
  if (std::abs(zero.norm() - 1.0) > tol || std::abs(one.norm() - 1.0) > tol ||
      std::abs(zero.dot(one)) > tol) {
    throw std::invalid_argument("make_code: codewords are not orthonormal");
  }
  QuantumCode code;
  code.name = std::move(name);
  code.n_qubits = static_cast<int>(std::countr_zero(dim));
  code.zero_logical = std::move(zero);
  code.one_logical = std::move(one);
  code.projector = outer(code.zero_logical, code.zero_logical) + outer(code.one_logical, code.one_logical);
  return code;
}

std::size_t basis_index(std::string_view bits)
{
  if (bits.empty() || bits.size() > 30) throw std::invalid_argument("basis_index: bad length");
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("basis_index: not a bitstring");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return index;
}

std::string bit_label(std::size_t index, int n_qubits)
{
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int pos = n_qubits - 1; pos >= 0; --pos) {
    s[static_cast<std::size_t>(pos)] = static_cast<char>('0' + (index & 1U));
    index >>= 1;
  }
  return s;
}

StateVector basis_state(std::string_view bits)
{
  StateVector v = StateVector::Zero(Eigen::Index{1} << bits.size());
  v(static_cast<Eigen::Index>(basis_index(bits))) = 1.0;
  return v;
}

StateVector self_complementary_state(std::string_view bits)
{
  std::string flipped(bits);
  for (char& c : flipped) c = (c == '0') ? '1' : '0';
  return (basis_state(bits) + basis_state(flipped)) / std::sqrt(2.0);
}

QuantumCode repetition3()
{
  return make_code("repetition3", basis_state("000"), basis_state("111"));
}

QuantumCode leung4()
{
  return make_code("leung4", self_complementary_state("0000"), self_complementary_state("0011"));
}

QuantumCode grassl4()
{
  return make_code("grassl4", self_complementary_state("0000"), self_complementary_state("1001"));
}

QuantumCode third4()
{
  return make_code("third4", self_complementary_state("0000"), self_complementary_state("0101"));
}

const std::vector<std::string>& self_complementary_representatives()
{
  static const std::vector<std::string> reps{"0000", "1000", "0100", "0010",
                                             "0001", "1100", "1010", "1001"};
  return reps;
}

std::vector<StateVector> self_complementary_basis()
{
  std::vector<StateVector> out;
  for (const auto& a : self_complementary_representatives()) {
    out.push_back(self_complementary_state(a));
  }
  return out;
}

QuantumCode SelfComplementaryPair::code() const
{
  return make_code("v" + std::to_string(i) + "v" + std::to_string(j), first, second);
}

std::vector<SelfComplementaryPair> enumerate_pairs()
{
  const auto basis = self_complementary_basis();
  std::vector<SelfComplementaryPair> pairs;
  for (int i = 1; i <= 8; ++i) {
    for (int j = i + 1; j <= 8; ++j) {
      pairs.push_back({i, j, basis[static_cast<std::size_t>(i - 1)],
                       basis[static_cast<std::size_t>(j - 1)]});
    }
  }
  return pairs;
}

Matrix permutation_operator(const QubitPermutation& perm)
{
  const int n = static_cast<int>(perm.size());
  std::vector<int> seen(perm.begin(), perm.end());
  std::sort(seen.begin(), seen.end());
  for (int k = 0; k < n; ++k) {
    if (seen[static_cast<std::size_t>(k)] != k) {
      throw std::invalid_argument("permutation_operator: not a permutation");
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix u = Matrix::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    const std::string bits = bit_label(static_cast<std::size_t>(x), n);
    std::string moved(bits.size(), '0');
    for (int k = 0; k < n; ++k) {
      moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = bits[static_cast<std::size_t>(k)];
    }
    u(static_cast<Eigen::Index>(basis_index(moved)), x) = 1.0;
  }
  return u;
}

std::optional<QubitPermutation> permutation_equivalent(const QuantumCode& from,
                                                       const QuantumCode& to, double tol)
{
  if (from.n_qubits != to.n_qubits) return std::nullopt;
  QubitPermutation perm(static_cast<std::size_t>(from.n_qubits));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const Matrix u = permutation_operator(perm);
    if (max_abs(u * from.projector * u.adjoint() - to.projector) <= tol) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace qecwb
