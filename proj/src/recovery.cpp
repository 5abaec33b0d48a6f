#include "qecwb/recovery.hpp"

#include <cmath>
#include <stdexcept>

namespace qecwb {

namespace {

constexpr double range_eigenvalue_floor = 1e-10;
constexpr double completion_floor = 1e-10;

void require_projector(const Matrix& p)
{
  if (p.rows() != p.cols()) throw std::invalid_argument("polar_decompose: projector not square");
  if (hermiticity_defect(p) > 1e-10 || max_abs(p * p - p) > 1e-10) {
    throw std::invalid_argument("polar_decompose: not a Hermitian idempotent");
  }
}

std::vector<StateVector> projector_range(const Matrix& p)
{
  const auto eig = hermitian_eig(p);
  std::vector<StateVector> basis;
  for (Eigen::Index l = 0; l < eig.values.size(); ++l) {
    if (eig.values(l) > 0.5) basis.push_back(eig.vectors.col(l));
  }
  return basis;
}

StateVector orthogonal_residual(const StateVector& v, const std::vector<StateVector>& frame)
{
  StateVector w = v;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : frame) w -= q * q.dot(w);
  }
  return w;
}

Matrix ket_bra(const StateVector& ket, const StateVector& bra_vector)
{
  return outer(ket, bra_vector);
}

StateVector ket(std::string_view bits) { return basis_state(bits); }

LabeledOperator correlate(std::string label, const QuantumCode& code, const StateVector& from0,
                          const StateVector& from1)
{
  return {std::move(label), 0, ket_bra(code.zero_logical, from0) + ket_bra(code.one_logical, from1)};
}

// R3..R10, shared by the code-projected and Fletcher recoveries.
void append_cp_tail(std::vector<LabeledOperator>& ops, const QuantumCode& code)
{
  ops.push_back(correlate("R3", code, ket("0111"), ket("0100")));
  ops.push_back(correlate("R4", code, ket("1011"), ket("1000")));
  ops.push_back(correlate("R5", code, ket("1101"), ket("0001")));
  ops.push_back(correlate("R6", code, ket("1110"), ket("0010")));
  ops.push_back({"R7", 0, ket_bra(code.zero_logical, ket("1001"))});
  ops.push_back({"R8", 0, ket_bra(code.zero_logical, ket("1010"))});
  ops.push_back({"R9", 0, ket_bra(code.zero_logical, ket("0101"))});
  ops.push_back({"R10", 0, ket_bra(code.zero_logical, ket("0110"))});
}

}  // namespace

PolarDecomposition polar_decompose(const Matrix& a, const Matrix& p)
{
  require_projector(p);
  if (a.rows() != p.rows() || a.cols() != p.cols()) {
    throw std::invalid_argument("polar_decompose: dimension mismatch");
  }
  const Matrix ap = a * p;
  Matrix gram = ap.adjoint() * ap;
  gram = (gram + gram.adjoint()) / 2.0;
  const auto eig = hermitian_eig(gram);
  const Eigen::Index n = gram.rows();

  PolarDecomposition pd;
  pd.j = psd_sqrt(gram);
  pd.singular_values = eig.values.unaryExpr([](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
  pd.basis_used.resize(static_cast<std::size_t>(n));
  pd.images.resize(static_cast<std::size_t>(n));

  std::vector<StateVector> frame;
  std::vector<std::size_t> kernel;
  for (Eigen::Index l = 0; l < n; ++l) {
    const auto idx = static_cast<std::size_t>(l);
    pd.basis_used[idx] = eig.vectors.col(l);
    if (eig.values(l) > range_eigenvalue_floor) {
      pd.images[idx] = ap * pd.basis_used[idx] / pd.singular_values(l);
      frame.push_back(pd.images[idx]);
    } else {
      kernel.push_back(idx);
    }
  }

  std::vector<std::size_t> pending;
  for (std::size_t idx : kernel) {
    StateVector w = orthogonal_residual(pd.basis_used[idx], frame);
    const double norm = w.norm();
    if (norm >= completion_floor) {
      pd.images[idx] = w / norm;
      frame.push_back(pd.images[idx]);
    } else {
      pending.push_back(idx);
    }
  }
  Eigen::Index next = 0;
  for (std::size_t idx : pending) {
    bool placed = false;
    for (; next < n && !placed; ++next) {
      StateVector w = orthogonal_residual(StateVector::Unit(n, next), frame);
      const double norm = w.norm();
      if (norm >= completion_floor) {
        pd.images[idx] = w / norm;
        frame.push_back(pd.images[idx]);
        placed = true;
      }
    }
    if (!placed) throw std::runtime_error("polar_decompose: basis completion failed");
  }

  pd.u = Matrix::Zero(n, n);
  for (std::size_t idx = 0; idx < pd.basis_used.size(); ++idx) {
    pd.u += ket_bra(pd.images[idx], pd.basis_used[idx]);
  }
  return pd;
}

ResidueParameters residue_parameters(const QuantumCode& code, const Matrix& a)
{
  const std::vector<StateVector> basis{code.zero_logical, code.one_logical};
  const Matrix block = restrict(Matrix(a.adjoint() * a), basis);
  const auto eig = hermitian_eig(block);
  ResidueParameters out;
  const double lmin = std::max(0.0, eig.values(0));
  const double lmax = std::max(0.0, eig.values(1));
  if (lmax > 0.0) {
    out.p_l = lmax;
    out.lambda_l = lmin / lmax;
  }
  return out;
}

ResidueResult residue(const Matrix& a, const Matrix& p, double p_l, double lambda_l)
{
  require_projector(p);
  if (a.rows() != p.rows() || a.cols() != p.cols()) throw std::invalid_argument("residue: dimension mismatch");
  const Matrix ap = a * p;
  Matrix gram = ap.adjoint() * ap;
  gram = (gram + gram.adjoint()) / 2.0;

  const auto range = projector_range(p);
  const auto restricted = hermitian_eig(restrict(gram, range));
  const double smallest = restricted.values.size() > 0 ? restricted.values(0) : 0.0;
  const double product = lambda_l * p_l;
  if (std::abs(product - smallest) > 1e-9) {
    throw std::invalid_argument("residue: lambda_l * p_l is not the smallest codespace eigenvalue");
  }

  ResidueResult r;
  r.lambda_min_times_p = product;
  r.pi = psd_sqrt(gram) - std::sqrt(std::max(0.0, product)) * p;
  const auto spectrum = hermitian_eig(r.pi, 1e-9);
  r.max_singular_value = spectrum.values.cwiseAbs().maxCoeff();
  r.bound = std::sqrt(std::max(0.0, p_l)) - std::sqrt(std::max(0.0, product));
  r.bound_ok = r.max_singular_value <= r.bound + 1e-10;
  return r;
}

const char* to_string(RecoveryKind kind)
{
  switch (kind) {
    case RecoveryKind::standard_qec: return "standard_qec";
    case RecoveryKind::code_projected: return "code_projected";
    case RecoveryKind::fletcher: return "fletcher";
    case RecoveryKind::repetition: return "repetition";
    case RecoveryKind::polar: return "polar";
  }
  return "unknown";
}

Eigen::Index RecoveryOperation::dim() const
{
  if (!ops.empty()) return ops.front().op.cols();
  return leftover ? leftover->cols() : 0;
}

double RecoveryOperation::completeness_defect() const
{
  const Eigen::Index d = dim();
  Matrix sum = ops.empty() ? Matrix(Matrix::Zero(d, d)) : sum_dagger_product(ops);
  if (leftover) sum += leftover->adjoint() * *leftover;
  return max_abs(sum - Matrix::Identity(d, d));
}

RecoveryOperation repetition_recovery()
{
  const QuantumCode code = repetition3();
  RecoveryOperation r;
  r.kind = RecoveryKind::repetition;
  r.ops.push_back(correlate("R0", code, ket("000"), ket("111")));
  r.ops.push_back(correlate("R1", code, ket("100"), ket("011")));
  r.ops.push_back(correlate("R2", code, ket("010"), ket("101")));
  r.ops.push_back(correlate("R3", code, ket("001"), ket("110")));
  return r;
}

RecoveryOperation standard_ad_recovery(double gamma)
{
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("standard_ad_recovery: gamma must lie in [0, 1)");
  const QuantumCode code = leung4();
  const double c2 = (1.0 - gamma) * (1.0 - gamma);
  const double norm = std::sqrt(1.0 + c2 * c2);

  const StateVector v0 = (ket("0000") + c2 * ket("1111")) / norm;
  RecoveryOperation r;
  r.kind = RecoveryKind::standard_qec;
  r.ops.push_back(correlate("R0", code, v0, code.one_logical));
  r.ops.push_back(correlate("R1", code, ket("0111"), ket("0100")));
  r.ops.push_back(correlate("R2", code, ket("1011"), ket("1000")));
  r.ops.push_back(correlate("R3", code, ket("1101"), ket("0001")));
  r.ops.push_back(correlate("R4", code, ket("1110"), ket("0010")));

  const std::vector<StateVector> unused{
      ket("0101"), ket("0110"), ket("1001"), ket("1010"),
      (c2 * ket("0000") - ket("1111")) / norm,
      (ket("0011") - ket("1100")) / std::sqrt(2.0)};
  Matrix o = Matrix::Zero(code.dim(), code.dim());
  for (const auto& s : unused) o += outer(s, s);
  r.leftover = o;
  return r;
}

RecoveryOperation cp_recovery()
{
  const QuantumCode code = leung4();
  RecoveryOperation r;
  r.kind = RecoveryKind::code_projected;
  r.ops.push_back({"R1", 0, code.projector});
  const double s = 1.0 / std::sqrt(2.0);
  r.ops.push_back(correlate("R2", code, s * (ket("0000") - ket("1111")), s * (ket("0011") - ket("1100"))));
  append_cp_tail(r.ops, code);
  return r;
}

RecoveryOperation fletcher_recovery(Complex a, Complex b)
{
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10) {
    throw std::invalid_argument("fletcher_recovery: |a|^2 + |b|^2 must equal 1");
  }
  const QuantumCode code = leung4();
  // <w1| = a<0000| + b<1111|,  <w2| = b*<0000| - a*<1111|
  const StateVector w1 = std::conj(a) * ket("0000") + std::conj(b) * ket("1111");
  const StateVector w2 = b * ket("0000") - a * ket("1111");
  const StateVector minus = (ket("0011") - ket("1100")) / std::sqrt(2.0);

  RecoveryOperation r;
  r.kind = RecoveryKind::fletcher;
  r.params = std::make_pair(a, b);
  r.ops.push_back(correlate("R1", code, w1, code.one_logical));
  r.ops.push_back(correlate("R2", code, w2, minus));
  append_cp_tail(r.ops, code);
  return r;
}

RecoveryOperation polar_recovery(const QuantumCode& code, std::span<const LabeledOperator> errors,
                                 double tol)
{
  const Matrix& p = code.projector;
  std::vector<Matrix> us;
  for (const auto& e : errors) us.push_back(polar_decompose(e.op, p).u);
  for (std::size_t l = 0; l < us.size(); ++l) {
    for (std::size_t m = 0; m < us.size(); ++m) {
      const Matrix overlap = p * us[l].adjoint() * us[m] * p;
      const Matrix expected = (l == m) ? p : Matrix(Matrix::Zero(p.rows(), p.cols()));
      if (max_abs(overlap - expected) > tol) {
        throw std::invalid_argument("polar_recovery: syndromes are ambiguous");
      }
    }
  }
  RecoveryOperation r;
  r.kind = RecoveryKind::polar;
  Matrix covered = Matrix::Zero(p.rows(), p.cols());
  for (std::size_t k = 0; k < us.size(); ++k) {
    Matrix op = p * us[k].adjoint();
    covered += op.adjoint() * op;
    r.ops.push_back({"R" + std::to_string(k), 0, std::move(op)});
  }
  const Matrix rest = Matrix::Identity(p.rows(), p.cols()) - covered;
  if (max_abs(rest) > tol) r.leftover = rest;
  return r;
}

}  // namespace qecwb
