#include "qecwb/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qecwb {

namespace {

void require_probability(double x, const char* what)
{
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": parameter must lie in [0, 1]");
  }
}

KrausChannel two_op_channel(double p, const Matrix& flip)
{
  KrausChannel ch;
  ch.n_qubits = 1;
  ch.param = p;
  ch.kraus.push_back({"0", 0, std::sqrt(1.0 - p) * Matrix::Identity(2, 2)});
  ch.kraus.push_back({"1", 1, std::sqrt(p) * flip});
  return ch;
}

}  // namespace

const LabeledOperator& KrausChannel::at(std::string_view label) const
{
  return kraus[index_of(label)];
}

std::size_t KrausChannel::index_of(std::string_view label) const
{
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (kraus[i].label == label) return i;
  }
  throw std::out_of_range("KrausChannel: no operator labeled " + std::string(label));
}

Matrix pauli_x()
{
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

Matrix pauli_z()
{
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

Matrix hadamard()
{
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

KrausChannel bitflip_single(double p)
{
  require_probability(p, "bitflip_single");
  return two_op_channel(p, pauli_x());
}

KrausChannel phaseflip_single(double p)
{
  require_probability(p, "phaseflip_single");
  return two_op_channel(p, pauli_z());
}

KrausChannel ad_single(double gamma)
{
  require_probability(gamma, "ad_single");
  Matrix a0 = Matrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  Matrix a1 = Matrix::Zero(2, 2);
  a1(0, 1) = std::sqrt(gamma);

  KrausChannel ch;
  ch.n_qubits = 1;
  ch.param = gamma;
  ch.kraus.push_back({"0", 0, a0});
  ch.kraus.push_back({"1", 1, a1});
  return ch;
}

KrausChannel enlarge(const KrausChannel& single, int n)
{
  if (single.n_qubits != 1) throw std::invalid_argument("enlarge: input must act on one qubit");
  if (n < 1) throw std::invalid_argument("enlarge: n must be at least 1");
  const std::size_t k = single.kraus.size();
  if (k == 0 || k > 10) throw std::invalid_argument("enlarge: need between 1 and 10 operators");

  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= k;

  std::vector<std::string> labels;
  labels.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::string digits(static_cast<std::size_t>(n), '0');
    std::size_t rest = code;
    for (int pos = n - 1; pos >= 0; --pos) {
      digits[static_cast<std::size_t>(pos)] = static_cast<char>('0' + rest % k);
      rest /= k;
    }
    labels.push_back(std::move(digits));
  }
  auto weight = [](const std::string& s) {
    return static_cast<int>(std::count_if(s.begin(), s.end(), [](char c) { return c != '0'; }));
  };
  std::sort(labels.begin(), labels.end(), [&](const std::string& x, const std::string& y) {
    const int wx = weight(x);
    const int wy = weight(y);
    if (wx != wy) return wx < wy;
    return x > y;
  });

  KrausChannel out;
  out.n_qubits = n;
  out.param = single.param;
  out.kraus.reserve(total);
  for (const auto& label : labels) {
    Matrix op = single.kraus[static_cast<std::size_t>(label[0] - '0')].op;
    for (std::size_t pos = 1; pos < label.size(); ++pos) {
      op = kron(op, single.kraus[static_cast<std::size_t>(label[pos] - '0')].op);
    }
    out.kraus.push_back({label, weight(label), std::move(op)});
  }
  return out;
}

KrausChannel select(const KrausChannel& channel, const std::vector<std::string>& labels)
{
  KrausChannel out;
  out.n_qubits = channel.n_qubits;
  out.param = channel.param;
  for (const auto& label : labels) out.kraus.push_back(channel.at(label));
  return out;
}

KrausChannel leading(const KrausChannel& channel, std::size_t count)
{
  if (count > channel.kraus.size()) throw std::out_of_range("leading: count exceeds channel size");
  KrausChannel out;
  out.n_qubits = channel.n_qubits;
  out.param = channel.param;
  out.kraus.assign(channel.kraus.begin(), channel.kraus.begin() + static_cast<long>(count));
  return out;
}

Matrix apply(const KrausChannel& channel, const Matrix& rho)
{
  const Eigen::Index d = channel.dim();
  if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("apply: dimension mismatch");
  Matrix out = Matrix::Zero(d, d);
  for (const auto& k : channel.kraus) out += k.op * rho * k.op.adjoint();
  return out;
}

Matrix sum_dagger_product(std::span<const LabeledOperator> ops)
{
  if (ops.empty()) return Matrix();
  const Eigen::Index d = ops.front().op.cols();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& k : ops) {
    if (k.op.cols() != d) throw std::invalid_argument("sum_dagger_product: dimension mismatch");
    sum += k.op.adjoint() * k.op;
  }
  return sum;
}

double completeness_defect(std::span<const LabeledOperator> ops)
{
  const Matrix sum = sum_dagger_product(ops);
  return max_abs(sum - Matrix::Identity(sum.rows(), sum.cols()));
}

ChannelCertificate certify(const KrausChannel& channel, double tol)
{
  const Eigen::Index d = channel.dim();
  Matrix tp = Matrix::Zero(d, d);
  Matrix un = Matrix::Zero(d, d);
  for (const auto& k : channel.kraus) {
    tp += k.op.adjoint() * k.op;
    un += k.op * k.op.adjoint();
  }
  const Matrix eye = Matrix::Identity(d, d);
  ChannelCertificate cert;
  cert.max_deviation = max_abs(tp - eye);
  cert.unital_deviation = max_abs(un - eye);
  cert.trace_preserving = cert.max_deviation <= tol;
  cert.unital = cert.unital_deviation <= tol;
  return cert;
}

}  // namespace qecwb
