#include "qecwb/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qecwb {

namespace {

Json ops_json(const std::vector<LabeledOperator>& ops)
{
  Json arr = Json::array();
  for (const auto& k : ops) {
    arr.push_back({{"label", k.label}, {"entries", matrix_entries(k.op)}});
  }
  return arr;
}

Json codeword_json(const StateVector& v)
{
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == Complex(0.0, 0.0)) continue;
    arr.push_back({{"index", i}, {"amplitude_re", v(i).real()}, {"amplitude_im", v(i).imag()}});
  }
  return arr;
}

StateVector codeword_from_json(const Json& arr, Eigen::Index dim)
{
  StateVector v = StateVector::Zero(dim);
  for (const auto& e : arr) {
    const auto i = e.at("index").get<Eigen::Index>();
    if (i < 0 || i >= dim) throw std::invalid_argument("code_from_json: index out of range");
    v(i) = Complex(e.at("amplitude_re").get<double>(), e.at("amplitude_im").get<double>());
  }
  return v;
}

Json label_pair(const std::optional<std::pair<std::string, std::string>>& p)
{
  if (!p) return nullptr;
  return Json::array({p->first, p->second});
}

}  // namespace

Json matrix_entries(const Matrix& m)
{
  Json arr = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      arr.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  return arr;
}

Matrix matrix_from_entries(const Json& entries, Eigen::Index rows, Eigen::Index cols)
{
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols) {
    throw std::invalid_argument("matrix_from_entries: expected rows * cols entries");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      const auto& e = entries[k];
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

Json to_json(const KrausChannel& channel)
{
  return {{"n_qubits", channel.n_qubits}, {"param", channel.param}, {"kraus", ops_json(channel.kraus)}};
}

KrausChannel channel_from_json(const Json& j)
{
  KrausChannel ch;
  ch.n_qubits = j.at("n_qubits").get<int>();
  ch.param = j.at("param").get<double>();
  const Eigen::Index d = ch.dim();
  for (const auto& k : j.at("kraus")) {
    const auto label = k.at("label").get<std::string>();
    const int weight = static_cast<int>(std::count_if(label.begin(), label.end(), [](char c) { return c != '0'; }));
    ch.kraus.push_back({label, weight, matrix_from_entries(k.at("entries"), d, d)});
  }
  return ch;
}

Json to_json(const QuantumCode& code)
{
  return {{"n_qubits", code.n_qubits},
          {"codewords", Json::array({codeword_json(code.zero_logical), codeword_json(code.one_logical)})}};
}

QuantumCode code_from_json(const Json& j, std::string name)
{
  const int n = j.at("n_qubits").get<int>();
  if (n < 1 || n > 16) throw std::invalid_argument("code_from_json: unsupported qubit count");
  const auto& words = j.at("codewords");
  if (words.size() != 2) throw std::invalid_argument("code_from_json: expected two codewords");
  const Eigen::Index dim = Eigen::Index{1} << n;
  return make_code(std::move(name), codeword_from_json(words[0], dim), codeword_from_json(words[1], dim));
}

Json to_json(const RecoveryOperation& recovery)
{
  Json j{{"name", to_string(recovery.kind)},
         {"n_qubits", static_cast<int>(std::log2(static_cast<double>(recovery.dim())) + 0.5)},
         {"kraus", ops_json(recovery.ops)}};
  j["leftover"] = recovery.leftover ? matrix_entries(*recovery.leftover) : Json(nullptr);
  if (recovery.params) {
    const auto [a, b] = *recovery.params;
    j["params"] = {{"a", {a.real(), a.imag()}}, {"b", {b.real(), b.imag()}}};
  } else {
    j["params"] = nullptr;
  }
  return j;
}

Json to_json(const PairClassification& c)
{
  return {{"indices", {c.i, c.j}},
          {"good", c.good},
          {"witness", label_pair(c.witness)},
          {"slope", std::isfinite(c.slope) ? Json(c.slope) : Json(nullptr)}};
}

Json to_json(const FletcherReport& r)
{
  return {{"gamma", r.gamma},
          {"a_bar", r.a_bar},
          {"b_bar", r.b_bar},
          {"f_star_closed", r.f_star_closed},
          {"f_star_numeric", r.f_star_numeric},
          {"delta", r.delta}};
}

}  // namespace qecwb
