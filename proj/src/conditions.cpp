#include "qecwb/conditions.hpp"

#include "qecwb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qecwb {

namespace {

void require_dim(const QuantumCode& code, const Matrix& a, const char* what)
{
  if (a.rows() != code.dim() || a.cols() != code.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

OrderEstimate estimate(std::vector<double> gammas, std::vector<double> violations)
{
  OrderEstimate est;
  est.gammas = std::move(gammas);
  est.violations = std::move(violations);
  est.exact = std::all_of(est.violations.begin(), est.violations.end(),
                          [](double v) { return v <= exact_violation_floor; });
  if (est.exact) {
    est.first_order = true;
    return est;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < est.gammas.size(); ++k) {
    if (est.violations[k] > 0.0) {
      xs.push_back(est.gammas[k]);
      ys.push_back(est.violations[k]);
    }
  }
  est.slope = xs.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
  est.first_order = est.slope >= first_order_slope;
  return est;
}

}  // namespace

DetectabilityReport detectability(const QuantumCode& code, const Matrix& a, double tol)
{
  require_dim(code, a, "detectability");
  const Matrix& p = code.projector;
  const Matrix pap = p * a * p;
  DetectabilityReport r;
  r.lambda = pap.trace() / p.trace();
  r.residual = max_abs(pap - r.lambda * p);
  r.zero_zero = code.zero_logical.dot(a * code.zero_logical);
  r.zero_one = code.zero_logical.dot(a * code.one_logical);
  r.one_zero = code.one_logical.dot(a * code.zero_logical);
  r.one_one = code.one_logical.dot(a * code.one_logical);
  r.detectable = r.residual <= tol;
  return r;
}

const KLBlock& KLGram::block(std::size_t l, std::size_t m) const
{
  if (l > m) std::swap(l, m);
  for (const auto& b : blocks) {
    if (b.l == l && b.m == m) return b;
  }
  throw std::out_of_range("KLGram: no such pair");
}

KLGram kl_gram(const QuantumCode& code, std::span<const LabeledOperator> errors)
{
  KLGram g;
  std::vector<StateVector> img0;
  std::vector<StateVector> img1;
  for (const auto& e : errors) {
    require_dim(code, e.op, "kl_gram");
    g.labels.push_back(e.label);
    img0.push_back(e.op * code.zero_logical);
    img1.push_back(e.op * code.one_logical);
  }
  const std::size_t n = errors.size();
  g.eig_min.assign(n, 0.0);
  g.eig_max.assign(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = l; m < n; ++m) {
      KLBlock b;
      b.l = l;
      b.m = m;
      b.block(0, 0) = img0[l].dot(img0[m]);
      b.block(0, 1) = img0[l].dot(img1[m]);
      b.block(1, 0) = img1[l].dot(img0[m]);
      b.block(1, 1) = img1[l].dot(img1[m]);
      b.offdiag = std::max(std::abs(b.block(0, 1)), std::abs(b.block(1, 0)));
      b.diag_mismatch = std::abs(b.block(0, 0) - b.block(1, 1));
      if (l == m) {
        const Matrix blk = b.block;
        const auto eig = hermitian_eig(blk);
        g.eig_min[l] = eig.values(0);
        g.eig_max[l] = eig.values(1);
      }
      g.max_offdiag_violation = std::max(g.max_offdiag_violation, b.offdiag);
      g.max_diag_mismatch = std::max(g.max_diag_mismatch, b.diag_mismatch);
      g.blocks.push_back(b);
    }
  }
  return g;
}

CorrectabilityVerdict exact_correctable(const QuantumCode& code,
                                        std::span<const LabeledOperator> errors, double tol)
{
  const KLGram g = kl_gram(code, errors);
  CorrectabilityVerdict v;
  v.errors = g.labels;
  for (const auto& b : g.blocks) {
    if (!v.witness || b.violation() > v.violation) {
      v.violation = b.violation();
      v.witness = std::make_pair(g.labels[b.l], g.labels[b.m]);
    }
  }
  v.exact = v.violation <= tol;
  return v;
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys)
{
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two paired samples");
  }
  double mx = 0;
  double my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!(xs[k] > 0.0 && ys[k] > 0.0)) throw std::invalid_argument("loglog_slope: samples must be positive");
    mx += std::log(xs[k]);
    my += std::log(ys[k]);
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0;
  double sxx = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = std::log(xs[k]) - mx;
    sxy += dx * (std::log(ys[k]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_slope: abscissae coincide");
  return sxy / sxx;
}

FirstOrderReport first_order_correctability(const CodeFamily& family, std::span<const double> gammas)
{
  if (gammas.size() < 2) throw std::invalid_argument("violation_order: need at least two samples");
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1e-2)) throw std::invalid_argument("violation_order: samples must lie in (0, 1e-2]");
  }

  std::vector<KLGram> grams;
  for (double g : gammas) {
    const CodeWithErrors cwe = family(g);
    grams.push_back(kl_gram(cwe.code, cwe.errors));
  }
  const std::vector<double> gs(gammas.begin(), gammas.end());

  FirstOrderReport report;
  std::vector<double> overall(gs.size(), 0.0);
  const auto& labels = grams.front().labels;
  for (std::size_t b = 0; b < grams.front().blocks.size(); ++b) {
    std::vector<double> vs;
    for (std::size_t k = 0; k < grams.size(); ++k) {
      const double v = grams[k].blocks[b].violation();
      vs.push_back(v);
      overall[k] = std::max(overall[k], v);
    }
    PairOrder po;
    po.l = grams.front().blocks[b].l;
    po.m = grams.front().blocks[b].m;
    po.order = estimate(gs, std::move(vs));
    report.pairs.push_back(std::move(po));
  }
  // witness: first failure scanning from the last error backwards
  for (auto it = report.pairs.rbegin(); it != report.pairs.rend(); ++it) {
    if (!it->order.first_order) {
      report.witness = std::make_pair(labels[it->l], labels[it->m]);
      break;
    }
  }
  report.overall = estimate(gs, std::move(overall));
  report.correctable = !report.witness.has_value();
  return report;
}

OrderEstimate violation_order(const CodeFamily& family, std::span<const double> gammas)
{
  return first_order_correctability(family, gammas).overall;
}

std::vector<LabeledOperator> ad_weight_one_errors(double gamma)
{
  return select(enlarge(ad_single(gamma), 4), {"0000", "1000", "0100", "0010", "0001"}).kraus;
}

PairClassification classify_pair(const SelfComplementaryPair& pair)
{
  const auto gammas = default_gamma_window();
  return classify_pair(pair, gammas);
}

PairClassification classify_pair(const SelfComplementaryPair& pair, std::span<const double> gammas)
{
  const QuantumCode code = pair.code();
  if (code.n_qubits != 4) throw std::invalid_argument("classify_pair: expected a four-qubit pair");
  const CodeFamily family = [&code](double g) { return CodeWithErrors{code, ad_weight_one_errors(g)}; };
  const FirstOrderReport report = first_order_correctability(family, gammas);
  PairClassification out;
  out.i = pair.i;
  out.j = pair.j;
  out.good = report.correctable;
  out.witness = report.witness;
  out.slope = report.overall.exact ? std::numeric_limits<double>::infinity() : report.overall.slope;
  return out;
}

double detection_probability(const QuantumCode& code, std::span<const LabeledOperator> errors,
                             const StateVector& state)
{
  if (state.size() != code.dim()) throw std::invalid_argument("detection_probability: dimension mismatch");
  if ((code.projector * state - state).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("detection_probability: state is not in the codespace");
  }
  double total = 0;
  for (const auto& e : errors) {
    require_dim(code, e.op, "detection_probability");
    total += (e.op * state).squaredNorm();
  }
  return total;
}

double detection_probability(const QuantumCode& code, std::span<const LabeledOperator> errors)
{
  return 0.5 * (detection_probability(code, errors, code.zero_logical) +
                detection_probability(code, errors, code.one_logical));
}

}  // namespace qecwb
