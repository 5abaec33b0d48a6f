#include "qecwb/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace qecwb {

namespace {

Complex code_trace(const QuantumCode& code, const Matrix& ra)
{
  return code.zero_logical.dot(ra * code.zero_logical) + code.one_logical.dot(ra * code.one_logical);
}

std::vector<std::pair<std::size_t, std::size_t>> above(const std::vector<FidelityTerm>& terms, double tol)
{
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& t : terms) {
    if (t.contribution > tol) out.emplace_back(t.k, t.l);
  }
  return out;
}

}  // namespace

FidelityResult entanglement_fidelity(const QuantumCode& code, const RecoveryOperation& recovery,
                                     const KrausChannel& channel)
{
  if (channel.dim() != code.dim() || recovery.dim() != code.dim()) {
    throw std::invalid_argument("entanglement_fidelity: dimension mismatch");
  }
  if (!recovery.complete()) {
    throw std::invalid_argument("entanglement_fidelity: recovery is not trace preserving");
  }
  FidelityResult result;
  double sum = 0;
  for (std::size_t k = 0; k < recovery.ops.size(); ++k) {
    for (std::size_t l = 0; l < channel.kraus.size(); ++l) {
      const Complex tr = code_trace(code, recovery.ops[k].op * channel.kraus[l].op);
      const double contribution = std::norm(tr) / 4.0;
      result.terms.push_back({k, l, tr, contribution});
      sum += contribution;
    }
  }
  if (recovery.leftover) {
    const std::size_t k = recovery.ops.size();
    for (std::size_t l = 0; l < channel.kraus.size(); ++l) {
      const Complex tr = code_trace(code, *recovery.leftover * channel.kraus[l].op);
      const double contribution = std::norm(tr) / 4.0;
      result.leftover_terms.push_back({k, l, tr, contribution});
      sum += contribution;
    }
  }
  result.value = sum;
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> nonvanishing_terms(const FidelityResult& result, double tol)
{
  return above(result.terms, tol);
}

std::vector<std::pair<std::size_t, std::size_t>> nonvanishing_leftover_terms(const FidelityResult& result,
                                                                            double tol)
{
  return above(result.leftover_terms, tol);
}

double baseline_no_qec(const KrausChannel& channel)
{
  if (channel.n_qubits != 1) throw std::invalid_argument("baseline_no_qec: expected a single-qubit channel");
  double sum = 0;
  for (const auto& k : channel.kraus) sum += std::norm(k.op.trace());
  return sum / 4.0;
}

ThresholdReport threshold_analysis(const Curve& code_fidelity, const Curve& baseline, int samples,
                                   double bisection_tol)
{
  if (samples < 2) throw std::invalid_argument("threshold_analysis: need at least two samples");
  constexpr double noise = 1e-13;
  ThresholdReport report;

  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (samples - 1);

  bool inside = false;
  double start = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = grid[i];
    const bool useful = code_fidelity(p) >= baseline(p) - noise;
    if (useful && !inside) {
      inside = true;
      start = p;
    }
    if (!useful && inside) {
      report.coding_useful.push_back({start, grid[i - 1]});
      inside = false;
    }
  }
  if (inside) report.coding_useful.push_back({start, grid.back()});
  report.useful_everywhere = report.coding_useful.size() == 1 && report.coding_useful.front().lo == 0.0 &&
                             report.coding_useful.front().hi == 1.0;

  // margin(p) = p - (1 - F(p)) >= 0 while coding keeps the failure rate below p
  auto margin = [&](double p) { return p - (1.0 - code_fidelity(p)); };
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (margin(grid[i]) < -noise) {
      double lo = grid[i - 1];
      double hi = grid[i];
      while (hi - lo > bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        if (margin(mid) < 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      report.failure_threshold = 0.5 * (lo + hi);
      break;
    }
  }
  return report;
}

SeriesEstimate second_order_coeff(const Curve& curve, std::span<const double> gammas)
{
  if (gammas.size() < 3) throw std::invalid_argument("second_order_coeff: need at least three samples");
  double gmax = 0;
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1e-2)) throw std::invalid_argument("second_order_coeff: samples must lie in (0, 1e-2]");
    gmax = std::max(gmax, g);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(gammas.size());
  const Eigen::Index degree = n >= 4 ? 3 : 2;

  // scaled abscissa keeps the Vandermonde matrix well conditioned
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd values(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = gammas[static_cast<std::size_t>(i)] / gmax;
    double power = 1.0;
    for (Eigen::Index d = 0; d <= degree; ++d) {
      design(i, d) = power;
      power *= t;
    }
    values(i) = curve(gammas[static_cast<std::size_t>(i)]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-12 * sv(0)) {
    throw std::invalid_argument("second_order_coeff: samples are too close together for the fit");
  }
  const Eigen::VectorXd coeff = svd.solve(values);

  SeriesEstimate est;
  est.c0 = coeff(0);
  est.c1 = coeff(1) / gmax;
  est.c2 = coeff(2) / (gmax * gmax);
  est.c3 = degree == 3 ? coeff(3) / (gmax * gmax * gmax) : 0.0;
  est.residual = (design * coeff - values).cwiseAbs().maxCoeff();
  est.gammas_used.assign(gammas.begin(), gammas.end());
  return est;
}

double bitflip_code_fidelity(double p)
{
  static const QuantumCode code = repetition3();
  static const RecoveryOperation rec = repetition_recovery();
  return entanglement_fidelity(code, rec, enlarge(bitflip_single(p), 3)).value;
}

double bitflip_baseline(double p)
{
  return baseline_no_qec(bitflip_single(p));
}

double ad_qec_fidelity(double gamma)
{
  static const QuantumCode code = leung4();
  return entanglement_fidelity(code, standard_ad_recovery(gamma), enlarge(ad_single(gamma), 4)).value;
}

double ad_cp_fidelity(double gamma)
{
  static const QuantumCode code = leung4();
  static const RecoveryOperation rec = cp_recovery();
  return entanglement_fidelity(code, rec, enlarge(ad_single(gamma), 4)).value;
}

double ad_fletcher_fidelity(double gamma, Complex a, Complex b)
{
  static const QuantumCode code = leung4();
  return entanglement_fidelity(code, fletcher_recovery(a, b), enlarge(ad_single(gamma), 4)).value;
}

double ad_baseline(double gamma)
{
  return baseline_no_qec(ad_single(gamma));
}

}  // namespace qecwb
