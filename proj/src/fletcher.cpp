#include "qecwb/fletcher.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace qecwb {

namespace {

void require_gamma(double gamma)
{
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("fletcher: gamma must lie in [0, 1)");
}

}  // namespace

double fletcher_fidelity_closed(const FletcherParams& params, double gamma)
{
  require_gamma(gamma);
  if (!(params.radius > 0.0 && params.radius <= 1.0)) {
    throw std::invalid_argument("fletcher_fidelity_closed: radius must lie in (0, 1]");
  }
  const double norm2 = params.a_re * params.a_re + params.a_im * params.a_im +
                       params.b_re * params.b_re + params.b_im * params.b_im;
  if (std::abs(norm2 - params.radius * params.radius) > 1e-12) {
    throw std::invalid_argument("fletcher_fidelity_closed: parameters violate the sphere constraint");
  }
  return fletcher_fidelity_real(params.a_re, params.b_re, gamma);
}

Optimum closed_form_optimum(double gamma)
{
  require_gamma(gamma);
  const double c2 = (1.0 - gamma) * (1.0 - gamma);
  const double norm = std::sqrt(1.0 + c2 * c2);
  Optimum o;
  o.a_bar = 1.0 / norm;
  o.b_bar = c2 / norm;
  o.theta = std::atan2(o.b_bar, o.a_bar);
  o.f_star = fletcher_fidelity_real(o.a_bar, o.b_bar, gamma);
  o.method = OptimumMethod::closed_form;
  return o;
}

Optimum numeric_optimum(double gamma, int resolution)
{
  require_gamma(gamma);
  if (resolution < 100) throw std::invalid_argument("numeric_optimum: resolution must be at least 100");
  using Real = long double;
  const Real g = gamma;
  const Real half_pi = std::numbers::pi_v<Real> / 2;
  auto objective = [&](Real theta) { return fletcher_fidelity_real(std::cos(theta), std::sin(theta), g); };

  int best = 0;
  Real best_value = objective(0);
  for (int i = 1; i < resolution; ++i) {
    const Real theta = half_pi * i / (resolution - 1);
    const Real value = objective(theta);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  Real lo = half_pi * std::max(best - 1, 0) / (resolution - 1);
  Real hi = half_pi * std::min(best + 1, resolution - 1) / (resolution - 1);

  const Real inv_phi = (std::sqrt(Real(5)) - 1) / 2;
  Real x1 = hi - inv_phi * (hi - lo);
  Real x2 = lo + inv_phi * (hi - lo);
  Real f1 = objective(x1);
  Real f2 = objective(x2);
  while (hi - lo > Real(1e-15)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  const Real theta = (lo + hi) / 2;
  Optimum o;
  o.theta = static_cast<double>(theta);
  o.a_bar = static_cast<double>(std::cos(theta));
  o.b_bar = static_cast<double>(std::sin(theta));
  o.f_star = fletcher_fidelity_real(o.a_bar, o.b_bar, gamma);
  o.method = OptimumMethod::numeric;
  return o;
}

std::vector<RadiusPoint> radius_sweep(double gamma, const std::vector<double>& radii)
{
  const Optimum unit = closed_form_optimum(gamma);
  std::vector<RadiusPoint> out;
  for (double r : radii) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("radius_sweep: radii must lie in (0, 1]");
    RadiusPoint pt;
    pt.r = r;
    pt.a_bar = r * unit.a_bar;
    pt.b_bar = r * unit.b_bar;
    pt.f_star = fletcher_fidelity_real(pt.a_bar, pt.b_bar, gamma);
    out.push_back(pt);
  }
  return out;
}

double stationarity_residual(double a_re, double gamma)
{
  return a_re - 2.0 * a_re * gamma - std::sqrt(1.0 - a_re * a_re) + a_re * gamma * gamma;
}

SamplingCertificate sampling_certificate(double gamma, std::size_t samples, std::uint64_t seed, double slack)
{
  SamplingCertificate cert;
  cert.f_star = closed_form_optimum(gamma).f_star;
  cert.samples = samples;
  cert.max_sampled = -std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    double x[4];
    double n2 = 0;
    for (double& xi : x) {
      xi = normal(rng);
      n2 += xi * xi;
    }
    const double n = std::sqrt(n2);
    const FletcherParams p{x[0] / n, x[1] / n, x[2] / n, x[3] / n, 1.0};
    cert.max_sampled = std::max(cert.max_sampled, fletcher_fidelity_closed(p, gamma));
  }
  cert.ok = cert.max_sampled <= cert.f_star + slack;
  return cert;
}

FletcherReport fletcher_report(double gamma, int resolution)
{
  const Optimum closed = closed_form_optimum(gamma);
  const Optimum numeric = numeric_optimum(gamma, resolution);
  FletcherReport r;
  r.gamma = gamma;
  r.a_bar = closed.a_bar;
  r.b_bar = closed.b_bar;
  r.f_star_closed = closed.f_star;
  r.f_star_numeric = numeric.f_star;
  r.delta = std::abs(closed.f_star - numeric.f_star);
  return r;
}

}  // namespace qecwb
