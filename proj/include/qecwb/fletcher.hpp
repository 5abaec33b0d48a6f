#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qecwb {

struct FletcherParams {
  double a_re = 0;
  double a_im = 0;
  double b_re = 0;
  double b_im = 0;
  double radius = 1;
};

enum class OptimumMethod { closed_form, numeric };

struct Optimum {
  double a_bar = 0;
  double b_bar = 0;
  double f_star = 0;
  double theta = 0;  // atan2(b_bar, a_bar)
  OptimumMethod method = OptimumMethod::closed_form;
};

/// Part of the Fletcher-recovery fidelity that does not depend on (a, b).
template <typename Scalar>
Scalar fletcher_base_fidelity(Scalar gamma)
{
  const Scalar c = Scalar(1) - gamma;
  const Scalar c2 = c * c;
  const Scalar two_minus = Scalar(2) - gamma;
  return ((Scalar(1) + c2 * c2) / Scalar(2) + c2 + Scalar(2) * gamma * c * two_minus * two_minus +
          Scalar(2) * gamma * gamma * c2 + gamma * gamma * gamma * gamma / Scalar(2)) /
         Scalar(4);
}

/// Fidelity as a function of the real parts only; no constraint check.
template <typename Scalar>
Scalar fletcher_fidelity_real(Scalar a_re, Scalar b_re, Scalar gamma)
{
  const Scalar c = Scalar(1) - gamma;
  const Scalar linear = (Scalar(2) * a_re * c + Scalar(2) * b_re * c * c * c) /
                        (Scalar(4) * std::sqrt(Scalar(2)));
  return fletcher_base_fidelity(gamma) + linear;
}

/// Throws std::invalid_argument unless |a|^2 + |b|^2 = radius^2 within 1e-12
/// and 0 < radius <= 1.
double fletcher_fidelity_closed(const FletcherParams& params, double gamma);

Optimum closed_form_optimum(double gamma);

/// Bracket on a `resolution`-point grid in theta over [0, pi/2], then refine
/// by golden-section search in extended precision.
Optimum numeric_optimum(double gamma, int resolution = 1000);

struct RadiusPoint {
  double r = 0;
  double a_bar = 0;
  double b_bar = 0;
  double f_star = 0;
};

std::vector<RadiusPoint> radius_sweep(double gamma, const std::vector<double>& radii);

/// a - 2 a gamma - sqrt(1 - a^2) + a gamma^2
double stationarity_residual(double a_re, double gamma);

struct SamplingCertificate {
  double f_star = 0;
  double max_sampled = 0;
  std::size_t samples = 0;
  bool ok = false;  // max_sampled <= f_star + slack
};

/// Draws random complex (a, b) on the unit sphere and checks none beats the
/// closed-form optimum.
SamplingCertificate sampling_certificate(double gamma, std::size_t samples, std::uint64_t seed,
                                         double slack = 1e-12);

struct FletcherReport {
  double gamma = 0;
  double a_bar = 0;
  double b_bar = 0;
  double f_star_closed = 0;
  double f_star_numeric = 0;
  double delta = 0;  // |f_star_closed - f_star_numeric|
};

FletcherReport fletcher_report(double gamma, int resolution = 1000);

}  // namespace qecwb
