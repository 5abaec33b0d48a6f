#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qecwb {

inline std::vector<double> linspace(double lo, double hi, int n)
{
  if (n < 1) throw std::invalid_argument("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  }
  out.back() = hi;
  return out;
}

/// n points log-spaced between lo and hi, endpoints exact.
inline std::vector<double> logspace(double lo, double hi, int n)
{
  if (!(lo > 0.0 && hi > 0.0)) throw std::invalid_argument("logspace: bounds must be positive");
  if (n < 1) throw std::invalid_argument("logspace: need at least one point");
  if (n == 1) return {lo};
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = std::pow(10.0, a + (b - a) * k / (n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

/// Nine log-spaced damping rates over [1e-4, 1e-2].
inline std::vector<double> default_gamma_window()
{
  return logspace(1e-4, 1e-2, 9);
}

}  // namespace qecwb
