#pragma once

// Reference values computed independently of the library: std::tgamma for
// Gamma, direct radial quadrature for pairings.

#include "hyperpotential/coeffring.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace ref {

inline constexpr double pi = std::numbers::pi;

inline double sphere(int d) { return 2.0 * std::pow(pi, d / 2.0) / std::tgamma(d / 2.0); }

// pi^(s/2) / Gamma(s/2)
inline double norm(double s) { return std::pow(pi, s / 2.0) / std::tgamma(s / 2.0); }

// int_0^inf f(r) dr for f smooth on (0, inf) and integrable at both ends.
template <class F>
double half_line(F&& f) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const auto g = [&](double r) {
    const double v = r > 0.0 ? f(r) : 0.0;
    return std::isfinite(v) ? v : 0.0;
  };
  return ts.integrate(g, 0.0, 1.0, 1e-13) + es.integrate(g, 1.0, std::numeric_limits<double>::infinity(), 1e-13);
}

// <T*_lambda, exp(-t r^2)> for lambda > -m by direct radial integration.
inline double t_gaussian(int m, double lambda, double t = 1.0) {
  return norm(lambda + m) * sphere(m) * half_line([&](double r) { return std::pow(r, lambda + m - 1) * std::exp(-t * r * r); });
}

// e_j component of <U*_lambda, x_j exp(-t r^2)> for lambda > -m-1.
inline double u_moment(int m, double lambda, double t = 1.0) {
  return norm(lambda + m + 1) * sphere(m) / m *
         half_line([&](double r) { return std::pow(r, lambda + m) * std::exp(-t * r * r); });
}

inline bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300}); }

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

} // namespace ref
