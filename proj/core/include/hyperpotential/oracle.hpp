#pragma once

#include "hyperpotential/distcalc.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperpotential {

enum class TestFunctionKind { Gaussian, GaussianMoment, PolyGaussian, Custom };

// Test function on R^m, radial up to an optional x_j factor:
//   Gaussian        exp(-t r^2)
//   GaussianMoment  x_j exp(-t r^2)
//   PolyGaussian    r^(2p) exp(-t r^2)
//   Custom          f(r), with Taylor coefficients of f at 0 up to its
//                   smoothness order
struct TestFunction {
  TestFunctionKind kind{TestFunctionKind::Gaussian};
  double scale{1.0};
  int component{1};
  int power{0};
  std::function<double(double)> profile;
  std::vector<double> taylor;

  static TestFunction gaussian(double t = 1.0);
  static TestFunction moment(int j, double t = 1.0);
  static TestFunction poly(int p, double t = 1.0);
  static TestFunction custom(std::function<double(double)> f, std::vector<double> taylor_coeffs);

  bool is_vector() const { return kind == TestFunctionKind::GaussianMoment; }
  // g(r) with phi = g(r), or phi = x_j g(r) for the moment kind.
  double radial(double r) const;
  // Coefficient of r^k in radial(r); nullopt past the known order.
  std::optional<double> taylor_coeff(int k) const;
  // Value at a point of R^m.
  double operator()(std::span<const double> x) const;
  std::string str() const;
};

struct PairingResult {
  NumericScalar scalar_part{};
  // e_1..e_m components.
  std::vector<NumericScalar> vector_part;
  // Set when a subtracted moment sat on a pole and was dropped.
  bool pole_on_grid{false};

  Complex scalar() const { return scalar_part.value(); }
  Complex vector(int j) const { return vector_part.at(j - 1).value(); }
  double max_abs() const;
};

// max |a - b| <= rel_tol * max(|a|, |b|) over all components.
bool pairings_agree(const PairingResult& a, const PairingResult& b, double rel_tol);
double pairing_relative_error(const PairingResult& a, const PairingResult& b);

// Closed-form pairing against a Gaussian-class test function (Gaussian,
// GaussianMoment or PolyGaussian). Valid for every degree, delta degrees
// included, and for logarithmic atoms.
PairingResult pair_gaussian(const NumericExpr& e, const TestFunction& phi = TestFunction::gaussian());
PairingResult pair_gaussian(const ExactExpr& e, const TestFunction& phi = TestFunction::gaussian());

// Finite-part radial quadrature: the Taylor polynomial of the profile up to
// `subtraction_order` is removed on [0, 1] and its moments are added back
// analytically; a moment at a pole contributes zero and sets pole_on_grid.
// Throws QuadratureFailure when the tolerance is not met and OutOfRange for
// degrees on the delta grid or a subtraction order too low to regularize.
PairingResult pair_quadrature(const NumericExpr& e, const TestFunction& phi, int subtraction_order,
                              double rel_tol = 1e-10);

// Smallest subtraction order that regularizes every atom of e against phi.
int minimal_subtraction_order(const NumericExpr& e, const TestFunction& phi);

// Pairing of the unit atom T*_degree (degree = -m-2l) or U*_degree
// (degree = -m-2l-1) evaluated as a derivative of delta at the origin, with
// central differences at steps h, 2h, 4h and two Richardson passes.
PairingResult delta_derivative(int m, std::int64_t degree, const TestFunction& phi, double h = 1e-2);

// <T*_alpha * T*_beta, exp(-r^2)> by direct integration over R^m x R^m,
// reduced to a double radial integral. Needs alpha, beta > -m and
// alpha + beta + m < 0.
double convolution_brute_force(int m, double alpha, double beta);

} // namespace hyperpotential
