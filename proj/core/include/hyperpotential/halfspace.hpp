#pragma once

#include "hyperpotential/cliffordnum.hpp"
#include "hyperpotential/oracle.hpp"

#include <string>
#include <vector>

namespace hyperpotential {

// Point x0 e_0 + x of the upper half-space R^{m+1}_+, x in R^m.
struct HalfSpacePoint {
  double x0{1.0};
  std::vector<double> x;

  int dim() const { return static_cast<int>(x.size()); }
  double radius() const;
};

enum class PotentialFamily { A, B, C };

const char* to_string(PotentialFamily f);

// A_k, B_k or C_k = A_k / 2 + e0bar B_k / 2 for k in [-3, 2].
struct PotentialId {
  PotentialFamily family{PotentialFamily::C};
  int k{-1};
  std::string str() const;
};

// Smallest m for which the closed form of the potential exists.
int minimum_dimension(const PotentialId& id);

// F_m(v) = int_0^v eta^(m-1) / (1 + eta^2)^((m+1)/2) d eta, m >= 1, v >= 0;
// v = +inf gives the closed form.
double F_profile(int m, double v);
double F_profile_at_infinity(int m);

// Radial profiles: A_k(x0, x) = a(x0, |x|) and B_k(x0, x) = x b(x0, |x|).
struct RadialProfile {
  double a{0.0};
  double b{0.0};
};

RadialProfile potential_profile(int k, int m, double x0, double r);

// Value in R_{0,m+1}; throws OutOfRange for k outside [-3, 2] or x0 <= 0 and
// DimensionTooSmall below minimum_dimension.
Multivector evaluate(const PotentialId& id, const HalfSpacePoint& p);

// Finite-difference D F = (d_0 + e0bar d) F / 2 (or its conjugate Dbar with
// the minus sign), F = evaluate(id, .). Central differences at step h, with
// one Richardson pass when `richardson` is set. For family B the operator is
// applied to e0bar B_k. Throws StepTooLarge when p is within 3h of the
// boundary or of the origin.
Multivector cauchy_riemann(const PotentialId& id, const HalfSpacePoint& p, double h, bool conjugate,
                           bool richardson = true);

// |D C_k| at p (family C only).
double monogenicity_residual(const PotentialId& id, const HalfSpacePoint& p, double h = 1e-3,
                             bool richardson = true);

// |Dbar X_k - C_{k-1}| at p with X_k = A_k, e0bar B_k or C_k.
double dbar_residual(const PotentialId& id, const HalfSpacePoint& p, double h = 1e-3, bool richardson = true);

// <A_k(x0, .), phi> for radial phi, or the e_1..e_m moment component of
// <B_k(x0, .), phi> for a moment test function, by radial quadrature.
double pair_potential(const PotentialId& id, int m, double x0, const TestFunction& phi);

struct BoundaryLimitReport {
  PotentialId id;
  int dim{0};
  std::vector<double> x0s;
  std::vector<double> values;
  // |values[i] - expected|
  std::vector<double> errors;
  // Polynomial extrapolation of values to x0 = 0.
  double extrapolated{0.0};
  // Gaussian pairing of the symbolic boundary value a_k or b_k.
  double expected{0.0};
  double limit_error{0.0};
  // Least-squares slope of log(error) against log(x0).
  double fitted_order{0.0};
};

// Pairs A_k (radial phi) or B_k (moment phi) at each x0 of a decreasing
// sequence and extrapolates to the boundary. Default sequence 2^-1..2^-8.
BoundaryLimitReport boundary_limit_test(const PotentialId& id, int m, const TestFunction& phi,
                                        std::vector<double> x0s = {});

// int_{R^m} A_{-1}(x0, x) dx.
double poisson_normalization(int m, double x0);

} // namespace hyperpotential
