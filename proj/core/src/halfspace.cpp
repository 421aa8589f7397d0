#include "hyperpotential/halfspace.hpp"

#include "hyperpotential/errors.hpp"
#include "hyperpotential/kernels.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace hyperpotential {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area_d(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

void check_k(int k) {
  if (k < -3 || k > 2) {
    throw OutOfRange("potential index " + std::to_string(k) + " outside [-3, 2]");
  }
}

// Smooth integrand pieces of F_m.
double gk_integral(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 6, 1e-12);
}

// r^-m F_m(r / x0), continuous at r = 0 with value x0^-m / m.
double scaled_F(int m, double x0, double r) {
  const double v = r / x0;
  if (v < 1e-2) {
    // F_m(v) / v^m = sum_k binom(-(m+1)/2, k) v^(2k) / (m + 2k)
    double c = 1.0;
    double v2k = 1.0;
    double sum = 0.0;
    for (int k = 0; k < 5; ++k) {
      sum += c * v2k / (m + 2 * k);
      c *= -((m + 1) / 2.0 + k) / (k + 1);
      v2k *= v * v;
    }
    return sum * std::pow(x0, -m);
  }
  return std::pow(r, -m) * F_profile(m, v);
}

} // namespace

double HalfSpacePoint::radius() const {
  double s = x0 * x0;
  for (double v : x) {
    s += v * v;
  }
  return std::sqrt(s);
}

const char* to_string(PotentialFamily f) {
  switch (f) {
  case PotentialFamily::A:
    return "A";
  case PotentialFamily::B:
    return "B";
  case PotentialFamily::C:
    return "C";
  }
  return "?";
}

std::string PotentialId::str() const { return std::string(to_string(family)) + "_" + std::to_string(k); }

int minimum_dimension(const PotentialId& id) {
  check_k(id.k);
  const int a_min = id.k == 2 ? 4 : id.k == 1 ? 3 : 2;
  const int b_min = id.k == 2 ? 3 : 2;
  switch (id.family) {
  case PotentialFamily::A:
    return a_min;
  case PotentialFamily::B:
    return b_min;
  case PotentialFamily::C:
    return std::max(a_min, b_min);
  }
  return 2;
}

double F_profile_at_infinity(int m) {
  if (m < 1) {
    throw DimensionTooSmall("F_m needs m >= 1");
  }
  return std::sqrt(kPi) / 2.0 * std::tgamma(m / 2.0) / std::tgamma((m + 1) / 2.0);
}

double F_profile(int m, double v) {
  if (m < 1) {
    throw DimensionTooSmall("F_m needs m >= 1");
  }
  if (!(v >= 0.0)) {
    throw OutOfRange("F_m needs v >= 0");
  }
  if (std::isinf(v)) {
    return F_profile_at_infinity(m);
  }
  const double e = (m + 1) / 2.0;
  if (v <= 1.0) {
    return gk_integral([&](double t) { return std::pow(t, m - 1) * std::pow(1.0 + t * t, -e); }, 0.0, v);
  }
  // Tail after eta = 1/u: int_0^(1/v) (1 + u^2)^(-(m+1)/2) du.
  return F_profile_at_infinity(m) - gk_integral([&](double u) { return std::pow(1.0 + u * u, -e); }, 0.0, 1.0 / v);
}

RadialProfile potential_profile(int k, int m, double x0, double r) {
  check_k(k);
  if (!(x0 > 0.0)) {
    throw OutOfRange("potentials live on x0 > 0");
  }
  const double s = sphere_area_d(m + 1);
  const double R2 = x0 * x0 + r * r;
  const double R = std::sqrt(R2);
  const double mp = m + 1.0;
  switch (k) {
  case -1:
    return {2.0 / s * x0 * std::pow(R, -m - 1), -2.0 / s * std::pow(R, -m - 1)};
  case -2:
    return {2.0 / s * (std::pow(R, -m - 1) - mp * x0 * x0 * std::pow(R, -m - 3)),
            2.0 / s * mp * x0 * std::pow(R, -m - 3)};
  case -3:
    return {2.0 / s * (-3.0 * mp * x0 * std::pow(R, -m - 3) + mp * (m + 3) * x0 * x0 * x0 * std::pow(R, -m - 5)),
            -2.0 / s * (-mp * std::pow(R, -m - 3) + mp * (m + 3) * x0 * x0 * std::pow(R, -m - 5))};
  case 0: {
    const double a = m >= 2 ? -2.0 / ((m - 1) * s) * std::pow(R, 1 - m) : 0.0;
    return {a, 2.0 / s * scaled_F(m, x0, r)};
  }
  case 1: {
    const double a = m >= 3 ? 2.0 / ((m - 1) * s) * scaled_F(m - 2, x0, r) : 0.0;
    return {a, 2.0 / s * x0 * scaled_F(m, x0, r) - 2.0 / ((m - 1) * s) * std::pow(R, 1 - m)};
  }
  case 2: {
    const double a = m >= 4 ? 2.0 / ((m - 1) * s) * x0 * scaled_F(m - 2, x0, r) -
                                  2.0 / ((m - 1) * (m - 3) * s) * std::pow(R, 3 - m)
                            : 0.0;
    const double b =
        m >= 3 ? 1.0 / s * R2 * scaled_F(m, x0, r) - (m - 3.0) / (m - 1.0) / s * scaled_F(m - 2, x0, r) : 0.0;
    return {a, b};
  }
  default:
    break;
  }
  return {};
}

Multivector evaluate(const PotentialId& id, const HalfSpacePoint& p) {
  const int m = p.dim();
  check_k(id.k);
  if (m < minimum_dimension(id)) {
    throw DimensionTooSmall(id.str() + " needs m >= " + std::to_string(minimum_dimension(id)));
  }
  if (m + 1 > Multivector::kMaxDim) {
    throw OutOfRange("dimension too large for the multivector representation");
  }
  const RadialProfile prof = potential_profile(id.k, m, p.x0, [&] {
    double s = 0.0;
    for (double v : p.x) {
      s += v * v;
    }
    return std::sqrt(s);
  }());
  const int n = m + 1;
  const Multivector A = Multivector::scalar(n, prof.a);
  const Multivector B = Multivector::space_vector(n, p.x) * prof.b;
  switch (id.family) {
  case PotentialFamily::A:
    return A;
  case PotentialFamily::B:
    return B;
  case PotentialFamily::C:
    return 0.5 * A + 0.5 * (e0_bar(n) * B);
  }
  return A;
}

namespace {

// Function acted on by D / Dbar: e0bar B_k for family B, the potential itself
// otherwise.
Multivector operand(const PotentialId& id, const HalfSpacePoint& p) {
  const Multivector v = evaluate(id, p);
  if (id.family == PotentialFamily::B) {
    return e0_bar(p.dim() + 1) * v;
  }
  return v;
}

Multivector partial(const PotentialId& id, const HalfSpacePoint& p, int axis, double h) {
  HalfSpacePoint q = p;
  double& c = axis == 0 ? q.x0 : q.x[axis - 1];
  const double c0 = c;
  c = c0 + h;
  const Multivector plus = operand(id, q);
  c = c0 - h;
  const Multivector minus = operand(id, q);
  return (plus - minus) * (1.0 / (2.0 * h));
}

Multivector cr_at_step(const PotentialId& id, const HalfSpacePoint& p, double h, bool conjugate) {
  const int n = p.dim() + 1;
  Multivector spatial(n);
  for (int j = 1; j < n; ++j) {
    spatial += Multivector::basis(n, j) * partial(id, p, j, h);
  }
  const Multivector e = e0_bar(n) * spatial;
  const Multivector d0 = partial(id, p, 0, h);
  return 0.5 * (conjugate ? d0 - e : d0 + e);
}

} // namespace

Multivector cauchy_riemann(const PotentialId& id, const HalfSpacePoint& p, double h, bool conjugate, bool richardson) {
  if (!(h > 0.0) || p.x0 <= 3.0 * h || p.radius() <= 3.0 * h) {
    throw StepTooLarge("step " + std::to_string(h) + " too large for a point at x0 = " + std::to_string(p.x0));
  }
  const Multivector d1 = cr_at_step(id, p, h, conjugate);
  if (!richardson) {
    return d1;
  }
  const Multivector d2 = cr_at_step(id, p, 2.0 * h, conjugate);
  return (4.0 * d1 - d2) * (1.0 / 3.0);
}

double monogenicity_residual(const PotentialId& id, const HalfSpacePoint& p, double h, bool richardson) {
  if (id.family != PotentialFamily::C) {
    throw OutOfRange("monogenicity is a property of C_k");
  }
  return cauchy_riemann(id, p, h, false, richardson).norm();
}

double dbar_residual(const PotentialId& id, const HalfSpacePoint& p, double h, bool richardson) {
  if (id.k - 1 < -3) {
    throw OutOfRange("Dbar of " + id.str() + " leaves the implemented range");
  }
  const Multivector lhs = cauchy_riemann(id, p, h, true, richardson);
  const Multivector rhs = evaluate({PotentialFamily::C, id.k - 1}, p);
  return (lhs - rhs).norm();
}

double pair_potential(const PotentialId& id, int m, double x0, const TestFunction& phi) {
  if (id.family == PotentialFamily::C) {
    throw OutOfRange("pair the A and B parts separately");
  }
  if (m < minimum_dimension(id)) {
    throw DimensionTooSmall(id.str() + " needs m >= " + std::to_string(minimum_dimension(id)));
  }
  const bool vec = id.family == PotentialFamily::B;
  if (vec != phi.is_vector()) {
    return 0.0; // odd integrand
  }
  const double weight = vec ? sphere_area_d(m) / m : sphere_area_d(m);
  const int power = vec ? m + 1 : m - 1;
  const auto f = [&](double r) {
    if (r <= 0.0) {
      return 0.0;
    }
    const RadialProfile prof = potential_profile(id.k, m, x0, r);
    const double v = (vec ? prof.b : prof.a) * phi.radial(r) * std::pow(r, power);
    return std::isfinite(v) ? v : 0.0;
  };
  // The inner F_m quadrature carries ~1e-14 noise; a tighter request only
  // makes tanh-sinh refine to its depth limit.
  const double tol = 1e-10;
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  double total = 0.0;
  double a = 0.0;
  for (double b : {x0, 1.0}) {
    if (b > a) {
      total += ts.integrate(f, a, b, tol);
      a = b;
    }
  }
  total += es.integrate(f, a, std::numeric_limits<double>::infinity(), tol);
  return weight * total;
}

namespace {

// Value at 0 of the interpolating polynomial through (xs, ys).
double neville_at_zero(const std::vector<double>& xs, std::vector<double> ys) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xa = xs[i];
      const double xb = xs[i + level];
      ys[i] = (xa * ys[i + 1] - xb * ys[i]) / (xa - xb);
    }
  }
  return ys[0];
}

} // namespace

BoundaryLimitReport boundary_limit_test(const PotentialId& id, int m, const TestFunction& phi, std::vector<double> x0s) {
  if (id.family == PotentialFamily::C) {
    throw OutOfRange("boundary limits are taken for A_k and B_k");
  }
  if (x0s.empty()) {
    for (int j = 1; j <= 8; ++j) {
      x0s.push_back(std::ldexp(1.0, -j));
    }
  }
  BoundaryLimitReport rep;
  rep.id = id;
  rep.dim = m;
  rep.x0s = x0s;
  const bool vec = id.family == PotentialFamily::B;
  const ExactExpr limit =
      boundary_value({vec ? BoundarySide::B : BoundarySide::A, static_cast<std::int64_t>(id.k)}, m);
  const PairingResult expected = pair_gaussian(limit, phi);
  rep.expected = vec ? expected.vector(phi.component).real() : expected.scalar().real();
  for (double x0 : x0s) {
    const double v = pair_potential(id, m, x0, phi);
    rep.values.push_back(v);
    rep.errors.push_back(std::abs(v - rep.expected));
  }
  rep.extrapolated = neville_at_zero(rep.x0s, rep.values);
  rep.limit_error = std::abs(rep.extrapolated - rep.expected);
  // Least-squares slope over the points with a measurable error.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  const double floor = 1e-13 * std::max(1.0, std::abs(rep.expected));
  for (std::size_t i = 0; i < rep.x0s.size(); ++i) {
    if (rep.errors[i] > floor) {
      const double lx = std::log(rep.x0s[i]);
      const double ly = std::log(rep.errors[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
  }
  if (n >= 2) {
    rep.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep;
}

double poisson_normalization(int m, double x0) {
  const auto one = TestFunction::custom([](double) { return 1.0; }, {1.0});
  return pair_potential({PotentialFamily::A, -1}, m, x0, one);
}

} // namespace hyperpotential
