#include "hyperpotential/oracle.hpp"

#include "hyperpotential/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hyperpotential {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) { return std::tgamma(n + 1.0); }

} // namespace

// --- test functions ----------------------------------------------------------

TestFunction TestFunction::gaussian(double t) {
  TestFunction f;
  f.kind = TestFunctionKind::Gaussian;
  f.scale = t;
  return f;
}

TestFunction TestFunction::moment(int j, double t) {
  TestFunction f;
  f.kind = TestFunctionKind::GaussianMoment;
  f.component = j;
  f.scale = t;
  return f;
}

TestFunction TestFunction::poly(int p, double t) {
  TestFunction f;
  f.kind = TestFunctionKind::PolyGaussian;
  f.power = p;
  f.scale = t;
  return f;
}

TestFunction TestFunction::custom(std::function<double(double)> f, std::vector<double> taylor_coeffs) {
  TestFunction r;
  r.kind = TestFunctionKind::Custom;
  r.profile = std::move(f);
  r.taylor = std::move(taylor_coeffs);
  return r;
}

double TestFunction::radial(double r) const {
  switch (kind) {
  case TestFunctionKind::Gaussian:
  case TestFunctionKind::GaussianMoment:
    return std::exp(-scale * r * r);
  case TestFunctionKind::PolyGaussian:
    return std::pow(r, 2 * power) * std::exp(-scale * r * r);
  case TestFunctionKind::Custom:
    return profile(r);
  }
  return 0.0;
}

std::optional<double> TestFunction::taylor_coeff(int k) const {
  if (k < 0) {
    return 0.0;
  }
  if (kind == TestFunctionKind::Custom) {
    if (k < static_cast<int>(taylor.size())) {
      return taylor[k];
    }
    return std::nullopt;
  }
  const int shift = kind == TestFunctionKind::PolyGaussian ? 2 * power : 0;
  const int e = k - shift;
  if (e < 0 || e % 2 != 0) {
    return 0.0;
  }
  const int i = e / 2;
  return std::pow(-scale, i) / factorial(i);
}

double TestFunction::operator()(std::span<const double> x) const {
  double r2 = 0.0;
  for (double v : x) {
    r2 += v * v;
  }
  const double g = radial(std::sqrt(r2));
  if (kind == TestFunctionKind::GaussianMoment) {
    return x[component - 1] * g;
  }
  return g;
}

std::string TestFunction::str() const {
  std::ostringstream os;
  switch (kind) {
  case TestFunctionKind::Gaussian:
    os << "exp(-" << scale << " r^2)";
    break;
  case TestFunctionKind::GaussianMoment:
    os << "x_" << component << " exp(-" << scale << " r^2)";
    break;
  case TestFunctionKind::PolyGaussian:
    os << "r^" << 2 * power << " exp(-" << scale << " r^2)";
    break;
  case TestFunctionKind::Custom:
    os << "custom profile (order " << static_cast<int>(taylor.size()) - 1 << ")";
    break;
  }
  return os.str();
}

// --- pairing results ---------------------------------------------------------

double PairingResult::max_abs() const {
  double m = std::abs(scalar());
  for (const auto& v : vector_part) {
    m = std::max(m, std::abs(v.value()));
  }
  return m;
}

double pairing_relative_error(const PairingResult& a, const PairingResult& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  double diff = std::abs(a.scalar() - b.scalar());
  const std::size_t n = std::max(a.vector_part.size(), b.vector_part.size());
  for (std::size_t j = 0; j < n; ++j) {
    const Complex va = j < a.vector_part.size() ? a.vector_part[j].value() : Complex{};
    const Complex vb = j < b.vector_part.size() ? b.vector_part[j].value() : Complex{};
    diff = std::max(diff, std::abs(va - vb));
  }
  if (scale == 0.0) {
    return diff;
  }
  return diff / scale;
}

bool pairings_agree(const PairingResult& a, const PairingResult& b, double rel_tol) {
  return pairing_relative_error(a, b) <= rel_tol;
}

namespace {

PairingResult empty_result(int m) {
  PairingResult r;
  r.vector_part.assign(static_cast<std::size_t>(m), NumericScalar{});
  return r;
}

void accumulate(NumericScalar& slot, Complex v) { slot = NumericScalar::of(slot.value() + v); }

double sphere_area_d(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

Complex cpow(double base, Complex e) { return std::exp(e * std::log(base)); }

// (x)_p = x (x+1) ... (x+p-1)
Complex pochhammer(Complex x, int p) {
  Complex r = 1.0;
  for (int i = 0; i < p; ++i) {
    r *= x + static_cast<double>(i);
  }
  return r;
}

// pi^(s/2) / Gamma(s/2); zero on the poles of Gamma.
Complex normalization(Complex s) {
  const NumericScalar g = gamma_complex(s / 2.0);
  if (g.is_pole) {
    return 0.0;
  }
  return cpow(kPi, s / 2.0) / g.value();
}

void require_gaussian_class(const TestFunction& phi) {
  if (phi.kind == TestFunctionKind::Custom) {
    throw OutOfRange("closed-form pairing needs a Gaussian-class test function");
  }
}

} // namespace

PairingResult pair_gaussian(const NumericExpr& e, const TestFunction& phi) {
  require_gaussian_class(phi);
  const int m = e.dim();
  if (phi.is_vector() && (phi.component < 1 || phi.component > m)) {
    throw DimensionMismatch("moment component out of range");
  }
  PairingResult out = empty_result(m);
  const double t = phi.scale;
  const double sigma = sphere_area_d(m);
  const int p = phi.kind == TestFunctionKind::PolyGaussian ? phi.power : 0;
  for (const auto& a : e.atoms()) {
    const bool vec_atom = is_vector(a.kind);
    if (vec_atom != phi.is_vector()) {
      continue; // odd integrand
    }
    const Complex s = a.degree + static_cast<double>(m + (vec_atom ? 1 : 0));
    const Complex half = s / 2.0;
    const Complex base = cpow(kPi, half) * cpow(t, -half - static_cast<double>(p)) * pochhammer(half, p);
    Complex value;
    if (!is_log(a.kind)) {
      value = (vec_atom ? sigma / (2.0 * m) : sigma / 2.0) * base;
    } else {
      // d/ds of the plain pairing: the ln r weight brings psi(s/2 + p) - ln t.
      const double h = half.real() + p;
      value = (vec_atom ? sigma / m : sigma) * base * (digamma(h) - std::log(t)) / 4.0;
    }
    value *= a.coeff;
    if (vec_atom) {
      accumulate(out.vector_part[phi.component - 1], value);
    } else {
      accumulate(out.scalar_part, value);
    }
  }
  return out;
}

PairingResult pair_gaussian(const ExactExpr& e, const TestFunction& phi) { return pair_gaussian(to_numeric(e), phi); }

// --- finite-part quadrature --------------------------------------------------

namespace {

struct RadialPiece {
  Complex exponent; // integrand r^exponent [ln r] f(r)
  bool log_weight;
};

RadialPiece radial_piece(const Atom<NumericPolicy>& a, int m) {
  const double shift = is_vector(a.kind) ? m : m - 1;
  return {a.degree + shift, is_log(a.kind)};
}

double min_order_for(const RadialPiece& piece) {
  // Need Re(mu) + K + 1 > -1 for the subtracted integrand.
  return std::max(0.0, std::floor(-piece.exponent.real() - 2.0) + 1.0);
}

class FiniteParter {
public:
  FiniteParter(const TestFunction& phi, int order, double rel_tol) : phi_(phi), order_(order), rel_tol_(rel_tol) {}

  bool pole_hit() const { return pole_hit_; }

  Complex integrate(const RadialPiece& piece) {
    const Complex mu = piece.exponent;
    if (mu.real() + order_ + 1.0 <= -1.0) {
      throw OutOfRange("subtraction order " + std::to_string(order_) + " too low for exponent " +
                       std::to_string(mu.real()));
    }
    std::vector<double> coeffs;
    for (int k = 0; k <= order_; ++k) {
      const auto c = phi_.taylor_coeff(k);
      if (!c) {
        throw OutOfRange("test function is not smooth to subtraction order " + std::to_string(order_));
      }
      coeffs.push_back(*c);
    }
    // Analytic part of the subtracted Taylor polynomial on [0, 1].
    Complex moments = 0.0;
    for (int k = 0; k <= order_; ++k) {
      if (coeffs[k] == 0.0) {
        continue;
      }
      const Complex d = mu + static_cast<double>(k + 1);
      if (std::abs(d) < 1e-12) {
        pole_hit_ = true;
        continue;
      }
      moments += coeffs[k] * (piece.log_weight ? -1.0 / (d * d) : 1.0 / d);
    }
    const Complex inner = real_imag([&](double r, bool imag) { return inner_integrand(r, mu, piece.log_weight, coeffs, imag); },
                                    0.0, 1.0, false);
    const Complex outer = real_imag(
        [&](double r, bool imag) {
          const double v = weight(r, mu, piece.log_weight, imag) * phi_.radial(r);
          return std::isfinite(v) ? v : 0.0;
        },
        1.0,
        std::numeric_limits<double>::infinity(), true);
    return inner + moments + outer;
  }

private:
  static double weight(double r, Complex mu, bool log_weight, bool imag) {
    const double lr = std::log(r);
    const double mag = std::exp(mu.real() * lr);
    const double ang = mu.imag() * lr;
    double w = imag ? mag * std::sin(ang) : mag * std::cos(ang);
    if (log_weight) {
      w *= lr;
    }
    return w;
  }

  double inner_integrand(double r, Complex mu, bool log_weight, const std::vector<double>& coeffs, bool imag) const {
    if (r <= 0.0) {
      return 0.0;
    }
    double rem = 0.0;
    // Tail of the Taylor series near the origin avoids the cancellation in
    // phi - poly. Custom profiles only know finitely many terms, so their
    // tail is used closer to 0.
    int last = order_ + 60;
    double series_radius = 0.25;
    if (phi_.kind == TestFunctionKind::Custom) {
      last = static_cast<int>(phi_.taylor.size()) - 1;
      series_radius = last >= order_ + 2 ? 1e-2 : 0.0;
    }
    if (r < series_radius) {
      double rk = std::pow(r, order_ + 1);
      for (int k = order_ + 1; k <= last; ++k) {
        rem += *phi_.taylor_coeff(k) * rk;
        rk *= r;
      }
    } else {
      double poly = 0.0;
      double rk = 1.0;
      for (double c : coeffs) {
        poly += c * rk;
        rk *= r;
      }
      rem = phi_.radial(r) - poly;
    }
    const double v = weight(r, mu, log_weight, imag) * rem;
    return std::isfinite(v) ? v : 0.0;
  }

  template <class F>
  Complex real_imag(F&& f, double a, double b, bool infinite) {
    const auto one = [&](bool imag) {
      double err = 0.0;
      double l1 = 0.0;
      double v = 0.0;
      const auto g = [&](double r) { return f(r, imag); };
      if (infinite) {
        boost::math::quadrature::exp_sinh<double> q;
        v = q.integrate(g, a, b, rel_tol_ * 1e-2, &err, &l1);
      } else {
        boost::math::quadrature::tanh_sinh<double> q;
        v = q.integrate(g, a, b, rel_tol_ * 1e-2, &err, &l1);
      }
      if (!std::isfinite(v) || err > rel_tol_ * std::max(l1, 1e-300)) {
        std::ostringstream os;
        os << "radial quadrature on [" << a << ", " << b << "] reached error " << err << " (L1 " << l1 << ")";
        throw QuadratureFailure(os.str());
      }
      return v;
    };
    const double re = one(false);
    const double im = f(0.5, true) == 0.0 && f(2.0, true) == 0.0 && f(0.9, true) == 0.0 ? 0.0 : one(true);
    return {re, im};
  }

  const TestFunction& phi_;
  int order_;
  double rel_tol_;
  bool pole_hit_{false};
};

} // namespace

int minimal_subtraction_order(const NumericExpr& e, const TestFunction& phi) {
  double order = 0.0;
  for (const auto& a : e.atoms()) {
    if (is_vector(a.kind) == phi.is_vector()) {
      order = std::max(order, min_order_for(radial_piece(a, e.dim())));
    }
  }
  return static_cast<int>(order);
}

PairingResult pair_quadrature(const NumericExpr& e, const TestFunction& phi, int subtraction_order, double rel_tol) {
  const int m = e.dim();
  if (phi.is_vector() && (phi.component < 1 || phi.component > m)) {
    throw DimensionMismatch("moment component out of range");
  }
  PairingResult out = empty_result(m);
  const double sigma = sphere_area_d(m);
  FiniteParter fp(phi, subtraction_order, rel_tol);
  for (const auto& a : e.atoms()) {
    const bool vec_atom = is_vector(a.kind);
    if (vec_atom != phi.is_vector()) {
      continue;
    }
    const Complex s = a.degree + static_cast<double>(m + (vec_atom ? 1 : 0));
    const Complex c = normalization(s);
    if (c == 0.0) {
      throw OutOfRange("degree " + NumericPolicy::degree_str(a.degree) +
                       " lies on the delta grid; use delta_derivative or pair_gaussian");
    }
    const Complex integral = fp.integrate(radial_piece(a, m));
    const Complex value = a.coeff * c * (vec_atom ? sigma / m : sigma) * integral;
    if (vec_atom) {
      accumulate(out.vector_part[phi.component - 1], value);
    } else {
      accumulate(out.scalar_part, value);
    }
  }
  out.pole_on_grid = fp.pole_hit();
  return out;
}

// --- delta derivatives -------------------------------------------------------

namespace {

class Stencil {
public:
  Stencil(const TestFunction& phi, int m, double h) : phi_(phi), m_(m), h_(h), x_(static_cast<std::size_t>(m), 0.0) {}

  // Delta_h^l phi at the current point.
  double laplacian_power(int l) {
    if (l == 0) {
      return phi_(x_);
    }
    const double centre = laplacian_power(l - 1);
    double sum = 0.0;
    for (int i = 0; i < m_; ++i) {
      x_[i] += h_;
      const double plus = laplacian_power(l - 1);
      x_[i] -= 2.0 * h_;
      const double minus = laplacian_power(l - 1);
      x_[i] += h_;
      sum += plus - 2.0 * centre + minus;
    }
    return sum / (h_ * h_);
  }

  // d_j Delta_h^l phi at the current point.
  double partial_laplacian_power(int j, int l) {
    x_[j] += h_;
    const double plus = laplacian_power(l);
    x_[j] -= 2.0 * h_;
    const double minus = laplacian_power(l);
    x_[j] += h_;
    return (plus - minus) / (2.0 * h_);
  }

private:
  const TestFunction& phi_;
  int m_;
  double h_;
  std::vector<double> x_;
};

// Two Richardson passes over steps h, 2h, 4h for an O(h^2) expansion.
template <class F>
double richardson(F&& at_step, double h) {
  const double a1 = at_step(h);
  const double a2 = at_step(2.0 * h);
  const double a4 = at_step(4.0 * h);
  const double b1 = (4.0 * a1 - a2) / 3.0;
  const double b2 = (4.0 * a2 - a4) / 3.0;
  return (16.0 * b1 - b2) / 15.0;
}

} // namespace

PairingResult delta_derivative(int m, std::int64_t degree, const TestFunction& phi, double h) {
  const std::int64_t depth = -m - degree;
  if (depth < 0) {
    throw OutOfRange("degree " + std::to_string(degree) + " is not a delta degree in dimension " + std::to_string(m));
  }
  PairingResult out = empty_result(m);
  const double md = m;
  if (depth % 2 == 0) {
    // T*_{-m-2l} = pi^(m/2-l) / (2^(2l) Gamma(m/2+l)) (-Delta)^l delta
    const int l = static_cast<int>(depth / 2);
    const double c = std::pow(kPi, md / 2 - l) / (std::pow(2.0, 2 * l) * std::tgamma(md / 2 + l));
    const double lap = richardson([&](double step) { return Stencil(phi, m, step).laplacian_power(l); }, h);
    out.scalar_part = NumericScalar::of(c * std::pow(-1.0, l) * lap);
    return out;
  }
  // U*_{-m-2l-1} = -pi^(m/2-l) / (2^(2l+1) Gamma(m/2+l+1)) d (-Delta)^l delta,
  // and <d_j S, phi> = -<S, d_j phi>.
  const int l = static_cast<int>((depth - 1) / 2);
  const double c = -std::pow(kPi, md / 2 - l) / (std::pow(2.0, 2 * l + 1) * std::tgamma(md / 2 + l + 1));
  for (int j = 0; j < m; ++j) {
    const double d = richardson([&](double step) { return Stencil(phi, m, step).partial_laplacian_power(j, l); }, h);
    out.vector_part[j] = NumericScalar::of(c * std::pow(-1.0, l) * -d);
  }
  return out;
}

// --- convolution by direct integration -----------------------------------------

namespace {

// exp(-z) I_nu(z) for z >= 0.
double scaled_bessel_i(double nu, double z) {
  if (z < 600.0) {
    return boost::math::cyl_bessel_i(nu, z) * std::exp(-z);
  }
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    term *= -(mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * z);
    sum += term;
  }
  return sum / std::sqrt(2.0 * kPi * z);
}

} // namespace

double convolution_brute_force(int m, double alpha, double beta) {
  if (m < 2) {
    throw DimensionTooSmall("convolution_brute_force needs m >= 2");
  }
  if (!(alpha > -m && beta > -m && alpha + beta + m < 0)) {
    throw OutOfRange("convolution_brute_force needs alpha, beta > -m and alpha + beta + m < 0");
  }
  const double nu = (m - 2) / 2.0;
  const double angular = std::sqrt(kPi) * std::tgamma(nu + 0.5);
  // Integral over the sphere of exp(-|x+y|^2) with |x| = a, |y| = b, divided
  // by sigma_{m-1}:
  //   sqrt(pi) Gamma(nu+1/2) (ab)^(-nu) exp(-(a-b)^2) exp(-2ab) I_nu(2ab)
  const auto J = [&](double a, double b) {
    const double z = 2.0 * a * b;
    double radial;
    if (z < 1e-8) {
      radial = 1.0 / std::tgamma(nu + 1.0) * std::exp(-z);
    } else {
      radial = std::pow(a * b, -nu) * scaled_bessel_i(nu, z);
    }
    return angular * std::exp(-(a - b) * (a - b)) * radial;
  };
  const double inf = std::numeric_limits<double>::infinity();
  const double tol = 1e-11;
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const auto inner = [&](double a) {
    if (a <= 0.0) {
      return 0.0;
    }
    const auto g = [&](double b) {
      if (b <= 0.0) {
        return 0.0;
      }
      const double v = std::pow(b, beta + m - 1) * J(a, b);
      return std::isfinite(v) ? v : 0.0;
    };
    // exp(-(a-b)^2) confines the mass to |a - b| < w for large a; outside
    // the window the integrand is below exp(-w^2) relative.
    constexpr double w = 9.0;
    if (a <= 2.0 * w) {
      return ts.integrate(g, 0.0, a, tol) + es.integrate(g, a, inf, tol);
    }
    return ts.integrate(g, a - w, a, tol) + ts.integrate(g, a, a + w, tol);
  };
  const auto outer = [&](double a) {
    if (a <= 0.0) {
      return 0.0;
    }
    const double v = std::pow(a, alpha + m - 1) * inner(a);
    return std::isfinite(v) ? v : 0.0;
  };
  // Past a_max the inner integral is (angular / 2) a^beta (1 + c / a^2); c is
  // read off at a_max and the tail integrated in closed form.
  constexpr double a_max = 400.0;
  const double s = alpha + beta + m;
  const double ratio = inner(a_max) / (0.5 * angular * std::pow(a_max, beta));
  const double c = (ratio - 1.0) * a_max * a_max;
  const double tail = 0.5 * angular * (std::pow(a_max, s) / -s + c * std::pow(a_max, s - 2) / (2.0 - s));
  const double total = ts.integrate(outer, 0.0, 1.0, tol) + ts.integrate(outer, 1.0, a_max, tol) + tail;
  const double c_alpha = std::pow(kPi, (alpha + m) / 2.0) / std::tgamma((alpha + m) / 2.0);
  const double c_beta = std::pow(kPi, (beta + m) / 2.0) / std::tgamma((beta + m) / 2.0);
  const double sigma_m1 = m - 1 >= 1 ? sphere_area_d(m - 1) : 2.0;
  return c_alpha * c_beta * sphere_area_d(m) * sigma_m1 * total;
}

} // namespace hyperpotential
