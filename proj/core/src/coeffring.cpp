#include "hyperpotential/coeffring.hpp"

#include "hyperpotential/errors.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hyperpotential {

ExactScalar::ExactScalar(std::int64_t value) : num_(value), den_(1), pi_half_(0) { canonicalize(); }

ExactScalar::ExactScalar(BigInt num, BigInt den, int pi_half)
    : num_(std::move(num)), den_(std::move(den)), pi_half_(pi_half) {
  if (den_ == 0) {
    throw DivisionByZero("ExactScalar with zero denominator");
  }
  canonicalize();
}

ExactScalar ExactScalar::pow2(std::int64_t exponent) {
  BigInt p = BigInt(1) << static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  return exponent >= 0 ? ExactScalar(p, BigInt(1), 0) : ExactScalar(BigInt(1), p, 0);
}

void ExactScalar::canonicalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    pi_half_ = 0;
    return;
  }
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

ExactScalar ExactScalar::operator+(const ExactScalar& rhs) const {
  if (is_zero()) {
    return rhs;
  }
  if (rhs.is_zero()) {
    return *this;
  }
  if (pi_half_ != rhs.pi_half_) {
    throw MixedPiPower("cannot add " + str() + " and " + rhs.str() + ": different powers of pi");
  }
  return {num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_, pi_half_};
}

ExactScalar ExactScalar::operator*(const ExactScalar& rhs) const {
  if (is_zero() || rhs.is_zero()) {
    return {};
  }
  return {num_ * rhs.num_, den_ * rhs.den_, pi_half_ + rhs.pi_half_};
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) {
    throw DivisionByZero("inverse of exact zero");
  }
  return {den_, num_, -pi_half_};
}

bool ExactScalar::operator==(const ExactScalar& rhs) const {
  return num_ == rhs.num_ && den_ == rhs.den_ && pi_half_ == rhs.pi_half_;
}

double ExactScalar::to_double() const {
  if (is_zero()) {
    return 0.0;
  }
  // Ratio through long double with exponent scaling so that huge factorials
  // do not overflow before the division.
  const auto nbits = static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(num_)));
  const auto dbits = static_cast<long>(boost::multiprecision::msb(den_));
  const long shift_n = nbits > 60 ? nbits - 60 : 0;
  const long shift_d = dbits > 60 ? dbits - 60 : 0;
  const BigInt n = num_ >> static_cast<unsigned>(shift_n);
  const BigInt d = den_ >> static_cast<unsigned>(shift_d);
  long double q = n.convert_to<long double>() / d.convert_to<long double>();
  q = std::ldexp(q, static_cast<int>(shift_n - shift_d));
  q *= std::pow(std::numbers::pi_v<long double>, static_cast<long double>(pi_half_) / 2.0L);
  return static_cast<double>(q);
}

std::string ExactScalar::str() const {
  std::ostringstream os;
  os << num_;
  if (den_ != 1) {
    os << '/' << den_;
  }
  if (pi_half_ != 0) {
    os << "*pi^(" << pi_half_ << "/2)";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& value) { return os << value.str(); }

Complex NumericScalar::value() const {
  if (is_pole) {
    throw PoleError("value of a Gamma pole requested");
  }
  return {re, im};
}

ExactScalar gamma_half(std::int64_t n) {
  if (gamma_half_is_pole(n)) {
    throw PoleError("Gamma(" + std::to_string(n) + "/2) is a pole");
  }
  if (n % 2 == 0) {
    // Gamma(k) = (k-1)!
    BigInt f = 1;
    for (std::int64_t i = 2; i < n / 2; ++i) {
      f *= i;
    }
    return {f, BigInt(1), 0};
  }
  // Odd n: walk from Gamma(1/2) = sqrt(pi) with Gamma(z+1) = z Gamma(z).
  BigInt num = 1;
  BigInt den = 1;
  if (n > 0) {
    for (std::int64_t k = 1; k < n; k += 2) { // multiply by k/2 for z = 1/2 .. (n-2)/2
      num *= k;
      den *= 2;
    }
  } else {
    for (std::int64_t k = -1; k >= n; k -= 2) { // divide by k/2 for z = -1/2 .. n/2
      num *= 2;
      den *= k;
    }
  }
  return {num, den, 1};
}

ExactScalar sphere_area(int d) {
  if (d < 1) {
    throw OutOfRange("sphere_area requires d >= 1");
  }
  return ExactScalar(2) * ExactScalar::pi_power(d) * gamma_half(d).inverse();
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

Complex lanczos_gamma(Complex z) {
  // Valid for Re z >= 1/2.
  z -= 1.0;
  Complex x = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    x += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  const Complex log_g = 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
  return std::exp(log_g);
}

} // namespace

NumericScalar gamma_complex(Complex z) {
  const double nearest = std::round(z.real());
  if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < kPoleTolerance) {
    return NumericScalar::pole();
  }
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 170.0) {
    return NumericScalar::of({std::tgamma(z.real()), 0.0});
  }
  if (z.real() < 0.5) {
    const Complex s = std::sin(std::numbers::pi * z);
    return NumericScalar::of(std::numbers::pi / (s * lanczos_gamma(1.0 - z)));
  }
  return NumericScalar::of(lanczos_gamma(z));
}

double digamma(double x) { return boost::math::digamma(x); }

} // namespace hyperpotential
