#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace hyperpotential {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

// Exact coefficient (num/den) * pi^(pi_half/2).
//
// Every kernel coefficient on the integer / half-integer parameter grid is a
// single monomial of this shape, so sums of different pi powers are rejected
// rather than represented.
class ExactScalar {
public:
  ExactScalar() = default;
  ExactScalar(std::int64_t value); // NOLINT(google-explicit-constructor)
  ExactScalar(BigInt num, BigInt den, int pi_half = 0);

  static ExactScalar rational(std::int64_t num, std::int64_t den) { return {BigInt(num), BigInt(den), 0}; }
  static ExactScalar pi_power(int pi_half) { return {BigInt(1), BigInt(1), pi_half}; }
  static ExactScalar pow2(std::int64_t exponent);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  int pi_half() const { return pi_half_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  ExactScalar operator-() const;
  ExactScalar operator+(const ExactScalar& rhs) const;
  ExactScalar operator-(const ExactScalar& rhs) const { return *this + (-rhs); }
  ExactScalar operator*(const ExactScalar& rhs) const;
  ExactScalar operator/(const ExactScalar& rhs) const { return *this * rhs.inverse(); }
  ExactScalar& operator+=(const ExactScalar& rhs) { return *this = *this + rhs; }
  ExactScalar& operator*=(const ExactScalar& rhs) { return *this = *this * rhs; }

  ExactScalar inverse() const;

  bool operator==(const ExactScalar& rhs) const;
  bool operator!=(const ExactScalar& rhs) const { return !(*this == rhs); }

  double to_double() const;
  Complex to_complex() const { return {to_double(), 0.0}; }

  // "num/den*pi^(h/2)" style rendering for diagnostics.
  std::string str() const;

private:
  void canonicalize();

  BigInt num_{0};
  BigInt den_{1};
  int pi_half_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& value);

// Complex double with an explicit pole flag. A pole carries no value.
struct NumericScalar {
  double re{0.0};
  double im{0.0};
  bool is_pole{false};

  // Throws PoleError on a pole.
  Complex value() const;
  static NumericScalar pole() { return {0.0, 0.0, true}; }
  static NumericScalar of(Complex z) { return {z.real(), z.imag(), false}; }
};

// Distance to a nonpositive integer below which gamma_complex reports a pole.
inline constexpr double kPoleTolerance = 1e-12;

// Gamma(n/2) exactly. Throws PoleError for n <= 0 even.
ExactScalar gamma_half(std::int64_t n);

// True when Gamma(n/2) has a pole.
inline bool gamma_half_is_pole(std::int64_t n) { return n <= 0 && n % 2 == 0; }

// Area of the unit sphere in R^d: 2 pi^(d/2) / Gamma(d/2).
ExactScalar sphere_area(int d);

// Gamma on the complex plane (Lanczos with reflection). Poles are flagged.
NumericScalar gamma_complex(Complex z);

// Digamma for real positive arguments.
double digamma(double x);

} // namespace hyperpotential
