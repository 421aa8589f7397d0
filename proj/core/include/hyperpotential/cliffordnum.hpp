#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>

namespace hyperpotential {

// Blade index: bit j set <=> e_j is a factor, e_0 being the distinguished
// direction of the half-space. Blades are stored in increasing index order.
using Blade = std::uint32_t;

// Element of the real Clifford algebra R_{0,dim} (e_j^2 = -1), with dim = m+1
// basis vectors e_0..e_m. Zero coefficients are never stored.
class Multivector {
public:
  static constexpr int kMaxDim = 13;

  explicit Multivector(int dim);

  static Multivector scalar(int dim, double value);
  static Multivector basis(int dim, int index, double coeff = 1.0);
  static Multivector blade(int dim, Blade b, double coeff = 1.0);
  // x0 e_0 + sum x_j e_j from the component list (x0, x1, ..., xm).
  static Multivector vector(int dim, std::span<const double> components);
  // sum_j x_j e_j, j = 1..m (no e_0 part).
  static Multivector space_vector(int dim, std::span<const double> components);

  int dim() const { return dim_; }
  const std::map<Blade, double>& terms() const { return terms_; }
  double coeff(Blade b) const;
  double scalar_part() const { return coeff(0); }
  bool is_zero() const { return terms_.empty(); }

  Multivector operator+(const Multivector& rhs) const;
  Multivector operator-(const Multivector& rhs) const;
  Multivector operator-() const;
  Multivector operator*(double s) const;
  Multivector& operator+=(const Multivector& rhs);

  // Largest absolute coefficient.
  double max_abs() const;
  // Euclidean norm of the coefficient vector.
  double norm() const;

  std::string str() const;

  friend Multivector geometric_product(const Multivector& a, const Multivector& b);

private:
  void add_term(Blade b, double c);

  int dim_;
  std::map<Blade, double> terms_;
};

inline Multivector operator*(double s, const Multivector& v) { return v * s; }

// Sign of e_A e_B = sign * e_(A xor B) in R_{0,n}.
int blade_product_sign(Blade a, Blade b);

Multivector geometric_product(const Multivector& a, const Multivector& b);

inline Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

// e0bar = -e_0, the Clifford conjugate of e_0.
Multivector e0_bar(int dim);

// F = F1 + e0bar F2 with F1, F2 free of e_0.
std::pair<Multivector, Multivector> e0_split(const Multivector& f);

bool approx_equal(const Multivector& a, const Multivector& b, double tol);

} // namespace hyperpotential
