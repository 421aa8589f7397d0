#pragma once

#include "hyperpotential/coeffring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperpotential {

// Basis distributions on R^m:
//   T     T*_d                 (scalar, radial)
//   U     U*_d                 (Clifford vector, omega-directed)
//   LogT  ln(r) * T*_d         (d even, d >= 0)
//   LogU  ln(r) * U*_d         (d odd,  d >= 1)
// A logarithmic kernel (p ln r + q) T*_d is the pair {LogT: p, T: q} at d.
enum class AtomKind { T = 0, U = 1, LogT = 2, LogU = 3 };

const char* to_string(AtomKind kind);
std::optional<AtomKind> atom_kind_from_string(const std::string& s);

inline bool is_log(AtomKind k) { return k == AtomKind::LogT || k == AtomKind::LogU; }
inline bool is_vector(AtomKind k) { return k == AtomKind::U || k == AtomKind::LogU; }

// Gamma value with pole flag, shared by both arithmetic modes.
template <class Coeff>
struct GammaValue {
  Coeff value{};
  bool pole{false};
};

// Exact mode: integer degrees, ExactScalar coefficients.
struct ExactPolicy {
  using Coeff = ExactScalar;
  using Degree = std::int64_t;
  static constexpr bool kExact = true;

  static Coeff from_int(std::int64_t v) { return Coeff(v); }
  static Coeff from_degree(Degree d) { return Coeff(d); }
  static Coeff rational(std::int64_t n, std::int64_t d) { return Coeff::rational(n, d); }
  static Coeff pi_half_power(Degree twice_exponent) { return Coeff::pi_power(static_cast<int>(twice_exponent)); }
  static Coeff pow2(Degree exponent) { return Coeff::pow2(exponent); }
  // Gamma(twice_arg / 2).
  static GammaValue<Coeff> gamma_half(Degree twice_arg);
  static bool is_zero(const Coeff& c) { return c.is_zero(); }
  static bool same_degree(Degree a, Degree b) { return a == b; }
  static bool degree_less(Degree a, Degree b) { return a < b; }
  static std::optional<std::int64_t> as_integer(Degree d) { return d; }
  static Degree degree_of(std::int64_t v) { return v; }
  static Complex degree_to_complex(Degree d) { return {static_cast<double>(d), 0.0}; }
  static Complex coeff_to_complex(const Coeff& c) { return c.to_complex(); }
  static std::string coeff_str(const Coeff& c) { return c.str(); }
  static std::string degree_str(Degree d) { return std::to_string(d); }
};

// Numeric mode: complex degrees, complex coefficients.
struct NumericPolicy {
  using Coeff = Complex;
  using Degree = Complex;
  static constexpr bool kExact = false;
  // Two degrees closer than this are the same degree.
  static constexpr double kDegreeTol = 1e-12;

  static Coeff from_int(std::int64_t v) { return {static_cast<double>(v), 0.0}; }
  static Coeff from_degree(Degree d) { return d; }
  static Coeff rational(std::int64_t n, std::int64_t d) { return {static_cast<double>(n) / static_cast<double>(d), 0.0}; }
  static Coeff pi_half_power(Degree twice_exponent);
  static Coeff pow2(Degree exponent);
  static GammaValue<Coeff> gamma_half(Degree twice_arg);
  static bool is_zero(const Coeff& c) { return c == Complex(0.0, 0.0); }
  static bool same_degree(Degree a, Degree b);
  static bool degree_less(Degree a, Degree b);
  static std::optional<std::int64_t> as_integer(Degree d);
  static Degree degree_of(std::int64_t v) { return {static_cast<double>(v), 0.0}; }
  static Complex degree_to_complex(Degree d) { return d; }
  static Complex coeff_to_complex(const Coeff& c) { return c; }
  static std::string coeff_str(const Coeff& c);
  static std::string degree_str(Degree d);
};

template <class P>
struct Atom {
  AtomKind kind{AtomKind::T};
  typename P::Degree degree{};
  typename P::Coeff coeff{};
};

// Finite combination of basis distributions on R^m in canonical form: atoms
// sorted by (kind, degree), at most one per (kind, degree), no zero
// coefficients.
template <class P>
class DistExpr {
public:
  using Coeff = typename P::Coeff;
  using Degree = typename P::Degree;

  explicit DistExpr(int dim);
  static DistExpr single(int dim, AtomKind kind, Degree degree, Coeff coeff);

  int dim() const { return dim_; }
  const std::vector<Atom<P>>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }
  bool has_log() const;

  // Coefficient of the (kind, degree) atom, zero when absent.
  Coeff coeff(AtomKind kind, Degree degree) const;

  void add(AtomKind kind, Degree degree, const Coeff& coeff);
  DistExpr& operator+=(const DistExpr& rhs);
  DistExpr operator+(const DistExpr& rhs) const;
  DistExpr operator-(const DistExpr& rhs) const;
  DistExpr operator-() const;
  DistExpr scaled(const Coeff& s) const;

  std::string str() const;

private:
  int dim_;
  std::vector<Atom<P>> atoms_;
};

using ExactExpr = DistExpr<ExactPolicy>;
using NumericExpr = DistExpr<NumericPolicy>;

template <class P>
DistExpr<P> operator*(const typename P::Coeff& s, const DistExpr<P>& e) {
  return e.scaled(s);
}

// --- constructors -----------------------------------------------------------

template <class P>
DistExpr<P> make_Tstar(int m, typename P::Degree lambda);
template <class P>
DistExpr<P> make_Ustar(int m, typename P::Degree lambda);
// delta = Gamma(m/2) / pi^(m/2) T*_{-m}
template <class P>
DistExpr<P> make_delta(int m);
// H = -(2 / sigma_{m+1}) U*_{-m}, the Hilbert kernel.
template <class P>
DistExpr<P> make_H(int m);

// --- operator actions -------------------------------------------------------

// Left action of the Dirac operator.
template <class P>
DistExpr<P> dirac_apply(const DistExpr<P>& e);
// Laplace operator Delta_m (not its negative).
template <class P>
DistExpr<P> laplace_apply(const DistExpr<P>& e);
// Left multiplication by the vector variable x.
template <class P>
DistExpr<P> vector_multiply(const DistExpr<P>& e);
// Multiplication by r^2.
template <class P>
DistExpr<P> r2_multiply(const DistExpr<P>& e);

// Bilinear convolution through the T*/U* convolution table. Throws
// ExcludedParameters where the table gives no value, UnsupportedLogAtom for
// logarithmic atoms.
template <class P>
DistExpr<P> convolve(const DistExpr<P>& a, const DistExpr<P>& b);

// Hilbert transform: H * e.
template <class P>
DistExpr<P> hilbert(const DistExpr<P>& e);

bool equal(const ExactExpr& a, const ExactExpr& b);
bool approx_equal(const NumericExpr& a, const NumericExpr& b, double tol);

NumericExpr to_numeric(const ExactExpr& e);

// Coefficient of one T*/U* convolution product; exposed for diagnostics and
// for the brute-force oracle.
template <class P>
DistExpr<P> convolve_atoms(int m, const Atom<P>& a, const Atom<P>& b);

extern template class DistExpr<ExactPolicy>;
extern template class DistExpr<NumericPolicy>;

} // namespace hyperpotential
