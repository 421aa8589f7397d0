#include "hyperpotential/distcalc.hpp"

#include "hyperpotential/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperpotential {

const char* to_string(AtomKind kind) {
  switch (kind) {
  case AtomKind::T:
    return "T";
  case AtomKind::U:
    return "U";
  case AtomKind::LogT:
    return "LogT";
  case AtomKind::LogU:
    return "LogU";
  }
  return "?";
}

std::optional<AtomKind> atom_kind_from_string(const std::string& s) {
  if (s == "T") {
    return AtomKind::T;
  }
  if (s == "U") {
    return AtomKind::U;
  }
  if (s == "LogT") {
    return AtomKind::LogT;
  }
  if (s == "LogU") {
    return AtomKind::LogU;
  }
  return std::nullopt;
}

// --- policies ----------------------------------------------------------------

GammaValue<ExactScalar> ExactPolicy::gamma_half(Degree twice_arg) {
  if (gamma_half_is_pole(twice_arg)) {
    return {ExactScalar{}, true};
  }
  return {hyperpotential::gamma_half(twice_arg), false};
}

Complex NumericPolicy::pi_half_power(Degree twice_exponent) {
  return std::exp(0.5 * twice_exponent * std::log(std::numbers::pi));
}

Complex NumericPolicy::pow2(Degree exponent) { return std::exp(exponent * std::numbers::ln2); }

GammaValue<Complex> NumericPolicy::gamma_half(Degree twice_arg) {
  const NumericScalar g = gamma_complex(0.5 * twice_arg);
  if (g.is_pole) {
    return {Complex{}, true};
  }
  return {g.value(), false};
}

bool NumericPolicy::same_degree(Degree a, Degree b) {
  return std::abs(a - b) <= kDegreeTol * std::max(1.0, std::abs(a));
}

bool NumericPolicy::degree_less(Degree a, Degree b) {
  if (same_degree(a, b)) {
    return false;
  }
  if (a.real() != b.real()) {
    return a.real() < b.real();
  }
  return a.imag() < b.imag();
}

std::optional<std::int64_t> NumericPolicy::as_integer(Degree d) {
  const double r = std::round(d.real());
  if (std::abs(d - Complex(r, 0.0)) <= kDegreeTol * std::max(1.0, std::abs(r))) {
    return static_cast<std::int64_t>(r);
  }
  return std::nullopt;
}

std::string NumericPolicy::coeff_str(const Coeff& c) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  return os.str();
}

std::string NumericPolicy::degree_str(Degree d) {
  std::ostringstream os;
  os.precision(17);
  os << d.real();
  if (d.imag() != 0.0) {
    os << (d.imag() < 0 ? "-" : "+") << std::abs(d.imag()) << 'i';
  }
  return os.str();
}

// --- DistExpr ----------------------------------------------------------------

template <class P>
DistExpr<P>::DistExpr(int dim) : dim_(dim) {
  if (dim < 1) {
    throw DimensionMismatch("distribution dimension must be positive");
  }
}

template <class P>
DistExpr<P> DistExpr<P>::single(int dim, AtomKind kind, Degree degree, Coeff coeff) {
  DistExpr e(dim);
  e.add(kind, degree, coeff);
  return e;
}

template <class P>
bool DistExpr<P>::has_log() const {
  return std::any_of(atoms_.begin(), atoms_.end(), [](const Atom<P>& a) { return is_log(a.kind); });
}

template <class P>
typename P::Coeff DistExpr<P>::coeff(AtomKind kind, Degree degree) const {
  for (const auto& a : atoms_) {
    if (a.kind == kind && P::same_degree(a.degree, degree)) {
      return a.coeff;
    }
  }
  return Coeff{};
}

namespace {

template <class P>
bool atom_before(AtomKind k, typename P::Degree d, const Atom<P>& a) {
  if (k != a.kind) {
    return static_cast<int>(k) < static_cast<int>(a.kind);
  }
  return P::degree_less(d, a.degree);
}

template <class P>
void check_log_shape(AtomKind kind, typename P::Degree degree) {
  if (!is_log(kind)) {
    return;
  }
  const auto d = P::as_integer(degree);
  const bool ok = d && (kind == AtomKind::LogT ? (*d >= 0 && *d % 2 == 0) : (*d >= 1 && *d % 2 == 1));
  if (!ok) {
    throw LogShapeError(std::string("logarithmic atom ") + to_string(kind) + " at degree " + P::degree_str(degree) +
                        ": LogT needs an even degree >= 0, LogU an odd degree >= 1");
  }
}

} // namespace

template <class P>
void DistExpr<P>::add(AtomKind kind, Degree degree, const Coeff& coeff) {
  if (P::is_zero(coeff)) {
    return;
  }
  check_log_shape<P>(kind, degree);
  for (auto it = atoms_.begin(); it != atoms_.end(); ++it) {
    if (it->kind == kind && P::same_degree(it->degree, degree)) {
      it->coeff = it->coeff + coeff;
      if (P::is_zero(it->coeff)) {
        atoms_.erase(it);
      }
      return;
    }
  }
  auto pos = std::find_if(atoms_.begin(), atoms_.end(),
                          [&](const Atom<P>& a) { return atom_before<P>(kind, degree, a); });
  atoms_.insert(pos, Atom<P>{kind, degree, coeff});
}

template <class P>
DistExpr<P>& DistExpr<P>::operator+=(const DistExpr& rhs) {
  if (rhs.dim_ != dim_) {
    throw DimensionMismatch("adding distributions on R^" + std::to_string(dim_) + " and R^" +
                            std::to_string(rhs.dim_));
  }
  for (const auto& a : rhs.atoms_) {
    add(a.kind, a.degree, a.coeff);
  }
  return *this;
}

template <class P>
DistExpr<P> DistExpr<P>::operator+(const DistExpr& rhs) const {
  DistExpr r = *this;
  r += rhs;
  return r;
}

template <class P>
DistExpr<P> DistExpr<P>::operator-() const {
  return scaled(P::from_int(-1));
}

template <class P>
DistExpr<P> DistExpr<P>::operator-(const DistExpr& rhs) const {
  return *this + (-rhs);
}

template <class P>
DistExpr<P> DistExpr<P>::scaled(const Coeff& s) const {
  DistExpr r(dim_);
  if (P::is_zero(s)) {
    return r;
  }
  r.atoms_ = atoms_;
  for (auto& a : r.atoms_) {
    a.coeff = a.coeff * s;
  }
  return r;
}

template <class P>
std::string DistExpr<P>::str() const {
  if (atoms_.empty()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& a : atoms_) {
    if (!first) {
      os << " + ";
    }
    first = false;
    os << P::coeff_str(a.coeff) << ' ';
    switch (a.kind) {
    case AtomKind::T:
      os << "T*[" << P::degree_str(a.degree) << ']';
      break;
    case AtomKind::U:
      os << "U*[" << P::degree_str(a.degree) << ']';
      break;
    case AtomKind::LogT:
      os << "ln(r) T*[" << P::degree_str(a.degree) << ']';
      break;
    case AtomKind::LogU:
      os << "ln(r) U*[" << P::degree_str(a.degree) << ']';
      break;
    }
  }
  return os.str();
}

// --- constructors ------------------------------------------------------------

namespace {

template <class P>
typename P::Coeff two_pi() {
  return P::from_int(2) * P::pi_half_power(P::degree_of(2));
}

template <class P>
typename P::Coeff inv_two_pi() {
  return P::rational(1, 2) * P::pi_half_power(P::degree_of(-2));
}

template <class P>
typename P::Coeff gamma_or_throw(typename P::Degree twice_arg) {
  auto g = P::gamma_half(twice_arg);
  if (g.pole) {
    throw PoleError("Gamma(" + P::degree_str(twice_arg) + "/2) is a pole");
  }
  return g.value;
}

} // namespace

template <class P>
DistExpr<P> make_Tstar(int m, typename P::Degree lambda) {
  return DistExpr<P>::single(m, AtomKind::T, lambda, P::from_int(1));
}

template <class P>
DistExpr<P> make_Ustar(int m, typename P::Degree lambda) {
  return DistExpr<P>::single(m, AtomKind::U, lambda, P::from_int(1));
}

template <class P>
DistExpr<P> make_delta(int m) {
  const auto c = gamma_or_throw<P>(P::degree_of(m)) * P::pi_half_power(P::degree_of(-m));
  return DistExpr<P>::single(m, AtomKind::T, P::degree_of(-m), c);
}

template <class P>
DistExpr<P> make_H(int m) {
  // -2 / sigma_{m+1} = -Gamma((m+1)/2) / pi^((m+1)/2)
  const auto c = P::from_int(-1) * gamma_or_throw<P>(P::degree_of(m + 1)) * P::pi_half_power(P::degree_of(-(m + 1)));
  return DistExpr<P>::single(m, AtomKind::U, P::degree_of(-m), c);
}

// --- operator actions --------------------------------------------------------

template <class P>
DistExpr<P> dirac_apply(const DistExpr<P>& e) {
  const int m = e.dim();
  DistExpr<P> r(m);
  const auto one = P::degree_of(1);
  for (const auto& a : e.atoms()) {
    const auto lam = a.degree;
    switch (a.kind) {
    case AtomKind::T:
      r.add(AtomKind::U, lam - one, a.coeff * P::from_degree(lam));
      break;
    case AtomKind::U:
      r.add(AtomKind::T, lam - one, a.coeff * P::from_int(-1) * two_pi<P>());
      break;
    case AtomKind::LogT:
      // d[ln r T*_{2j}] = 2j ln r U*_{2j-1} + U*_{2j-1}
      r.add(AtomKind::LogU, lam - one, a.coeff * P::from_degree(lam));
      r.add(AtomKind::U, lam - one, a.coeff);
      break;
    case AtomKind::LogU: {
      // d[ln r U*_{2j+1}] = -2 pi ln r T*_{2j} - 2 pi / (m + 2j) T*_{2j}
      const auto mm = P::from_degree(lam - one + P::degree_of(m));
      const auto minus_two_pi = P::from_int(-1) * two_pi<P>();
      r.add(AtomKind::LogT, lam - one, a.coeff * minus_two_pi);
      r.add(AtomKind::T, lam - one, a.coeff * minus_two_pi / mm);
      break;
    }
    }
  }
  return r;
}

template <class P>
DistExpr<P> laplace_apply(const DistExpr<P>& e) {
  const int m = e.dim();
  DistExpr<P> r(m);
  const auto two = P::degree_of(2);
  for (const auto& a : e.atoms()) {
    const auto lam = a.degree;
    switch (a.kind) {
    case AtomKind::T:
      r.add(AtomKind::T, lam - two, a.coeff * two_pi<P>() * P::from_degree(lam));
      break;
    case AtomKind::U:
      r.add(AtomKind::U, lam - two, a.coeff * two_pi<P>() * P::from_degree(lam - P::degree_of(1)));
      break;
    case AtomKind::LogT:
    case AtomKind::LogU:
      // Delta = -(Dirac)^2
      r += -dirac_apply(dirac_apply(DistExpr<P>::single(m, a.kind, lam, a.coeff)));
      break;
    }
  }
  return r;
}

template <class P>
DistExpr<P> vector_multiply(const DistExpr<P>& e) {
  const int m = e.dim();
  DistExpr<P> r(m);
  const auto one = P::degree_of(1);
  for (const auto& a : e.atoms()) {
    switch (a.kind) {
    case AtomKind::T:
      r.add(AtomKind::U, a.degree + one, a.coeff * P::from_degree(a.degree + P::degree_of(m)) * inv_two_pi<P>());
      break;
    case AtomKind::U:
      r.add(AtomKind::T, a.degree + one, a.coeff * P::from_int(-1));
      break;
    case AtomKind::LogT:
    case AtomKind::LogU:
      throw UnsupportedLogAtom("multiplication of a logarithmic atom by the vector variable has no closed rule");
    }
  }
  return r;
}

template <class P>
DistExpr<P> r2_multiply(const DistExpr<P>& e) {
  const int m = e.dim();
  DistExpr<P> r(m);
  const auto two = P::degree_of(2);
  for (const auto& a : e.atoms()) {
    const auto shift = is_vector(a.kind) ? P::degree_of(m + 1) : P::degree_of(m);
    r.add(a.kind, a.degree + two, a.coeff * P::from_degree(a.degree + shift) * inv_two_pi<P>());
  }
  return r;
}

// --- convolution -------------------------------------------------------------

template <class P>
DistExpr<P> convolve_atoms(int m, const Atom<P>& x, const Atom<P>& y) {
  if (is_log(x.kind) || is_log(y.kind)) {
    throw UnsupportedLogAtom("convolution of logarithmic atoms is not defined by the convolution table");
  }
  // Order so that a U atom (if any) comes first; the table is commutative.
  const bool swap = x.kind == AtomKind::T && y.kind == AtomKind::U;
  const Atom<P>& a = swap ? y : x;
  const Atom<P>& b = swap ? x : y;
  using D = typename P::Degree;
  const D mm = P::degree_of(m);
  const D al = a.degree;
  const D be = b.degree;

  D num_arg{};
  D den_a{};
  D den_b{};
  D pi_twice{};
  AtomKind out{};
  const char* condition = "";
  if (a.kind == AtomKind::T) {
    // T*_a * T*_b, needs a != 2j, b != 2k, a+b+m != 2l
    num_arg = -(al + be + mm);
    den_a = -al;
    den_b = -be;
    pi_twice = mm;
    out = AtomKind::T;
    condition = "T*_a * T*_b requires a != 2j, b != 2k, a+b+m != 2l (j,k,l >= 0)";
  } else if (b.kind == AtomKind::T) {
    // U*_a * T*_b, needs a != 2j+1, b != 2k, a+b != -m+2l+1
    num_arg = -(al + be + mm - P::degree_of(1));
    den_a = -(al - P::degree_of(1));
    den_b = -be;
    pi_twice = mm;
    out = AtomKind::U;
    condition = "U*_a * T*_b requires a != 2j+1, b != 2k, a+b != -m+2l+1 (j,k,l >= 0)";
  } else {
    // U*_a * U*_b, needs a != 2j+1, b != 2k+1, a+b != -m+2l
    num_arg = -(al + be + mm);
    den_a = P::degree_of(1) - al;
    den_b = P::degree_of(1) - be;
    pi_twice = mm + P::degree_of(2);
    out = AtomKind::T;
    condition = "U*_a * U*_b requires a != 2j+1, b != 2k+1, a+b != -m+2l (j,k,l >= 0)";
  }

  const auto g_num = P::gamma_half(num_arg);
  const auto g_a = P::gamma_half(den_a);
  const auto g_b = P::gamma_half(den_b);
  DistExpr<P> r(m);
  if (g_num.pole) {
    throw ExcludedParameters(std::string("convolution of ") + to_string(a.kind) + "*[" + P::degree_str(al) + "] and " +
                             to_string(b.kind) + "*[" + P::degree_str(be) + "] is undefined: " + condition);
  }
  if (g_a.pole || g_b.pole) {
    // 1/Gamma vanishes at its poles.
    return r;
  }
  const auto c = P::pi_half_power(pi_twice) * g_num.value / (g_a.value * g_b.value);
  r.add(out, al + be + mm, a.coeff * b.coeff * c);
  return r;
}

template <class P>
DistExpr<P> convolve(const DistExpr<P>& a, const DistExpr<P>& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("convolution of distributions on R^" + std::to_string(a.dim()) + " and R^" +
                            std::to_string(b.dim()));
  }
  DistExpr<P> r(a.dim());
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) {
      r += convolve_atoms<P>(a.dim(), x, y);
    }
  }
  return r;
}

template <class P>
DistExpr<P> hilbert(const DistExpr<P>& e) {
  return convolve(make_H<P>(e.dim()), e);
}

bool equal(const ExactExpr& a, const ExactExpr& b) {
  if (a.dim() != b.dim() || a.atoms().size() != b.atoms().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.atoms().size(); ++i) {
    const auto& x = a.atoms()[i];
    const auto& y = b.atoms()[i];
    if (x.kind != y.kind || x.degree != y.degree || x.coeff != y.coeff) {
      return false;
    }
  }
  return true;
}

bool approx_equal(const NumericExpr& a, const NumericExpr& b, double tol) {
  if (a.dim() != b.dim()) {
    return false;
  }
  double scale = 0.0;
  for (const auto& x : a.atoms()) {
    scale = std::max(scale, std::abs(x.coeff));
  }
  for (const auto& x : b.atoms()) {
    scale = std::max(scale, std::abs(x.coeff));
  }
  const NumericExpr diff = a - b;
  for (const auto& x : diff.atoms()) {
    if (std::abs(x.coeff) > tol * std::max(scale, 1e-300)) {
      return false;
    }
  }
  return true;
}

NumericExpr to_numeric(const ExactExpr& e) {
  NumericExpr r(e.dim());
  for (const auto& a : e.atoms()) {
    r.add(a.kind, Complex(static_cast<double>(a.degree), 0.0), a.coeff.to_complex());
  }
  return r;
}

// --- instantiations ----------------------------------------------------------

template class DistExpr<ExactPolicy>;
template class DistExpr<NumericPolicy>;

#define HYPERPOTENTIAL_INSTANTIATE(P)                                                                                  \
  template DistExpr<P> make_Tstar<P>(int, P::Degree);                                                                 \
  template DistExpr<P> make_Ustar<P>(int, P::Degree);                                                                 \
  template DistExpr<P> make_delta<P>(int);                                                                             \
  template DistExpr<P> make_H<P>(int);                                                                                 \
  template DistExpr<P> dirac_apply<P>(const DistExpr<P>&);                                                            \
  template DistExpr<P> laplace_apply<P>(const DistExpr<P>&);                                                          \
  template DistExpr<P> vector_multiply<P>(const DistExpr<P>&);                                                        \
  template DistExpr<P> r2_multiply<P>(const DistExpr<P>&);                                                            \
  template DistExpr<P> convolve<P>(const DistExpr<P>&, const DistExpr<P>&);                                           \
  template DistExpr<P> hilbert<P>(const DistExpr<P>&);                                                                \
  template DistExpr<P> convolve_atoms<P>(int, const Atom<P>&, const Atom<P>&);

HYPERPOTENTIAL_INSTANTIATE(ExactPolicy)
HYPERPOTENTIAL_INSTANTIATE(NumericPolicy)

#undef HYPERPOTENTIAL_INSTANTIATE

} // namespace hyperpotential
