#include "hyperpotential/kernels.hpp"

#include "hyperpotential/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>

namespace hyperpotential {

using EP = ExactPolicy;

const char* to_string(Family f) {
  switch (f) {
  case Family::DiracPow:
    return "dirac";
  case Family::HilbertDirac:
    return "hilbert-dirac";
  case Family::LaplacePow:
    return "laplace";
  case Family::LaplaceHilbert:
    return "laplace-hilbert";
  }
  return "?";
}

std::optional<Family> family_from_string(const std::string& s) {
  for (Family f : {Family::DiracPow, Family::HilbertDirac, Family::LaplacePow, Family::LaplaceHilbert}) {
    if (s == to_string(f)) {
      return f;
    }
  }
  return std::nullopt;
}

namespace {

std::string half_str(std::int64_t twice) {
  if (twice % 2 == 0) {
    return std::to_string(twice / 2);
  }
  return std::to_string(twice) + "/2";
}

} // namespace

std::string OperatorId::param_str() const {
  return is_laplace_family(family) ? "beta=" + half_str(order) : "mu=" + std::to_string(order);
}

std::string OperatorId::str() const { return std::string(to_string(family)) + "(" + param_str() + ")"; }

// --- extended definitions ----------------------------------------------------

const std::vector<ExtendedCase>& extended_cases() {
  static const std::vector<ExtendedCase> table = {
      {Family::DiracPow, "m even and mu in {-m, -m-1, -m-2, ...}",
       [](int m, std::int64_t s) { return m % 2 == 0 && s <= -m; }},
      {Family::HilbertDirac, "m odd and mu in {-m, -m-1, -m-2, ...}",
       [](int m, std::int64_t s) { return m % 2 == 1 && s <= -m; }},
      {Family::LaplacePow, "beta in {-m/2, -m/2-1, -m/2-2, ...}",
       [](int m, std::int64_t s) { return s <= -m && (s + m) % 2 == 0; }},
      {Family::LaplaceHilbert, "beta in {-(m+1)/2, -(m+1)/2-1, ...}",
       [](int m, std::int64_t s) { return s <= -m - 1 && (s + m + 1) % 2 == 0; }},
  };
  return table;
}

const ExtendedCase* find_extended_case(const OperatorId& op, int m) {
  for (const auto& row : extended_cases()) {
    if (row.family == op.family && row.applies(m, op.order)) {
      return &row;
    }
  }
  return nullptr;
}

// --- regular kernels ---------------------------------------------------------

namespace {

// 2^s Gamma((m+s)/2) / pi^((m-s)/2) T*_{-m-s}
template <class P>
DistExpr<P> tau_term(int m, typename P::Degree s) {
  const auto g = P::gamma_half(P::degree_of(m) + s);
  if (g.pole) {
    throw PoleError("Gamma((m+s)/2) pole at m=" + std::to_string(m) + ", s=" + P::degree_str(s));
  }
  const auto c = P::pow2(s) * g.value * P::pi_half_power(s - P::degree_of(m));
  return DistExpr<P>::single(m, AtomKind::T, -P::degree_of(m) - s, c);
}

// -2^s Gamma((m+s+1)/2) / pi^((m-s+1)/2) U*_{-m-s}
template <class P>
DistExpr<P> upsilon_term(int m, typename P::Degree s) {
  const auto g = P::gamma_half(P::degree_of(m + 1) + s);
  if (g.pole) {
    throw PoleError("Gamma((m+s+1)/2) pole at m=" + std::to_string(m) + ", s=" + P::degree_str(s));
  }
  const auto c = P::from_int(-1) * P::pow2(s) * g.value * P::pi_half_power(s - P::degree_of(m + 1));
  return DistExpr<P>::single(m, AtomKind::U, -P::degree_of(m) - s, c);
}

// (1 + e^{i pi s}) / 2 and (1 - e^{i pi s}) / 2.
std::pair<ExactScalar, ExactScalar> parity_weights(std::int64_t s) {
  return s % 2 == 0 ? std::pair{ExactScalar(1), ExactScalar(0)} : std::pair{ExactScalar(0), ExactScalar(1)};
}

std::pair<Complex, Complex> parity_weights(Complex s) {
  const Complex e = std::exp(Complex(0.0, std::numbers::pi) * s);
  auto snap = [](Complex w) { return std::abs(w) < 1e-15 ? Complex{} : w; };
  return {snap((1.0 + e) / 2.0), snap((1.0 - e) / 2.0)};
}

template <class P>
DistExpr<P> regular_kernel(Family family, typename P::Degree s, int m) {
  DistExpr<P> r(m);
  const auto [even, odd] = parity_weights(s);
  switch (family) {
  case Family::DiracPow:
    if (!P::is_zero(even)) {
      r += tau_term<P>(m, s).scaled(even);
    }
    if (!P::is_zero(odd)) {
      r += upsilon_term<P>(m, s).scaled(odd);
    }
    break;
  case Family::HilbertDirac:
    if (!P::is_zero(even)) {
      r += upsilon_term<P>(m, s).scaled(even);
    }
    if (!P::is_zero(odd)) {
      r += tau_term<P>(m, s).scaled(odd);
    }
    break;
  case Family::LaplacePow:
    r = tau_term<P>(m, s);
    break;
  case Family::LaplaceHilbert:
    r = upsilon_term<P>(m, s);
    break;
  }
  return r;
}

void check_dim(int m) {
  if (m < 2) {
    throw DimensionTooSmall("operator kernels need m >= 2");
  }
}

} // namespace

ExactExpr kernel(const OperatorId& op, int m) {
  check_dim(m);
  if (is_extended(op, m)) {
    return log_kernel(m, static_cast<int>(-m - op.order));
  }
  try {
    return regular_kernel<EP>(op.family, op.order, m);
  } catch (const PoleError& e) {
    throw UndefinedOperator(op.str() + " in dimension " + std::to_string(m) + ": " + e.what());
  }
}

NumericExpr kernel(const NumericOperatorId& op, int m) {
  check_dim(m);
  const Complex s = op.order();
  if (const auto n = NumericPolicy::as_integer(s)) {
    return to_numeric(kernel(OperatorId{op.family, *n}, m));
  }
  return regular_kernel<NumericPolicy>(op.family, s, m);
}

ExactExpr fundamental_solution(const OperatorId& op, int m) { return kernel(op.inverse(), m); }

NumericExpr fundamental_solution(const NumericOperatorId& op, int m) {
  return kernel(NumericOperatorId{op.family, -op.param}, m);
}

OperatorId step_down(const OperatorId& op) {
  switch (op.family) {
  case Family::DiracPow:
  case Family::HilbertDirac:
    return {op.family, op.order - 1};
  case Family::LaplacePow:
    return {Family::LaplaceHilbert, op.order - 1};
  case Family::LaplaceHilbert:
    return {Family::LaplacePow, op.order - 1};
  }
  return op;
}

// --- p_n, q_n ----------------------------------------------------------------

namespace {

std::shared_mutex pq_mutex;
std::map<int, PQTable> pq_cache;

void extend_table(PQTable& t, int n_max) {
  const int m = t.dim;
  const ExactScalar inv_two_pi = ExactScalar::rational(1, 2) * ExactScalar::pi_power(-2);
  if (t.p.empty()) {
    t.p.push_back(-(ExactScalar::pow2(-(m - 1)) * ExactScalar::pi_power(-2 * m)));
    t.q.emplace_back(0);
  }
  while (static_cast<int>(t.p.size()) <= n_max) {
    const int n = static_cast<int>(t.p.size()) - 1;
    const ExactScalar& p = t.p.back();
    const ExactScalar& q = t.q.back();
    if (n % 2 == 0) {
      // n = 2j -> 2j+1
      const ExactScalar mm(static_cast<std::int64_t>(m + n));
      ExactScalar p_next = -(p * inv_two_pi);
      ExactScalar q_next = -((q - p / mm) * inv_two_pi);
      t.p.push_back(std::move(p_next));
      t.q.push_back(std::move(q_next));
    } else {
      // n = 2j+1 -> 2j+2
      const ExactScalar k(static_cast<std::int64_t>(n + 1));
      ExactScalar p_next = p / k;
      ExactScalar q_next = (q - p / k) / k;
      t.p.push_back(std::move(p_next));
      t.q.push_back(std::move(q_next));
    }
  }
}

} // namespace

PQTable pq_table(int m, int n_max) {
  check_dim(m);
  if (n_max < 0) {
    throw OutOfRange("pq_table needs n_max >= 0");
  }
  auto truncated = [n_max](const PQTable& t) {
    PQTable r;
    r.dim = t.dim;
    r.p.assign(t.p.begin(), t.p.begin() + n_max + 1);
    r.q.assign(t.q.begin(), t.q.begin() + n_max + 1);
    return r;
  };
  {
    std::shared_lock lock(pq_mutex);
    auto it = pq_cache.find(m);
    if (it != pq_cache.end() && static_cast<int>(it->second.p.size()) > n_max) {
      return truncated(it->second);
    }
  }
  std::unique_lock lock(pq_mutex);
  PQTable& t = pq_cache[m];
  t.dim = m;
  extend_table(t, n_max);
  return truncated(t);
}

ExactExpr log_kernel(int m, int n) {
  if (n < 0) {
    throw OutOfRange("log_kernel needs n >= 0");
  }
  const PQTable t = pq_table(m, n);
  const bool even = n % 2 == 0;
  ExactExpr e(m);
  e.add(even ? AtomKind::LogT : AtomKind::LogU, n, t.p[n]);
  e.add(even ? AtomKind::T : AtomKind::U, n, t.q[n]);
  return e;
}

// --- boundary values ---------------------------------------------------------

std::string BoundaryValueId::str() const {
  return std::string(side == BoundarySide::A ? "a" : "b") + "_" + std::to_string(k);
}

std::optional<ExactExpr> try_boundary_value(const BoundaryValueId& id, int m) {
  try {
    return boundary_value(id, m);
  } catch (const OutOfRange&) {
    return std::nullopt;
  }
}

ExactExpr boundary_value(const BoundaryValueId& id, int m) {
  check_dim(m);
  const std::int64_t k = id.k;
  const auto out_of_range = [&](const std::string& guard) {
    return OutOfRange(id.str() + " in dimension " + std::to_string(m) + " requires " + guard);
  };
  if (id.side == BoundarySide::A) {
    if (k % 2 == 0) {
      // a_{2j} = -2^{-2j-1} Gamma((m-2j-1)/2) / pi^((m+2j+1)/2) T*_{-m+2j+1}
      const std::int64_t j = k / 2;
      if (!(2 * j + 1 < m)) {
        throw out_of_range("2k+1 < m for a_{2k}");
      }
      const auto c = -(ExactScalar::pow2(-2 * j - 1) * gamma_half(m - 2 * j - 1) *
                       ExactScalar::pi_power(static_cast<int>(-(m + 2 * j + 1))));
      return ExactExpr::single(m, AtomKind::T, -m + 2 * j + 1, c);
    }
    // a_{2j-1} = 2^{-2j} Gamma((m-2j)/2) / pi^((m+2j)/2) T*_{-m+2j}
    const std::int64_t j = (k + 1) / 2;
    if (!(2 * j < m)) {
      throw out_of_range("2k < m for a_{2k-1}");
    }
    const auto c = ExactScalar::pow2(-2 * j) * gamma_half(m - 2 * j) * ExactScalar::pi_power(static_cast<int>(-(m + 2 * j)));
    return ExactExpr::single(m, AtomKind::T, -m + 2 * j, c);
  }
  if (k % 2 == 0) {
    // b_{2j} = 2^{-2j-1} Gamma((m-2j)/2) / pi^((m+2j+2)/2) U*_{-m+2j+1}
    const std::int64_t j = k / 2;
    if (!(2 * j < m)) {
      throw out_of_range("2k < m for b_{2k}");
    }
    const auto c = ExactScalar::pow2(-2 * j - 1) * gamma_half(m - 2 * j) *
                   ExactScalar::pi_power(static_cast<int>(-(m + 2 * j + 2)));
    return ExactExpr::single(m, AtomKind::U, -m + 2 * j + 1, c);
  }
  // b_{2j-1} = -2^{-2j} Gamma((m-2j+1)/2) / pi^((m+2j+1)/2) U*_{-m+2j}
  const std::int64_t j = (k + 1) / 2;
  if (!(2 * j - 1 < m)) {
    throw out_of_range("2k-1 < m for b_{2k-1}");
  }
  const auto c = -(ExactScalar::pow2(-2 * j) * gamma_half(m - 2 * j + 1) *
                   ExactScalar::pi_power(static_cast<int>(-(m + 2 * j + 1))));
  return ExactExpr::single(m, AtomKind::U, -m + 2 * j, c);
}

// --- inverse law -------------------------------------------------------------

IdentityInstance check_inverse_law(const OperatorId& op0, int m) {
  IdentityInstance inst;
  inst.params = {op0.order};
  inst.params_str = op0.param_str();
  inst.relation = "kernel * fundamental_solution = delta";
  const ExactExpr delta = make_delta<EP>(m);
  const ExactExpr dirac1 = kernel(OperatorId::dirac(1), m);

  // kernel(op) * F(op) = F(op') * kernel(op') with op' the inverse operator;
  // run the reduction on whichever side keeps the kernel regular.
  OperatorId op = kernel(op0, m).has_log() ? op0.inverse() : op0;
  std::ostringstream note;
  if (!(op == op0)) {
    note << "logarithmic kernel, checked as " << op.str() << "; ";
  }
  int steps = 0;
  while (fundamental_solution(op, m).has_log()) {
    const OperatorId next = step_down(op);
    const ExactExpr dF = dirac_apply(fundamental_solution(op, m));
    const ExactExpr F_next = fundamental_solution(next, m);
    if (!equal(dF, F_next)) {
      inst.lhs = dF;
      inst.rhs = F_next;
      inst.note = note.str() + "d F(" + op.str() + ") != F(" + next.str() + ")";
      return inst;
    }
    const ExactExpr K_split = convolve(kernel(next, m), dirac1);
    if (!equal(K_split, kernel(op, m))) {
      inst.lhs = K_split;
      inst.rhs = kernel(op, m);
      inst.note = note.str() + "kernel(" + next.str() + ") * d delta != kernel(" + op.str() + ")";
      return inst;
    }
    op = next;
    ++steps;
  }
  if (steps > 0) {
    note << steps << " Dirac reduction step(s) to " << op.str() << "; ";
  }
  inst.lhs = convolve(kernel(op, m), fundamental_solution(op, m));
  inst.rhs = delta;
  inst.holds = equal(inst.lhs, inst.rhs);
  inst.note = note.str();
  if (!inst.note.empty() && inst.note.ends_with("; ")) {
    inst.note.resize(inst.note.size() - 2);
  }
  return inst;
}

// --- identity catalog --------------------------------------------------------

bool IdentitySweep::all_hold() const { return failures() == 0; }

std::size_t IdentitySweep::failures() const {
  std::size_t n = 0;
  for (const auto& i : instances) {
    n += i.holds ? 0 : 1;
  }
  return n;
}

namespace {

struct Sides {
  ExactExpr lhs;
  ExactExpr rhs;
  std::optional<ExactExpr> printed_rhs{};
  std::string note{};
};

class Relations {
public:
  Relations(std::string name, std::vector<std::int64_t> params, std::string params_str)
      : name_(std::move(name)), params_(std::move(params)), params_str_(std::move(params_str)) {}

  template <class F>
  void add(const std::string& relation, F&& build) {
    IdentityInstance inst;
    inst.name = name_;
    inst.params = params_;
    inst.params_str = params_str_;
    inst.relation = relation;
    try {
      Sides s = build();
      inst.holds = equal(s.lhs, s.rhs);
      if (s.printed_rhs) {
        inst.printed_holds = equal(s.lhs, *s.printed_rhs);
      }
      inst.lhs = std::move(s.lhs);
      inst.rhs = std::move(s.rhs);
      inst.note = std::move(s.note);
    } catch (const ExcludedParameters& e) {
      invalid(inst, e.what());
    } catch (const UnsupportedLogAtom& e) {
      invalid(inst, e.what());
    } catch (const OutOfRange& e) {
      invalid(inst, e.what());
    }
    out_.push_back(std::move(inst));
  }

  void add_instance(IdentityInstance inst) {
    inst.name = name_;
    inst.params = params_;
    inst.params_str = params_str_;
    out_.push_back(std::move(inst));
  }

  std::vector<IdentityInstance> take() { return std::move(out_); }

private:
  static void invalid(IdentityInstance& inst, const char* why) {
    inst.valid = false;
    inst.holds = false;
    inst.note = why;
  }

  std::string name_;
  std::vector<std::int64_t> params_;
  std::string params_str_;
  std::vector<IdentityInstance> out_;
};

ExactExpr bv(BoundarySide side, std::int64_t k, int m) { return boundary_value({side, k}, m); }
ExactExpr A(std::int64_t k, int m) { return bv(BoundarySide::A, k, m); }
ExactExpr B(std::int64_t k, int m) { return bv(BoundarySide::B, k, m); }

std::string idx(const char* s, std::int64_t k) { return std::string(s) + "_" + std::to_string(k); }

// Convolution of two operator kernels, refusing logarithmic operands and
// tuples whose right-hand side is an extended (logarithmic) kernel.
Sides semigroup(const OperatorId& x, const OperatorId& y, const OperatorId& sum, int m) {
  const ExactExpr kx = kernel(x, m);
  const ExactExpr ky = kernel(y, m);
  if (kx.has_log() || ky.has_log()) {
    throw UnsupportedLogAtom("an operand is an extended (logarithmic) kernel, outside the semigroup statement");
  }
  if (const ExtendedCase* ext = find_extended_case(sum, m)) {
    throw ExcludedParameters(std::string("sum parameter in the exceptional set: ") + ext->condition);
  }
  return {convolve(kx, ky), kernel(sum, m)};
}

using Check = std::function<void(Relations&, const std::vector<std::int64_t>&, int)>;

struct CatalogEntry {
  IdentityInfo info;
  Check check;
};

std::vector<ParamRange> square(std::int64_t lo, std::int64_t hi) { return {{lo, hi}, {lo, hi}}; }

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    const auto none = [](int) { return std::vector<ParamRange>{}; };

    v.push_back({{"prop41", "d^mu delta * d^nu delta = d^(mu+nu) delta", {"mu", "nu"}, false,
                  [](int) { return square(-4, 4); }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("d^mu delta * d^nu delta = d^(mu+nu) delta", [&] {
                     return semigroup(OperatorId::dirac(p[0]), OperatorId::dirac(p[1]), OperatorId::dirac(p[0] + p[1]), m);
                   });
                 }});

    v.push_back({{"cor42", "d^mu delta * E_mu = delta", {"mu"}, false,
                  [](int m) { return std::vector<ParamRange>{{-m - 6, m + 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add_instance(check_inverse_law(OperatorId::dirac(p[0]), m));
                 }});

    v.push_back({{"prop43", "d E_(m+n) = E_(m+n-1) (logarithmic chain)", {"n"}, false,
                  [](int) { return std::vector<ParamRange>{{0, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("d E_(m+n) = E_(m+n-1)", [&] {
                     const auto op = OperatorId::dirac(m + p[0]);
                     return Sides{dirac_apply(fundamental_solution(op, m)), fundamental_solution(step_down(op), m)};
                   });
                 }});

    v.push_back({{"prop51", "d^mu H * d^nu H = d^(mu+nu) delta (printed: d^(mu+nu) H)", {"mu", "nu"}, false,
                  [](int) { return square(-4, 4); }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("d^mu H * d^nu H = d^(mu+nu) delta", [&] {
                     const auto x = OperatorId::hilbert_dirac(p[0]);
                     const auto y = OperatorId::hilbert_dirac(p[1]);
                     Sides s = semigroup(x, y, OperatorId::dirac(p[0] + p[1]), m);
                     const auto printed = OperatorId::hilbert_dirac(p[0] + p[1]);
                     if (!is_extended(printed, m)) {
                       s.printed_rhs = kernel(printed, m);
                     }
                     s.note = "printed right-hand side is d^(mu+nu) H";
                     return s;
                   });
                 }});

    v.push_back({{"cor52", "d^mu H * F_mu = delta", {"mu"}, false,
                  [](int m) { return std::vector<ParamRange>{{-m - 6, m + 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add_instance(check_inverse_law(OperatorId::hilbert_dirac(p[0]), m));
                 }});

    v.push_back({{"prop53", "H * E_mu = F_mu", {"mu"}, false, [](int) { return std::vector<ParamRange>{{-6, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("H * E_mu = F_mu", [&] {
                     return Sides{hilbert(fundamental_solution(OperatorId::dirac(p[0]), m)),
                                  fundamental_solution(OperatorId::hilbert_dirac(p[0]), m)};
                   });
                 }});

    v.push_back({{"prop54", "d F_(m+n) = F_(m+n-1) (logarithmic chain)", {"n"}, false,
                  [](int) { return std::vector<ParamRange>{{0, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("d F_(m+n) = F_(m+n-1)", [&] {
                     const auto op = OperatorId::hilbert_dirac(m + p[0]);
                     return Sides{dirac_apply(fundamental_solution(op, m)), fundamental_solution(step_down(op), m)};
                   });
                 }});

    v.push_back({{"prop61", "(-Delta)^alpha delta * (-Delta)^beta delta = (-Delta)^(alpha+beta) delta",
                  {"2alpha", "2beta"}, true, [](int) { return square(-4, 4); }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("(-Delta)^alpha delta * (-Delta)^beta delta = (-Delta)^(alpha+beta) delta", [&] {
                     return semigroup(OperatorId::laplace(p[0]), OperatorId::laplace(p[1]),
                                      OperatorId::laplace(p[0] + p[1]), m);
                   });
                 }});

    v.push_back({{"cor62", "(-Delta)^beta delta * K_beta = delta", {"2beta"}, true,
                  [](int m) { return std::vector<ParamRange>{{-m - 12, m + 12}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add_instance(check_inverse_law(OperatorId::laplace(p[0]), m));
                 }});

    v.push_back({{"prop71", "(-Delta)^alpha H * (-Delta)^beta H = (-Delta)^(alpha+beta) delta", {"2alpha", "2beta"},
                  true, [](int) { return square(-4, 4); }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("(-Delta)^alpha H * (-Delta)^beta H = (-Delta)^(alpha+beta) delta", [&] {
                     return semigroup(OperatorId::laplace_hilbert(p[0]), OperatorId::laplace_hilbert(p[1]),
                                      OperatorId::laplace(p[0] + p[1]), m);
                   });
                 }});

    v.push_back({{"cor72", "(-Delta)^beta H * L_beta = delta", {"2beta"}, true,
                  [](int m) { return std::vector<ParamRange>{{-m - 12, m + 12}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add_instance(check_inverse_law(OperatorId::laplace_hilbert(p[0]), m));
                 }});

    v.push_back({{"prop73", "H * K_beta = L_beta", {"2beta"}, true,
                  [](int) { return std::vector<ParamRange>{{-6, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("H * K_beta = L_beta", [&] {
                     return Sides{hilbert(fundamental_solution(OperatorId::laplace(p[0]), m)),
                                  fundamental_solution(OperatorId::laplace_hilbert(p[0]), m)};
                   });
                 }});

    v.push_back({{"hilbert_kernel_dirac", "d^mu H = d^mu delta * H", {"mu"}, false,
                  [](int) { return std::vector<ParamRange>{{-6, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("d^mu H = d^mu delta * H", [&] {
                     const ExactExpr k = kernel(OperatorId::dirac(p[0]), m);
                     if (is_extended(OperatorId::hilbert_dirac(p[0]), m)) {
                       throw ExcludedParameters("d^mu H is an extended (logarithmic) kernel here");
                     }
                     return Sides{kernel(OperatorId::hilbert_dirac(p[0]), m), hilbert(k)};
                   });
                 }});

    v.push_back({{"hilbert_kernel_laplace", "(-Delta)^beta H = (-Delta)^beta delta * H", {"2beta"}, true,
                  [](int) { return std::vector<ParamRange>{{-6, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   r.add("(-Delta)^beta H = (-Delta)^beta delta * H", [&] {
                     const ExactExpr k = kernel(OperatorId::laplace(p[0]), m);
                     if (is_extended(OperatorId::laplace_hilbert(p[0]), m)) {
                       throw ExcludedParameters("(-Delta)^beta H is an extended (logarithmic) kernel here");
                     }
                     return Sides{kernel(OperatorId::laplace_hilbert(p[0]), m), hilbert(k)};
                   });
                 }});

    v.push_back({{"lemma32_i", "-d a_(-k) = b_(-k-1), -d b_(-k) = a_(-k-1)", {"k"}, false,
                  [](int) { return std::vector<ParamRange>{{1, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   const auto k = p[0];
                   r.add("-d " + idx("a", -k) + " = " + idx("b", -k - 1),
                         [&] { return Sides{-dirac_apply(A(-k, m)), B(-k - 1, m)}; });
                   r.add("-d " + idx("b", -k) + " = " + idx("a", -k - 1),
                         [&] { return Sides{-dirac_apply(B(-k, m)), A(-k - 1, m)}; });
                 }});

    v.push_back({{"lemma32_ii", "H[a_(-k)] = b_(-k), H[b_(-k)] = a_(-k)", {"k"}, false,
                  [](int) { return std::vector<ParamRange>{{1, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   const auto k = p[0];
                   r.add("H[" + idx("a", -k) + "] = " + idx("b", -k), [&] { return Sides{hilbert(A(-k, m)), B(-k, m)}; });
                   r.add("H[" + idx("b", -k) + "] = " + idx("a", -k), [&] { return Sides{hilbert(B(-k, m)), A(-k, m)}; });
                 }});

    v.push_back({{"lemma32_iii", "a_(-j) * a_(-k) = a_(-j-k+1) and the mixed/b forms", {"j", "k"}, false,
                  [](int) { return square(1, 6); }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   const auto j = p[0];
                   const auto k = p[1];
                   const auto s = -j - k + 1;
                   r.add(idx("a", -j) + " * " + idx("a", -k) + " = " + idx("a", s),
                         [&] { return Sides{convolve(A(-j, m), A(-k, m)), A(s, m)}; });
                   r.add(idx("a", -j) + " * " + idx("b", -k) + " = " + idx("b", s),
                         [&] { return Sides{convolve(A(-j, m), B(-k, m)), B(s, m)}; });
                   r.add(idx("b", -j) + " * " + idx("a", -k) + " = " + idx("b", s),
                         [&] { return Sides{convolve(B(-j, m), A(-k, m)), B(s, m)}; });
                   r.add(idx("b", -j) + " * " + idx("b", -k) + " = " + idx("a", s),
                         [&] { return Sides{convolve(B(-j, m), B(-k, m)), A(s, m)}; });
                 }});

    const auto chain_and_hilbert = [](Relations& r, std::int64_t k, int m) {
      r.add("-d " + idx("a", k) + " = " + idx("b", k - 1), [&] { return Sides{-dirac_apply(A(k, m)), B(k - 1, m)}; });
      r.add("-d " + idx("b", k) + " = " + idx("a", k - 1), [&] { return Sides{-dirac_apply(B(k, m)), A(k - 1, m)}; });
      r.add("H[" + idx("a", k) + "] = " + idx("b", k), [&] { return Sides{hilbert(A(k, m)), B(k, m)}; });
      r.add("H[" + idx("b", k) + "] = " + idx("a", k), [&] { return Sides{hilbert(B(k, m)), A(k, m)}; });
    };

    v.push_back({{"lemma33", "-d a_0 = b_(-1) = H, -d b_0 = a_(-1) = delta, H[a_0] = b_0, H[b_0] = a_0", {}, false, none},
                 [chain_and_hilbert](Relations& r, const std::vector<std::int64_t>&, int m) {
                   chain_and_hilbert(r, 0, m);
                   r.add("b_-1 = H", [&] { return Sides{B(-1, m), make_H<EP>(m)}; });
                   r.add("a_-1 = delta", [&] { return Sides{A(-1, m), make_delta<EP>(m)}; });
                 }});

    v.push_back({{"lemma35", "-d a_1 = b_0, -d b_1 = a_0, H[a_1] = b_1, H[b_1] = a_1", {}, false, none},
                 [chain_and_hilbert](Relations& r, const std::vector<std::int64_t>&, int m) {
                   chain_and_hilbert(r, 1, m);
                 }});

    v.push_back({{"lemma36", "-d a_2 = b_1, -d b_2 = a_1, H[a_2] = b_2, H[b_2] = a_2", {}, false, none},
                 [chain_and_hilbert](Relations& r, const std::vector<std::int64_t>&, int m) {
                   chain_and_hilbert(r, 2, m);
                 }});

    v.push_back({{"lemma37", "-d a_k = b_(k-1), -d b_k = a_(k-1), H[a_k] = b_k, H[b_k] = a_k", {"k"}, false,
                  [](int) { return std::vector<ParamRange>{{-6, 6}}; }},
                 [chain_and_hilbert](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   chain_and_hilbert(r, p[0], m);
                 }});

    v.push_back({{"upstream_chain", "a_k = a_i * a_(k-1-i) = b_i * b_(k-1-i), b_k = a_i * b_(k-1-i)", {"k"}, false,
                  [](int) { return std::vector<ParamRange>{{1, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   const auto k = p[0];
                   for (std::int64_t i = 0; i < k; ++i) {
                     const auto j = k - 1 - i;
                     r.add(idx("a", i) + " * " + idx("a", j) + " = " + idx("a", k),
                           [&] { return Sides{convolve(A(i, m), A(j, m)), A(k, m)}; });
                     r.add(idx("b", i) + " * " + idx("b", j) + " = " + idx("a", k),
                           [&] { return Sides{convolve(B(i, m), B(j, m)), A(k, m)}; });
                     r.add(idx("a", i) + " * " + idx("b", j) + " = " + idx("b", k),
                           [&] { return Sides{convolve(A(i, m), B(j, m)), B(k, m)}; });
                   }
                 }});

    v.push_back({{"ident_table", "a_(2k-1) = E_2k = K_k, b_2k = -E_(2k+1) = -L_(k+1/2), a_2k = -F_(2k+1) = "
                                 "-K_(k+1/2), b_(2k-1) = F_2k = L_k",
                  {"k"}, false, [](int) { return std::vector<ParamRange>{{-6, 6}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   const auto k = p[0];
                   const auto fund = [m](OperatorId op) { return fundamental_solution(op, m); };
                   r.add("a_(2k-1) = E_2k", [&] { return Sides{A(2 * k - 1, m), fund(OperatorId::dirac(2 * k))}; });
                   r.add("a_(2k-1) = K_k", [&] { return Sides{A(2 * k - 1, m), fund(OperatorId::laplace(2 * k))}; });
                   r.add("b_2k = -E_(2k+1)", [&] { return Sides{B(2 * k, m), -fund(OperatorId::dirac(2 * k + 1))}; });
                   r.add("b_2k = -L_(k+1/2)",
                         [&] { return Sides{B(2 * k, m), -fund(OperatorId::laplace_hilbert(2 * k + 1))}; });
                   r.add("a_2k = -F_(2k+1)",
                         [&] { return Sides{A(2 * k, m), -fund(OperatorId::hilbert_dirac(2 * k + 1))}; });
                   r.add("a_2k = -K_(k+1/2)", [&] { return Sides{A(2 * k, m), -fund(OperatorId::laplace(2 * k + 1))}; });
                   r.add("b_(2k-1) = F_2k",
                         [&] { return Sides{B(2 * k - 1, m), fund(OperatorId::hilbert_dirac(2 * k))}; });
                   r.add("b_(2k-1) = L_k",
                         [&] { return Sides{B(2 * k - 1, m), fund(OperatorId::laplace_hilbert(2 * k))}; });
                 }});

    v.push_back({{"sec8_table", "(-Delta)^k delta = d^2k delta, (-Delta)^(k+1/2) delta = d^(2k+1) H, "
                                "(-Delta)^k H = d^2k H, (-Delta)^(k+1/2) H = d^(2k+1) delta",
                  {"k"}, false, [](int) { return std::vector<ParamRange>{{-2, 2}}; }},
                 [](Relations& r, const std::vector<std::int64_t>& p, int m) {
                   const auto k = p[0];
                   const auto K = [m](OperatorId op) { return kernel(op, m); };
                   r.add("(-Delta)^k delta = d^2k delta",
                         [&] { return Sides{K(OperatorId::laplace(2 * k)), K(OperatorId::dirac(2 * k))}; });
                   r.add("(-Delta)^(k+1/2) delta = d^(2k+1) H", [&] {
                     return Sides{K(OperatorId::laplace(2 * k + 1)), K(OperatorId::hilbert_dirac(2 * k + 1))};
                   });
                   r.add("(-Delta)^k H = d^2k H", [&] {
                     return Sides{K(OperatorId::laplace_hilbert(2 * k)), K(OperatorId::hilbert_dirac(2 * k))};
                   });
                   r.add("(-Delta)^(k+1/2) H = d^(2k+1) delta",
                         [&] { return Sides{K(OperatorId::laplace_hilbert(2 * k + 1)), K(OperatorId::dirac(2 * k + 1))}; });
                 }});

    v.push_back({{"sec8_factor", "square-root factorizations of -Delta through d and H", {}, false, none},
                 [](Relations& r, const std::vector<std::int64_t>&, int m) {
                   const ExactExpr delta = make_delta<EP>(m);
                   const ExactExpr H = make_H<EP>(m);
                   const ExactExpr sqrt_lap = kernel(OperatorId::laplace(1), m);
                   r.add("(-Delta)^(1/2) delta = d H", [&] { return Sides{sqrt_lap, dirac_apply(H)}; });
                   r.add("d delta = (-Delta)^(1/2) H",
                         [&] { return Sides{dirac_apply(delta), kernel(OperatorId::laplace_hilbert(1), m)}; });
                   r.add("-Delta delta = (-Delta)^(1/2) delta * (-Delta)^(1/2) delta",
                         [&] { return Sides{-laplace_apply(delta), convolve(sqrt_lap, sqrt_lap)}; });
                   r.add("-Delta delta = d d delta", [&] { return Sides{-laplace_apply(delta), dirac_apply(dirac_apply(delta))}; });
                   r.add("d delta = (-Delta)^(1/2) delta * H", [&] { return Sides{dirac_apply(delta), convolve(sqrt_lap, H)}; });
                   r.add("H = (-Delta)^(1/2) delta * d^(-1) delta", [&] {
                     Sides s{H, convolve(sqrt_lap, kernel(OperatorId::dirac(-1), m))};
                     s.printed_rhs = sqrt_lap;
                     s.note = "printed form reads H = (-Delta)^(1/2) delta";
                     return s;
                   });
                 }});
    return v;
  }();
  return entries;
}

const CatalogEntry& entry(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.info.name == name) {
      return e;
    }
  }
  throw OutOfRange("unknown identity '" + name + "'");
}

std::string format_params(const IdentityInfo& info, const std::vector<std::int64_t>& params) {
  std::ostringstream os;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) {
      os << ", ";
    }
    if (info.param_is_doubled) {
      std::string name = info.param_names[i];
      if (name.starts_with("2")) {
        name = name.substr(1);
      }
      os << name << '=' << half_str(params[i]);
    } else {
      os << info.param_names[i] << '=' << params[i];
    }
  }
  return os.str();
}

} // namespace

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> infos = [] {
    std::vector<IdentityInfo> v;
    for (const auto& e : catalog()) {
      v.push_back(e.info);
    }
    return v;
  }();
  return infos;
}

const IdentityInfo& identity_info(const std::string& name) { return entry(name).info; }

std::vector<IdentityInstance> identity_check(const std::string& name, const std::vector<std::int64_t>& params, int m) {
  check_dim(m);
  const CatalogEntry& e = entry(name);
  if (params.size() != e.info.param_names.size()) {
    throw OutOfRange("identity '" + name + "' takes " + std::to_string(e.info.param_names.size()) + " parameter(s)");
  }
  Relations r(name, params, format_params(e.info, params));
  e.check(r, params, m);
  auto out = r.take();
  for (auto& inst : out) {
    if (inst.params_str.empty()) {
      inst.params_str = format_params(e.info, params);
    }
  }
  return out;
}

IdentitySweep verify_identity(const std::string& name, int m, const std::vector<ParamRange>& ranges_in) {
  const CatalogEntry& e = entry(name);
  const std::vector<ParamRange> ranges = ranges_in.empty() ? e.info.default_ranges(m) : ranges_in;
  if (ranges.size() != e.info.param_names.size()) {
    throw OutOfRange("identity '" + name + "' takes " + std::to_string(e.info.param_names.size()) + " range(s)");
  }
  IdentitySweep sweep;
  sweep.name = name;
  sweep.dim = m;
  std::vector<std::int64_t> params(ranges.size());
  const auto visit = [&](const std::vector<std::int64_t>& p) {
    for (auto& inst : identity_check(name, p, m)) {
      if (inst.valid) {
        sweep.instances.push_back(std::move(inst));
      } else {
        sweep.skipped.push_back("[" + inst.params_str + "] " + inst.relation + ": " + inst.note);
      }
    }
  };
  if (ranges.empty()) {
    visit(params);
    return sweep;
  }
  // Odometer over the cartesian product of the ranges.
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (ranges[i].lo > ranges[i].hi) {
      return sweep;
    }
    params[i] = ranges[i].lo;
  }
  while (true) {
    visit(params);
    std::size_t i = ranges.size();
    while (i > 0) {
      --i;
      if (params[i] < ranges[i].hi) {
        ++params[i];
        break;
      }
      params[i] = ranges[i].lo;
      if (i == 0) {
        return sweep;
      }
    }
  }
}

} // namespace hyperpotential
