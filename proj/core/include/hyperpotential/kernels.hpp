#pragma once

#include "hyperpotential/distcalc.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hyperpotential {

// The four convolution operator families:
//   DiracPow        d^mu           kernel d^mu delta
//   HilbertDirac    ^mu H          kernel d^mu H
//   LaplacePow      (-Delta)^beta  kernel (-Delta)^beta delta
//   LaplaceHilbert  ^beta L        kernel (-Delta)^beta H
enum class Family { DiracPow, HilbertDirac, LaplacePow, LaplaceHilbert };

const char* to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);
inline bool is_laplace_family(Family f) { return f == Family::LaplacePow || f == Family::LaplaceHilbert; }

// Operator on the exact grid. `order` is the differential order: mu for the
// Dirac families, 2*beta for the Laplace families, so half-integer beta is an
// odd order.
struct OperatorId {
  Family family{Family::DiracPow};
  std::int64_t order{0};

  static OperatorId dirac(std::int64_t mu) { return {Family::DiracPow, mu}; }
  static OperatorId hilbert_dirac(std::int64_t mu) { return {Family::HilbertDirac, mu}; }
  static OperatorId laplace(std::int64_t twice_beta) { return {Family::LaplacePow, twice_beta}; }
  static OperatorId laplace_hilbert(std::int64_t twice_beta) { return {Family::LaplaceHilbert, twice_beta}; }

  OperatorId inverse() const { return {family, -order}; }
  // Parameter as written in the paper: "mu=3", "beta=-5/2".
  std::string param_str() const;
  std::string str() const;
  bool operator==(const OperatorId&) const = default;
};

// Operator at an arbitrary complex parameter (mu or beta).
struct NumericOperatorId {
  Family family{Family::DiracPow};
  Complex param{};
  Complex order() const { return is_laplace_family(family) ? 2.0 * param : param; }
};

// One row of the extended-definition table: for these (m, order) pairs the
// regular Gamma formula hits a pole and the kernel is the logarithmic
// fundamental solution (p_N ln r + q_N) T*_N or U*_N, N = -m - order.
struct ExtendedCase {
  Family family;
  const char* condition;
  std::function<bool(int m, std::int64_t order)> applies;
};

const std::vector<ExtendedCase>& extended_cases();

// Matching row of extended_cases(), if any.
const ExtendedCase* find_extended_case(const OperatorId& op, int m);
inline bool is_extended(const OperatorId& op, int m) { return find_extended_case(op, m) != nullptr; }

// Convolution kernel of the operator (regular formula or extended definition).
ExactExpr kernel(const OperatorId& op, int m);
NumericExpr kernel(const NumericOperatorId& op, int m);

// E_mu, F_mu, K_beta or L_beta: the kernel of the same family at the
// opposite parameter.
ExactExpr fundamental_solution(const OperatorId& op, int m);
NumericExpr fundamental_solution(const NumericOperatorId& op, int m);

// Family and order reached by one Dirac factor: kernel(op) =
// kernel(step_down(op)) * d delta, and d fundamental_solution(op) =
// fundamental_solution(step_down(op)).
OperatorId step_down(const OperatorId& op);

struct PQTable {
  int dim{0};
  std::vector<ExactScalar> p;
  std::vector<ExactScalar> q;
};

// Coefficients of the logarithmic kernels (p_n ln r + q_n) T*_n / U*_n for
// n = 0..n_max. Tables are cached per dimension.
PQTable pq_table(int m, int n_max);

// (p_n ln r + q_n) times T*_n (n even) or U*_n (n odd).
ExactExpr log_kernel(int m, int n);

enum class BoundarySide { A, B };

struct BoundaryValueId {
  BoundarySide side{BoundarySide::A};
  std::int64_t k{0};
  std::string str() const;
};

// Boundary value a_k or b_k of the conjugate harmonic potentials. Throws
// OutOfRange outside the index window where the closed form exists.
ExactExpr boundary_value(const BoundaryValueId& id, int m);
// Same as boundary_value but returns nullopt outside the window.
std::optional<ExactExpr> try_boundary_value(const BoundaryValueId& id, int m);

// --- identity catalog --------------------------------------------------------

struct IdentityInstance {
  std::string name;
  std::vector<std::int64_t> params;
  std::string params_str;
  std::string relation;
  // False when the tuple lies outside the relation's validity set; `note`
  // then names the violated condition and lhs/rhs are unset.
  bool valid{true};
  bool holds{false};
  // For statements whose printed right-hand side differs from the computed
  // one: whether the printed form also holds.
  std::optional<bool> printed_holds;
  ExactExpr lhs{2};
  ExactExpr rhs{2};
  std::string note;
};

struct IdentitySweep {
  std::string name;
  int dim{0};
  std::vector<IdentityInstance> instances;
  // Grid points outside the identity's validity set, with reasons.
  std::vector<std::string> skipped;
  bool all_hold() const;
  std::size_t failures() const;
};

struct ParamRange {
  std::int64_t lo{0};
  std::int64_t hi{0};
};

struct IdentityInfo {
  std::string name;
  std::string statement;
  // Parameter names; Laplace-family parameters are given as 2*alpha, 2*beta.
  std::vector<std::string> param_names;
  bool param_is_doubled{false};
  // Default grid for dimension m.
  std::function<std::vector<ParamRange>(int m)> default_ranges;
};

const std::vector<IdentityInfo>& identity_catalog();
const IdentityInfo& identity_info(const std::string& name);

// Builds and compares both sides of every relation of one identity at one
// parameter tuple. Relations outside their validity set come back with
// valid = false.
std::vector<IdentityInstance> identity_check(const std::string& name, const std::vector<std::int64_t>& params, int m);

// Enumerates the grid (default ranges when `ranges` is empty), recording
// invalid tuples in `skipped`.
IdentitySweep verify_identity(const std::string& name, int m, const std::vector<ParamRange>& ranges = {});

// kernel(op) * fundamental_solution(op) = delta, reducing logarithmic
// fundamental solutions through d F_{s} = F_{s-1} until a regular pair is
// reached.
IdentityInstance check_inverse_law(const OperatorId& op, int m);

} // namespace hyperpotential
