#pragma once

#include "hyperpotential/cliffordnum.hpp"
#include "hyperpotential/distcalc.hpp"
#include "hyperpotential/kernels.hpp"
#include "hyperpotential/oracle.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace hyperpotential::cli {

using Json = nlohmann::ordered_json;

// Expression in either arithmetic mode, as read from JSON.
using AnyExpr = std::variant<ExactExpr, NumericExpr>;

// {dim, mode, atoms: [...]}. Exact coefficients are {num, den, pi_half} with
// num and den as decimal strings; numeric ones are {re, im}. A logarithmic
// atom and the plain atom of the same kind and degree render together as
// {kind: "LogT"|"LogU", degree, p, q}.
Json to_json(const ExactExpr& e);
Json to_json(const NumericExpr& e);
Json to_json(const AnyExpr& e);

// Inverse of to_json; throws ParseError on malformed input.
AnyExpr expr_from_json(const Json& j);
AnyExpr parse_expr(const std::string& text);

Json to_json(const ExactScalar& c);
Json to_json(Complex z);
Json to_json(const NumericScalar& s);
Json to_json(const PairingResult& r);
Json to_json(const Multivector& v);
Json to_json(const IdentityInstance& inst);

} // namespace hyperpotential::cli
