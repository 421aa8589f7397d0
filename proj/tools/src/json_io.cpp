#include "json_io.hpp"

#include "hyperpotential/errors.hpp"

#include <set>

namespace hyperpotential::cli {

namespace {

template <class P>
Json render(const DistExpr<P>& e, const char* mode, auto&& coeff, auto&& degree) {
  Json atoms = Json::array();
  std::set<std::size_t> merged;
  const auto& list = e.atoms();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& a = list[i];
    if (!is_log(a.kind)) {
      continue;
    }
    const AtomKind plain = a.kind == AtomKind::LogT ? AtomKind::T : AtomKind::U;
    Json q = coeff(typename P::Coeff{});
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k].kind == plain && P::same_degree(list[k].degree, a.degree)) {
        q = coeff(list[k].coeff);
        merged.insert(k);
      }
    }
    atoms.push_back({{"kind", to_string(a.kind)}, {"degree", degree(a.degree)}, {"p", coeff(a.coeff)}, {"q", q}});
  }
  Json plain_atoms = Json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& a = list[i];
    if (is_log(a.kind) || merged.count(i) != 0) {
      continue;
    }
    plain_atoms.push_back({{"kind", to_string(a.kind)}, {"degree", degree(a.degree)}, {"coeff", coeff(a.coeff)}});
  }
  for (auto& a : atoms) {
    plain_atoms.push_back(std::move(a));
  }
  return Json{{"dim", e.dim()}, {"mode", mode}, {"atoms", std::move(plain_atoms)}};
}

[[noreturn]] void fail(const std::string& what) { throw ParseError("expression JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

BigInt big_from(const Json& j, const char* key) {
  const Json& v = field(j, key);
  try {
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos) {
        fail(std::string("'") + key + "' is not an integer: " + s);
      }
      return BigInt(s);
    }
    if (v.is_number_integer()) {
      return BigInt(v.get<std::int64_t>());
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& ex) {
    fail(std::string("'") + key + "': " + ex.what());
  }
  fail(std::string("'") + key + "' must be a decimal string or an integer");
}

ExactScalar exact_coeff(const Json& j) {
  const BigInt den = big_from(j, "den");
  if (den == 0) {
    fail("zero denominator");
  }
  const Json& h = field(j, "pi_half");
  if (!h.is_number_integer()) {
    fail("'pi_half' must be an integer");
  }
  return ExactScalar(big_from(j, "num"), den, h.get<int>());
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) {
    fail(std::string("'") + key + "' must be a number");
  }
  return v.get<double>();
}

Complex numeric_value(const Json& j) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  return {number(j, "re"), j.contains("im") ? number(j, "im") : 0.0};
}

std::int64_t exact_degree(const Json& j) {
  if (!j.is_number_integer()) {
    fail("exact degrees are integers");
  }
  return j.get<std::int64_t>();
}

AtomKind kind_of(const Json& a) {
  const Json& k = field(a, "kind");
  if (!k.is_string()) {
    fail("'kind' must be a string");
  }
  const auto kind = atom_kind_from_string(k.get<std::string>());
  if (!kind) {
    fail("unknown atom kind '" + k.get<std::string>() + "'");
  }
  return *kind;
}

template <class P>
DistExpr<P> read(const Json& j, int dim, auto&& coeff, auto&& degree) {
  DistExpr<P> e(dim);
  const Json& atoms = field(j, "atoms");
  if (!atoms.is_array()) {
    fail("'atoms' must be an array");
  }
  for (const Json& a : atoms) {
    const AtomKind kind = kind_of(a);
    const auto d = degree(field(a, "degree"));
    if (is_log(kind) && (a.contains("p") || a.contains("q"))) {
      const AtomKind plain = kind == AtomKind::LogT ? AtomKind::T : AtomKind::U;
      if (a.contains("p")) {
        e.add(kind, d, coeff(a.at("p")));
      }
      if (a.contains("q")) {
        e.add(plain, d, coeff(a.at("q")));
      }
    } else {
      e.add(kind, d, coeff(field(a, "coeff")));
    }
  }
  return e;
}

} // namespace

Json to_json(const ExactScalar& c) {
  return {{"num", c.num().str()}, {"den", c.den().str()}, {"pi_half", c.pi_half()}};
}

Json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const NumericScalar& s) {
  if (s.is_pole) {
    return {{"pole", true}};
  }
  return to_json(s.value());
}

Json to_json(const ExactExpr& e) {
  return render(
      e, "exact", [](const ExactScalar& c) { return to_json(c); }, [](std::int64_t d) { return Json(d); });
}

Json to_json(const NumericExpr& e) {
  return render(
      e, "numeric", [](Complex c) { return to_json(c); }, [](Complex d) { return to_json(d); });
}

Json to_json(const AnyExpr& e) {
  return std::visit([](const auto& x) { return to_json(x); }, e);
}

AnyExpr expr_from_json(const Json& j) {
  const Json& dim = field(j, "dim");
  if (!dim.is_number_integer()) {
    fail("'dim' must be an integer");
  }
  const int m = dim.get<int>();
  if (m < 1) {
    fail("'dim' must be positive");
  }
  const std::string mode = j.contains("mode") ? j.at("mode").get<std::string>() : "exact";
  try {
    if (mode == "exact") {
      return read<ExactPolicy>(j, m, exact_coeff, exact_degree);
    }
    if (mode == "numeric") {
      return read<NumericPolicy>(j, m, numeric_value, numeric_value);
    }
  } catch (const nlohmann::json::exception& ex) {
    fail(ex.what());
  }
  fail("unknown mode '" + mode + "'");
}

AnyExpr parse_expr(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  return expr_from_json(j);
}

Json to_json(const PairingResult& r) {
  Json vec = Json::array();
  for (const auto& v : r.vector_part) {
    vec.push_back(to_json(v));
  }
  return {{"scalar", to_json(r.scalar_part)}, {"vector", vec}, {"pole_on_grid", r.pole_on_grid}};
}

Json to_json(const Multivector& v) {
  Json terms = Json::array();
  for (const auto& [blade, c] : v.terms()) {
    Json idx = Json::array();
    for (int j = 0; j < v.dim(); ++j) {
      if (blade & (Blade{1} << j)) {
        idx.push_back(j);
      }
    }
    terms.push_back({{"blade", idx}, {"coeff", c}});
  }
  return {{"dim", v.dim()}, {"terms", terms}};
}

Json to_json(const IdentityInstance& inst) {
  Json j{{"name", inst.name}, {"params", inst.params_str}, {"relation", inst.relation}, {"valid", inst.valid}};
  if (inst.valid) {
    j["holds"] = inst.holds;
    if (inst.printed_holds) {
      j["printed_holds"] = *inst.printed_holds;
    }
    j["lhs"] = inst.lhs.str();
    j["rhs"] = inst.rhs.str();
  }
  if (!inst.note.empty()) {
    j["note"] = inst.note;
  }
  return j;
}

} // namespace hyperpotential::cli
