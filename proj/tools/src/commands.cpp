#include "commands.hpp"

#include "json_io.hpp"

#include "hyperpotential/errors.hpp"
#include "hyperpotential/halfspace.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace hyperpotential::cli {

namespace {

struct Config {
  int dim{3};
  std::string mode{"exact"};
  double tol{1e-10};
  std::string output{"json"};
  bool numeric() const { return mode == "numeric"; }
};

double default_tolerance() {
  if (const char* env = std::getenv("HYPERPOTENTIAL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) {
      return v;
    }
    throw ParseError(std::string("HYPERPOTENTIAL_TOL is not a positive number: ") + env);
  }
  return 1e-10;
}

double parse_real(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double a = std::stod(s.substr(0, slash), &used);
      if (used != slash) {
        throw ParseError("");
      }
      const std::string rest = s.substr(slash + 1);
      const double b = std::stod(rest, &used);
      if (used != rest.size() || b == 0.0) {
        throw ParseError("");
      }
      return a / b;
    }
    const double v = std::stod(s, &used);
    if (used != s.size()) {
      throw ParseError("");
    }
    return v;
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'");
  }
}

// "1.5", "-5/2", "1.5+0.3i", "-0.2i".
Complex parse_complex(std::string s) {
  if (s.empty()) {
    throw ParseError("empty number");
  }
  if (s.back() != 'i') {
    return {parse_real(s), 0.0};
  }
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const auto imag = [](const std::string& t) {
    if (t.empty() || t == "+") {
      return 1.0;
    }
    if (t == "-") {
      return -1.0;
    }
    return parse_real(t);
  };
  if (split == std::string::npos) {
    return {0.0, imag(s)};
  }
  return {parse_real(s.substr(0, split)), imag(s.substr(split))};
}

// scale * v as an integer, for parameters on the exact grid.
std::int64_t on_grid(Complex v, int scale, const std::string& what) {
  const double x = v.real() * scale;
  if (v.imag() != 0.0 || std::abs(x - std::round(x)) > 1e-12) {
    throw OutOfRange(what + " is off the exact grid (" + (scale == 1 ? "integers" : "half-integers") +
                     "); use --mode numeric");
  }
  return static_cast<std::int64_t>(std::llround(x));
}

std::string read_source(const std::string& arg) {
  if (arg == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) {
      throw ParseError("cannot read " + arg.substr(1));
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

AnyExpr to_mode(const AnyExpr& e, const Config& cfg) {
  if (cfg.numeric() && std::holds_alternative<ExactExpr>(e)) {
    return to_numeric(std::get<ExactExpr>(e));
  }
  if (!cfg.numeric() && std::holds_alternative<NumericExpr>(e)) {
    throw ParseError("numeric expression given in exact mode; pass --mode numeric");
  }
  return e;
}

AnyExpr load_expr(const std::string& arg, const Config& cfg) { return to_mode(parse_expr(read_source(arg)), cfg); }

int dim_of(const AnyExpr& e) {
  return std::visit([](const auto& x) { return x.dim(); }, e);
}

std::string text_of(const AnyExpr& e) {
  return std::visit([](const auto& x) { return x.str(); }, e);
}

class Printer {
public:
  Printer(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void expr(const AnyExpr& e, Json extra = Json::object()) {
    if (cfg_.output == "text") {
      out_ << text_of(e) << '\n';
      return;
    }
    Json j = to_json(e);
    for (auto& [k, v] : extra.items()) {
      j[k] = v;
    }
    out_ << j.dump(2) << '\n';
  }

  void json(const Json& j, const std::string& text) {
    if (cfg_.output == "text") {
      out_ << text;
      if (!text.empty() && text.back() != '\n') {
        out_ << '\n';
      }
      return;
    }
    out_ << j.dump(2) << '\n';
  }

private:
  const Config& cfg_;
  std::ostream& out_;
};

// --- kernel / fundamental --------------------------------------------------

struct OperatorArgs {
  std::string family;
  std::string mu;
  std::string beta;
};

AnyExpr operator_kernel(const OperatorArgs& a, const Config& cfg, bool fundamental, Json& info) {
  const auto fam = family_from_string(a.family);
  if (!fam) {
    throw ParseError("unknown family '" + a.family + "' (dirac, hilbert-dirac, laplace, laplace-hilbert)");
  }
  const bool laplace = is_laplace_family(*fam);
  const std::string& raw = laplace ? a.beta : a.mu;
  if (raw.empty()) {
    throw ParseError(std::string("family '") + a.family + "' takes " + (laplace ? "--beta" : "--mu"));
  }
  if (!(laplace ? a.mu : a.beta).empty()) {
    throw ParseError(std::string("family '") + a.family + "' does not take " + (laplace ? "--mu" : "--beta"));
  }
  const Complex param = parse_complex(raw);
  if (cfg.numeric()) {
    const NumericOperatorId op{*fam, param};
    info["operator"] = std::string(to_string(*fam)) + (laplace ? " beta=" : " mu=") + raw;
    return fundamental ? fundamental_solution(op, cfg.dim) : kernel(op, cfg.dim);
  }
  const OperatorId op{*fam, on_grid(param, laplace ? 2 : 1, laplace ? "beta" : "mu")};
  info["operator"] = op.str();
  const OperatorId effective = fundamental ? op.inverse() : op;
  if (const ExtendedCase* ext = find_extended_case(effective, cfg.dim)) {
    info["extended"] = ext->condition;
  }
  return fundamental ? fundamental_solution(op, cfg.dim) : kernel(op, cfg.dim);
}

// --- apply / convolve --------------------------------------------------------

AnyExpr apply_op(const std::string& op, const AnyExpr& e) {
  return std::visit(
      [&](const auto& x) -> AnyExpr {
        using E = std::decay_t<decltype(x)>;
        if (op == "dirac") {
          return E(dirac_apply(x));
        }
        if (op == "laplace") {
          return E(laplace_apply(x));
        }
        if (op == "hilbert") {
          return E(hilbert(x));
        }
        if (op == "xmul") {
          return E(vector_multiply(x));
        }
        if (op == "r2mul") {
          return E(r2_multiply(x));
        }
        throw ParseError("unknown operator '" + op + "' (dirac, laplace, hilbert, xmul, r2mul)");
      },
      e);
}

AnyExpr convolve_any(const AnyExpr& a, const AnyExpr& b) {
  if (a.index() != b.index()) {
    throw ParseError("convolution operands must share a mode");
  }
  if (dim_of(a) != dim_of(b)) {
    throw DimensionMismatch("convolution operands live in different dimensions");
  }
  if (std::holds_alternative<ExactExpr>(a)) {
    return convolve(std::get<ExactExpr>(a), std::get<ExactExpr>(b));
  }
  return convolve(std::get<NumericExpr>(a), std::get<NumericExpr>(b));
}

// --- verify ----------------------------------------------------------------

struct RangeArgs {
  std::map<std::string, std::string> named; // option key -> "lo..hi"
  std::vector<std::string> generic;         // "name=lo..hi"
};

ParamRange parse_range(const std::string& text, bool doubled, const std::string& name) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    throw ParseError("range for " + name + " must read lo..hi, got '" + text + "'");
  }
  const int scale = doubled ? 2 : 1;
  ParamRange r{on_grid(parse_complex(text.substr(0, dots)), scale, name),
               on_grid(parse_complex(text.substr(dots + 2)), scale, name)};
  if (r.lo > r.hi) {
    throw ParseError("empty range for " + name);
  }
  return r;
}

// Catalog parameter name -> range, with alpha/beta given as values and
// converted to the doubled grid.
std::map<std::string, ParamRange> collect_ranges(const RangeArgs& args) {
  std::map<std::string, ParamRange> out;
  const auto put = [&](std::string name, const std::string& text) {
    bool doubled = false;
    if (name == "alpha" || name == "beta") {
      doubled = true;
      out["2" + name] = parse_range(text, true, name);
      return;
    }
    out[name] = parse_range(text, doubled, name);
  };
  for (const auto& [k, v] : args.named) {
    if (!v.empty()) {
      put(k, v);
    }
  }
  for (const auto& g : args.generic) {
    const auto eq = g.find('=');
    if (eq == std::string::npos) {
      throw ParseError("--range expects name=lo..hi, got '" + g + "'");
    }
    const std::string name = g.substr(0, eq);
    if (name.rfind("2", 0) == 0) {
      out[name] = parse_range(g.substr(eq + 1), false, name);
    } else {
      put(name, g.substr(eq + 1));
    }
  }
  return out;
}

struct SweepSummary {
  Json json;
  std::string text;
  bool ok{true};
};

SweepSummary summarize(const IdentitySweep& sweep, const std::string& statement) {
  std::size_t valid = 0;
  std::size_t printed = 0;
  std::size_t printed_agree = 0;
  Json failed = Json::array();
  for (const auto& inst : sweep.instances) {
    if (!inst.valid) {
      continue;
    }
    ++valid;
    if (inst.printed_holds) {
      ++printed;
      printed_agree += *inst.printed_holds ? 1 : 0;
    }
    if (!inst.holds && failed.size() < 20) {
      failed.push_back(to_json(inst));
    }
  }
  const std::size_t failures = sweep.failures();
  SweepSummary s;
  s.ok = failures == 0;
  s.json = {{"name", sweep.name},       {"statement", statement},         {"dim", sweep.dim},
            {"checked", valid},         {"failures", failures},           {"skipped", sweep.skipped.size()},
            {"holds", failures == 0}};
  if (printed > 0) {
    s.json["printed_form"] = {{"checked", printed}, {"agree", printed_agree}, {"disagree", printed - printed_agree}};
  }
  if (!failed.empty()) {
    s.json["failed"] = failed;
  }
  std::ostringstream t;
  t << (failures == 0 ? "PASS " : "FAIL ") << sweep.name << " (m=" << sweep.dim << "): " << valid << " checked, "
    << failures << " failed, " << sweep.skipped.size() << " skipped";
  if (printed > 0) {
    t << "; printed form agrees in " << printed_agree << "/" << printed;
  }
  t << '\n';
  s.text = t.str();
  return s;
}

IdentitySweep inverse_law_sweep(int m) {
  IdentitySweep sweep;
  sweep.name = "inverse_laws";
  sweep.dim = m;
  for (Family f : {Family::DiracPow, Family::HilbertDirac, Family::LaplacePow, Family::LaplaceHilbert}) {
    for (std::int64_t s = -(m + 8); s <= m + 8; ++s) {
      const OperatorId op{f, s};
      try {
        sweep.instances.push_back(check_inverse_law(op, m));
      } catch (const DomainError& ex) {
        sweep.skipped.push_back(op.str() + ": " + ex.what());
      }
    }
  }
  return sweep;
}

SweepSummary verify_one(const std::string& name, int m, const std::map<std::string, ParamRange>& ranges) {
  if (name == "inverse_laws") {
    return summarize(inverse_law_sweep(m),
                     "kernel * fundamental solution = delta for all four families, logarithmic cases included");
  }
  const IdentityInfo& info = identity_info(name);
  std::vector<ParamRange> r = info.default_ranges(m);
  for (std::size_t i = 0; i < info.param_names.size(); ++i) {
    if (auto it = ranges.find(info.param_names[i]); it != ranges.end()) {
      r[i] = it->second;
    }
  }
  return summarize(verify_identity(name, m, r), info.statement);
}

// --- pair ------------------------------------------------------------------

TestFunction make_test_function(const std::string& kind, int j, int p, double scale) {
  if (!(scale > 0.0)) {
    throw OutOfRange("test function scale must be positive");
  }
  if (kind == "gaussian") {
    return TestFunction::gaussian(scale);
  }
  if (kind == "moment") {
    return TestFunction::moment(j, scale);
  }
  if (kind == "poly") {
    if (p < 0) {
      throw OutOfRange("poly power must be >= 0");
    }
    return TestFunction::poly(p, scale);
  }
  throw ParseError("unknown test function '" + kind + "' (gaussian, moment, poly)");
}

PairingResult pair_via_delta(const NumericExpr& e, const TestFunction& phi) {
  const int m = e.dim();
  PairingResult total;
  total.vector_part.assign(static_cast<std::size_t>(m), NumericScalar{});
  for (const auto& a : e.atoms()) {
    const auto d = NumericPolicy::as_integer(a.degree);
    const std::int64_t depth = d ? -m - *d : -1;
    const bool on_delta = !is_log(a.kind) && d && depth >= 0 && (depth % 2 == 0) == (a.kind == AtomKind::T);
    if (!on_delta) {
      throw OutOfRange("atom " + std::string(to_string(a.kind)) + " at degree " + NumericPolicy::degree_str(a.degree) +
                       " is not a derivative of delta");
    }
    const PairingResult unit = delta_derivative(m, *d, phi);
    total.scalar_part = NumericScalar::of(total.scalar() + a.coeff * unit.scalar());
    for (int j = 0; j < m; ++j) {
      total.vector_part[j] = NumericScalar::of(total.vector_part[j].value() + a.coeff * unit.vector_part[j].value());
    }
  }
  return total;
}

std::string pairing_text(const std::string& method, const PairingResult& r) {
  std::ostringstream t;
  t.precision(15);
  t << method << ": scalar " << r.scalar();
  for (std::size_t j = 0; j < r.vector_part.size(); ++j) {
    t << " e" << j + 1 << ' ' << r.vector_part[j].value();
  }
  if (r.pole_on_grid) {
    t << " (finite-part moment on a pole dropped)";
  }
  t << '\n';
  return t.str();
}

// --- potential -------------------------------------------------------------

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    v.push_back(parse_real(item));
  }
  if (v.empty()) {
    throw ParseError("--x needs comma-separated coordinates");
  }
  return v;
}

PotentialFamily potential_family(const std::string& s) {
  if (s == "A" || s == "a") {
    return PotentialFamily::A;
  }
  if (s == "B" || s == "b") {
    return PotentialFamily::B;
  }
  if (s == "C" || s == "c") {
    return PotentialFamily::C;
  }
  throw ParseError("unknown potential family '" + s + "' (A, B, C)");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact and numeric calculus of the T*/U* distributions, operator kernels and half-space potentials",
               "hyperpotential"};
  app.fallthrough();
  app.require_subcommand(1);
  auto* dim_opt = app.add_option("--dim,-m", cfg.dim, "Dimension m of R^m")->check(CLI::Range(2, 12));
  app.add_option("--mode", cfg.mode, "Arithmetic mode")->check(CLI::IsMember({"exact", "numeric"}));
  std::optional<double> tol_flag;
  app.add_option("--tol", tol_flag, "Numeric tolerance (default $HYPERPOTENTIAL_TOL or 1e-10)");
  app.add_option("--output,-o", cfg.output, "Output format")->check(CLI::IsMember({"json", "text"}));

  OperatorArgs op_args;
  auto* kernel_cmd = app.add_subcommand("kernel", "Convolution kernel of an operator");
  auto* fund_cmd = app.add_subcommand("fundamental", "Fundamental solution of an operator");
  for (auto* c : {kernel_cmd, fund_cmd}) {
    c->add_option("--family,-f", op_args.family, "dirac | hilbert-dirac | laplace | laplace-hilbert")->required();
    c->add_option("--mu", op_args.mu, "Order of the Dirac families (e.g. 3, or 1.5+0.2i in numeric mode)");
    c->add_option("--beta", op_args.beta, "Exponent of the Laplace families (e.g. -5/2)");
  }

  std::string side;
  std::int64_t bk = 0;
  auto* boundary_cmd = app.add_subcommand("boundary", "Boundary value a_k or b_k");
  boundary_cmd->add_option("--side", side, "a | b")->required()->check(CLI::IsMember({"a", "b", "A", "B"}));
  boundary_cmd->add_option("--k", bk, "Index k")->required()->allow_extra_args(false);

  std::string apply_op_name;
  std::string expr_arg;
  auto* apply_cmd = app.add_subcommand("apply", "Apply an operator to an expression");
  apply_cmd->add_option("--op", apply_op_name, "dirac | laplace | hilbert | xmul | r2mul")->required();
  apply_cmd->add_option("--expr,-e", expr_arg, "Expression JSON, @file or - for stdin")->required();

  std::string lhs_arg;
  std::string rhs_arg;
  auto* conv_cmd = app.add_subcommand("convolve", "Convolve two expressions");
  conv_cmd->add_option("--lhs", lhs_arg, "Expression JSON, @file or -")->required();
  conv_cmd->add_option("--rhs", rhs_arg, "Expression JSON, @file or -")->required();

  std::string verify_name;
  bool list_only = false;
  RangeArgs range_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check catalog identities exactly over a parameter grid");
  verify_cmd->add_option("--name,-n", verify_name, "Identity name, inverse_laws, or all");
  verify_cmd->add_flag("--list", list_only, "List the identity catalog");
  for (const char* p : {"mu", "nu", "alpha", "beta", "k", "j", "n"}) {
    verify_cmd->add_option(std::string("--") + p + "-range", range_args.named[p], std::string("Range lo..hi for ") + p);
  }
  verify_cmd->add_option("--range", range_args.generic, "name=lo..hi for any catalog parameter");

  std::string pair_expr;
  std::string test_kind{"gaussian"};
  int test_j = 1;
  int test_p = 0;
  double test_scale = 1.0;
  std::string method{"closed"};
  std::optional<int> order;
  auto* pair_cmd = app.add_subcommand("pair", "Pair an expression with a test function");
  pair_cmd->add_option("--expr,-e", pair_expr, "Expression JSON, @file or -")->required();
  pair_cmd->add_option("--test", test_kind, "gaussian | moment | poly");
  pair_cmd->add_option("--j", test_j, "Component of the moment test function");
  pair_cmd->add_option("--p", test_p, "Power of r^(2p) in the poly test function");
  pair_cmd->add_option("--scale", test_scale, "t in exp(-t r^2)");
  pair_cmd->add_option("--method", method, "closed | quadrature | delta | all")
      ->check(CLI::IsMember({"closed", "quadrature", "delta", "all"}));
  pair_cmd->add_option("--order", order, "Taylor subtraction order for quadrature");

  std::string pot_family{"C"};
  int pot_k = -1;
  double x0 = 1.0;
  std::string x_arg;
  double step = 1e-3;
  auto* pot_cmd = app.add_subcommand("potential", "Evaluate a half-space potential with residual diagnostics");
  pot_cmd->add_option("--family,-f", pot_family, "A | B | C");
  pot_cmd->add_option("--k", pot_k, "Index in [-3, 2]");
  pot_cmd->add_option("--x0", x0, "Height above the boundary");
  pot_cmd->add_option("--x", x_arg, "Comma-separated boundary coordinates")->required();
  pot_cmd->add_option("--step", step, "Finite-difference step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    cfg.tol = tol_flag ? *tol_flag : default_tolerance();
    if (!(cfg.tol > 0.0)) {
      throw ParseError("--tol must be positive");
    }
    Printer print(cfg, out);

    if (kernel_cmd->parsed() || fund_cmd->parsed()) {
      Json info = Json::object();
      const AnyExpr e = operator_kernel(op_args, cfg, fund_cmd->parsed(), info);
      print.expr(e, info);
      return kOk;
    }
    if (boundary_cmd->parsed()) {
      const BoundaryValueId id{side == "a" || side == "A" ? BoundarySide::A : BoundarySide::B, bk};
      const ExactExpr e = boundary_value(id, cfg.dim);
      print.expr(to_mode(e, cfg), Json{{"boundary_value", id.str()}});
      return kOk;
    }
    if (apply_cmd->parsed()) {
      print.expr(apply_op(apply_op_name, load_expr(expr_arg, cfg)));
      return kOk;
    }
    if (conv_cmd->parsed()) {
      print.expr(convolve_any(load_expr(lhs_arg, cfg), load_expr(rhs_arg, cfg)));
      return kOk;
    }
    if (verify_cmd->parsed()) {
      if (list_only) {
        Json list = Json::array();
        std::ostringstream t;
        for (const auto& info : identity_catalog()) {
          list.push_back({{"name", info.name}, {"statement", info.statement}, {"params", info.param_names}});
          t << info.name << ": " << info.statement << '\n';
        }
        list.push_back({{"name", "inverse_laws"}, {"statement", "kernel * fundamental solution = delta"}});
        t << "inverse_laws: kernel * fundamental solution = delta\n";
        print.json(list, t.str());
        return kOk;
      }
      if (verify_name.empty()) {
        throw ParseError("verify needs --name (an identity, inverse_laws or all) or --list");
      }
      const auto ranges = collect_ranges(range_args);
      std::vector<std::string> names;
      if (verify_name == "all") {
        for (const auto& info : identity_catalog()) {
          names.push_back(info.name);
        }
        names.emplace_back("inverse_laws");
      } else {
        names.push_back(verify_name);
      }
      Json report = Json::array();
      std::string text;
      bool ok = true;
      for (const auto& n : names) {
        const SweepSummary s = verify_one(n, cfg.dim, ranges);
        report.push_back(s.json);
        text += s.text;
        ok = ok && s.ok;
      }
      print.json(Json{{"dim", cfg.dim}, {"identities", report}, {"all_hold", ok}}, text);
      if (!ok) {
        err << "verification failed\n";
      }
      return ok ? kOk : kVerificationFailed;
    }
    if (pair_cmd->parsed()) {
      const AnyExpr parsed = parse_expr(read_source(pair_expr));
      const NumericExpr e =
          std::holds_alternative<ExactExpr>(parsed) ? to_numeric(std::get<ExactExpr>(parsed)) : std::get<NumericExpr>(parsed);
      const TestFunction phi = make_test_function(test_kind, test_j, test_p, test_scale);
      std::vector<std::pair<std::string, PairingResult>> results;
      const bool all = method == "all";
      if (method == "closed" || all) {
        results.emplace_back("closed", pair_gaussian(e, phi));
      }
      if (method == "quadrature" || all) {
        try {
          const int k = order ? *order : minimal_subtraction_order(e, phi) + 2;
          results.emplace_back("quadrature", pair_quadrature(e, phi, k, cfg.tol));
        } catch (const OutOfRange& ex) {
          if (!all) {
            throw;
          }
          err << "quadrature skipped: " << ex.what() << '\n';
        }
      }
      if (method == "delta" || all) {
        try {
          results.emplace_back("delta", pair_via_delta(e, phi));
        } catch (const OutOfRange& ex) {
          if (!all) {
            throw;
          }
          err << "delta route skipped: " << ex.what() << '\n';
        }
      }
      Json j{{"test_function", phi.str()}};
      std::string text;
      for (const auto& [name, r] : results) {
        j[name] = to_json(r);
        text += pairing_text(name, r);
      }
      bool agree = true;
      if (results.size() > 1) {
        double worst = 0.0;
        double limit = 0.0;
        for (std::size_t i = 1; i < results.size(); ++i) {
          worst = std::max(worst, pairing_relative_error(results[0].second, results[i].second));
          // Finite differences carry ~1e-8 truncation error.
          limit = std::max(limit, results[i].first == "delta" ? std::max(cfg.tol, 1e-6) : cfg.tol);
        }
        agree = worst <= limit;
        j["max_relative_difference"] = worst;
        j["agree"] = agree;
        std::ostringstream t;
        t << "max relative difference " << worst << (agree ? " (agree)" : " (DISAGREE)") << '\n';
        text += t.str();
      }
      print.json(j, text);
      return agree ? kOk : kVerificationFailed;
    }
    if (pot_cmd->parsed()) {
      HalfSpacePoint p{x0, parse_point(x_arg)};
      if (dim_opt->count() > 0 && p.dim() != cfg.dim) {
        throw DimensionMismatch("--x has " + std::to_string(p.dim()) + " coordinates but --dim is " +
                                std::to_string(cfg.dim));
      }
      const PotentialId id{potential_family(pot_family), pot_k};
      const Multivector v = evaluate(id, p);
      Json j{{"potential", id.str()}, {"dim", p.dim()}, {"x0", x0}, {"x", p.x}, {"value", to_json(v)}};
      std::ostringstream t;
      t.precision(15);
      t << id.str() << " = " << v.str() << '\n';
      Json diag = Json::object();
      try {
        if (id.family == PotentialFamily::C) {
          const double r = monogenicity_residual(id, p, step);
          diag["monogenicity_residual"] = r;
          t << "|D C| = " << r << '\n';
        }
        if (id.k > -3) {
          const double r = dbar_residual(id, p, step);
          diag["dbar_residual"] = r;
          t << "|Dbar " << id.str() << " - C_" << id.k - 1 << "| = " << r << '\n';
        }
      } catch (const StepTooLarge& ex) {
        diag["skipped"] = ex.what();
        t << "residuals skipped: " << ex.what() << '\n';
      }
      diag["step"] = step;
      j["diagnostics"] = diag;
      print.json(j, t.str());
      return kOk;
    }
  } catch (const DomainError& e) {
    err << "hyperpotential: " << e.what() << '\n';
    return kDomainError;
  } catch (const nlohmann::json::exception& e) {
    err << "hyperpotential: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsage;
}

} // namespace hyperpotential::cli
