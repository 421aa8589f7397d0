#include "support/reference.hpp"

#include "hyperpotential/errors.hpp"
#include "hyperpotential/kernels.hpp"

#include <doctest.h>

#include <thread>

using namespace hyperpotential;
using ref::pi;

namespace {

ExactScalar S(std::int64_t n, std::int64_t d, int h = 0) { return ExactScalar(BigInt(n), BigInt(d), h); }

double c(const ExactExpr& e, AtomKind k, std::int64_t d) { return e.coeff(k, d).to_double(); }

bool gamma_pole(double x) { return x <= 0.0 && std::floor(x) == x; }

struct Expected {
  double t{0.0};
  double u{0.0};
  bool regular{true};
};

// Regular kernel formulas evaluated in double precision. The T atom sits at
// degree -m-order, the U atom likewise.
Expected regular_kernel(Family f, int m, std::int64_t order) {
  const double s = static_cast<double>(order);
  const bool even = order % 2 == 0;
  Expected e;
  const auto t_part = [&] {
    if (gamma_pole((m + s) / 2)) {
      e.regular = false;
      return 0.0;
    }
    return std::pow(2.0, s) * std::tgamma((m + s) / 2) / std::pow(pi, (m - s) / 2);
  };
  const auto u_part = [&] {
    if (gamma_pole((m + s + 1) / 2)) {
      e.regular = false;
      return 0.0;
    }
    return std::pow(2.0, s) * std::tgamma((m + s + 1) / 2) / std::pow(pi, (m - s + 1) / 2);
  };
  switch (f) {
  case Family::DiracPow:
    if (even) {
      e.t = t_part();
    } else {
      e.u = -u_part();
    }
    break;
  case Family::HilbertDirac:
    if (even) {
      e.u = -u_part();
    } else {
      e.t = t_part();
    }
    break;
  case Family::LaplacePow:
    e.t = t_part();
    break;
  case Family::LaplaceHilbert:
    e.u = -u_part();
    break;
  }
  return e;
}

const Family kFamilies[] = {Family::DiracPow, Family::HilbertDirac, Family::LaplacePow, Family::LaplaceHilbert};

} // namespace

TEST_CASE("kernel examples") {
  for (int m = 2; m <= 8; ++m) {
    CAPTURE(m);
    CHECK(equal(kernel(OperatorId::dirac(0), m), make_delta<ExactPolicy>(m)));
    CHECK(equal(kernel(OperatorId::laplace(0), m), make_delta<ExactPolicy>(m)));
    CHECK(equal(kernel(OperatorId::hilbert_dirac(0), m), make_H<ExactPolicy>(m)));
    CHECK(equal(kernel(OperatorId::laplace_hilbert(0), m), make_H<ExactPolicy>(m)));
    for (int k = 0; k <= 3; ++k) {
      const auto K = kernel(OperatorId::dirac(2 * k), m);
      const double expected = std::pow(2.0, 2 * k) * std::tgamma((m + 2.0 * k) / 2) / std::pow(pi, (m - 2.0 * k) / 2);
      CHECK(ref::close(c(K, AtomKind::T, -m - 2 * k), expected, 1e-13));
      CHECK(K.atoms().size() == 1);
    }
    const auto hd = kernel(OperatorId::hilbert_dirac(1), m);
    CHECK(ref::close(c(hd, AtomKind::T, -m - 1), 2.0 * std::tgamma((m + 1.0) / 2) / std::pow(pi, (m - 1.0) / 2), 1e-13));
    CHECK(equal(kernel(OperatorId::laplace(1), m), hd));
  }
}

TEST_CASE("regular kernels match the Gamma formulas") {
  for (int m = 2; m <= 7; ++m) {
    for (auto f : kFamilies) {
      for (std::int64_t order = -2 * m - 4; order <= 8; ++order) {
        const OperatorId op{f, order};
        CAPTURE(op.str());
        CAPTURE(m);
        const auto exp = regular_kernel(f, m, order);
        CHECK(exp.regular != is_extended(op, m));
        if (!exp.regular) {
          continue;
        }
        const auto K = kernel(op, m);
        CHECK(ref::close(c(K, AtomKind::T, -m - order), exp.t, 1e-12));
        CHECK(ref::close(c(K, AtomKind::U, -m - order), exp.u, 1e-12));
        CHECK(K.atoms().size() == (exp.t != 0.0) + (exp.u != 0.0));
        // The fundamental solution is the kernel at the opposite parameter.
        if (!is_extended(op.inverse(), m)) {
          CHECK(equal(fundamental_solution(op, m), kernel(op.inverse(), m)));
        }
      }
    }
  }
}

TEST_CASE("extended kernels are logarithmic") {
  // m even: d^(-m-n) is E_{m+n}; m odd: the Hilbert-Dirac family.
  for (int m = 2; m <= 7; ++m) {
    for (int n = 0; n <= 6; ++n) {
      const auto fam = m % 2 == 0 ? Family::DiracPow : Family::HilbertDirac;
      const OperatorId op{fam, -m - n};
      REQUIRE(is_extended(op, m));
      const auto K = kernel(op, m);
      CHECK(K.has_log());
      CHECK(equal(K, log_kernel(m, n)));
      CHECK(equal(fundamental_solution(op.inverse(), m), K));
    }
  }
  for (const auto& row : extended_cases()) {
    CHECK(std::string(row.condition).size() > 0);
  }
}

TEST_CASE("fundamental solutions as functions") {
  // E_1 in R^3 is -(1/sigma_3) x / |x|^3: U*_{-2} = pi x / |x|^3.
  const auto E1 = fundamental_solution(OperatorId::dirac(1), 3);
  CHECK(ref::close(c(E1, AtomKind::U, -2) * pi, -1.0 / ref::sphere(3), 1e-13));
  CHECK(equal(E1, ExactExpr::single(3, AtomKind::U, -2, S(-1, 4, -4))));
  // K_{1/2} in R^3 is the Riesz kernel r^-2 / (2 pi^2); T*_{-2} = r^-2.
  const auto K = fundamental_solution(OperatorId::laplace(1), 3);
  CHECK(ref::close(c(K, AtomKind::T, -2), 1.0 / (2.0 * pi * pi), 1e-13));
  // E_2 in R^2 is -ln(r) / (2 pi); T*_0 = pi in R^2.
  const auto E2 = fundamental_solution(OperatorId::dirac(2), 2);
  CHECK(ref::close(c(E2, AtomKind::LogT, 0) * pi, -1.0 / (2.0 * pi), 1e-13));
  // Classical Newton kernel -1 / ((m-2) sigma_m r^(m-2)) as E_2 for m >= 3;
  // T*_{2-m} = pi r^(2-m).
  for (int m = 3; m <= 8; ++m) {
    const auto E = fundamental_solution(OperatorId::dirac(2), m);
    CHECK(ref::close(c(E, AtomKind::T, 2 - m) * pi, 1.0 / ((m - 2) * ref::sphere(m)), 1e-13));
  }
}

TEST_CASE("p_n and q_n") {
  for (int m = 2; m <= 9; ++m) {
    CAPTURE(m);
    const auto t = pq_table(m, 12);
    REQUIRE(t.p.size() == 13);
    CHECK(t.p[0] == -(ExactScalar::pow2(1 - m) * ExactScalar::pi_power(-2 * m)));
    CHECK(t.q[0].is_zero());
    CHECK(ref::close(t.p[1].to_double(), 1.0 / (std::pow(2.0, m) * std::pow(pi, m + 1)), 1e-13));
    CHECK(ref::close(t.q[1].to_double(), -1.0 / (m * std::pow(2.0, m) * std::pow(pi, m + 1)), 1e-13));
    CHECK(ref::close(t.p[2].to_double(), 1.0 / (std::pow(2.0, m + 1) * std::pow(pi, m + 1)), 1e-13));
    const ExactScalar two_pi = S(2, 1, 2);
    for (int j = 0; 2 * j + 2 <= 12; ++j) {
      const auto& p0 = t.p[2 * j];
      const auto& q0 = t.q[2 * j];
      const auto& p1 = t.p[2 * j + 1];
      const auto& q1 = t.q[2 * j + 1];
      CHECK(p1 == -p0 / two_pi);
      CHECK(q1 == -(q0 - p0 / ExactScalar(m + 2 * j)) / two_pi);
      CHECK(t.p[2 * j + 2] == p1 / ExactScalar(2 * j + 2));
      CHECK(t.q[2 * j + 2] == (q1 - p1 / ExactScalar(2 * j + 2)) / ExactScalar(2 * j + 2));
    }
    // The logarithmic chain d F_{m+n} = F_{m+n-1}.
    for (int n = 1; n <= 6; ++n) {
      CHECK(equal(dirac_apply(log_kernel(m, n)), log_kernel(m, n - 1)));
    }
  }
}

TEST_CASE("p_n and q_n tables are safe to build concurrently") {
  std::vector<std::thread> pool;
  std::vector<int> ok(8, 0);
  for (int i = 0; i < 8; ++i) {
    pool.emplace_back([i, &ok] {
      const int m = 2 + i % 4;
      const auto a = pq_table(m, 20 + i);
      const auto b = pq_table(m, 10);
      ok[static_cast<std::size_t>(i)] = a.p[10] == b.p[10] && a.q[10] == b.q[10];
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (int v : ok) {
    CHECK(v == 1);
  }
}

TEST_CASE("boundary values match the printed displays") {
  for (int m = 2; m <= 8; ++m) {
    CAPTURE(m);
    const double sm = ref::sphere(m);
    const double sm1 = ref::sphere(m + 1);
    const auto bv = [&](BoundarySide s, int k) { return boundary_value({s, k}, m); };
    CHECK(equal(bv(BoundarySide::A, -1), make_delta<ExactPolicy>(m)));
    CHECK(equal(bv(BoundarySide::B, -1), make_H<ExactPolicy>(m)));
    CHECK(ref::close(c(bv(BoundarySide::B, -2), AtomKind::U, -m - 1), 2.0 * m / sm, 1e-13));
    CHECK(equal(bv(BoundarySide::B, -2), -dirac_apply(make_delta<ExactPolicy>(m))));
    CHECK(ref::close(c(bv(BoundarySide::A, -2), AtomKind::T, -m - 1), -4.0 * pi / sm1, 1e-13));
    for (int l = 1; l <= 4; ++l) {
      const double am2l = -std::pow(2.0, 2 * l - 1) * std::tgamma((m + 2.0 * l - 1) / 2) / std::pow(pi, (m - 2.0 * l + 1) / 2);
      const double bm2l = std::pow(2.0, 2 * l - 1) * std::tgamma((m + 2.0 * l) / 2) / std::pow(pi, (m - 2.0 * l + 2) / 2);
      const double am2l1 = std::pow(2.0, 2 * l) * std::tgamma((m + 2.0 * l) / 2) / std::pow(pi, (m - 2.0 * l) / 2);
      const double bm2l1 = -std::pow(2.0, 2 * l) * std::tgamma((m + 2.0 * l + 1) / 2) / std::pow(pi, (m - 2.0 * l + 1) / 2);
      CHECK(ref::close(c(bv(BoundarySide::A, -2 * l), AtomKind::T, -m - 2 * l + 1), am2l, 1e-13));
      CHECK(ref::close(c(bv(BoundarySide::B, -2 * l), AtomKind::U, -m - 2 * l + 1), bm2l, 1e-13));
      CHECK(ref::close(c(bv(BoundarySide::A, -2 * l - 1), AtomKind::T, -m - 2 * l), am2l1, 1e-13));
      CHECK(ref::close(c(bv(BoundarySide::B, -2 * l - 1), AtomKind::U, -m - 2 * l), bm2l1, 1e-13));
    }
    CHECK(ref::close(c(bv(BoundarySide::A, 0), AtomKind::T, 1 - m), -2.0 / ((m - 1) * sm1), 1e-13));
    CHECK(ref::close(c(bv(BoundarySide::B, 0), AtomKind::U, 1 - m), 1.0 / (pi * sm), 1e-13));
    if (m >= 3) {
      CHECK(ref::close(c(bv(BoundarySide::A, 1), AtomKind::T, 2 - m), 1.0 / (pi * sm * (m - 2)), 1e-13));
      CHECK(ref::close(c(bv(BoundarySide::B, 1), AtomKind::U, 2 - m), -1.0 / (pi * sm1 * (m - 1)), 1e-13));
      CHECK(ref::close(c(bv(BoundarySide::B, 2), AtomKind::U, 3 - m), 1.0 / (2 * pi * pi * sm * (m - 2)), 1e-13));
    } else {
      CHECK_THROWS_AS(bv(BoundarySide::A, 1), OutOfRange);
    }
    if (m >= 4) {
      CHECK(ref::close(c(bv(BoundarySide::A, 2), AtomKind::T, 3 - m), -1.0 / (pi * (m - 1) * (m - 3) * sm1), 1e-13));
    } else {
      CHECK_THROWS_AS(bv(BoundarySide::A, 2), OutOfRange);
      CHECK_FALSE(try_boundary_value({BoundarySide::A, 2}, m).has_value());
    }
    // General upstream displays.
    for (int k = 0; 2 * k + 1 < m; ++k) {
      const double a2k = -std::pow(2.0, -2 * k - 1) * std::tgamma((m - 2.0 * k - 1) / 2) / std::pow(pi, (m + 2.0 * k + 1) / 2);
      CHECK(ref::close(c(bv(BoundarySide::A, 2 * k), AtomKind::T, -m + 2 * k + 1), a2k, 1e-13));
    }
    for (int k = 1; 2 * k < m; ++k) {
      const double a2k1 = std::pow(2.0, -2 * k) * std::tgamma((m - 2.0 * k) / 2) / std::pow(pi, (m + 2.0 * k) / 2);
      const double b2k = std::pow(2.0, -2 * k - 1) * std::tgamma((m - 2.0 * k) / 2) / std::pow(pi, (m + 2.0 * k + 2) / 2);
      const double b2k1 = -std::pow(2.0, -2 * k) * std::tgamma((m - 2.0 * k + 1) / 2) / std::pow(pi, (m + 2.0 * k + 1) / 2);
      CHECK(ref::close(c(bv(BoundarySide::A, 2 * k - 1), AtomKind::T, -m + 2 * k), a2k1, 1e-13));
      CHECK(ref::close(c(bv(BoundarySide::B, 2 * k), AtomKind::U, -m + 2 * k + 1), b2k, 1e-13));
      CHECK(ref::close(c(bv(BoundarySide::B, 2 * k - 1), AtomKind::U, -m + 2 * k), b2k1, 1e-13));
    }
  }
  // a_1 in R^5 is |x|^-3 / (3 sigma_5).
  CHECK(ref::close(c(boundary_value({BoundarySide::A, 1}, 5), AtomKind::T, -3) * pi, 1.0 / (3.0 * ref::sphere(5)), 1e-13));
}

TEST_CASE("boundary chain and identifications") {
  for (int m = 2; m <= 7; ++m) {
    CAPTURE(m);
    for (int k = -6; k <= 6; ++k) {
      const auto a = try_boundary_value({BoundarySide::A, k}, m);
      const auto b = try_boundary_value({BoundarySide::B, k}, m);
      const auto a1 = try_boundary_value({BoundarySide::A, k - 1}, m);
      const auto b1 = try_boundary_value({BoundarySide::B, k - 1}, m);
      if (a && b1) {
        CHECK(equal(-dirac_apply(*a), *b1));
      }
      if (b && a1) {
        CHECK(equal(-dirac_apply(*b), *a1));
      }
      if (a && b) {
        CHECK(equal(hilbert(*a), *b));
        CHECK(equal(hilbert(*b), *a));
      }
    }
    for (int j = 1; j <= 5; ++j) {
      for (int k = 1; k <= 5; ++k) {
        const auto A = [&](int i) { return boundary_value({BoundarySide::A, -i}, m); };
        const auto B = [&](int i) { return boundary_value({BoundarySide::B, -i}, m); };
        CHECK(equal(convolve(B(j), B(k)), A(j + k - 1)));
        CHECK(equal(convolve(A(j), B(k)), B(j + k - 1)));
        CHECK(equal(convolve(B(j), A(k)), B(j + k - 1)));
      }
    }
    for (int k = 1; 2 * k < m; ++k) {
      CHECK(equal(boundary_value({BoundarySide::A, 2 * k - 1}, m), fundamental_solution(OperatorId::dirac(2 * k), m)));
      CHECK(equal(boundary_value({BoundarySide::A, 2 * k - 1}, m), fundamental_solution(OperatorId::laplace(2 * k), m)));
    }
    for (int k = 0; 2 * k + 1 < m; ++k) {
      CHECK(equal(boundary_value({BoundarySide::B, 2 * k}, m), -fundamental_solution(OperatorId::dirac(2 * k + 1), m)));
    }
  }
}

TEST_CASE("identity catalog holds") {
  for (int m = 2; m <= 5; ++m) {
    for (const auto& info : identity_catalog()) {
      CAPTURE(m);
      CAPTURE(info.name);
      const auto sweep = verify_identity(info.name, m);
      CHECK(sweep.all_hold());
      CHECK(sweep.failures() == 0);
    }
  }
}

TEST_CASE("named identity instances") {
  const auto p41 = identity_check("prop41", {2, 3}, 4);
  REQUIRE(!p41.empty());
  for (const auto& inst : p41) {
    CHECK(inst.valid);
    CHECK(inst.holds);
  }
  for (int k = 1; k <= 5; ++k) {
    for (const auto& inst : identity_check("lemma32_i", {k}, 3)) {
      CHECK(inst.holds);
    }
  }
  CHECK(equal(kernel(OperatorId::dirac(1), 3), kernel(OperatorId::laplace_hilbert(1), 3)));
  // The printed right-hand side d^(mu+nu) H of the Hilbert-Dirac semigroup
  // does not hold; the computed one, d^(mu+nu) delta, does.
  const auto p51 = identity_check("prop51", {1, 2}, 3);
  REQUIRE(!p51.empty());
  CHECK(p51[0].holds);
  REQUIRE(p51[0].printed_holds.has_value());
  CHECK_FALSE(*p51[0].printed_holds);
  CHECK(equal(convolve(kernel(OperatorId::hilbert_dirac(1), 3), kernel(OperatorId::hilbert_dirac(2), 3)),
              kernel(OperatorId::dirac(3), 3)));
  CHECK_THROWS(identity_info("no_such_identity"));
}

TEST_CASE("inverse laws including logarithmic cases") {
  for (int m = 2; m <= 6; ++m) {
    for (auto f : kFamilies) {
      for (std::int64_t s = -m - 8; s <= m + 8; ++s) {
        const auto inst = check_inverse_law({f, s}, m);
        CAPTURE(inst.params_str);
        CAPTURE(inst.note);
        if (inst.valid) {
          CHECK(inst.holds);
        }
      }
    }
  }
}

TEST_CASE("step_down") {
  for (auto f : kFamilies) {
    for (std::int64_t s = -6; s <= 6; ++s) {
      const OperatorId op{f, s};
      const auto d = step_down(op);
      CHECK(d.order == s - 1);
    }
  }
  // kernel(op) = kernel(step_down(op)) * d delta where both are regular.
  for (int m = 3; m <= 6; ++m) {
    const auto dd = kernel(OperatorId::dirac(1), m);
    for (auto f : kFamilies) {
      for (std::int64_t s = 1; s <= 5; ++s) {
        const OperatorId op{f, s};
        if (is_extended(op, m) || is_extended(step_down(op), m)) {
          continue;
        }
        CHECK(equal(kernel(op, m), convolve(kernel(step_down(op), m), dd)));
      }
    }
  }
}

TEST_CASE("numeric kernels") {
  for (int m = 2; m <= 6; ++m) {
    for (auto f : kFamilies) {
      for (std::int64_t s = -3; s <= 4; ++s) {
        const OperatorId op{f, s};
        if (is_extended(op, m)) {
          continue;
        }
        const Complex param = is_laplace_family(f) ? Complex(s / 2.0, 0.0) : Complex(static_cast<double>(s), 0.0);
        CHECK(approx_equal(kernel(NumericOperatorId{f, param}, m), to_numeric(kernel(op, m)), 1e-11));
      }
    }
  }
  // Semigroup at complex parameters.
  for (int m = 2; m <= 5; ++m) {
    for (auto f : {Family::DiracPow, Family::LaplacePow}) {
      const Complex mu{0.3, 0.2};
      const Complex nu{-1.1, 0.45};
      const auto lhs = convolve(kernel(NumericOperatorId{f, mu}, m), kernel(NumericOperatorId{f, nu}, m));
      CHECK(approx_equal(lhs, kernel(NumericOperatorId{f, mu + nu}, m), 1e-10));
    }
  }
}
