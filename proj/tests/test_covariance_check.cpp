#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covrep/errors.hpp"
#include "covrep/fixtures.hpp"
#include "covrep/residuals.hpp"

using namespace covrep;

namespace {
constexpr double kPi = std::numbers::pi;
GridPtr unit_grid(int n = 64) { return build_grid(n, 0.0, 1.0); }
}  // namespace

TEST_CASE("residual_direct") {
    const auto grid = unit_grid();
    const auto fam = make_test_family(grid, 12, FamilyKind::endpoint_vanishing);

    SUBCASE("zero integral operator with delta_0 = 0 gives zero residual") {
        const IntegralOp A{Kernel::dense(grid, Eigen::MatrixXd::Zero(grid->n, grid->n))};
        const DiffOp B{constant_sample(grid, 1.0)};
        const auto r = residual_direct(LinearOp{A}, LinearOp{B}, PolynomialSpec::monomial(2), fam);
        CHECK(r.max_residual == 0.0);
        CHECK(r.pass);
    }

    SUBCASE("worked fixture satisfies AB = BA^n for n = 1..5") {
        const Fixture ex3 = make_example3(grid);
        for (int n = 1; n <= 5; ++n) {
            const auto r = residual_direct(LinearOp{ex3.A}, LinearOp{ex3.B},
                                           PolynomialSpec::monomial(n), fam);
            CHECK(r.max_residual <= 1e-8);
            CHECK(r.per_member.size() == 12);
        }
    }

    SUBCASE("perturbing b breaks the identity") {
        Fixture ex3 = make_example3(grid);
        ex3.B.multiplier = ex3.B.multiplier + constant_sample(grid, 0.1);
        const auto r = residual_direct(LinearOp{ex3.A}, LinearOp{ex3.B},
                                       PolynomialSpec::monomial(1), fam);
        CHECK(r.max_residual >= 1e-3);
        CHECK_FALSE(r.pass);
    }

    SUBCASE("empty family is rejected") {
        const Fixture ex3 = make_example3(grid);
        CHECK_THROWS_AS(residual_direct(LinearOp{ex3.A}, LinearOp{ex3.B}, ex3.F, TestFamily{}),
                        PreconditionError);
    }
}

TEST_CASE("residual_eq3 and residual_eq4") {
    const auto grid = unit_grid();
    const Fixture ex4 = make_example4(grid);
    const auto vanishing = make_test_family(grid, 8, FamilyKind::endpoint_vanishing);
    const auto unconstrained = make_test_family(grid, 8, FamilyKind::unconstrained);

    SUBCASE("boundary terms vanish on endpoint-vanishing members") {
        const auto r3 = residual_eq3(ex4.A, ex4.B, ex4.F, vanishing);
        const auto r4 = residual_eq4(ex4.A, ex4.B, ex4.F, vanishing);
        REQUIRE(r3.per_member.size() == r4.per_member.size());
        for (std::size_t i = 0; i < r3.per_member.size(); ++i)
            CHECK(std::abs(r3.per_member[i].residual - r4.per_member[i].residual) <= 1e-12);
        CHECK(r4.max_residual <= 1e-8);
    }

    SUBCASE("eq3 defect on general members equals the analytic boundary term") {
        // the fixture satisfies the endpoint-vanishing condition, so for any x
        // the eq3 defect reduces to |k(t,1)b(1)x(1) - k(t,0)b(0)x(0)| / sup|x|
        const auto r3 = residual_eq3(ex4.A, ex4.B, ex4.F, unconstrained);
        const auto& a = ex4.A.kernel.a_factor().values;
        const auto& c = ex4.A.kernel.c_factor().values;
        const auto& b = ex4.B.multiplier.values;
        const int last = grid->n - 1;
        const double amax = a.cwiseAbs().maxCoeff();
        for (const auto& m : r3.per_member) {
            const auto& x = unconstrained.members[m.member];
            const double boundary = std::abs(c(last) * b(last) * x.values(last) -
                                             c(0) * b(0) * x.values(0)) *
                                    amax / sup_norm(x);
            CHECK(m.residual == doctest::Approx(boundary).epsilon(1e-6));
        }
        // polynomial members do not vanish at the endpoints: nonzero is expected
        CHECK(r3.max_residual > 1e-3);
    }

    SUBCASE("zero kernel with delta_0 = 0: both conditions hold exactly") {
        const IntegralOp zero{Kernel::dense(grid, Eigen::MatrixXd::Zero(grid->n, grid->n))};
        const auto r3 = residual_eq3(zero, ex4.B, PolynomialSpec::monomial(1), unconstrained);
        CHECK(r3.max_residual == 0.0);
        // F(t) = t with A = 0 and B = 0
        const DiffOp zero_b{zero_sample(grid)};
        const auto r4 = residual_eq4(zero, zero_b, PolynomialSpec::monomial(1), vanishing);
        CHECK(r4.max_residual == 0.0);
    }

    SUBCASE("eq4 requires the endpoint-vanishing kind") {
        CHECK_THROWS_AS(residual_eq4(ex4.A, ex4.B, ex4.F, unconstrained), PreconditionError);
    }
}

TEST_CASE("residual_eq5") {
    const auto grid = unit_grid();

    SUBCASE("worked separable family balances pointwise") {
        const Fixture ex4 = make_example4(grid, 0.5, 2.0);
        CHECK(residual_eq5(ex4.A.kernel, ex4.B.multiplier, ex4.F) <= 1e-8);
    }

    SUBCASE("zero kernel gives zero") {
        const Kernel zero = Kernel::dense(grid, Eigen::MatrixXd::Zero(grid->n, grid->n));
        CHECK(residual_eq5(zero, constant_sample(grid, 1.0), PolynomialSpec::monomial(2)) == 0.0);
    }

    SUBCASE("detuned xi0 breaks the balance") {
        // c built with xi0 = 1.1 instead of the consistent root 1
        const double gamma0 = 0.5, xi0 = 1.1;
        const double cube = std::pow(xi0 + 2.0 * gamma0, 3);
        const auto a = sample(grid, [&](double t) { return 0.5 * t + gamma0; });
        const auto c = sample(grid, [&](double s) { return cube / std::pow(s + 2.0 * gamma0, 3); });
        const auto b = 2.0 * a;
        CHECK(residual_eq5(Kernel::separable(a, c), b, PolynomialSpec::monomial(2)) >= 1e-3);
    }

    SUBCASE("nonzero delta_0 is rejected") {
        const Fixture ex4 = make_example4(grid);
        CHECK_THROWS_AS(residual_eq5(ex4.A.kernel, ex4.B.multiplier,
                                     PolynomialSpec::from_coeffs({1.0, 0.0, 1.0})),
                        PreconditionError);
    }
}

TEST_CASE("residual_eq14") {
    const auto grid = unit_grid();

    SUBCASE("zero kernel with admissible a") {
        const auto a = sample(grid, [](double t) { return t * (1.0 - t); });
        const Kernel zero = Kernel::dense(grid, Eigen::MatrixXd::Zero(grid->n, grid->n));
        CHECK(residual_eq14(zero, a, PolynomialSpec::monomial(2)) == 0.0);
    }

    SUBCASE("generic kernel yields a strictly positive residual") {
        const auto a = sample(grid, [](double t) { return t * (1.0 - t); });
        Eigen::MatrixXd values(grid->n, grid->n);
        for (int i = 0; i < grid->n; ++i)
            for (int j = 0; j < grid->n; ++j)
                values(i, j) = std::sin(3.0 * grid->nodes(i)) + grid->nodes(j);
        const double r = residual_eq14(Kernel::dense(grid, values), a,
                                       PolynomialSpec::monomial(2));
        CHECK(r > 1e-3);
    }

    SUBCASE("boundary precondition") {
        const auto bad = sample(grid, [](double t) { return t + 1.0; });
        const Kernel zero = Kernel::dense(grid, Eigen::MatrixXd::Zero(grid->n, grid->n));
        CHECK_THROWS_WITH_AS(residual_eq14(zero, bad, PolynomialSpec::monomial(2)),
                             doctest::Contains("a(alpha)=a(beta)=0"), PreconditionError);
        // declared boundary values override the window samples
        CHECK_NOTHROW(residual_eq14(zero, bad, PolynomialSpec::monomial(2),
                                    std::make_pair(0.0, 0.0)));
    }
}

TEST_CASE("equivalence between pointwise and integrated conditions") {
    // whenever eq5 is satisfied to ~1e-10, eq4 over a 12-member family stays
    // below 1e-8 (the integral is bounded by the pointwise defect)
    const auto grid = unit_grid();
    const auto fam = make_test_family(grid, 12, FamilyKind::endpoint_vanishing);
    for (const auto& fixture :
         {make_example3(grid), make_example3(grid, 3), make_example4(grid)}) {
        CAPTURE(fixture.name);
        CAPTURE(fixture.F.degree());
        const double eq5 = residual_eq5(fixture.A.kernel, fixture.B.multiplier, fixture.F);
        REQUIRE(eq5 <= 1e-10);
        const auto r4 = residual_eq4(fixture.A, fixture.B, fixture.F, fam);
        CHECK(r4.max_residual <= 1e-8);
    }
}

TEST_CASE("perturbation raises both eq5 and the direct residual") {
    const auto grid = unit_grid();
    const auto fam = make_test_family(grid, 12, FamilyKind::endpoint_vanishing);
    for (auto fixture : {make_example3(grid), make_example4(grid)}) {
        CAPTURE(fixture.name);
        fixture.B.multiplier = fixture.B.multiplier + constant_sample(grid, 0.1);
        CHECK(residual_eq5(fixture.A.kernel, fixture.B.multiplier, fixture.F) >= 1e-3);
        const auto rd = residual_direct(LinearOp{fixture.A}, LinearOp{fixture.B}, fixture.F, fam);
        CHECK(rd.max_residual >= 1e-3);
    }
}

TEST_CASE("relative residuals are scale covariant") {
    const auto grid = unit_grid();
    const Fixture ex3 = make_example3(grid);
    TestFamily fam = make_test_family(grid, 4, FamilyKind::endpoint_vanishing);
    const auto base = residual_direct(LinearOp{ex3.A}, LinearOp{ex3.B}, ex3.F, fam);
    for (auto& x : fam.members) x = 37.5 * x;
    const auto scaled = residual_direct(LinearOp{ex3.A}, LinearOp{ex3.B}, ex3.F, fam);
    for (std::size_t i = 0; i < base.per_member.size(); ++i) {
        const double b = base.per_member[i].residual;
        const double s = scaled.per_member[i].residual;
        CHECK(std::abs(b - s) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("support_sets") {
    const auto grid = unit_grid();

    SUBCASE("constant functions: Omega_a empty, all case flags pass") {
        const auto a = constant_sample(grid, 2.0);
        const auto b = constant_sample(grid, -1.0);
        const auto c = constant_sample(grid, 0.5);
        const auto rep = support_sets(a, b, c, default_epsilon_supp({&a, &b, &c}));
        CHECK(rep.omega_a.empty());
        CHECK(rep.supp_a_prime.empty());
        CHECK(rep.supp_c_prime.empty());
        CHECK(rep.case2b_empty);
        CHECK(rep.case2c_pass);
        CHECK(rep.case2d_pass);
        CHECK(rep.bc_constant);
        CHECK(rep.gamma0_estimate == doctest::Approx(-0.5));
    }

    SUBCASE("disjoint-support fixture") {
        const Fixture f = make_disjoint_support(grid);
        const auto& a = f.A.kernel.a_factor();
        const auto& c = f.A.kernel.c_factor();
        const auto& b = f.B.multiplier;
        CHECK(std::abs(quadrature(pointwise_product(a, c))) <= 1e-12);
        // default epsilon for the value supports (samples are exact zeros
        // off-support); derivative supports need a threshold above the
        // spectral interpolation noise of the bumps
        const auto tight = support_sets(a, b, c, default_epsilon_supp({&a, &b, &c}));
        CHECK(tight.supp_b_c_disjoint);
        const auto rep = support_sets(a, b, c, 1e-2);
        CHECK(rep.supp_b_c_disjoint);
        CHECK(rep.case2b_empty);
    }

    SUBCASE("bump over a zero crossing of c violates case 2b") {
        // c crosses zero at t = 0.5 with c' = 1 there; the nodes nearest the
        // crossing fall outside Omega_c at this threshold while c' and the
        // bump b stay above it, so the case-2b intersection is nonempty
        const auto a = sample(grid, [](double t) { return t + 0.5; });
        const auto c = sample(grid, [](double t) { return t - 0.5; });
        const auto b = sample(grid, [](double t) {
            const double u = (t - 0.5) / 0.1;
            return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
        });
        const auto rep = support_sets(a, b, c, 0.02);
        CHECK_FALSE(rep.case2b_empty);
        CHECK_FALSE(rep.supp_b_c_disjoint);
    }

    SUBCASE("epsilon must be positive") {
        const auto a = constant_sample(grid, 1.0);
        CHECK_THROWS_AS(support_sets(a, a, a, 0.0), PreconditionError);
    }
}

TEST_CASE("report structure and serialization") {
    const auto grid = unit_grid(16);
    const Fixture ex3 = make_example3(grid);
    const auto fam = make_test_family(grid, 3, FamilyKind::endpoint_vanishing);
    const auto r = residual_direct(LinearOp{ex3.A}, LinearOp{ex3.B}, ex3.F, fam, 1e-8);

    CHECK(r.pass == (r.max_residual <= r.tolerance));
    for (const auto& m : r.per_member) CHECK(m.residual >= 0.0);

    const std::string j = to_json(r);
    CHECK(j.find("\"condition_id\": \"direct-covariance\"") != std::string::npos);
    CHECK(j.find("\"per_member\"") != std::string::npos);
    const std::string table = render_table(r);
    CHECK(table.find("direct-covariance") != std::string::npos);
    CHECK(table.find("PASS") != std::string::npos);
}
