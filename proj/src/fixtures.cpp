#include "covrep/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "covrep/errors.hpp"

namespace covrep {

namespace {

void require_unit_interval(const GridPtr& grid, const std::string& name) {
    if (std::abs(grid->alpha) > 1e-12 || std::abs(grid->beta - 1.0) > 1e-12)
        throw PreconditionError("fixture '" + name + "' lives on [0,1]");
}

// compactly supported bump on |u| < 1, smooth enough to be resolved by the
// working grids (C^7 joins at the support edges)
double bump(double u) {
    const double v = 1.0 - u * u;
    return v > 0.0 ? std::pow(v, 8) : 0.0;
}

}  // namespace

Fixture make_const_coeff(const GridPtr& grid, double a0, double b0, double c0) {
    Fixture f;
    f.name = "const-coeff";
    f.grid = grid;
    f.A = IntegralOp{Kernel::separable(constant_sample(grid, a0), constant_sample(grid, c0))};
    f.B = DiffOp{constant_sample(grid, b0)};
    f.F = PolynomialSpec::monomial(1);
    f.powers = {1, 2, 3, 4, 5};
    f.q_ac = a0 * c0 * (grid->beta - grid->alpha);
    return f;
}

Fixture make_disjoint_support(const GridPtr& grid) {
    require_unit_interval(grid, "disjoint-support");
    Fixture f;
    f.name = "disjoint-support";
    f.grid = grid;
    // supp c in [0.1, 0.4], supp b in [0.6, 0.9]; a is affine with the
    // constant tuned so the quadrature of a c vanishes exactly
    const auto c = sample(grid, [](double t) { return bump((t - 0.25) / 0.15); });
    const auto b = sample(grid, [](double t) { return bump((t - 0.75) / 0.15); });
    auto a = sample(grid, [](double t) { return t - 0.25; });
    a.values.array() -= quadrature(pointwise_product(a, c)) / quadrature(c);
    f.A = IntegralOp{Kernel::separable(a, c)};
    f.B = DiffOp{b};
    f.F = PolynomialSpec::from_coeffs({0.0, 0.0, 1.0, 1.0});  // delta_1 = 0
    f.q_ac = 0.0;
    return f;
}

Fixture make_example3(const GridPtr& grid, int relation_power) {
    require_unit_interval(grid, "example3");
    const double ln2 = std::numbers::ln2;
    Fixture f;
    f.name = "example3";
    f.grid = grid;
    const auto a = sample(grid, [&](double t) { return (t + 1.0) * ln2; });
    const auto c = sample(grid, [&](double s) { return 1.0 / (ln2 * ln2 * (s + 1.0) * (s + 1.0)); });
    f.A = IntegralOp{Kernel::separable(a, c)};
    f.B = DiffOp{-1.0 * a};
    f.F = PolynomialSpec::monomial(relation_power);
    f.powers = {1, 2, 3, 4, 5};
    f.q_ac = 1.0;
    f.lambda = -ln2;
    return f;
}

Fixture make_example4(const GridPtr& grid, double gamma0, double lambda) {
    require_unit_interval(grid, "example4");
    if (gamma0 == 0.0 || gamma0 == -0.5)
        throw PreconditionError("example4: gamma0 in {0, -1/2} is degenerate");
    // (xi0 + 2 gamma0)^3 = 8 gamma0 (1 + 2 gamma0)
    const double xi0 = std::cbrt(8.0 * gamma0 * (1.0 + 2.0 * gamma0)) - 2.0 * gamma0;
    const double cube = std::pow(xi0 + 2.0 * gamma0, 3);
    Fixture f;
    f.name = "example4";
    f.grid = grid;
    const auto a = sample(grid, [&](double t) { return 0.5 * t + gamma0; });
    const auto c = sample(grid, [&](double s) { return cube / std::pow(s + 2.0 * gamma0, 3); });
    f.A = IntegralOp{Kernel::separable(a, c)};
    f.B = DiffOp{lambda * a};
    f.F = PolynomialSpec::monomial(2);
    f.powers = {2};
    f.q_ac = 2.0;
    f.lambda = lambda;
    return f;
}

bool is_known_fixture(const std::string& name) {
    return name == "const-coeff" || name == "disjoint-support" || name == "example3" ||
           name == "example4";
}

Fixture make_fixture(const std::string& name, const GridPtr& grid) {
    if (name == "const-coeff") return make_const_coeff(grid);
    if (name == "disjoint-support") return make_disjoint_support(grid);
    if (name == "example3") return make_example3(grid);
    if (name == "example4") return make_example4(grid);
    throw PreconditionError("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
    return {"const-coeff", "disjoint-support", "example3", "example4", "final-ode"};
}

}  // namespace covrep
