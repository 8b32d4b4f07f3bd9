#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covrep/residuals.hpp"

namespace covrep {

/*
 * Scalar data of the separable constructions. k1_const is the scalar
 *   k1 = sum_k delta_k (int a c)^{k-1}
 * that selects the case structure; it is distinct from the kernel iterate
 * of order 1 (see Kernel::iterate_integral).
 */
struct ConstructionParams {
    double lambda_scale = 1.0;  // lambda linking b to a
    double xi0 = 0.0;           // base point of the exponential formula for c
    double k1_const = 0.0;
    double q_ac = 0.0;          // Q = int a c
    double delta_mono = 1.0;    // delta of the monomial relation ABx = delta B A^n x
    int n_power = 1;            // n of that relation
    double gamma0 = 0.0;
    double nu0 = 0.0;           // a(t) = nu0 t^m  or  a(t) = nu0 + nu1 t
    double nu1 = 0.0;
    int m_power = 2;
};

// b = lambda a / (k1 a') on Omega_a, zero outside. Errors: k1 = 0 (case 1
// applies instead), or Omega_a empty (constant a).
FunctionSample build_b_from_a(const FunctionSample& a, const ConstructionParams& params);

// c_{xi0}(s) = exp( int_{xi0}^{s} (-k1 a'^2 + a a'' - a'^2) / (a a') dtau ),
// accumulated through the Chebyshev antiderivative; c(xi0) = 1 exactly.
// Errors: singular integrand at a node (named in the message), xi0 outside
// Omega_a.
FunctionSample build_c_from_a(const FunctionSample& a, const ConstructionParams& params);

struct Xi0Roots {
    std::vector<double> roots;  // ascending
    // g is identically zero (degree-1 polynomial with delta_1 = k1, or a
    // xi0-independent c): every xi0 in [alpha, beta] solves the equation.
    bool entire_interval = false;
};

/*
 * Roots xi0 in [alpha, beta] of
 *   g(xi0) = sum_k delta_k (int a c_{xi0})^{k-1} - k1_target,
 * found by sign-change bracketing on a scan grid plus bisection to 1e-12.
 */
Xi0Roots solve_xi0_general(const FunctionSample& a, const PolynomialSpec& F, double k1_target);

enum class Xi0Verdict { real_solution, no_real_solution, undefined_power };

std::string verdict_name(Xi0Verdict verdict);

struct ClosedFormXi0 {
    Xi0Verdict verdict = Xi0Verdict::no_real_solution;
    std::vector<double> roots;  // ascending, filtered to [alpha, beta]
    // The equation is xi0-independent and satisfied: any admissible xi0 works.
    bool any_xi0 = false;
    std::string branch;  // which case analysis produced the outcome
};

enum class AFamily { monomial, affine };

/*
 * Closed-form xi0 for the two special families of the consistency equation
 * of the monomial relation ABx = delta B A^n x with target Q = int a c:
 *
 *   monomial  a(t) = nu0 t^m   (m >= 2)
 *   affine    a(t) = nu0 + nu1 t  (nu1 != 0)
 *
 * Every enumerated sub-case is implemented (the K != 1 / K = 1 integral
 * split with K = delta Q^{n-1}, sign conditions, rational-exponent parity
 * for negative bases, the undefined irrational-power verdict). Parameters
 * that fall outside the enumerated branches (e.g. a negative base raised to
 * a non-integer power inside the equation itself) raise ConstructionError.
 */
ClosedFormXi0 solve_xi0_closed_form(AFamily family, const ConstructionParams& params,
                                    double alpha, double beta);

struct SeparableRepresentation {
    IntegralOp A;
    DiffOp B;
    ConstructionParams params;
    std::vector<double> xi0_roots;  // all roots found; params.xi0 is the one used
    double eq5_residual = 0.0;
    double k1_recomputed = 0.0;
};

/*
 * Assembles the case-2 separable representation for a given a and F:
 * solves for xi0 (smallest root by default), builds c_{xi0} and b, and
 * post-checks the pointwise condition and the k1 identity. k1_target = 0 is
 * rejected (case 1 applies: b c = gamma0).
 */
SeparableRepresentation construct_separable_representation(const FunctionSample& a,
                                                           const PolynomialSpec& F,
                                                           double k1_target,
                                                           double lambda_scale,
                                                           std::optional<double> xi0_choice = {});

// Case 1 (k1 = 0, a not identically 0): any smooth positive c with
// b = gamma0 / c; defaults to c = 1, b = gamma0.
std::pair<FunctionSample, FunctionSample> construct_case1_pair(
    const FunctionSample& a, double gamma0, std::optional<FunctionSample> c = {});

/*
 * phi(gamma0, xi0) = int_0^1 (xi0+2 gamma0)^3/(s+2 gamma0)^3 (s/2+gamma0) ds,
 * by quadrature on the given grid (which must span [0,1]). The closed form
 * (xi0+2 gamma0)^3 / (4 gamma0 (2 gamma0 + 1)) is exposed for cross-checks.
 * A pole of the integrand inside [0,1] (gamma0 in [-1/2, 0]) is an error.
 */
double phi_gamma_xi(double gamma0, double xi0, const Grid& grid);
double phi_closed_form(double gamma0, double xi0);

}  // namespace covrep
