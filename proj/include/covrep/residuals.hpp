#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>

#include "covrep/operators.hpp"

namespace covrep {

enum class ConditionId { direct_covariance, eq3, eq4, eq5, eq14 };

std::string condition_name(ConditionId id);

struct MemberResidual {
    int member = 0;
    double residual = 0.0;  // sup-norm of the defect over sup-norm of the member
};

struct ResidualReport {
    ConditionId condition_id = ConditionId::direct_covariance;
    std::vector<MemberResidual> per_member;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

ResidualReport make_report(ConditionId id, std::vector<MemberResidual> per_member,
                           double tolerance);

inline constexpr double kDefaultTolerance = 1e-8;

// Direct check of ABx = BF(A)x over the family; residuals are relative to
// the sup-norm of each member.
ResidualReport residual_direct(const LinearOp& A, const LinearOp& B, const PolynomialSpec& F,
                               const TestFamily& fam, double tolerance = kDefaultTolerance);

/*
 * Full-space equivalence condition for A integral, B = b d/dt:
 *
 *   k(t,beta)b(beta)x(beta) - k(t,alpha)b(alpha)x(alpha)
 *     - int d/ds[b(s)k(t,s)] x(s) ds
 *   = delta_0 b(t) x'(t) + b(t) int d/dt F_n(k(t,s)) x(s) ds.
 */
ResidualReport residual_eq3(const IntegralOp& A, const DiffOp& B, const PolynomialSpec& F,
                            const TestFamily& fam, double tolerance = kDefaultTolerance);

// Same condition with the boundary terms dropped; the family must be of the
// endpoint-vanishing kind.
ResidualReport residual_eq4(const IntegralOp& A, const DiffOp& B, const PolynomialSpec& F,
                            const TestFamily& fam, double tolerance = kDefaultTolerance);

// Pointwise form for delta_0 = 0:
//   -d/ds[b(s)k(t,s)] = b(t) d/dt F_n(k(t,s)) on the full node grid square.
// Returns the max absolute defect over all node pairs.
double residual_eq5(const Kernel& k, const FunctionSample& b, const PolynomialSpec& F);

/*
 * Differential-first condition (A = a d/dt, B integral with kernel k):
 *   a(t) dk/dt = sum_m (-1)^m delta_m k_m(t,s),  k_m by the derivative
 * recursion, subject to a(alpha) = a(beta) = 0.
 *
 * `declared_boundary` supplies the boundary values of a when the samples
 * live on an interior window of the true domain (the window endpoints are
 * then not the domain endpoints); by default the sampled endpoints are used.
 */
double residual_eq14(const Kernel& k, const FunctionSample& a, const PolynomialSpec& F,
                     std::optional<std::pair<double, double>> declared_boundary = {});

/*
 * Numerical epsilon-supports and the intersection-emptiness flags of the
 * separable-kernel case analysis. The measure-zero/emptiness dichotomy of
 * the continuous statement cannot be decided from samples, so every flag is
 * a statement about the sampled nodes at the given threshold.
 */
struct SupportReport {
    double epsilon_supp = 0.0;
    std::set<int> omega_a;        // |a| > eps and |a'| > eps
    std::set<int> omega_c;        // |c| > eps
    std::set<int> supp_a;
    std::set<int> supp_b;
    std::set<int> supp_c;
    std::set<int> supp_a_prime;
    std::set<int> supp_c_prime;

    // supp c' ∩ supp b ∩ ([alpha,beta] \ Omega_c) empty
    bool case2b_empty = false;
    // supp a' ∩ supp b ∩ ([alpha,beta] \ Omega_a) empty
    bool case2c_support_empty = false;
    // supp a' \ supp a nonempty (whether the alternative branch is engaged)
    bool case2c_alternative_engaged = false;
    // b(s)c(s) constant across the nodes (the alternative branch's identity)
    bool bc_constant = false;
    double gamma0_estimate = 0.0;
    // either branch of case 2c holds
    bool case2c_pass = false;
    // supp a' \ supp a nonempty implies supp c' ∩ supp b ∩ (\ Omega_c) empty
    bool case2d_pass = false;
    // supp b ∩ supp c empty (the Q = 0 disjoint-support route)
    bool supp_b_c_disjoint = false;
};

SupportReport support_sets(const FunctionSample& a, const FunctionSample& b,
                           const FunctionSample& c, double epsilon_supp);

// 1e-10 * max |values| over the given samples.
double default_epsilon_supp(std::initializer_list<const FunctionSample*> samples);

// JSON (stable field order) and a human-readable table.
std::string to_json(const ResidualReport& report);
std::string to_json(const SupportReport& report);
std::string render_table(const ResidualReport& report);

}  // namespace covrep
