#pragma once

#include <string>
#include <utility>
#include <vector>

#include "covrep/function_sample.hpp"

namespace covrep {

/*
 * Closed-form family solving AB = BA^2 for A = a d/dt, B integral with
 * separable kernel b(t)c(s):
 *
 *   a(t) = sqrt(lambda t(t-1))      (real on (0,1) for lambda < 0)
 *   b(t) = lambda1 exp(int lambda/a dt)
 *   e(s) = c'(s)/c(s) = 1 / (lambda2 (s(s-1))^{3/2} - 4s^3 + 6s^2 - 2s)
 *   c(s) = lambda3 exp(int e ds)
 *
 * e solves the reduced equation
 *   a^2 e' + 3 a a' e + a^2 e^2 + a'^2 + a'' a - lambda = 0.
 *
 * (s(s-1))^{3/2} has a negative base on (0,1); both the |s(s-1)|^{3/2}
 * reading and the sign-carrying one solve the equation (they swap the sign
 * of lambda2), so the builder evaluates both residuals and records which
 * reading it adopted.
 *
 * The samples live on a grid over an interior window of (0,1); the sqrt
 * endpoints singularities of a stay outside. Depending on lambda2 the
 * denominator of e may vanish inside the window; the zeros are located and
 * reported, the e-samples stay finite (zeros fall between nodes), and c is
 * integrated per pole-free segment with a fresh normalization on each
 * segment (across a pole the multiplicative constant of c is not
 * determined).
 */
struct OdeProfile {
    double lambda_neg = -1.0;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double lambda3 = 1.0;
    GridPtr grid;  // over the interior window
    FunctionSample a_sample;
    FunctionSample b_sample;
    FunctionSample c_sample;
    FunctionSample e_sample;

    std::string branch;              // "abs" or "signed": reading of (s(s-1))^{3/2}
    double ode_residual = 0.0;       // max over nodes, adopted branch
    double ode_residual_other = 0.0; // same for the rejected reading
    std::vector<double> denominator_zeros;  // poles of e inside the window
    double e_mid = 0.0;              // e at the window midpoint, for the record
};

OdeProfile build_final_example(double lambda_neg, double lambda1, double lambda2,
                               double lambda3, std::pair<double, double> interior,
                               int n = 64);

// Stable-order JSON provenance block (branch, residuals, poles, parameters).
std::string to_json(const OdeProfile& profile);

}  // namespace covrep
