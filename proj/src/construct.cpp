#include "covrep/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "covrep/errors.hpp"

namespace covrep {

namespace {

struct OmegaMask {
    std::vector<bool> in_omega_a;
    bool any = false;
};

OmegaMask omega_a_mask(const FunctionSample& a, const FunctionSample& ap) {
    // one scale for both tests, so the spectral-derivative noise of a
    // constant a does not read as a nonzero a'
    const double eps = default_epsilon_supp({&a, &ap});
    OmegaMask mask;
    mask.in_omega_a.resize(a.grid->n, false);
    for (int i = 0; i < a.grid->n; ++i) {
        if (std::abs(a.values(i)) > eps && std::abs(ap.values(i)) > eps) {
            mask.in_omega_a[i] = true;
            mask.any = true;
        }
    }
    return mask;
}

/*
 * Antiderivative H of the c-exponent integrand
 *   h = (-k1 a'^2 + a a'' - a'^2) / (a a'),
 * so that c_{xi0}(s) = exp(H(s) - H(xi0)). The integrand is checked for
 * singularities at the nodes before interpolation.
 */
ChebSeries c_exponent_antiderivative(const FunctionSample& a, double k1) {
    const FunctionSample ap = differentiate(a);
    const FunctionSample app = differentiate(ap);
    const int n = a.grid->n;
    const double scale = sup_norm(a) * sup_norm(ap) + 1e-300;
    Eigen::VectorXd h(n);
    for (int i = 0; i < n; ++i) {
        const double denom = a.values(i) * ap.values(i);
        if (std::abs(denom) <= 1e-12 * scale)
            throw ConstructionError(
                "c exponent integrand singular at node " + std::to_string(i) +
                " (t = " + std::to_string(a.grid->nodes(i)) + "): a*a' vanishes");
        const double num = -k1 * ap.values(i) * ap.values(i) +
                           a.values(i) * app.values(i) - ap.values(i) * ap.values(i);
        h(i) = num / denom;
    }
    if (!h.allFinite()) throw NumericError("c exponent integrand is non-finite");
    return cheb_antiderivative(cheb_interpolant(*a.grid, h));
}

double bisect(const std::function<double(double)>& g, double lo, double hi, double glo,
              double tol) {
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gmid = g(mid);
        if (gmid == 0.0) return mid;
        if ((glo < 0.0) == (gmid < 0.0)) {
            lo = mid;
            glo = gmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Continued-fraction rational approximation l1/l2 (l2 > 0, irreducible) of p.
struct RationalExponent {
    bool ok = false;
    long long l1 = 0;
    long long l2 = 1;
};

RationalExponent approx_rational(double p, long long max_den = 64, double tol = 1e-9) {
    RationalExponent best;
    long long h0 = 1, k0 = 0, h1 = static_cast<long long>(std::floor(p)), k1 = 1;
    double frac = p - std::floor(p);
    for (int it = 0; it < 40; ++it) {
        if (std::abs(p - double(h1) / double(k1)) <= tol * std::max(1.0, std::abs(p))) {
            best.ok = true;
            best.l1 = h1;
            best.l2 = k1;
            const long long g = std::gcd(std::abs(best.l1), best.l2);
            if (g > 1) {
                best.l1 /= g;
                best.l2 /= g;
            }
            return best;
        }
        if (frac < 1e-15) break;
        const double inv = 1.0 / frac;
        const long long ai = static_cast<long long>(std::floor(inv));
        frac = inv - std::floor(inv);
        const long long h2 = ai * h1 + h0;
        const long long k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
    }
    return best;
}

// x^e as a real number, honouring sign rules for negative bases with
// integer or odd-denominator rational exponents. nullopt = not a real power.
std::optional<double> real_power(double base, double expo) {
    if (base > 0.0) return std::pow(base, expo);
    if (base == 0.0) {
        if (expo > 0.0) return 0.0;
        if (expo == 0.0) return 1.0;
        return std::nullopt;
    }
    const RationalExponent r = approx_rational(expo);
    if (!r.ok) return std::nullopt;
    if (r.l2 % 2 == 0) {
        // even root of base^l1: real only if l1 even
        if (r.l1 % 2 != 0) return std::nullopt;
        return std::pow(-base, expo);
    }
    const double mag = std::pow(-base, expo);
    return (r.l1 % 2 == 0) ? mag : -mag;
}

constexpr double kUnitTol = 1e-12;  // detecting K == 1, q == 0, ...

bool in_interval(double x, double lo, double hi) {
    const double slack = 1e-11 * (std::abs(lo) + std::abs(hi) + 1.0);
    return x >= lo - slack && x <= hi + slack;
}

void push_root(std::vector<double>& roots, double x, double lo, double hi) {
    if (!std::isfinite(x) || !in_interval(x, lo, hi)) return;
    x = std::clamp(x, lo, hi);
    for (double r : roots)
        if (std::abs(r - x) <= 1e-10 * (1.0 + std::abs(x))) return;
    roots.push_back(x);
}

}  // namespace

FunctionSample build_b_from_a(const FunctionSample& a, const ConstructionParams& params) {
    if (params.k1_const == 0.0)
        throw PreconditionError("build_b_from_a: k1 = 0 falls under case 1 (b c = gamma0)");
    const FunctionSample ap = differentiate(a);
    const OmegaMask mask = omega_a_mask(a, ap);
    if (!mask.any)
        throw ConstructionError("build_b_from_a: Omega_a is empty (a or a' vanishes everywhere)");

    FunctionSample b = zero_sample(a.grid);
    for (int i = 0; i < a.grid->n; ++i) {
        if (!mask.in_omega_a[i]) continue;
        if (ap.values(i) == 0.0)
            throw ConstructionError("build_b_from_a: a' vanishes inside Omega_a at node " +
                                    std::to_string(i));
        b.values(i) = a.values(i) * params.lambda_scale / (params.k1_const * ap.values(i));
    }
    return b;
}

FunctionSample build_c_from_a(const FunctionSample& a, const ConstructionParams& params) {
    if (params.k1_const == 0.0)
        throw PreconditionError("build_c_from_a: k1 = 0 falls under case 1");
    const double xi0 = params.xi0;
    if (xi0 < a.grid->alpha || xi0 > a.grid->beta)
        throw PreconditionError("build_c_from_a: xi0 outside [alpha, beta]");

    // xi0 must lie in Omega_a
    const FunctionSample ap = differentiate(a);
    const ChebSeries a_interp = cheb_interpolant(*a.grid, a.values);
    const ChebSeries ap_interp = cheb_interpolant(*a.grid, ap.values);
    const double eps = default_epsilon_supp({&a, &ap});
    if (std::abs(a_interp.eval(xi0)) <= eps || std::abs(ap_interp.eval(xi0)) <= eps)
        throw PreconditionError("build_c_from_a: xi0 not in Omega_a (a or a' vanishes there)");

    const ChebSeries H = c_exponent_antiderivative(a, params.k1_const);
    const double base = H.eval(xi0);
    FunctionSample c;
    c.grid = a.grid;
    c.values.resize(a.grid->n);
    for (int i = 0; i < a.grid->n; ++i)
        c.values(i) = std::exp(H.eval(a.grid->nodes(i)) - base);
    if (!c.values.allFinite()) throw ConstructionError("build_c_from_a: c overflowed");
    return c;
}

Xi0Roots solve_xi0_general(const FunctionSample& a, const PolynomialSpec& F, double k1_target) {
    if (k1_target == 0.0)
        throw PreconditionError("solve_xi0_general: k1 = 0 falls under case 1");
    if (F.delta(0) != 0.0)
        throw PreconditionError("solve_xi0_general: polynomial must have delta_0 = 0");

    Xi0Roots out;
    const double alpha = a.grid->alpha;
    const double beta = a.grid->beta;

    if (F.degree() <= 1) {
        // g(xi0) = delta_1 - k1 is xi0-independent
        if (std::abs(F.delta(1) - k1_target) <= 1e-12 * std::max(1.0, std::abs(k1_target)))
            out.entire_interval = true;
        return out;
    }

    const ChebSeries H = c_exponent_antiderivative(a, k1_target);
    FunctionSample a_expH = a;
    for (int i = 0; i < a.grid->n; ++i)
        a_expH.values(i) = a.values(i) * std::exp(H.eval(a.grid->nodes(i)));
    const double q_unnormalized = quadrature(a_expH);

    auto g = [&](double xi) {
        const double q = q_unnormalized * std::exp(-H.eval(xi));
        double acc = 0.0;
        for (int k = 1; k <= F.degree(); ++k) acc += F.delta(k) * std::pow(q, k - 1);
        return acc - k1_target;
    };

    // scan grid: collocation nodes plus a uniform refinement
    std::vector<double> scan(a.grid->nodes.data(), a.grid->nodes.data() + a.grid->n);
    const int extra = 512;
    for (int i = 0; i <= extra; ++i) scan.push_back(alpha + (beta - alpha) * i / extra);
    std::sort(scan.begin(), scan.end());
    scan.erase(std::unique(scan.begin(), scan.end()), scan.end());

    std::vector<double> gv(scan.size());
    double gmax = 0.0;
    for (std::size_t i = 0; i < scan.size(); ++i) {
        gv[i] = g(scan[i]);
        if (!std::isfinite(gv[i]))
            throw ConstructionError("solve_xi0_general: non-finite g at xi0 = " +
                                    std::to_string(scan[i]));
        gmax = std::max(gmax, std::abs(gv[i]));
    }
    const double scale = std::max(1.0, std::abs(k1_target));
    if (gmax <= 1e-10 * scale) {
        out.entire_interval = true;
        return out;
    }

    const double near_zero = 1e-13 * std::max(scale, gmax);
    for (std::size_t i = 0; i < scan.size(); ++i) {
        if (std::abs(gv[i]) <= near_zero) {
            push_root(out.roots, scan[i], alpha, beta);
        } else if (i + 1 < scan.size() && std::abs(gv[i + 1]) > near_zero &&
                   (gv[i] < 0.0) != (gv[i + 1] < 0.0)) {
            push_root(out.roots, bisect(g, scan[i], scan[i + 1], gv[i], 1e-12), alpha, beta);
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

std::string verdict_name(Xi0Verdict verdict) {
    switch (verdict) {
        case Xi0Verdict::real_solution: return "real-solution";
        case Xi0Verdict::no_real_solution: return "no-real-solution";
        case Xi0Verdict::undefined_power: return "undefined-power";
    }
    return "?";
}

namespace {

ClosedFormXi0 closed_form_monomial(const ConstructionParams& p, double alpha, double beta) {
    const double nu0 = p.nu0;
    const int m = p.m_power;
    const double q = p.q_ac;
    if (nu0 == 0.0) throw PreconditionError("closed-form monomial: nu0 must be nonzero");
    if (m < 2) throw PreconditionError("closed-form monomial: m must be >= 2");
    if (q == 0.0) throw PreconditionError("closed-form monomial: Q = 0 falls under case 1");

    const double K = p.delta_mono * std::pow(q, p.n_power - 1);
    ClosedFormXi0 out;

    if (std::abs(K - 1.0) <= kUnitTol) {
        // Q = nu0 xi0^{1+m} ln|beta/alpha|
        if (alpha == 0.0 || beta == 0.0 || (alpha < 0.0) != (beta < 0.0))
            throw ConstructionError("closed-form monomial: K = 1 branch needs 0 outside [alpha,beta]");
        const double L = std::log(std::abs(beta / alpha));
        if (L == 0.0) throw ConstructionError("closed-form monomial: ln|beta/alpha| = 0");
        const double T = q / (nu0 * L);
        if (m % 2 == 0) {
            out.branch = "monomial:K=1:m-even";
            // 1+m odd: a single real root of either sign
            const double root = std::copysign(std::pow(std::abs(T), 1.0 / (1 + m)), T);
            push_root(out.roots, root, alpha, beta);
        } else {
            out.branch = "monomial:K=1:m-odd";
            if (T > 0.0) {
                const double mag = std::pow(T, 1.0 / (1 + m));
                push_root(out.roots, mag, alpha, beta);
                push_root(out.roots, -mag, alpha, beta);
            }
        }
        out.verdict = out.roots.empty() ? Xi0Verdict::no_real_solution : Xi0Verdict::real_solution;
        std::sort(out.roots.begin(), out.roots.end());
        return out;
    }

    // K != 1: xi0^{1+Km} = R with R = (Q/nu0) m(1-K) / (beta^{m(1-K)} - alpha^{m(1-K)})
    const double e = m * (1.0 - K);
    if (alpha <= 0.0 && beta >= 0.0 && e - m + 1.0 <= 0.0)
        throw ConstructionError("closed-form monomial: integral through s = 0 diverges");
    const auto bp = real_power(beta, e);
    const auto ap = real_power(alpha, e);
    if (!bp || !ap) {
        /*
         * The endpoint powers cannot be formed over the reals. Since
         * 1 + Km = 1 + m - m(1-K), the xi0 exponent is irrational exactly
         * when this one is, so over a negative-only interval every
         * candidate hits the undefined-power case.
         */
        if (beta <= 0.0 && !approx_rational(e).ok) {
            out.branch = "monomial:K!=1:irrational-power-negative-base";
            out.verdict = Xi0Verdict::undefined_power;
            return out;
        }
        throw ConstructionError(
            "closed-form monomial: endpoint power with negative base and non-odd-rational "
            "exponent is outside the enumerated branches");
    }
    const double denom = *bp - *ap;
    if (std::abs(denom) <= 1e-300)
        throw ConstructionError("closed-form monomial: degenerate endpoint difference");
    const double R = (q / nu0) * e / denom;
    const double pw = 1.0 + K * m;

    if (std::abs(pw) <= kUnitTol) {
        // xi0-independent: Q (m+1) = nu0 (beta^{m+1} - alpha^{m+1}), any xi0 >= 0
        out.branch = "monomial:K!=1:p=0";
        const double target = nu0 * (std::pow(beta, m + 1) - std::pow(alpha, m + 1)) / (m + 1);
        if (std::abs(q - target) <= 1e-9 * std::max(1.0, std::abs(target)) && beta >= 0.0) {
            out.any_xi0 = true;
            out.verdict = Xi0Verdict::real_solution;
        } else {
            out.verdict = Xi0Verdict::no_real_solution;
        }
        return out;
    }

    if (R > 0.0) {
        out.branch = "monomial:K!=1:positive-root";
        push_root(out.roots, std::exp(std::log(R) / pw), alpha, beta);
    }
    if (alpha < 0.0) {
        const RationalExponent rat = approx_rational(pw);
        if (rat.ok && R < 0.0 && rat.l1 % 2 != 0 && rat.l2 % 2 != 0) {
            out.branch = "monomial:K!=1:negative-root-odd-odd";
            push_root(out.roots, -std::pow(std::abs(R), double(rat.l2) / double(rat.l1)), alpha,
                      beta);
        } else if (rat.ok && R > 0.0 && rat.l1 % 2 == 0 && rat.l2 % 2 != 0) {
            out.branch += "+negative-root-even-odd";
            push_root(out.roots, -std::pow(R, double(rat.l2) / double(rat.l1)), alpha, beta);
        }
    }
    if (!out.roots.empty()) {
        out.verdict = Xi0Verdict::real_solution;
    } else {
        if (out.branch.empty()) out.branch = "monomial:K!=1:no-branch-applies";
        out.verdict = Xi0Verdict::no_real_solution;
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

ClosedFormXi0 closed_form_affine(const ConstructionParams& p, double alpha, double beta) {
    const double nu0 = p.nu0;
    const double nu1 = p.nu1;
    const double q = p.q_ac;
    if (nu1 == 0.0) throw PreconditionError("closed-form affine: nu1 must be nonzero");
    if (q == 0.0) throw PreconditionError("closed-form affine: Q = 0 falls under case 1");

    const double K = p.delta_mono * std::pow(q, p.n_power - 1);
    const double ua = nu0 + nu1 * alpha;
    const double ub = nu0 + nu1 * beta;
    ClosedFormXi0 out;

    if (std::abs(K - 1.0) <= kUnitTol) {
        // (nu0 + nu1 xi0)^2 = Q nu1 / ln|ub/ua|
        if (ua == 0.0 || ub == 0.0 || (ua < 0.0) != (ub < 0.0))
            throw ConstructionError("closed-form affine: K = 1 branch needs a nonzero on [alpha,beta]");
        const double L = std::log(std::abs(ub / ua));
        if (L == 0.0) throw ConstructionError("closed-form affine: ln|ub/ua| = 0");
        const double T = q * nu1 / L;
        out.branch = "affine:K=1";
        if (T >= 0.0) {
            const double s = std::sqrt(T);
            push_root(out.roots, (-nu0 + s) / nu1, alpha, beta);
            push_root(out.roots, (-nu0 - s) / nu1, alpha, beta);
        }
        out.verdict = out.roots.empty() ? Xi0Verdict::no_real_solution : Xi0Verdict::real_solution;
        std::sort(out.roots.begin(), out.roots.end());
        return out;
    }

    /*
     * K != 1: u^{1+K} = R with u = nu0 + nu1 xi0 and
     *   R = nu1 (1-K) Q / (ub^{1-K} - ua^{1-K}).
     * (Direct evaluation of int (nu0+nu1 s)^{-K} ds puts nu1 in the
     * numerator; the factor is pinned by the gamma0 = 1/2 worked instance,
     * whose cubic (xi0+2 gamma0)^3 = 8 gamma0 (1+2 gamma0) it must
     * reproduce.)
     */
    const double e = 1.0 - K;
    if ((ua <= 0.0) != (ub <= 0.0) && e <= 0.0)
        throw ConstructionError("closed-form affine: integral through a zero of a diverges");
    const auto upb = real_power(ub, e);
    const auto upa = real_power(ua, e);
    if (!upb || !upa) {
        // as in the monomial family: 1+K irrational exactly when 1-K is
        if (std::max(ua, ub) <= 0.0 && !approx_rational(e).ok) {
            out.branch = "affine:K!=1:irrational-power-negative-base";
            out.verdict = Xi0Verdict::undefined_power;
            return out;
        }
        throw ConstructionError(
            "closed-form affine: endpoint power with negative base and non-odd-rational "
            "exponent is outside the enumerated branches");
    }
    const double denom = *upb - *upa;
    if (std::abs(denom) <= 1e-300)
        throw ConstructionError("closed-form affine: degenerate endpoint difference");
    const double R = nu1 * e * q / denom;
    const double qexp = 1.0 + K;

    if (std::abs(qexp) <= kUnitTol) {
        // u^0 = 1: root at u = 0 when the xi0-independent equation R = 1 holds
        out.branch = "affine:K!=1:q-exponent=0";
        if (std::abs(R - 1.0) <= 1e-9)
            push_root(out.roots, -nu0 / nu1, alpha, beta);
        out.verdict = out.roots.empty() ? Xi0Verdict::no_real_solution : Xi0Verdict::real_solution;
        return out;
    }

    if (R > 0.0) {
        out.branch = "affine:K!=1:positive-u";
        const double u = std::exp(std::log(R) / qexp);
        push_root(out.roots, (u - nu0) / nu1, alpha, beta);
    }
    if (std::min(ua, ub) < 0.0) {
        const RationalExponent rat = approx_rational(qexp);
        if (rat.ok && R > 0.0 && rat.l1 % 2 == 0 && rat.l2 % 2 != 0) {
            out.branch += "+negative-u-even-odd";
            const double u = -std::pow(R, double(rat.l2) / double(rat.l1));
            push_root(out.roots, (u - nu0) / nu1, alpha, beta);
        }
        // R < 0 with negative u is not among the enumerated sub-cases
    }
    if (!out.roots.empty()) {
        out.verdict = Xi0Verdict::real_solution;
    } else {
        if (out.branch.empty()) out.branch = "affine:K!=1:no-branch-applies";
        out.verdict = Xi0Verdict::no_real_solution;
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

}  // namespace

ClosedFormXi0 solve_xi0_closed_form(AFamily family, const ConstructionParams& params,
                                    double alpha, double beta) {
    if (!(alpha < beta))
        throw PreconditionError("solve_xi0_closed_form: need alpha < beta");
    if (params.n_power < 1)
        throw PreconditionError("solve_xi0_closed_form: n must be a positive integer");
    if (params.delta_mono == 0.0)
        throw PreconditionError("solve_xi0_closed_form: delta must be nonzero");
    return family == AFamily::monomial ? closed_form_monomial(params, alpha, beta)
                                       : closed_form_affine(params, alpha, beta);
}

SeparableRepresentation construct_separable_representation(const FunctionSample& a,
                                                           const PolynomialSpec& F,
                                                           double k1_target, double lambda_scale,
                                                           std::optional<double> xi0_choice) {
    if (k1_target == 0.0)
        throw ConstructionError(
            "construct_separable_representation: k1 = 0 is infeasible under case 2; "
            "case 1 applies (b c = gamma0, see construct_case1_pair)");
    if (F.delta(0) != 0.0)
        throw PreconditionError("construct_separable_representation: delta_0 must be 0");

    const Xi0Roots roots = solve_xi0_general(a, F, k1_target);
    double xi0;
    if (xi0_choice) {
        xi0 = *xi0_choice;
    } else if (!roots.roots.empty()) {
        xi0 = roots.roots.front();  // smallest by default
    } else if (roots.entire_interval) {
        xi0 = 0.5 * (a.grid->alpha + a.grid->beta);
    } else {
        throw ConstructionError(
            "construct_separable_representation: no xi0 root in [alpha, beta]");
    }

    ConstructionParams params;
    params.k1_const = k1_target;
    params.lambda_scale = lambda_scale;
    params.xi0 = xi0;

    FunctionSample c = build_c_from_a(a, params);
    FunctionSample b = build_b_from_a(a, params);
    params.q_ac = quadrature(pointwise_product(a, c));

    SeparableRepresentation rep{IntegralOp{Kernel::separable(a, c)}, DiffOp{std::move(b)},
                                params, roots.roots, 0.0, 0.0};
    rep.eq5_residual = residual_eq5(rep.A.kernel, rep.B.multiplier, F);
    rep.k1_recomputed = 0.0;
    for (int k = 1; k <= F.degree(); ++k)
        rep.k1_recomputed += F.delta(k) * std::pow(params.q_ac, k - 1);

    const double kscale = std::max(1.0, std::abs(k1_target));
    if (rep.eq5_residual > 1e-8)
        throw ConstructionError(
            "construct_separable_representation: post-check failed, eq5 residual = " +
            std::to_string(rep.eq5_residual));
    if (std::abs(rep.k1_recomputed - k1_target) > 1e-9 * kscale)
        throw ConstructionError(
            "construct_separable_representation: post-check failed, recomputed k1 = " +
            std::to_string(rep.k1_recomputed) + " vs target " + std::to_string(k1_target));
    return rep;
}

std::pair<FunctionSample, FunctionSample> construct_case1_pair(const FunctionSample& a,
                                                               double gamma0,
                                                               std::optional<FunctionSample> c) {
    if (sup_norm(a) == 0.0)
        throw PreconditionError("construct_case1_pair: a is identically zero");
    FunctionSample c_out = c ? *c : constant_sample(a.grid, 1.0);
    if (c && !same_grid(*c->grid, *a.grid))
        throw GridMismatchError("construct_case1_pair: c on a different grid");
    if (c_out.values.minCoeff() <= 0.0)
        throw PreconditionError("construct_case1_pair: c must be positive");
    FunctionSample b;
    b.grid = a.grid;
    b.values = gamma0 * c_out.values.cwiseInverse();
    return {std::move(b), std::move(c_out)};
}

double phi_closed_form(double gamma0, double xi0) {
    return std::pow(xi0 + 2.0 * gamma0, 3) / (4.0 * gamma0 * (2.0 * gamma0 + 1.0));
}

double phi_gamma_xi(double gamma0, double xi0, const Grid& grid) {
    if (std::abs(grid.alpha) > 1e-12 || std::abs(grid.beta - 1.0) > 1e-12)
        throw PreconditionError("phi_gamma_xi: grid must span [0, 1]");
    const double pole = -2.0 * gamma0;
    if (pole >= 0.0 && pole <= 1.0)
        throw ConstructionError("phi_gamma_xi: integrand pole at s = " + std::to_string(pole) +
                                " inside [0, 1] (gamma0 in [-1/2, 0])");
    const double cube = std::pow(xi0 + 2.0 * gamma0, 3);
    double acc = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double s = grid.nodes(i);
        acc += grid.weights(i) * cube / std::pow(s + 2.0 * gamma0, 3) * (0.5 * s + gamma0);
    }
    return acc;
}

}  // namespace covrep
