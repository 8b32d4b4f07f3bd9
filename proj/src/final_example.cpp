#include "covrep/final_example.hpp"

#include <cmath>
#include <functional>

#include <nlohmann/json.hpp>

#include "covrep/errors.hpp"

namespace covrep {

namespace {

// a(s) = sqrt(mu (s - s^2)) with mu = -lambda > 0, and its derivatives,
// evaluated from the closed forms.
struct AFamily {
    double mu;
    double a(double s) const { return std::sqrt(mu * (s - s * s)); }
    double ap(double s) const { return mu * (1.0 - 2.0 * s) / (2.0 * a(s)); }
    double app(double s) const {
        const double as = a(s);
        return -mu * (2.0 * as + (1.0 - 2.0 * s) * ap(s)) / (2.0 * as * as);
    }
};

double poly_part(double s) { return -4.0 * s * s * s + 6.0 * s * s - 2.0 * s; }
double poly_part_deriv(double s) { return -12.0 * s * s + 12.0 * s - 2.0; }

// Denominator of e and its derivative; `signed_reading` flips the sign of
// the (s(s-1))^{3/2} term.
struct EDenominator {
    double lambda2;
    bool signed_reading;

    double v(double s) const {
        const double f = s - s * s;
        const double term = lambda2 * f * std::sqrt(f);
        return (signed_reading ? -term : term) + poly_part(s);
    }
    double vp(double s) const {
        const double f = s - s * s;
        const double term = lambda2 * 1.5 * std::sqrt(f) * (1.0 - 2.0 * s);
        return (signed_reading ? -term : term) + poly_part_deriv(s);
    }
};

// a^2 e' + 3 a a' e + a^2 e^2 + a'^2 + a'' a - lambda with every factor from
// its closed form (e = 1/v, e' = -v'/v^2).
double ode_residual_at(const AFamily& fam, const EDenominator& den, double lambda, double s) {
    const double a = fam.a(s);
    const double ap = fam.ap(s);
    const double app = fam.app(s);
    const double v = den.v(s);
    const double e = 1.0 / v;
    const double ep = -den.vp(s) / (v * v);
    return a * a * ep + 3.0 * a * ap * e + a * a * e * e + ap * ap + app * a - lambda;
}

double max_ode_residual(const AFamily& fam, const EDenominator& den, double lambda,
                        const Grid& grid) {
    double m = 0.0;
    for (int i = 0; i < grid.n; ++i)
        m = std::max(m, std::abs(ode_residual_at(fam, den, lambda, grid.nodes(i))));
    return m;
}

std::vector<double> find_denominator_zeros(const EDenominator& den, double lo, double hi) {
    std::vector<double> zeros;
    const int scan = 4096;
    double prev_s = lo;
    double prev_v = den.v(lo);
    for (int i = 1; i <= scan; ++i) {
        const double s = lo + (hi - lo) * i / scan;
        const double vs = den.v(s);
        if ((prev_v < 0.0) != (vs < 0.0)) {
            double a = prev_s, b = s, va = prev_v;
            while (b - a > 1e-13) {
                const double mid = 0.5 * (a + b);
                const double vm = den.v(mid);
                if ((va < 0.0) == (vm < 0.0)) {
                    a = mid;
                    va = vm;
                } else {
                    b = mid;
                }
            }
            zeros.push_back(0.5 * (a + b));
        }
        prev_s = s;
        prev_v = vs;
    }
    return zeros;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-11) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

OdeProfile build_final_example(double lambda_neg, double lambda1, double lambda2,
                               double lambda3, std::pair<double, double> interior, int n) {
    if (!(lambda_neg < 0.0))
        throw PreconditionError("build_final_example: lambda must be negative");
    if (lambda2 == 0.0) throw PreconditionError("build_final_example: lambda2 must be nonzero");
    const auto [lo, hi] = interior;
    if (!(0.0 < lo && lo < hi && hi < 1.0))
        throw ConstructionError(
            "build_final_example: interior window must stay strictly inside (0,1); a(t) is "
            "singular at the endpoints");

    OdeProfile profile;
    profile.lambda_neg = lambda_neg;
    profile.lambda1 = lambda1;
    profile.lambda2 = lambda2;
    profile.lambda3 = lambda3;
    profile.grid = build_grid(n, lo, hi);
    const Grid& grid = *profile.grid;

    const AFamily fam{-lambda_neg};
    const EDenominator den_abs{lambda2, false};
    const EDenominator den_signed{lambda2, true};

    const double r_abs = max_ode_residual(fam, den_abs, lambda_neg, grid);
    const double r_signed = max_ode_residual(fam, den_signed, lambda_neg, grid);
    const bool adopt_abs = r_abs <= 1e-6 || r_abs <= r_signed;
    const EDenominator& den = adopt_abs ? den_abs : den_signed;
    profile.branch = adopt_abs ? "abs" : "signed";
    profile.ode_residual = adopt_abs ? r_abs : r_signed;
    profile.ode_residual_other = adopt_abs ? r_signed : r_abs;

    profile.a_sample = sample(profile.grid, [&](double s) { return fam.a(s); });
    profile.e_sample = sample(profile.grid, [&](double s) { return 1.0 / den.v(s); });
    if (!profile.e_sample.values.allFinite())
        throw ConstructionError("build_final_example: e hits a denominator zero at a node");
    profile.e_mid = 1.0 / den.v(0.5 * (lo + hi));

    // b = lambda1 exp( int lambda / a ), smooth on the window
    const FunctionSample lam_over_a =
        sample(profile.grid, [&](double t) { return lambda_neg / fam.a(t); });
    const FunctionSample b_exponent = cumulative_integral(lam_over_a, grid.nodes(0));
    profile.b_sample = profile.a_sample;  // reuse grid
    for (int i = 0; i < grid.n; ++i)
        profile.b_sample.values(i) = lambda1 * std::exp(b_exponent.values(i));

    /*
     * c = lambda3 exp( int e ). Across a zero of the denominator the
     * antiderivative of e jumps through a log singularity and the constant
     * of c is not determined, so c is integrated per pole-free segment with
     * c = lambda3 at each segment's base node.
     */
    profile.denominator_zeros = find_denominator_zeros(den, lo, hi);
    profile.c_sample = profile.a_sample;
    auto e_fn = [&](double s) { return 1.0 / den.v(s); };
    if (profile.denominator_zeros.empty()) {
        const FunctionSample c_exponent = cumulative_integral(profile.e_sample, grid.nodes(0));
        for (int i = 0; i < grid.n; ++i)
            profile.c_sample.values(i) = lambda3 * std::exp(c_exponent.values(i));
    } else {
        // outer bounds padded so the window's endpoint nodes classify into
        // the first/last segment; only the poles separate
        std::vector<double> bounds{lo - 1.0};
        bounds.insert(bounds.end(), profile.denominator_zeros.begin(),
                      profile.denominator_zeros.end());
        bounds.push_back(hi + 1.0);
        for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
            const double seg_lo = bounds[seg], seg_hi = bounds[seg + 1];
            // base node nearest the segment midpoint
            int base = -1;
            double best = 1e300;
            for (int i = 0; i < grid.n; ++i) {
                const double t = grid.nodes(i);
                if (t <= seg_lo || t >= seg_hi) continue;
                const double d = std::abs(t - 0.5 * (seg_lo + seg_hi));
                if (d < best) {
                    best = d;
                    base = i;
                }
            }
            if (base < 0) continue;  // no node inside this segment
            for (int i = 0; i < grid.n; ++i) {
                const double t = grid.nodes(i);
                if (t <= seg_lo || t >= seg_hi) continue;
                profile.c_sample.values(i) =
                    lambda3 * std::exp(integrate(e_fn, grid.nodes(base), t));
            }
        }
    }
    if (!profile.c_sample.values.allFinite() || profile.c_sample.values.minCoeff() <= 0.0)
        throw ConstructionError("build_final_example: c is not finite positive on the window");
    return profile;
}

std::string to_json(const OdeProfile& profile) {
    nlohmann::ordered_json j;
    j["lambda"] = profile.lambda_neg;
    j["lambda1"] = profile.lambda1;
    j["lambda2"] = profile.lambda2;
    j["lambda3"] = profile.lambda3;
    j["window"] = {profile.grid->alpha, profile.grid->beta};
    j["n"] = profile.grid->n;
    j["branch"] = profile.branch;
    j["branch_note"] =
        "reading of (s(s-1))^{3/2}: abs = |s(s-1)|^{3/2}, signed = sign-carrying; both solve "
        "the reduced equation (they differ by the sign of lambda2)";
    j["ode_residual"] = profile.ode_residual;
    j["ode_residual_other_branch"] = profile.ode_residual_other;
    j["ode_residual_method"] = "closed-form substitution with analytic derivatives";
    j["denominator_zeros"] = profile.denominator_zeros;
    j["e_mid"] = profile.e_mid;
    return j.dump(2);
}

}  // namespace covrep
