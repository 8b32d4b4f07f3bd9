#pragma once

#include <span>
#include <variant>
#include <vector>

#include "covrep/kernel.hpp"

namespace covrep {

// F(t) = sum_i coeffs[i] * t^i. Trailing zero coefficients are trimmed on
// construction so degree() is the index of the last nonzero coefficient.
struct PolynomialSpec {
    std::vector<double> coeffs{0.0};

    static PolynomialSpec from_coeffs(std::vector<double> c);
    static PolynomialSpec monomial(int power, double delta = 1.0);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double delta(int i) const;
    double eval(double t) const;
};

// (Ax)(t) = int k(t,s) x(s) ds, discretized by quadrature on the nodes.
struct IntegralOp {
    Kernel kernel;
};

// (Bx)(t) = b(t) dx/dt with the spectral derivative.
struct DiffOp {
    FunctionSample multiplier;
};

// Either of the two operator kinds; implicitly constructible from both.
class LinearOp {
  public:
    LinearOp(IntegralOp op) : op_(std::move(op)) {}
    LinearOp(DiffOp op) : op_(std::move(op)) {}

    bool is_integral() const { return std::holds_alternative<IntegralOp>(op_); }
    const IntegralOp& integral() const { return std::get<IntegralOp>(op_); }
    const DiffOp& diff() const { return std::get<DiffOp>(op_); }

  private:
    std::variant<IntegralOp, DiffOp> op_;
};

const GridPtr& op_grid(const LinearOp& op);

FunctionSample apply(const LinearOp& op, const FunctionSample& x);
FunctionSample apply(const IntegralOp& op, const FunctionSample& x);
FunctionSample apply(const DiffOp& op, const FunctionSample& x);

// Applies right to left: compose_apply({A,B}, x) = A(B(x)). The empty list
// is the identity.
FunctionSample compose_apply(std::span<const LinearOp> ops, const FunctionSample& x);

/*
 * F(A)x = delta_0 x + sum_j delta_j A^j x.
 *
 * For an integral operator this is evaluated through the polynomial kernel,
 * F(A)x = delta_0 x + int F_n(k(t,s)) x(s) ds; apply_poly_iterative is the
 * repeated-application fallback that works for any operator. The two routes
 * agree to discretization accuracy and are cross-checked in the tests.
 */
FunctionSample apply_poly(const LinearOp& A, const PolynomialSpec& F, const FunctionSample& x);
FunctionSample apply_poly_iterative(const LinearOp& A, const PolynomialSpec& F,
                                    const FunctionSample& x);

/*
 * (B A^n x)(t) for B integral (kernel k) and A = a(t) d/dt, by the
 * integration-by-parts expansion
 *
 *   sum_{i=0}^{n-1} (-1)^i k_i(t,s) a(s) (A^{n-1-i} x)(s) |_{s=alpha}^{s=beta}
 *     + (-1)^n int k_n(t,s) x(s) ds,
 *
 * where the k_i follow the derivative recursion and A^0 is the identity.
 */
FunctionSample ba_n_expansion(const IntegralOp& B, const DiffOp& A, int n,
                              const FunctionSample& x);

}  // namespace covrep
