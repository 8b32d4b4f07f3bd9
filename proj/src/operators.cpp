#include "covrep/operators.hpp"

#include <cmath>

#include "covrep/errors.hpp"

namespace covrep {

PolynomialSpec PolynomialSpec::from_coeffs(std::vector<double> c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    if (c.empty()) c.push_back(0.0);
    for (double v : c)
        if (!std::isfinite(v)) throw NumericError("PolynomialSpec: non-finite coefficient");
    PolynomialSpec F;
    F.coeffs = std::move(c);
    return F;
}

PolynomialSpec PolynomialSpec::monomial(int power, double delta) {
    if (power < 0) throw PreconditionError("PolynomialSpec::monomial: negative power");
    std::vector<double> c(power + 1, 0.0);
    c[power] = delta;
    return from_coeffs(std::move(c));
}

double PolynomialSpec::delta(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[i] : 0.0;
}

double PolynomialSpec::eval(double t) const {
    double acc = 0.0;
    for (int i = degree(); i >= 0; --i) acc = acc * t + coeffs[i];
    return acc;
}

const GridPtr& op_grid(const LinearOp& op) {
    return op.is_integral() ? op.integral().kernel.grid() : op.diff().multiplier.grid;
}

FunctionSample apply(const IntegralOp& op, const FunctionSample& x) {
    if (!same_grid(*op.kernel.grid(), *x.grid))
        throw GridMismatchError("apply: operator and sample on different grids");
    const Eigen::VectorXd wx = op.kernel.grid()->weights.cwiseProduct(x.values);
    if (op.kernel.is_separable()) {
        // a(t) * int c(s) x(s) ds
        const double inner = op.kernel.c_factor().values.dot(wx);
        return FunctionSample{x.grid, inner * op.kernel.a_factor().values};
    }
    return FunctionSample{x.grid, op.kernel.dense_values() * wx};
}

FunctionSample apply(const DiffOp& op, const FunctionSample& x) {
    if (!same_grid(*op.multiplier.grid, *x.grid))
        throw GridMismatchError("apply: operator and sample on different grids");
    return pointwise_product(op.multiplier, differentiate(x));
}

FunctionSample apply(const LinearOp& op, const FunctionSample& x) {
    return op.is_integral() ? apply(op.integral(), x) : apply(op.diff(), x);
}

FunctionSample compose_apply(std::span<const LinearOp> ops, const FunctionSample& x) {
    FunctionSample acc = x;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) acc = apply(*it, acc);
    return acc;
}

FunctionSample apply_poly(const LinearOp& A, const PolynomialSpec& F, const FunctionSample& x) {
    if (A.is_integral()) {
        FunctionSample out = F.delta(0) * x;
        if (F.degree() >= 1) {
            const IntegralOp fn{poly_kernel(A.integral().kernel, F, F.degree())};
            out = out + apply(fn, x);
        }
        return out;
    }
    return apply_poly_iterative(A, F, x);
}

FunctionSample apply_poly_iterative(const LinearOp& A, const PolynomialSpec& F,
                                    const FunctionSample& x) {
    FunctionSample out = F.delta(0) * x;
    FunctionSample power = x;
    for (int j = 1; j <= F.degree(); ++j) {
        power = apply(A, power);
        if (F.delta(j) != 0.0) out = out + F.delta(j) * power;
    }
    return out;
}

FunctionSample ba_n_expansion(const IntegralOp& B, const DiffOp& A, int n,
                              const FunctionSample& x) {
    if (n < 0) throw PreconditionError("ba_n_expansion: n must be >= 0");
    const Kernel& k = B.kernel;
    const FunctionSample& a = A.multiplier;
    if (!same_grid(*k.grid(), *a.grid) || !same_grid(*k.grid(), *x.grid))
        throw GridMismatchError("ba_n_expansion: operands on different grids");
    const GridPtr& grid = k.grid();
    const int last = grid->n - 1;

    // A^{n-1-i} x for i = 0..n-1, i.e. powers 0..n-1
    std::vector<FunctionSample> a_powers;
    a_powers.reserve(n);
    a_powers.push_back(x);
    for (int p = 1; p < n; ++p) a_powers.push_back(apply(A, a_powers.back()));

    Eigen::VectorXd acc = Eigen::VectorXd::Zero(grid->n);
    double sign = 1.0;
    for (int i = 0; i < n; ++i) {
        const Eigen::MatrixXd& ki = iterate_kernel_derivative(k, a, i).dense_values();
        const FunctionSample& ax = a_powers[n - 1 - i];
        const double at_beta = a.values(last) * ax.values(last);
        const double at_alpha = a.values(0) * ax.values(0);
        acc += sign * (ki.col(last) * at_beta - ki.col(0) * at_alpha);
        sign = -sign;
    }
    // sign is now (-1)^n
    const Eigen::MatrixXd& kn = iterate_kernel_derivative(k, a, n).dense_values();
    acc += sign * (kn * grid->weights.cwiseProduct(x.values));
    return FunctionSample{x.grid, std::move(acc)};
}

}  // namespace covrep
