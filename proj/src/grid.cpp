#include "covrep/grid.hpp"

#include <cmath>
#include <numbers>

#include "covrep/errors.hpp"

namespace covrep {

namespace {

constexpr double kPi = std::numbers::pi;

// Clenshaw-Curtis weights for the N+1 CGL nodes cos(j pi / N) on [-1,1],
// returned in the same (decreasing-node) order. Exact for polynomials of
// degree <= N.
Eigen::VectorXd clenshaw_curtis(int N) {
    Eigen::VectorXd w(N + 1);
    const double boundary = (N % 2 == 0) ? 1.0 / (double(N) * N - 1.0) : 1.0 / (double(N) * N);
    w(0) = boundary;
    w(N) = boundary;
    for (int j = 1; j < N; ++j) {
        const double theta = kPi * j / N;
        double s = 1.0;
        if (N % 2 == 0) {
            for (int k = 1; k <= N / 2 - 1; ++k)
                s -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
            s -= std::cos(N * theta) / (double(N) * N - 1.0);
        } else {
            for (int k = 1; k <= (N - 1) / 2; ++k)
                s -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        }
        w(j) = 2.0 * s / N;
    }
    return w;
}

}  // namespace

GridPtr build_grid(int n, double alpha, double beta) {
    if (n < 4) throw PreconditionError("build_grid: need n >= 4, got " + std::to_string(n));
    if (!(alpha < beta))
        throw PreconditionError("build_grid: need alpha < beta, got [" + std::to_string(alpha) +
                                ", " + std::to_string(beta) + "]");

    const int N = n - 1;
    auto grid = std::make_shared<Grid>();
    grid->n = n;
    grid->alpha = alpha;
    grid->beta = beta;

    // Increasing CGL nodes: x_j = -cos(j pi / N) mapped to [alpha, beta].
    grid->nodes.resize(n);
    for (int j = 0; j <= N; ++j) {
        const double x = -std::cos(kPi * j / N);
        grid->nodes(j) = alpha + (beta - alpha) * 0.5 * (x + 1.0);
    }
    grid->nodes(0) = alpha;
    grid->nodes(N) = beta;

    // Weights are symmetric, so the decreasing->increasing reorder is a no-op.
    grid->weights = clenshaw_curtis(N) * (0.5 * (beta - alpha));

    // Barycentric differentiation matrix with the negative-sum diagonal.
    Eigen::VectorXd u(n);
    for (int j = 0; j <= N; ++j) {
        double uj = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == N) uj *= 0.5;
        u(j) = uj;
    }
    grid->diff.resize(n, n);
    for (int i = 0; i <= N; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j <= N; ++j) {
            if (i == j) continue;
            const double dij = (u(j) / u(i)) / (grid->nodes(i) - grid->nodes(j));
            grid->diff(i, j) = dij;
            row_sum += dij;
        }
        grid->diff(i, i) = -row_sum;
    }
    return grid;
}

bool same_grid(const Grid& g1, const Grid& g2) {
    if (&g1 == &g2) return true;
    return g1.n == g2.n && g1.alpha == g2.alpha && g1.beta == g2.beta;
}

double ChebSeries::eval(double t) const {
    const double x = (2.0 * t - alpha - beta) / (beta - alpha);
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k) {
        const double b0 = 2.0 * x * b1 - b2 + coeffs(k);
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + coeffs(0);
}

ChebSeries cheb_interpolant(const Grid& grid, const Eigen::VectorXd& values) {
    const int N = grid.n - 1;
    // v in standard (decreasing-node) order: v_k = f(cos(k pi / N)).
    Eigen::VectorXd v(N + 1);
    for (int k = 0; k <= N; ++k) v(k) = values(N - k);

    ChebSeries series;
    series.alpha = grid.alpha;
    series.beta = grid.beta;
    series.coeffs.resize(N + 1);
    for (int m = 0; m <= N; ++m) {
        double s = 0.5 * v(0);
        for (int k = 1; k < N; ++k) s += v(k) * std::cos(kPi * m * k / N);
        s += 0.5 * v(N) * ((m % 2 == 0) ? 1.0 : -1.0);
        const double cm = (m == 0 || m == N) ? 2.0 : 1.0;
        series.coeffs(m) = 2.0 * s / (N * cm);
    }
    return series;
}

ChebSeries cheb_antiderivative(const ChebSeries& series) {
    const int M = static_cast<int>(series.coeffs.size());
    const double scale = 0.5 * (series.beta - series.alpha);  // dt = scale dx

    ChebSeries out;
    out.alpha = series.alpha;
    out.beta = series.beta;
    out.coeffs = Eigen::VectorXd::Zero(M + 1);
    auto a = [&](int k) { return (k >= 0 && k < M) ? series.coeffs(k) : 0.0; };
    for (int m = 1; m <= M; ++m) {
        const double am1 = (m == 1) ? 2.0 * a(0) : a(m - 1);
        out.coeffs(m) = scale * (am1 - a(m + 1)) / (2.0 * m);
    }
    out.coeffs(0) = -out.eval(series.alpha);
    return out;
}

}  // namespace covrep
