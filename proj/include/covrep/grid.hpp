#pragma once

#include <Eigen/Dense>
#include <memory>

namespace covrep {

/*
 * Collocation grid on [alpha, beta]:
 * Chebyshev-Gauss-Lobatto nodes (stored increasing, nodes[0] = alpha,
 * nodes[n-1] = beta), Clenshaw-Curtis quadrature weights and the spectral
 * differentiation matrix on those nodes.
 *
 * Everything downstream works on samples over one of these grids; smooth
 * integrands and derivatives are then accurate to near machine precision
 * already at moderate n.
 */
struct Grid {
    int n = 0;  // node count
    double alpha = 0.0;
    double beta = 0.0;
    Eigen::VectorXd nodes;    // strictly increasing, endpoints included
    Eigen::VectorXd weights;  // sum == beta - alpha
    Eigen::MatrixXd diff;     // n x n differentiation matrix
};

using GridPtr = std::shared_ptr<const Grid>;

// Builds the CGL/Clenshaw-Curtis grid. Requires n >= 4 and alpha < beta.
GridPtr build_grid(int n, double alpha, double beta);

// Same object or structurally identical (n and endpoints match exactly).
bool same_grid(const Grid& g1, const Grid& g2);

/*
 * Chebyshev series on [alpha, beta]: sum_k coeffs[k] * T_k(x(t)) with
 * x(t) = (2t - alpha - beta) / (beta - alpha). Used for evaluating grid
 * samples off-node and for cumulative integrals (antiderivatives are exact
 * in coefficient space).
 */
struct ChebSeries {
    double alpha = 0.0;
    double beta = 0.0;
    Eigen::VectorXd coeffs;

    double eval(double t) const;  // Clenshaw recurrence
};

// Interpolating series through the sample values at the grid nodes.
ChebSeries cheb_interpolant(const Grid& grid, const Eigen::VectorXd& values);

// Antiderivative of the series; the integration constant is fixed so the
// result vanishes at alpha.
ChebSeries cheb_antiderivative(const ChebSeries& series);

}  // namespace covrep
