#pragma once

#include <functional>
#include <string>
#include <vector>

#include "covrep/grid.hpp"

namespace covrep {

// A function represented by its values at the nodes of a Grid.
struct FunctionSample {
    GridPtr grid;
    Eigen::VectorXd values;
};

// Samples a callable at the grid nodes.
FunctionSample sample(const GridPtr& grid, const std::function<double(double)>& f);

FunctionSample zero_sample(const GridPtr& grid);
FunctionSample constant_sample(const GridPtr& grid, double value);

double sup_norm(const FunctionSample& f);

// Elementwise arithmetic; operands must share a grid.
FunctionSample operator+(const FunctionSample& f, const FunctionSample& g);
FunctionSample operator-(const FunctionSample& f, const FunctionSample& g);
FunctionSample operator*(double s, const FunctionSample& f);
FunctionSample pointwise_product(const FunctionSample& f, const FunctionSample& g);

// Clenshaw-Curtis quadrature of the sample over [alpha, beta]; exact for
// polynomials up to the grid's algebraic degree. Throws NumericError on
// non-finite values.
double quadrature(const FunctionSample& f);

// Spectral derivative (differentiation matrix applied to the values).
FunctionSample differentiate(const FunctionSample& f);

// G(t) = integral of f from t0 to t, computed through the Chebyshev
// antiderivative of the interpolant. t0 need not be a node.
FunctionSample cumulative_integral(const FunctionSample& f, double t0);

enum class FamilyKind { endpoint_vanishing, unconstrained };

// Finite stand-in for the quantifier "for all x" over the test subspace:
// sine modes for the endpoint-vanishing kind, shifted Chebyshev polynomials
// for the unconstrained kind.
struct TestFamily {
    std::vector<FunctionSample> members;
    FamilyKind kind = FamilyKind::endpoint_vanishing;
};

TestFamily make_test_family(const GridPtr& grid, int count, FamilyKind kind);

// CSV export/import, columns "node,value". Import checks the nodes against
// the supplied grid.
void write_sample_csv(const FunctionSample& f, const std::string& path);
FunctionSample read_sample_csv(const GridPtr& grid, const std::string& path);

// JSON text summarising a grid (n, endpoints, weight sum).
std::string grid_summary_json(const Grid& grid);

}  // namespace covrep
