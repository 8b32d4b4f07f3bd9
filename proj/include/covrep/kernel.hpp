#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "covrep/function_sample.hpp"

namespace covrep {

/*
 * Bivariate kernel k(t,s) sampled on a grid, either as a dense n x n matrix
 * (entry [i][j] = k(node_i, node_j)) or in separable form a(t)c(s).
 *
 * Kernels are immutable; integral iterates k_m are memoized per (kernel, m)
 * behind a mutex, so sharing across threads is fine.
 */
class Kernel {
  public:
    static Kernel dense(const GridPtr& grid, Eigen::MatrixXd values);
    static Kernel separable(FunctionSample a_factor, FunctionSample c_factor);

    const GridPtr& grid() const { return grid_; }
    bool is_separable() const { return separable_ != nullptr; }
    const FunctionSample& a_factor() const;
    const FunctionSample& c_factor() const;

    // Dense matrix view; densifies a separable kernel as the outer product
    // a(t_i) * c(s_j).
    const Eigen::MatrixXd& dense_values() const;

    double max_abs() const;

  private:
    struct SeparableParts {
        FunctionSample a;
        FunctionSample c;
    };
    // Caches live behind shared_ptr so Kernel copies stay cheap and share
    // the memoized work; access is mutex-guarded.
    struct DenseCache {
        std::mutex mutex;
        std::shared_ptr<const Eigen::MatrixXd> mat;
    };
    struct IterateMemo {
        std::mutex mutex;
        std::map<int, Eigen::MatrixXd> by_order;
    };

    GridPtr grid_;
    std::shared_ptr<const SeparableParts> separable_;
    std::shared_ptr<DenseCache> dense_ = std::make_shared<DenseCache>();
    std::shared_ptr<IterateMemo> memo_ = std::make_shared<IterateMemo>();

    friend Kernel iterate_kernel_integral(const Kernel& k, int m);
};

struct PolynomialSpec;  // operators.hpp

/*
 * Iterated kernel of the integral recursion
 *   k_0 = k,   k_m(t,s) = int k(t,tau) k_{m-1}(tau,s) dtau.
 * Separable kernels use the scalar shortcut k_m = k_0 * Q^m with
 * Q = int a(tau)c(tau) dtau; dense kernels go through quadrature.
 */
Kernel iterate_kernel_integral(const Kernel& k, int m);

// Q_{[alpha,beta]}(a,c) of a separable kernel: quadrature of a*c.
double separable_q(const Kernel& k);

/*
 * Iterated kernel of the derivative recursion (differential-first direction):
 *   k_0 = k,   k_m(t,s) = d/ds [ a(s) k_{m-1}(t,s) ].
 */
Kernel iterate_kernel_derivative(const Kernel& k, const FunctionSample& a, int m);

// F_m(k(t,s)) = sum_{j=1..m} delta_j k_{j-1}(t,s); the constant coefficient
// delta_0 is excluded by definition. Requires 1 <= m <= degree of F.
Kernel poly_kernel(const Kernel& k, const PolynomialSpec& F, int m);

/*
 * Export/import. `basepath`.json names the variant and the grid; the data
 * sits next to it as `basepath`.csv (dense matrix rows, or two columns a,c
 * for the separable form).
 */
void export_kernel(const Kernel& k, const std::string& basepath);
Kernel import_kernel(const std::string& basepath);

}  // namespace covrep
