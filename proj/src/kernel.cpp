#include "covrep/kernel.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "covrep/errors.hpp"
#include "covrep/operators.hpp"

namespace covrep {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Kernel Kernel::dense(const GridPtr& grid, Eigen::MatrixXd values) {
    if (!grid) throw PreconditionError("Kernel::dense: null grid");
    if (values.rows() != grid->n || values.cols() != grid->n)
        throw PreconditionError("Kernel::dense: matrix shape does not match grid");
    if (!values.allFinite()) throw NumericError("Kernel::dense: non-finite entries");
    Kernel k;
    k.grid_ = grid;
    k.dense_->mat = std::make_shared<const Eigen::MatrixXd>(std::move(values));
    return k;
}

Kernel Kernel::separable(FunctionSample a_factor, FunctionSample c_factor) {
    if (!a_factor.grid || !c_factor.grid)
        throw PreconditionError("Kernel::separable: factor has no grid");
    if (!same_grid(*a_factor.grid, *c_factor.grid))
        throw GridMismatchError("Kernel::separable: factors on different grids");
    Kernel k;
    k.grid_ = a_factor.grid;
    k.separable_ = std::make_shared<const SeparableParts>(
        SeparableParts{std::move(a_factor), std::move(c_factor)});
    return k;
}

const FunctionSample& Kernel::a_factor() const {
    if (!separable_) throw PreconditionError("Kernel::a_factor: kernel is dense");
    return separable_->a;
}

const FunctionSample& Kernel::c_factor() const {
    if (!separable_) throw PreconditionError("Kernel::c_factor: kernel is dense");
    return separable_->c;
}

const Eigen::MatrixXd& Kernel::dense_values() const {
    std::lock_guard<std::mutex> lock(dense_->mutex);
    if (!dense_->mat)
        dense_->mat = std::make_shared<const Eigen::MatrixXd>(separable_->a.values *
                                                              separable_->c.values.transpose());
    return *dense_->mat;
}

double Kernel::max_abs() const { return dense_values().cwiseAbs().maxCoeff(); }

double separable_q(const Kernel& k) {
    return quadrature(pointwise_product(k.a_factor(), k.c_factor()));
}

Kernel iterate_kernel_integral(const Kernel& k, int m) {
    if (m < 0) throw PreconditionError("iterate_kernel_integral: m must be >= 0");
    if (m == 0) return k;
    if (k.is_separable()) {
        // k_m(t,s) = a(t) c(s) Q^m, Q = int a c
        const double q = separable_q(k);
        return Kernel::separable(std::pow(q, m) * k.a_factor(), k.c_factor());
    }
    std::lock_guard<std::mutex> lock(k.memo_->mutex);
    auto& memo = k.memo_->by_order;
    if (auto it = memo.find(m); it != memo.end()) return Kernel::dense(k.grid(), it->second);

    const Eigen::MatrixXd& k0 = k.dense_values();
    const Eigen::MatrixXd weighted = k0 * k.grid()->weights.asDiagonal();
    // highest cached order below m, if any
    int start = 0;
    Eigen::MatrixXd current = k0;
    for (auto it = memo.rbegin(); it != memo.rend(); ++it) {
        if (it->first < m) {
            start = it->first;
            current = it->second;
            break;
        }
    }
    for (int j = start + 1; j <= m; ++j) {
        current = weighted * current;
        memo[j] = current;
    }
    return Kernel::dense(k.grid(), current);
}

Kernel iterate_kernel_derivative(const Kernel& k, const FunctionSample& a, int m) {
    if (m < 0) throw PreconditionError("iterate_kernel_derivative: m must be >= 0");
    if (!same_grid(*k.grid(), *a.grid))
        throw GridMismatchError("iterate_kernel_derivative: multiplier on a different grid");
    if (m == 0) return k;
    if (k.is_separable()) {
        // d/ds [a(s) a_f(t) c(s)] = a_f(t) * (a c)'(s): stays separable
        FunctionSample c = k.c_factor();
        for (int j = 0; j < m; ++j) c = differentiate(pointwise_product(a, c));
        return Kernel::separable(k.a_factor(), c);
    }
    Eigen::MatrixXd current = k.dense_values();
    const Eigen::MatrixXd dst = k.grid()->diff.transpose();
    for (int j = 0; j < m; ++j)
        current = (current * a.values.asDiagonal()) * dst;
    return Kernel::dense(k.grid(), current);
}

Kernel poly_kernel(const Kernel& k, const PolynomialSpec& F, int m) {
    if (m < 1 || m > F.degree())
        throw PreconditionError("poly_kernel: need 1 <= m <= degree(F), got m = " +
                                std::to_string(m) + ", degree = " + std::to_string(F.degree()));
    if (k.is_separable()) {
        // sum_j delta_j Q^{j-1} a(t) c(s)
        const double q = separable_q(k);
        double scale = 0.0;
        for (int j = 1; j <= m; ++j) scale += F.delta(j) * std::pow(q, j - 1);
        return Kernel::separable(scale * k.a_factor(), k.c_factor());
    }
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k.grid()->n, k.grid()->n);
    for (int j = 1; j <= m; ++j) {
        const double dj = F.delta(j);
        if (dj == 0.0) continue;
        acc += dj * iterate_kernel_integral(k, j - 1).dense_values();
    }
    return Kernel::dense(k.grid(), std::move(acc));
}

void export_kernel(const Kernel& k, const std::string& basepath) {
    const Grid& g = *k.grid();
    nlohmann::ordered_json header;
    header["variant"] = k.is_separable() ? "separable" : "dense";
    header["grid"] = {{"n", g.n}, {"alpha", g.alpha}, {"beta", g.beta}};
    header["csv"] = basepath.substr(basepath.find_last_of('/') + 1) + ".csv";
    std::ofstream jout(basepath + ".json");
    if (!jout) throw std::runtime_error("export_kernel: cannot open " + basepath + ".json");
    jout << header.dump(2) << "\n";

    std::ofstream out(basepath + ".csv");
    if (!out) throw std::runtime_error("export_kernel: cannot open " + basepath + ".csv");
    if (k.is_separable()) {
        out << "a,c\n";
        for (int i = 0; i < g.n; ++i)
            out << format_double(k.a_factor().values(i)) << ","
                << format_double(k.c_factor().values(i)) << "\n";
    } else {
        const Eigen::MatrixXd& v = k.dense_values();
        for (int i = 0; i < g.n; ++i) {
            for (int j = 0; j < g.n; ++j) out << (j ? "," : "") << format_double(v(i, j));
            out << "\n";
        }
    }
}

Kernel import_kernel(const std::string& basepath) {
    std::ifstream jin(basepath + ".json");
    if (!jin) throw std::runtime_error("import_kernel: cannot open " + basepath + ".json");
    nlohmann::json header = nlohmann::json::parse(jin);
    const auto grid = build_grid(header["grid"]["n"].get<int>(),
                                 header["grid"]["alpha"].get<double>(),
                                 header["grid"]["beta"].get<double>());
    std::ifstream in(basepath + ".csv");
    if (!in) throw std::runtime_error("import_kernel: cannot open " + basepath + ".csv");

    const std::string variant = header["variant"].get<std::string>();
    std::string line;
    if (variant == "separable") {
        std::getline(in, line);  // header row
        FunctionSample a{grid, Eigen::VectorXd(grid->n)};
        FunctionSample c{grid, Eigen::VectorXd(grid->n)};
        for (int i = 0; i < grid->n; ++i) {
            if (!std::getline(in, line))
                throw std::runtime_error("import_kernel: truncated separable csv");
            const auto comma = line.find(',');
            a.values(i) = std::stod(line.substr(0, comma));
            c.values(i) = std::stod(line.substr(comma + 1));
        }
        return Kernel::separable(std::move(a), std::move(c));
    }
    if (variant == "dense") {
        Eigen::MatrixXd values(grid->n, grid->n);
        for (int i = 0; i < grid->n; ++i) {
            if (!std::getline(in, line))
                throw std::runtime_error("import_kernel: truncated dense csv");
            std::size_t pos = 0;
            for (int j = 0; j < grid->n; ++j) {
                std::size_t next = line.find(',', pos);
                values(i, j) = std::stod(line.substr(pos, next - pos));
                pos = (next == std::string::npos) ? line.size() : next + 1;
            }
        }
        return Kernel::dense(grid, std::move(values));
    }
    throw std::runtime_error("import_kernel: unknown variant '" + variant + "'");
}

}  // namespace covrep
