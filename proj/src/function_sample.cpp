#include "covrep/function_sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "covrep/errors.hpp"

namespace covrep {

namespace {

void require_valid(const FunctionSample& f, const char* where) {
    if (!f.grid) throw PreconditionError(std::string(where) + ": sample has no grid");
    if (f.values.size() != f.grid->n)
        throw PreconditionError(std::string(where) + ": values length does not match grid");
}

void require_same_grid(const FunctionSample& f, const FunctionSample& g, const char* where) {
    require_valid(f, where);
    require_valid(g, where);
    if (!same_grid(*f.grid, *g.grid))
        throw GridMismatchError(std::string(where) + ": operands on different grids");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

FunctionSample sample(const GridPtr& grid, const std::function<double(double)>& f) {
    FunctionSample out;
    out.grid = grid;
    out.values.resize(grid->n);
    for (int i = 0; i < grid->n; ++i) out.values(i) = f(grid->nodes(i));
    return out;
}

FunctionSample zero_sample(const GridPtr& grid) { return constant_sample(grid, 0.0); }

FunctionSample constant_sample(const GridPtr& grid, double value) {
    FunctionSample out;
    out.grid = grid;
    out.values = Eigen::VectorXd::Constant(grid->n, value);
    return out;
}

double sup_norm(const FunctionSample& f) {
    require_valid(f, "sup_norm");
    return f.values.cwiseAbs().maxCoeff();
}

FunctionSample operator+(const FunctionSample& f, const FunctionSample& g) {
    require_same_grid(f, g, "operator+");
    return FunctionSample{f.grid, f.values + g.values};
}

FunctionSample operator-(const FunctionSample& f, const FunctionSample& g) {
    require_same_grid(f, g, "operator-");
    return FunctionSample{f.grid, f.values - g.values};
}

FunctionSample operator*(double s, const FunctionSample& f) {
    return FunctionSample{f.grid, s * f.values};
}

FunctionSample pointwise_product(const FunctionSample& f, const FunctionSample& g) {
    require_same_grid(f, g, "pointwise_product");
    return FunctionSample{f.grid, f.values.cwiseProduct(g.values)};
}

double quadrature(const FunctionSample& f) {
    require_valid(f, "quadrature");
    if (!f.values.allFinite()) throw NumericError("quadrature: non-finite sample values");
    return f.grid->weights.dot(f.values);
}

FunctionSample differentiate(const FunctionSample& f) {
    require_valid(f, "differentiate");
    return FunctionSample{f.grid, f.grid->diff * f.values};
}

FunctionSample cumulative_integral(const FunctionSample& f, double t0) {
    require_valid(f, "cumulative_integral");
    if (t0 < f.grid->alpha || t0 > f.grid->beta)
        throw PreconditionError("cumulative_integral: base point outside the grid interval");
    const ChebSeries anti = cheb_antiderivative(cheb_interpolant(*f.grid, f.values));
    const double base = anti.eval(t0);
    FunctionSample out;
    out.grid = f.grid;
    out.values.resize(f.grid->n);
    for (int i = 0; i < f.grid->n; ++i) out.values(i) = anti.eval(f.grid->nodes(i)) - base;
    return out;
}

TestFamily make_test_family(const GridPtr& grid, int count, FamilyKind kind) {
    if (count < 1) throw PreconditionError("make_test_family: count must be positive");
    TestFamily fam;
    fam.kind = kind;
    fam.members.reserve(count);
    const double len = grid->beta - grid->alpha;
    for (int k = 1; k <= count; ++k) {
        if (kind == FamilyKind::endpoint_vanishing) {
            fam.members.push_back(sample(grid, [&](double t) {
                return std::sin(k * std::numbers::pi * (t - grid->alpha) / len);
            }));
            // sines vanish analytically at the endpoints; pin the samples
            fam.members.back().values(0) = 0.0;
            fam.members.back().values(grid->n - 1) = 0.0;
        } else {
            const int deg = k - 1;
            fam.members.push_back(sample(grid, [&](double t) {
                const double x = (2.0 * t - grid->alpha - grid->beta) / len;
                return std::cos(deg * std::acos(std::clamp(x, -1.0, 1.0)));
            }));
        }
    }
    return fam;
}

void write_sample_csv(const FunctionSample& f, const std::string& path) {
    require_valid(f, "write_sample_csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_sample_csv: cannot open " + path);
    out << "node,value\n";
    for (int i = 0; i < f.grid->n; ++i)
        out << format_double(f.grid->nodes(i)) << "," << format_double(f.values(i)) << "\n";
}

FunctionSample read_sample_csv(const GridPtr& grid, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_sample_csv: cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    FunctionSample out;
    out.grid = grid;
    out.values.resize(grid->n);
    int i = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("read_sample_csv: malformed line '" + line + "'");
        if (i >= grid->n) throw std::runtime_error("read_sample_csv: more rows than grid nodes");
        const double node = std::stod(line.substr(0, comma));
        const double value = std::stod(line.substr(comma + 1));
        if (std::abs(node - grid->nodes(i)) > 1e-12 * (1.0 + std::abs(node)))
            throw std::runtime_error("read_sample_csv: node mismatch at row " + std::to_string(i));
        out.values(i) = value;
        ++i;
    }
    if (i != grid->n) throw std::runtime_error("read_sample_csv: fewer rows than grid nodes");
    return out;
}

std::string grid_summary_json(const Grid& grid) {
    nlohmann::ordered_json j;
    j["n"] = grid.n;
    j["alpha"] = grid.alpha;
    j["beta"] = grid.beta;
    j["weight_sum"] = grid.weights.sum();
    j["node_first"] = grid.nodes(0);
    j["node_last"] = grid.nodes(grid.n - 1);
    return j.dump(2);
}

}  // namespace covrep
