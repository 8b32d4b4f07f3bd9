#include "covrep/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "covrep/errors.hpp"

namespace covrep {

namespace {

// d/ds [ b(s) k(t,s) ] at every node pair: row i is the s-derivative of
// b(s) k(t_i, s).
Eigen::MatrixXd d_ds_bk(const Eigen::MatrixXd& k, const FunctionSample& b) {
    return (k * b.values.asDiagonal()) * b.grid->diff.transpose();
}

// d/dt F_n(k(t,s)) at every node pair (zero matrix when deg F < 1).
Eigen::MatrixXd d_dt_fnk(const Kernel& k, const PolynomialSpec& F) {
    const int n = k.grid()->n;
    if (F.degree() < 1) return Eigen::MatrixXd::Zero(n, n);
    return k.grid()->diff * poly_kernel(k, F, F.degree()).dense_values();
}

struct Eq34Work {
    const Kernel* kernel;
    Eigen::MatrixXd dsbk;   // d/ds[b k]
    Eigen::MatrixXd dtfnk;  // d/dt F_n(k)
    FunctionSample b;
    double delta0;
};

Eq34Work prepare_eq34(const IntegralOp& A, const DiffOp& B, const PolynomialSpec& F) {
    if (!same_grid(*A.kernel.grid(), *B.multiplier.grid))
        throw GridMismatchError("residual_eq3/eq4: operators on different grids");
    Eq34Work w;
    w.kernel = &A.kernel;
    w.dsbk = d_ds_bk(A.kernel.dense_values(), B.multiplier);
    w.dtfnk = d_dt_fnk(A.kernel, F);
    w.b = B.multiplier;
    w.delta0 = F.delta(0);
    return w;
}

// Defect of condition eq3/eq4 for one member; with_boundary switches the
// boundary terms on.
double member_defect(const Eq34Work& w, const FunctionSample& x, bool with_boundary) {
    const GridPtr& grid = x.grid;
    const Eigen::VectorXd wx = grid->weights.cwiseProduct(x.values);
    Eigen::VectorXd lhs = -(w.dsbk * wx);
    if (with_boundary) {
        const int last = grid->n - 1;
        const Eigen::MatrixXd& k = w.kernel->dense_values();
        lhs += k.col(last) * (w.b.values(last) * x.values(last)) -
               k.col(0) * (w.b.values(0) * x.values(0));
    }
    Eigen::VectorXd rhs = w.b.values.cwiseProduct(w.dtfnk * wx);
    if (w.delta0 != 0.0)
        rhs += w.delta0 * w.b.values.cwiseProduct(grid->diff * x.values);
    const double norm = sup_norm(x);
    if (norm == 0.0) throw PreconditionError("residual: zero test member");
    return (lhs - rhs).cwiseAbs().maxCoeff() / norm;
}

bool set_intersects(const std::set<int>& a, const std::set<int>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else
            return true;
    }
    return false;
}

nlohmann::ordered_json index_set_json(const std::set<int>& s) {
    return nlohmann::ordered_json(std::vector<int>(s.begin(), s.end()));
}

}  // namespace

std::string condition_name(ConditionId id) {
    switch (id) {
        case ConditionId::direct_covariance: return "direct-covariance";
        case ConditionId::eq3: return "eq3";
        case ConditionId::eq4: return "eq4";
        case ConditionId::eq5: return "eq5";
        case ConditionId::eq14: return "eq14";
    }
    return "?";
}

ResidualReport make_report(ConditionId id, std::vector<MemberResidual> per_member,
                           double tolerance) {
    ResidualReport report;
    report.condition_id = id;
    report.per_member = std::move(per_member);
    report.tolerance = tolerance;
    report.max_residual = 0.0;
    for (const auto& m : report.per_member)
        report.max_residual = std::max(report.max_residual, m.residual);
    report.pass = report.max_residual <= tolerance;
    return report;
}

ResidualReport residual_direct(const LinearOp& A, const LinearOp& B, const PolynomialSpec& F,
                               const TestFamily& fam, double tolerance) {
    if (fam.members.empty()) throw PreconditionError("residual_direct: empty test family");
    std::vector<MemberResidual> per_member;
    per_member.reserve(fam.members.size());
    for (int i = 0; i < static_cast<int>(fam.members.size()); ++i) {
        const FunctionSample& x = fam.members[i];
        const FunctionSample lhs = apply(A, apply(B, x));
        const FunctionSample rhs = apply(B, apply_poly(A, F, x));
        const double norm = sup_norm(x);
        if (norm == 0.0) throw PreconditionError("residual_direct: zero test member");
        per_member.push_back({i, sup_norm(lhs - rhs) / norm});
    }
    return make_report(ConditionId::direct_covariance, std::move(per_member), tolerance);
}

ResidualReport residual_eq3(const IntegralOp& A, const DiffOp& B, const PolynomialSpec& F,
                            const TestFamily& fam, double tolerance) {
    if (fam.members.empty()) throw PreconditionError("residual_eq3: empty test family");
    const Eq34Work w = prepare_eq34(A, B, F);
    std::vector<MemberResidual> per_member;
    per_member.reserve(fam.members.size());
    for (int i = 0; i < static_cast<int>(fam.members.size()); ++i)
        per_member.push_back({i, member_defect(w, fam.members[i], /*with_boundary=*/true)});
    return make_report(ConditionId::eq3, std::move(per_member), tolerance);
}

ResidualReport residual_eq4(const IntegralOp& A, const DiffOp& B, const PolynomialSpec& F,
                            const TestFamily& fam, double tolerance) {
    if (fam.members.empty()) throw PreconditionError("residual_eq4: empty test family");
    if (fam.kind != FamilyKind::endpoint_vanishing)
        throw PreconditionError("residual_eq4: family must be endpoint-vanishing");
    const Eq34Work w = prepare_eq34(A, B, F);
    std::vector<MemberResidual> per_member;
    per_member.reserve(fam.members.size());
    for (int i = 0; i < static_cast<int>(fam.members.size()); ++i)
        per_member.push_back({i, member_defect(w, fam.members[i], /*with_boundary=*/false)});
    return make_report(ConditionId::eq4, std::move(per_member), tolerance);
}

double residual_eq5(const Kernel& k, const FunctionSample& b, const PolynomialSpec& F) {
    if (F.delta(0) != 0.0)
        throw PreconditionError("residual_eq5: requires delta_0 = 0 (got " +
                                std::to_string(F.delta(0)) + ")");
    if (!same_grid(*k.grid(), *b.grid))
        throw GridMismatchError("residual_eq5: kernel and b on different grids");
    const Eigen::MatrixXd lhs = -d_ds_bk(k.dense_values(), b);
    const Eigen::MatrixXd rhs = b.values.asDiagonal() * d_dt_fnk(k, F);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double residual_eq14(const Kernel& k, const FunctionSample& a, const PolynomialSpec& F,
                     std::optional<std::pair<double, double>> declared_boundary) {
    if (F.delta(0) != 0.0) throw PreconditionError("residual_eq14: requires delta_0 = 0");
    if (!same_grid(*k.grid(), *a.grid))
        throw GridMismatchError("residual_eq14: kernel and a on different grids");
    const double a_alpha = declared_boundary ? declared_boundary->first : a.values(0);
    const double a_beta = declared_boundary ? declared_boundary->second : a.values(a.grid->n - 1);
    if (std::abs(a_alpha) > 1e-12 || std::abs(a_beta) > 1e-12)
        throw PreconditionError(
            "residual_eq14: boundary condition a(alpha)=a(beta)=0 violated (|a(alpha)|=" +
            std::to_string(std::abs(a_alpha)) + ", |a(beta)|=" + std::to_string(std::abs(a_beta)) +
            ")");

    const Eigen::MatrixXd lhs =
        a.values.asDiagonal() * (k.grid()->diff * k.dense_values());
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(k.grid()->n, k.grid()->n);
    double sign = -1.0;  // (-1)^m starting at m=1
    for (int m = 1; m <= F.degree(); ++m) {
        if (F.delta(m) != 0.0)
            rhs += sign * F.delta(m) * iterate_kernel_derivative(k, a, m).dense_values();
        sign = -sign;
    }
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

SupportReport support_sets(const FunctionSample& a, const FunctionSample& b,
                           const FunctionSample& c, double epsilon_supp) {
    if (epsilon_supp <= 0.0) throw PreconditionError("support_sets: epsilon_supp must be > 0");
    if (!same_grid(*a.grid, *b.grid) || !same_grid(*a.grid, *c.grid))
        throw GridMismatchError("support_sets: samples on different grids");

    const int n = a.grid->n;
    const Eigen::VectorXd ap = differentiate(a).values;
    const Eigen::VectorXd cp = differentiate(c).values;

    SupportReport report;
    report.epsilon_supp = epsilon_supp;
    auto above = [&](double v) { return std::abs(v) > epsilon_supp; };
    for (int i = 0; i < n; ++i) {
        if (above(a.values(i))) report.supp_a.insert(i);
        if (above(b.values(i))) report.supp_b.insert(i);
        if (above(c.values(i))) report.supp_c.insert(i);
        if (above(ap(i))) report.supp_a_prime.insert(i);
        if (above(cp(i))) report.supp_c_prime.insert(i);
        if (above(a.values(i)) && above(ap(i))) report.omega_a.insert(i);
        if (above(c.values(i))) report.omega_c.insert(i);
    }

    std::set<int> outside_omega_c, outside_omega_a;
    for (int i = 0; i < n; ++i) {
        if (!report.omega_c.count(i)) outside_omega_c.insert(i);
        if (!report.omega_a.count(i)) outside_omega_a.insert(i);
    }
    std::set<int> cp_and_b;
    std::set_intersection(report.supp_c_prime.begin(), report.supp_c_prime.end(),
                          report.supp_b.begin(), report.supp_b.end(),
                          std::inserter(cp_and_b, cp_and_b.begin()));
    std::set<int> ap_and_b;
    std::set_intersection(report.supp_a_prime.begin(), report.supp_a_prime.end(),
                          report.supp_b.begin(), report.supp_b.end(),
                          std::inserter(ap_and_b, ap_and_b.begin()));

    report.case2b_empty = !set_intersects(cp_and_b, outside_omega_c);
    report.case2c_support_empty = !set_intersects(ap_and_b, outside_omega_a);
    report.case2c_alternative_engaged = !std::includes(
        report.supp_a.begin(), report.supp_a.end(), report.supp_a_prime.begin(),
        report.supp_a_prime.end());

    const Eigen::VectorXd bc = b.values.cwiseProduct(c.values);
    report.gamma0_estimate = bc.mean();
    const double bc_scale = std::max(1.0, bc.cwiseAbs().maxCoeff());
    report.bc_constant =
        (bc - Eigen::VectorXd::Constant(n, report.gamma0_estimate)).cwiseAbs().maxCoeff() <=
        1e-8 * bc_scale;

    report.case2c_pass = report.case2c_support_empty ||
                         (!report.case2c_alternative_engaged || report.bc_constant);
    report.case2d_pass = !report.case2c_alternative_engaged || report.case2b_empty;
    report.supp_b_c_disjoint = !set_intersects(report.supp_b, report.supp_c);
    return report;
}

double default_epsilon_supp(std::initializer_list<const FunctionSample*> samples) {
    double m = 0.0;
    for (const FunctionSample* f : samples) m = std::max(m, sup_norm(*f));
    return 1e-10 * std::max(m, 1e-300);
}

std::string to_json(const ResidualReport& report) {
    nlohmann::ordered_json j;
    j["condition_id"] = condition_name(report.condition_id);
    j["tolerance"] = report.tolerance;
    j["max_residual"] = report.max_residual;
    j["pass"] = report.pass;
    auto members = nlohmann::ordered_json::array();
    for (const auto& m : report.per_member)
        members.push_back({{"member", m.member}, {"residual", m.residual}});
    j["per_member"] = members;
    return j.dump(2);
}

std::string to_json(const SupportReport& report) {
    nlohmann::ordered_json j;
    j["epsilon_supp"] = report.epsilon_supp;
    j["note"] = "numerical epsilon-supports on the sampled nodes";
    j["omega_a"] = index_set_json(report.omega_a);
    j["omega_c"] = index_set_json(report.omega_c);
    j["supp_b"] = index_set_json(report.supp_b);
    j["supp_a_prime"] = index_set_json(report.supp_a_prime);
    j["supp_c_prime"] = index_set_json(report.supp_c_prime);
    j["case2b_empty"] = report.case2b_empty;
    j["case2c_support_empty"] = report.case2c_support_empty;
    j["case2c_alternative_engaged"] = report.case2c_alternative_engaged;
    j["bc_constant"] = report.bc_constant;
    j["gamma0_estimate"] = report.gamma0_estimate;
    j["case2c_pass"] = report.case2c_pass;
    j["case2d_pass"] = report.case2d_pass;
    j["supp_b_c_disjoint"] = report.supp_b_c_disjoint;
    return j.dump(2);
}

std::string render_table(const ResidualReport& report) {
    std::ostringstream out;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-18s tol %.3e  max %.6e  [%s]\n",
                  condition_name(report.condition_id).c_str(), report.tolerance,
                  report.max_residual, report.pass ? "PASS" : "FAIL");
    out << buf;
    for (const auto& m : report.per_member) {
        std::snprintf(buf, sizeof(buf), "  member %3d  residual %.6e\n", m.member, m.residual);
        out << buf;
    }
    return out.str();
}

}  // namespace covrep
