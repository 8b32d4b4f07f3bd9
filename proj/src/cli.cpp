#include "covrep/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "covrep/construct.hpp"
#include "covrep/errors.hpp"
#include "covrep/final_example.hpp"
#include "covrep/fixtures.hpp"

namespace covrep {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

FunctionSample sample_from_family_json(const GridPtr& grid, const nlohmann::json& spec) {
    const std::string family = spec.at("family").get<std::string>();
    if (family == "affine") {
        const double nu0 = spec.at("nu0").get<double>();
        const double nu1 = spec.at("nu1").get<double>();
        return sample(grid, [=](double t) { return nu0 + nu1 * t; });
    }
    if (family == "monomial") {
        const double nu0 = spec.at("nu0").get<double>();
        const int m = spec.at("m").get<int>();
        return sample(grid, [=](double t) { return nu0 * std::pow(t, m); });
    }
    throw PreconditionError("construct spec: unknown a-family '" + family + "'");
}

int run_verify(const RunConfig& config) {
    if (!is_known_fixture(config.fixture)) {
        std::cerr << "verify: unknown fixture '" << config.fixture << "'\n";
        return 2;
    }
    if (config.tolerance <= 0.0) {
        std::cerr << "verify: tolerance must be positive\n";
        return 2;
    }
    const GridPtr grid = build_grid(config.n, config.alpha, config.beta);
    Fixture fixture = make_fixture(config.fixture, grid);
    if (config.perturb_b != 0.0)
        fixture.B.multiplier =
            fixture.B.multiplier + constant_sample(grid, config.perturb_b);

    const TestFamily fam = make_test_family(grid, 12, FamilyKind::endpoint_vanishing);
    std::vector<ResidualReport> reports;

    std::string relation = config.relation;
    if (relation.empty())
        relation = fixture.powers.size() > 1 ? "AB=BA^n" : "AB=BF(A)";

    if (relation == "AB=BA^n") {
        for (int p = 1; p <= config.max_n; ++p)
            reports.push_back(residual_direct(LinearOp{fixture.A}, LinearOp{fixture.B},
                                              PolynomialSpec::monomial(p), fam,
                                              config.tolerance));
    } else if (relation == "AB=BA^2") {
        reports.push_back(residual_direct(LinearOp{fixture.A}, LinearOp{fixture.B},
                                          PolynomialSpec::monomial(2), fam, config.tolerance));
    } else if (relation == "AB=BF(A)") {
        reports.push_back(residual_direct(LinearOp{fixture.A}, LinearOp{fixture.B}, fixture.F,
                                          fam, config.tolerance));
    } else {
        std::cerr << "verify: unknown relation '" << relation << "'\n";
        return 2;
    }
    reports.push_back(residual_eq4(fixture.A, fixture.B, fixture.F, fam, config.tolerance));
    // pointwise condition; absolute defect judged against the same tolerance
    {
        const double eq5 = residual_eq5(fixture.A.kernel, fixture.B.multiplier, fixture.F);
        reports.push_back(
            make_report(ConditionId::eq5, {MemberResidual{0, eq5}}, config.tolerance));
    }

    const FunctionSample& a = fixture.A.kernel.a_factor();
    const FunctionSample& c = fixture.A.kernel.c_factor();
    const FunctionSample& b = fixture.B.multiplier;
    const SupportReport supports =
        support_sets(a, b, c, default_epsilon_supp({&a, &b, &c}));

    bool all_pass = true;
    ordered_json bundle = ordered_json::array();
    for (const auto& r : reports) {
        std::cout << render_table(r);
        bundle.push_back(ordered_json::parse(to_json(r)));
        all_pass = all_pass && r.pass;
    }
    bundle.push_back(ordered_json::parse(to_json(supports)));

    fs::create_directories(config.out_dir);
    write_text(fs::path(config.out_dir) / ("verify_" + config.fixture + ".json"),
               bundle.dump(2));
    std::cout << (all_pass ? "verify: PASS" : "verify: FAIL") << "\n";
    return all_pass ? 0 : 1;
}

int run_construct(const RunConfig& config) {
    if (config.spec_path.empty()) {
        std::cerr << "construct: --spec FILE is required\n";
        return 2;
    }
    std::ifstream in(config.spec_path);
    if (!in) {
        std::cerr << "construct: cannot open " << config.spec_path << "\n";
        return 2;
    }
    nlohmann::json spec = nlohmann::json::parse(in);
    fs::create_directories(config.out_dir);

    if (spec.contains("final_example")) {
        const auto& fe = spec["final_example"];
        const auto interior = fe.at("interior");
        const OdeProfile profile = build_final_example(
            fe.at("lambda").get<double>(), fe.value("lambda1", 1.0), fe.value("lambda2", 1.0),
            fe.value("lambda3", 1.0), {interior.at(0).get<double>(), interior.at(1).get<double>()},
            fe.value("n", 64));
        write_text(fs::path(config.out_dir) / "final_example.json", to_json(profile));
        write_sample_csv(profile.a_sample, (fs::path(config.out_dir) / "a.csv").string());
        write_sample_csv(profile.b_sample, (fs::path(config.out_dir) / "b.csv").string());
        write_sample_csv(profile.c_sample, (fs::path(config.out_dir) / "c.csv").string());
        write_sample_csv(profile.e_sample, (fs::path(config.out_dir) / "e.csv").string());
        std::cout << "construct: final-example profile written to " << config.out_dir
                  << " (branch " << profile.branch << ", ode residual " << profile.ode_residual
                  << ")\n";
        return 0;
    }

    const auto& gspec = spec.at("grid");
    const GridPtr grid = build_grid(gspec.value("n", 64), gspec.value("alpha", 0.0),
                                    gspec.value("beta", 1.0));
    FunctionSample a = spec.at("a").contains("csv")
                           ? read_sample_csv(grid, spec["a"]["csv"].get<std::string>())
                           : sample_from_family_json(grid, spec.at("a"));
    const PolynomialSpec F = PolynomialSpec::from_coeffs(spec.at("F").get<std::vector<double>>());
    const double k1_target = spec.at("k1_target").get<double>();
    const double lambda_scale = spec.value("lambda_scale", 1.0);

    const SeparableRepresentation rep =
        construct_separable_representation(a, F, k1_target, lambda_scale);

    export_kernel(rep.A.kernel, (fs::path(config.out_dir) / "kernel").string());
    write_sample_csv(rep.B.multiplier, (fs::path(config.out_dir) / "b.csv").string());

    ordered_json prov;
    prov["xi0_roots"] = rep.xi0_roots;
    prov["xi0_used"] = rep.params.xi0;
    prov["xi0_policy"] = "smallest root";
    prov["k1_target"] = k1_target;
    prov["k1_recomputed"] = rep.k1_recomputed;
    prov["q_ac"] = rep.params.q_ac;
    prov["lambda_scale"] = lambda_scale;
    prov["eq5_residual"] = rep.eq5_residual;
    prov["c_normalization"] = "c(xi0) = 1";
    write_text(fs::path(config.out_dir) / "provenance.json", prov.dump(2));
    std::cout << "construct: representation written to " << config.out_dir << " (xi0 "
              << rep.params.xi0 << ", eq5 residual " << rep.eq5_residual << ")\n";
    return 0;
}

int run_solve_xi0(const RunConfig& config) {
    ConstructionParams params;
    params.nu0 = config.nu0;
    params.nu1 = config.nu1;
    params.m_power = config.m_power;
    params.delta_mono = config.delta_mono;
    params.n_power = config.n_power;
    params.q_ac = config.q_ac;

    AFamily family;
    if (config.family == "monomial")
        family = AFamily::monomial;
    else if (config.family == "affine")
        family = AFamily::affine;
    else {
        std::cerr << "solve-xi0: --family must be monomial or affine\n";
        return 2;
    }

    const ClosedFormXi0 closed =
        solve_xi0_closed_form(family, params, config.alpha, config.beta);
    std::cout << "closed form: verdict " << verdict_name(closed.verdict) << " (branch "
              << closed.branch << ")\n";
    if (closed.any_xi0) std::cout << "  any xi0 >= 0 in the interval solves the equation\n";
    for (double r : closed.roots) std::cout << "  xi0 = " << r << "\n";

    const GridPtr grid = build_grid(config.n, config.alpha, config.beta);
    const FunctionSample a =
        family == AFamily::monomial
            ? sample(grid, [&](double t) { return params.nu0 * std::pow(t, params.m_power); })
            : sample(grid, [&](double t) { return params.nu0 + params.nu1 * t; });
    const double k1_target = params.delta_mono * std::pow(params.q_ac, params.n_power - 1);
    const Xi0Roots general =
        solve_xi0_general(a, PolynomialSpec::monomial(params.n_power, params.delta_mono),
                          k1_target);
    if (general.entire_interval) {
        std::cout << "general solver: every xi0 in [alpha, beta] solves the equation\n";
    } else {
        std::cout << "general solver: " << general.roots.size() << " root(s)\n";
        for (double r : general.roots) std::cout << "  xi0 = " << r << "\n";
    }

    if (!closed.roots.empty() && !general.entire_interval) {
        double worst = 0.0;
        for (double cr : closed.roots) {
            double best = 1e300;
            for (double gr : general.roots) best = std::min(best, std::abs(gr - cr));
            worst = std::max(worst, best);
        }
        std::cout << "agreement: max distance from closed-form roots to general roots = "
                  << worst << "\n";
    }
    return 0;
}

int run_report(const RunConfig& config) {
    if (config.report_path.empty()) {
        std::cerr << "report: --in FILE is required\n";
        return 2;
    }
    std::ifstream in(config.report_path);
    if (!in) {
        std::cerr << "report: cannot open " << config.report_path << "\n";
        return 2;
    }
    nlohmann::json stored = nlohmann::json::parse(in);
    if (!stored.is_array()) stored = nlohmann::json::array({stored});
    bool all_pass = true;
    for (const auto& item : stored) {
        if (!item.contains("condition_id")) continue;  // support reports etc.
        ResidualReport r;
        const std::string cond = item["condition_id"].get<std::string>();
        for (ConditionId id : {ConditionId::direct_covariance, ConditionId::eq3, ConditionId::eq4,
                               ConditionId::eq5, ConditionId::eq14})
            if (condition_name(id) == cond) r.condition_id = id;
        r.tolerance = item["tolerance"].get<double>();
        r.max_residual = item["max_residual"].get<double>();
        r.pass = item["pass"].get<bool>();
        for (const auto& m : item["per_member"])
            r.per_member.push_back({m["member"].get<int>(), m["residual"].get<double>()});
        std::cout << render_table(r);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config) {
    try {
        if (config.command == "verify") return run_verify(config);
        if (config.command == "construct") return run_construct(config);
        if (config.command == "solve-xi0") return run_solve_xi0(config);
        if (config.command == "report") return run_report(config);
        std::cerr << "unknown command '" << config.command << "'\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace covrep
