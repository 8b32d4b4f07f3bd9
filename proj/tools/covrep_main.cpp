#include <CLI11.hpp>

#include "covrep/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"construct and verify integral/differential operator pairs satisfying "
                 "AB = BF(A)"};
    app.require_subcommand(1);
    covrep::RunConfig config;

    auto add_grid_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", config.n, "node count")->check(CLI::PositiveNumber);
        cmd->add_option("--alpha", config.alpha, "left endpoint");
        cmd->add_option("--beta", config.beta, "right endpoint");
    };

    CLI::App* verify = app.add_subcommand("verify", "evaluate residual reports for a fixture");
    add_grid_flags(verify);
    verify->add_option("--fixture", config.fixture, "const-coeff | disjoint-support | example3 | example4")
        ->required();
    verify->add_option("--relation", config.relation, "AB=BA^n | AB=BA^2 | AB=BF(A)");
    verify->add_option("--max-n", config.max_n, "largest power for AB=BA^n");
    verify->add_option("--tol", config.tolerance, "residual tolerance");
    verify->add_option("--perturb-b", config.perturb_b, "add a constant to b before checking");
    verify->add_option("--out", config.out_dir, "output directory for JSON reports");

    CLI::App* construct = app.add_subcommand("construct", "build a representation from a JSON spec");
    construct->add_option("--spec", config.spec_path, "JSON construction spec")->required();
    construct->add_option("--out", config.out_dir, "output directory");

    CLI::App* solve = app.add_subcommand("solve-xi0", "closed-form and general xi0 solvers");
    add_grid_flags(solve);
    solve->add_option("--family", config.family, "monomial | affine")->required();
    solve->add_option("--nu0", config.nu0, "nu0")->required();
    solve->add_option("--nu1", config.nu1, "nu1 (affine)");
    solve->add_option("--m", config.m_power, "m (monomial, >= 2)");
    solve->add_option("--delta", config.delta_mono, "delta of AB = delta BA^n");
    solve->add_option("--n-power", config.n_power, "n of AB = delta BA^n");
    solve->add_option("--q", config.q_ac, "target Q = int a c")->required();

    CLI::App* report = app.add_subcommand("report", "re-render stored JSON reports");
    report->add_option("--in", config.report_path, "stored report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems exit 2
    }

    config.command = app.get_subcommands().front()->get_name();
    return covrep::run(config);
}
