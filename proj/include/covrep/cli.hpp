#pragma once

#include <optional>
#include <string>
#include <vector>

namespace covrep {

/*
 * Batch entry points behind the command-line tool. Exit status contract:
 * 0 = every requested check passed (or the requested verdict was delivered),
 * 1 = a check failed, 2 = unusable configuration.
 */
struct RunConfig {
    std::string command;  // verify | construct | solve-xi0 | report

    // grid
    int n = 64;
    double alpha = 0.0;
    double beta = 1.0;

    // verify
    std::string fixture;
    std::string relation;  // e.g. "AB=BA^n" (default per fixture) or "AB=BF(A)"
    int max_n = 5;
    double tolerance = 1e-8;
    double perturb_b = 0.0;

    // construct
    std::string spec_path;        // JSON construction spec
    std::string out_dir = ".";

    // solve-xi0
    std::string family;  // monomial | affine
    double nu0 = 0.0;
    double nu1 = 0.0;
    int m_power = 2;
    double delta_mono = 1.0;
    int n_power = 2;
    double q_ac = 0.0;

    // report
    std::string report_path;
};

int run(const RunConfig& config);

}  // namespace covrep
