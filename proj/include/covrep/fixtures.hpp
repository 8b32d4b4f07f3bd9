#pragma once

#include <string>
#include <vector>

#include "covrep/operators.hpp"

namespace covrep {

/*
 * Named operator pairs used throughout the verification suite and the CLI.
 *
 *   const-coeff       constant a, b, c; ABx = BA^n x for every n
 *   disjoint-support  int a c = 0, supp b ∩ supp c = ∅, delta_1 = 0
 *   example3          a = -b = (t+1) ln 2, c = 1/((ln 2)^2 (t+1)^2) on [0,1];
 *                     ABx = BA^n x for every positive n
 *   example4          a = t/2 + gamma0, b = lambda a,
 *                     c = (xi0+2 gamma0)^3/(s+2 gamma0)^3; ABx = BA^2 x
 */
struct Fixture {
    std::string name;
    GridPtr grid;
    IntegralOp A;
    DiffOp B;
    PolynomialSpec F;           // the polynomial of the fixture's relation
    std::vector<int> powers;    // n for which ABx = BA^n x is claimed (empty: F only)
    double q_ac = 0.0;          // int a c
    double lambda = 0.0;
};

Fixture make_const_coeff(const GridPtr& grid, double a0 = 1.0, double b0 = 1.0,
                         double c0 = 1.0);
Fixture make_disjoint_support(const GridPtr& grid);
Fixture make_example3(const GridPtr& grid, int relation_power = 1);
Fixture make_example4(const GridPtr& grid, double gamma0 = 0.5, double lambda = 2.0);

bool is_known_fixture(const std::string& name);
// grid must span the fixture's interval ([0,1] for all of the above).
Fixture make_fixture(const std::string& name, const GridPtr& grid);

std::vector<std::string> fixture_names();

}  // namespace covrep
