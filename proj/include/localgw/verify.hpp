#pragma once

#include "localgw/tqft.hpp"

#include <optional>
#include <string>
#include <vector>

namespace localgw {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Runs one suite ("all" runs every suite). Without max_degree each suite
// uses its own default bound. Throws std::invalid_argument on an unknown name.
std::vector<CheckResult> run_suite(const std::string& suite, std::optional<int> max_degree, Engine& engine);

// Reference closed forms used by the suites.
// 2 sin(k u / 2) as a function of sigma.
Scalar two_sin_half(int k);
// tan(u/2).
Scalar tan_half();
// Degree-1 partition function (t1 t2)^{g-1} t1^{-k1} t2^{-k2} (2 sin(u/2))^{k1+k2}.
Scalar degree1_formula(int g, int k1, int k2);
// Degree-2 partition function at t1 = t2 = t (t in the t1 slot).
Scalar degree2_diagonal_formula(int g, int k1, int k2);
// Degree-2 Calabi-Yau partition function at level (g-1, g-1), t1 = t2.
Scalar degree2_cy_formula(int g);
// u = 0 structure constant GW(0|0,0)^gamma_{alpha beta}, or nullopt when the
// (t1 t2) exponent is fractional.
std::optional<Scalar> u0_structure_constant(const Partition& a, const Partition& b, const Partition& c);

}  // namespace localgw
