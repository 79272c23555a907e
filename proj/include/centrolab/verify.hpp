#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace centrolab::verify {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    int criterion = 0;
    bool passed = false;
    double seconds = 0.0;
    std::vector<Check> checks;
    std::vector<std::string> notes;
};

/// circle-invariants, rigidity, spectrum, classification, third-rigidity,
/// isoperimetric, monodromy, symmetry, zoo (criteria 1..9 in that order).
const std::vector<std::string>& suite_names();

/// Throws LabError(invalid_input) on an unknown name. Numerical failures are
/// recorded as failed checks, not thrown.
SuiteReport run_suite(const std::string& name);

nlohmann::json to_json(const SuiteReport& r);

}  // namespace centrolab::verify
