#pragma once

#include <string>
#include <vector>

namespace lady {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Names accepted by run_property_suite, "all" included.
std::vector<std::string> property_suite_names();

/// Runs one of the built-in property suites (monotonicity, leray, parseval,
/// interpolant, hermitian, taylor_green) or all of them. Throws std::invalid_argument
/// for an unknown name.
std::vector<PropertyResult> run_property_suite(const std::string& name, unsigned long long seed = 1);

}  // namespace lady
