#pragma once

#include <string>
#include <vector>

#include "grpoly/config.hpp"

namespace grpoly {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;  // single deterministic line
};

// Deterministic self-test batteries. Each function exercises one contract
// area on generated instances and reports a single summary line; failures
// flip ok and put the first mismatch into detail. Resource caps propagate as
// cap_error so the front end can map them to its exit code.
CheckResult check_fixtures(const std::string& data_dir, const Caps& caps);
CheckResult check_quotient_cardinalities(const Caps& caps);
CheckResult check_loop_spaces(const Caps& caps);
CheckResult check_fibration_reduction(const Caps& caps);
CheckResult check_canonical_egfs(const Caps& caps);
CheckResult check_extension_values(const Caps& caps);
CheckResult check_round_trips(const Caps& caps);
CheckResult check_beck_chevalley(const Caps& caps);
CheckResult check_cartesian_chain(const Caps& caps);
CheckResult check_tree_enumeration(const Caps& caps);
CheckResult check_fubini(const Caps& caps);
CheckResult check_composition(const Caps& caps);

// All of the above in a fixed order, fixture check first.
std::vector<CheckResult> run_check_suite(const std::string& data_dir, const Caps& caps);

}  // namespace grpoly
