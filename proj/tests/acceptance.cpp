// Prints one PASS/FAIL line per shipped guarantee and exits nonzero if any
// fails. The last one runs the installed batch tool twice and compares bytes.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "grpoly/checks.hpp"

using grpoly::Caps;
using grpoly::CheckResult;

namespace {

struct Criterion {
    std::string label;
    std::function<CheckResult()> run;
};

std::string capture(const std::string& cmd, int* code) {
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        *code = -1;
        return "";
    }
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

CheckResult deterministic_tool_output() {
    CheckResult r;
    r.name = "deterministic_output";
    const char* bin = std::getenv("GRPOLY_BIN");
    const char* dat = std::getenv("GRPOLY_DATA");
    if (!bin || !dat) {
        r.ok = false;
        r.detail = "GRPOLY_BIN and GRPOLY_DATA must point at the tool and fixtures";
        return r;
    }
    std::string cmd = "'" + std::string(bin) + "' check-suite --data '" + dat + "'";
    int c1 = 0, c2 = 0;
    std::string out1 = capture(cmd, &c1);
    std::string out2 = capture(cmd, &c2);
    if (c1 != 0 || c2 != 0) {
        r.ok = false;
        r.detail = "self-test run exited with " + std::to_string(c1) + " then " +
                   std::to_string(c2);
        return r;
    }
    if (out1 != out2) {
        r.ok = false;
        r.detail = "two runs differ in their bytes";
        return r;
    }
    r.ok = true;
    r.detail = "two full self-test runs, byte-identical output";
    return r;
}

}  // namespace

int main() {
    Caps caps;
    const char* dat = std::getenv("GRPOLY_DATA");
    std::string data_dir = dat ? dat : "data";

    std::vector<Criterion> criteria = {
        {"group action quotients have exact orbit cardinality",
         [&] { return grpoly::check_quotient_cardinalities(caps); }},
        {"loop spaces of one-object groupoids are discrete group sets",
         [&] { return grpoly::check_loop_spaces(caps); }},
        {"strict pullbacks along isofibrations match homotopy pullbacks",
         [&] { return grpoly::check_fibration_reduction(caps); }},
        {"canonical series coefficients are exact",
         [&] { return grpoly::check_canonical_egfs(caps); }},
        {"extensions on small discrete inputs hit their closed forms",
         [&] { return grpoly::check_extension_values(caps); }},
        {"diagram and species round trips preserve the extension",
         [&] { return grpoly::check_round_trips(caps); }},
        {"push-pull interchange holds both ways on cartesian squares",
         [&] { return grpoly::check_beck_chevalley(caps); }},
        {"the canonical comparison squares are homotopy cartesian",
         [&] { return grpoly::check_cartesian_chain(caps); }},
        {"decorated tree counts and symmetries match direct enumeration",
         [&] { return grpoly::check_tree_enumeration(caps); }},
        {"grouped sums and fibre decompositions reassemble totals",
         [&] { return grpoly::check_fubini(caps); }},
        {"substitution evaluates like staged evaluation",
         [&] { return grpoly::check_composition(caps); }},
        {"the batch tool's output is byte-deterministic",
         [] { return deterministic_tool_output(); }},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        CheckResult r;
        try {
            r = criteria[i].run();
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail = e.what();
        }
        std::cout << (r.ok ? "PASS" : "FAIL") << " " << (i + 1 < 10 ? " " : "")
                  << (i + 1) << " " << criteria[i].label;
        if (!r.ok) std::cout << ": " << r.detail;
        std::cout << "\n";
        if (!r.ok) ++failures;
    }
    if (failures) {
        std::cout << failures << " of " << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria hold\n";
    return 0;
}
