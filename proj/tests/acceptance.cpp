#include <cstdio>

#include "centrolab/verify.hpp"

int main() {
    int failed = 0;
    for (const auto& name : centrolab::verify::suite_names()) {
        const auto r = centrolab::verify::run_suite(name);
        std::printf("criterion %d %-18s %s (%.2f s)\n", r.criterion, r.name.c_str(), r.passed ? "PASS" : "FAIL",
                    r.seconds);
        for (const auto& c : r.checks)
            if (!c.passed) std::printf("    failed: %s [%s]\n", c.name.c_str(), c.detail.c_str());
        for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
        if (!r.passed) ++failed;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
