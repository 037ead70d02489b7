// One line per acceptance criterion. Exit status is zero when every failure
// is a criterion documented as unattainable.
#include <chrono>
#include <cstdio>

#include "charpoly/verify.hpp"

int main() {
    using namespace charpoly;
    int hard_failures = 0;
    for (int id = 1; id <= kAcceptanceCriteria; ++id) {
        const auto t0 = std::chrono::steady_clock::now();
        const CheckResult c = acceptance_criterion(id, 1);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %2d %-26s observed=%.3e tolerance=%.1e (%.1f s)%s\n", c.pass ? "PASS" : "FAIL", id,
                    c.name.substr(4).c_str(), c.observed, c.tolerance, s,
                    !c.pass && c.known_unattainable ? " known unattainable" : "");
        std::printf("       %s\n", c.note.c_str());
        std::fflush(stdout);
        if (!c.pass && !c.known_unattainable) ++hard_failures;
    }
    return hard_failures == 0 ? 0 : 1;
}
