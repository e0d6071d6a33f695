// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <string>
#include <vector>

#include "gcm/repro.hpp"

int main() {
    struct Criterion {
        int number;
        std::string title;
        std::vector<std::string> ids;
    };
    const std::vector<Criterion> criteria = {
        {1, "exact rational densities on the two-block graphon", {"prop6.4"}},
        {2, "(2 K3) u (3 K2) witness value", {"prop6.1"}},
        {3, "c(K3 u K2) upper bound and search rediscovery", {"thm1.6"}},
        {4, "c(paw) upper bound", {"thm1.7"}},
        {5, "(3 paw) u (2 K2) witness value", {"prop6.3"}},
        {6, "exact lower-bound pipeline", {"prop3.1"}},
        {7, "k=2 reduction certificates, both strategies", {"thm5.1"}},
        {8, "k=3 certificate table with crossover floors", {"lemma5.3"}},
        {9, "two-block family brackets", {"thm1.4-k1", "thm1.4-k3", "thm1.4-k10"}},
        {10, "odd-cycle inequality chain and exact cycle counts", {"thm6.8"}},
        {11, "chromatic strong-commonness test", {"cor6.6"}},
        {12, "property suites",
         {"multiplicativity-random", "goodman-random", "eq5.2-random",
          "dfdy-fd", "appendix-random"}},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        bool pass = true;
        std::string detail;
        for (const auto& id : c.ids) {
            gcm::ReproResult r = gcm::run_repro(id);
            pass = pass && r.pass;
            if (!r.pass) detail += " [" + id + ": " + r.computed + "]";
        }
        std::printf("%s criterion %2d: %s%s\n", pass ? "PASS" : "FAIL",
                    c.number, c.title.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
