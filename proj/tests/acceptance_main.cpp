// Acceptance suite: runs the full claim checklist and prints one pass/fail
// line per criterion. Exits nonzero if any criterion fails.

#include <cstdlib>
#include <iostream>

#include "k3gauss/claims.hpp"

int main(int argc, char** argv) {
    k3gauss::ClaimOptions opts;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--jobs" && i + 1 < argc) opts.jobs = std::atoi(argv[++i]);
        if (arg == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    }
    const auto results = only > 0 ? std::vector<k3gauss::ClaimResult>{k3gauss::run_claim(only, opts)}
                                  : k3gauss::run_all_claims(opts);
    std::cout << k3gauss::render_checklist(results);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}
