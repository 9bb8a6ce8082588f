#pragma once

// The verification checklist behind `k3gauss verify-paper` and the
// acceptance suite: every arithmetic claim the certified results reduce to,
// pinned to exact expected values, plus the randomized oracle-equivalence
// and bound-soundness suites.

#include <string>
#include <vector>

namespace k3gauss {

struct ClaimOptions {
    int jobs = 1;
    unsigned long long rng_seed = 0xC0FFEE;  // criterion 7 is deterministic
};

struct ClaimResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;              // one line, printed on the checklist
    std::vector<std::string> notes;  // extra analysis lines
    double seconds = 0.0;
};

// Runs criteria 1..10 in order. A failure never aborts the run; every
// criterion reports.
std::vector<ClaimResult> run_all_claims(const ClaimOptions& opts = {});

// Runs one criterion (its data dependencies are computed quietly first).
ClaimResult run_claim(int number, const ClaimOptions& opts = {});

// "[PASS] criterion 3: ..." checklist rendering.
std::string render_checklist(const std::vector<ClaimResult>& results);

}  // namespace k3gauss
