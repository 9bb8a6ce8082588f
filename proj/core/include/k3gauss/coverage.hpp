#pragma once

// Genus coverage of the certificate families, with per-genus provenance and
// cap-independent exclusion certificates.
//
// Families:
//   rank5        H~ = aD+sL+tR+vS+rT on diag(2h,-2k,-2j,-2l,-2m), 9 <= a <= 14,
//                s+t+v+r <= a-2, coefficients coprime (gcd over all five),
//                decomposability filter, every admitted genus re-certified
//                through certify().
//   rank2        the single certificate H~ = 11D+L of genus 321.
//   product      g = 1 + (g2-1)d1 + (g1-1)d2 + d1 d2 under three constraint
//                regimes on (g1, g2, d1, d2).
//   closed-forms the two reparametrized forms 170+45p+44m+81t and
//                170+44n+80a+81b over nonnegative parameters.
//   theorem      union: product on [153,280], the rank-2 321, rank5 above 280.
//
// Candidate generation runs in 64-bit arithmetic under validated caps; every
// achieved genus is re-derived in exact arithmetic by the certify module
// before being recorded.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3gauss/certify.hpp"

namespace k3gauss {

struct CoverageCaps {
    long long param_cap = 50;       // k, j, l, m
    long long h_cap = 200;          // h
    long long product_genus_cap = 60;
    long long product_degree_cap = 600;
};

struct Provenance {
    std::string family;  // "rank5" | "rank2" | "product-regime1|2|3" | "closed-form-1|2"
    std::vector<std::pair<std::string, long long>> params;
    std::string str() const;
};

// Sorted disjoint closed intervals; compact rendering of genus sets.
struct IntervalSet {
    std::vector<std::pair<long long, long long>> runs;
    static IntervalSet from_sorted(const std::vector<long long>& xs);
    long long count() const;
    std::string str() const;  // "281-320,322-1000" or "none"
};

struct ExclusionCertificate {
    long long genus = 0;
    bool excluded = false;
    // per-a derived bound h <= (g-1-(a-2)^2)/(4a-4); the finite remainder was
    // searched exhaustively
    std::vector<std::pair<int, long long>> h_bounds;
    std::optional<Provenance> witness;  // when excluded == false
    std::string str() const;
};

struct CoverageReport {
    std::string family;
    long long g_min = 0, g_max = 0;
    CoverageCaps caps;
    std::map<long long, Provenance> achieved;
    std::vector<long long> missing;
    IntervalSet achieved_intervals, missing_intervals;
    bool stabilized = true;
    // genus -> true when absence is cap-independent (derived bound or complete
    // enumeration), false when only established up to the caps
    std::map<long long, bool> exclusion_certified;
    std::vector<ExclusionCertificate> exclusions;
    std::string primitivity_note;  // rank5: delta between the two coprimality readings

    std::string render(const std::vector<long long>& provenance_for = {}) const;
};

// The two reparametrized closed forms; offsets/generators are fixed by the
// family derivation and validated against genus_of_class in the tests.
struct ClosedFormFamily {
    long long offset;
    std::vector<long long> generators;
};
const std::vector<ClosedFormFamily>& closed_form_families();

CoverageReport closed_form_coverage(long long g_min, long long g_max);

CoverageReport rank5_family_coverage(long long g_min, long long g_max,
                                     const CoverageCaps& caps = {}, int jobs = 1);

// Cap-independent proof that the rank-5 family misses `genus`, or a certified
// witness that it does not.
ExclusionCertificate certify_exclusion(long long genus);

CoverageReport product_family_coverage(long long g_min, long long g_max,
                                       const CoverageCaps& caps = {}, int jobs = 1);

CoverageReport rank2_coverage(long long g_min, long long g_max);

// Requires g_min >= 153.
CoverageReport theorem_coverage(long long g_min, long long g_max,
                                const CoverageCaps& caps = {}, int jobs = 1);

}  // namespace k3gauss
