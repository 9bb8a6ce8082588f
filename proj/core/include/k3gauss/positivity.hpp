#pragma once

// Lattice-level positivity criteria for divisor classes on a K3 surface with
// prescribed Picard lattice: ample-realizability, nef+ample relative to a
// verified ample reference, base-point-freeness, very-ampleness, and the
// morphism type of square-2 classes. Each verdict carries re-checkable
// evidence: the slices enumerated, the degree bounds used and whether they
// were certified.
//
// "Irreducible curve" conditions are checked over all lattice classes
// satisfying the numerical conditions, a superset of the actual curves, so a
// Pass is always sound while a Fail witness is a numerical obstruction that
// may or may not be an actual curve.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "k3gauss/enumerate.hpp"
#include "k3gauss/lattice.hpp"

namespace k3gauss {

enum class Criterion {
    AmpleRealizable,
    NefAndAmple,
    BasePointFree,
    VeryAmple,
    TwoToOnePlane,
};

std::string criterion_name(Criterion c);

enum class MorphismKind { TwoToOnePlane, VeryAmple };

struct EvidenceRow {
    Int sigma;
    std::string degree_class;  // label of the class whose degree is sliced
    Int t_lo, t_hi;            // slice range enumerated
    std::optional<Int> bound;  // degree bound backing the range, if any
    std::string note;          // "parity", "empty", "witness", ...
    unsigned long long nodes = 0;
    long long found = 0;
    std::string str() const;
};

struct BoundProvenance {
    enum Kind { Certified, SearchedUpTo } kind = Certified;
    Int limit;  // the search bound when kind == SearchedUpTo
    std::string str() const;
};

struct PositivityReport {
    std::string lattice_id;
    Criterion criterion = Criterion::AmpleRealizable;
    DivisorClass cls;
    bool pass = false;
    std::optional<DivisorClass> witness;  // set exactly when !pass
    std::vector<EvidenceRow> evidence;
    BoundProvenance provenance;
    std::optional<MorphismKind> morphism;  // set by morphism_type

    bool certified() const { return provenance.kind == BoundProvenance::Certified; }
    std::string render() const;  // archival structured text
};

enum class EffectivityVerdict { Effective, AntiEffective, Zero };

// Thrown by morphism_type when the very-ampleness check fails; carries the
// obstructing class.
class CriterionFailure : public Error {
public:
    CriterionFailure(const std::string& msg, PositivityReport report)
        : Error(msg), report_(std::move(report)) {}
    const PositivityReport& report() const { return report_; }

private:
    PositivityReport report_;
};

struct PositivityOptions {
    unsigned long long node_budget = kDefaultNodeBudget;
    // fallback slice range when a degree bound is not certified
    Int search_bound = 1000;
};

// Criterion evaluation bound to one lattice, with a per-(criterion, class,
// ample-ref) result cache. Evaluations are pure; the cache is safe for
// concurrent use.
class PositivityChecker {
public:
    explicit PositivityChecker(PicardLattice lat, PositivityOptions opts = {});

    const PicardLattice& lattice() const { return lat_; }

    // Pass iff no class F has F^2 = -2, F.D = 0; a Pass means a K3 with this
    // Picard lattice and D ample exists (period argument).
    PositivityReport check_ample_realizable(const DivisorClass& D);

    // F with F^2 >= -2 is effective, anti-effective or zero, read off from the
    // sign of F.D for the verified ample D. Requires F^2 >= -2.
    EffectivityVerdict classify_effectivity(const DivisorClass& D, const DivisorClass& F);

    // Pass iff no F with F^2 = -2, F.D >= 1, F.N <= 0 (no effective root meets
    // N nonpositively): N is then ample, in particular nef.
    PositivityReport check_nef_and_ample(const DivisorClass& D, const DivisorClass& N);

    // Pass iff there is no decomposition N ~ aF + G with F^2 = 0, G^2 = -2,
    // F.G = 1, a = (N^2+2)/2 >= 2. On lattices with all pairings even, F.G = 1
    // is impossible and the check passes by parity.
    PositivityReport check_base_point_free(const DivisorClass& D, const DivisorClass& N);

    // Pass iff no class F with F^2 = 0, F.D >= 1 has F.N in {1, 2}.
    // Requires N^2 >= 4.
    PositivityReport check_very_ample(const DivisorClass& D, const DivisorClass& N);

    // TwoToOnePlane when N^2 = 2; otherwise runs check_very_ample and returns
    // VeryAmple on Pass. Throws CriterionFailure carrying the witness on Fail.
    MorphismKind morphism_type(const DivisorClass& D, const DivisorClass& N);

    // morphism_type as a report (used by the CLI).
    PositivityReport morphism_type_report(const DivisorClass& D, const DivisorClass& N);

    const PositivityOptions& options() const { return opts_; }

private:
    PicardLattice lat_;
    PositivityOptions opts_;
    std::mutex mu_;
    std::map<std::string, PositivityReport> cache_;
    std::map<std::string, std::shared_ptr<SliceEnumerator>> enums_;

    SliceEnumerator& enumerator_for(const DivisorClass& M);
    const PositivityReport* cached(const std::string& key);
    const PositivityReport& store(const std::string& key, PositivityReport r);
    void require_ample(const DivisorClass& D);
    void require_nef_ample(const DivisorClass& D, const DivisorClass& N);
    std::string key(Criterion c, const DivisorClass& D, const DivisorClass& N) const;
};

}  // namespace k3gauss
