#pragma once

// Surjectivity certificates: decompose a candidate polarization H~ as
// 2(A1+A2+A3+A4) + B over a verified generator family, check every
// hypothesis of the underlying criterion (base-point-free A_i with square
// >= 2, A1 very ample, the others very ample or 2:1 onto the plane, the
// degree-12 condition for square-2 factors, B nef and effective, H~ very
// ample, genus >= 13), and emit the genus together with the certified
// conclusion that the second Gaussian map of a general curve in |H~| is
// surjective.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "k3gauss/positivity.hpp"

namespace k3gauss {

// Generator data of a recognized lattice family: the pool the A_i are drawn
// from (A1 is always the first entry) and the classes B may combine.
struct GeneratorFamily {
    std::string kind;  // "rank5-diagonal" | "rank2"
    DivisorClass ample_ref;
    std::vector<DivisorClass> a_gens;
    std::vector<std::string> a_names;
    std::vector<DivisorClass> b_gens;
    std::vector<std::string> b_names;
};

// Recognizes the rank-5 diagonal family diag(2h,-2k,-2j,-2l,-2m) and the
// rank-2 lattice [[4,7],[7,2]].
std::optional<GeneratorFamily> detect_family(const PicardLattice& lat);

struct NamedCheck {
    std::string name;
    bool pass = false;
    std::string detail;
    std::optional<DivisorClass> witness;
    std::string str() const;
};

struct Decomposition {
    std::vector<DivisorClass> A;  // 4 classes from the family pool, A[0] = D
    std::vector<int> a_indices;   // indices into the family pool
    DivisorClass B;
    std::vector<Int> b_coeffs;    // over the family's B generators
    DivisorClass H;               // A1+A2+A3+A4
    DivisorClass Htilde;          // 2H + B
};

class NoDecompositionError : public Error {
public:
    using Error::Error;
};

// Hypothesis checks for one choice of A factors:
//   (1) each A_i base point free, (2) each A_i^2 >= 2, (3) A1 very ample,
//   (4) A_2..A_4 very ample or 2:1 onto the plane,
//   (5) (A1+A2+A3+A4).A_j >= 12 for every j with A_j^2 = 2.
// Positivity failures are reported as failed checks carrying the witness.
std::vector<NamedCheck> check_factor_hypotheses(PositivityChecker& checker, const DivisorClass& D,
                                     const std::vector<DivisorClass>& A);

// Searches multisets (A2,A3,A4) from the family pool in canonical
// (lexicographic index) order; B is the uniquely determined residual and must
// have nonnegative coefficients over the B generators; the first choice whose
// hypothesis checks all pass wins. Throws NoDecompositionError carrying the
// blocking constraint.
Decomposition decompose(const PicardLattice& lat, const DivisorClass& htilde);

enum class CertificateStatus { Certified, Refused };

struct SurjectivityCertificate {
    SurjectivityCertificate(PicardLattice lat, DivisorClass ht)
        : lattice(std::move(lat)), htilde(std::move(ht)) {}

    PicardLattice lattice;
    DivisorClass htilde;
    CertificateStatus status = CertificateStatus::Refused;
    std::string refusal_reason;  // set when Refused
    std::optional<Decomposition> decomposition;
    std::vector<NamedCheck> checks;
    std::optional<Int> genus;  // set when the square is nonnegative
    bool primitive = false;
    std::vector<std::string> markers;  // "below-theorem-threshold example", ...

    bool certified() const { return status == CertificateStatus::Certified; }
    std::string render() const;  // deterministic structured text (no manifest)
};

// Decomposition/certification engine bound to one lattice; caches the
// per-multiset hypothesis checks so batch certification over many H~ values
// on the same lattice stays cheap.
class CertifyEngine {
public:
    explicit CertifyEngine(PositivityChecker& checker);

    bool family_recognized() const { return fam_.has_value(); }
    const GeneratorFamily& family() const;

    Decomposition decompose(const DivisorClass& htilde);
    // nullopt instead of throwing; cheap enough for bulk admissibility scans
    std::optional<Decomposition> maybe_decompose(const DivisorClass& htilde);
    SurjectivityCertificate certify(const DivisorClass& htilde);

private:
    struct MultisetEval {
        std::vector<NamedCheck> checks;
        bool all_pass = false;
    };
    PositivityChecker& checker_;
    std::optional<GeneratorFamily> fam_;
    std::vector<std::array<int, 3>> multisets_;   // canonical order
    std::vector<DivisorClass> multiset_2h_;       // 2(A1+A2+A3+A4) per multiset
    std::map<std::array<int, 3>, MultisetEval> eval_cache_;
    std::optional<NamedCheck> b_gen_check_;  // B generators nef+effective, computed once

    const MultisetEval& eval_multiset(const std::array<int, 3>& ms);
    const NamedCheck& b_generators_check();
    std::optional<Decomposition> try_decompose(const DivisorClass& htilde, std::string* block);
};

// Builds a certificate for H~ on a recognized family lattice. Pure given the
// lattice and class; reuses `checker` caches across calls.
SurjectivityCertificate certify(PositivityChecker& checker, const DivisorClass& htilde);
SurjectivityCertificate certify(const PicardLattice& lat, const DivisorClass& htilde);

// Parses a rendered certificate, re-runs certify from the embedded lattice
// and class, and reports whether the stored and recomputed certificates agree
// bit-for-bit (and both say Certified).
struct RecheckResult {
    bool ok = false;
    CertificateStatus stored_status = CertificateStatus::Refused;
    CertificateStatus recomputed_status = CertificateStatus::Refused;
    bool identical_body = false;
    std::string detail;
};
RecheckResult recheck_certificate_text(const std::string& text);

// Extracts (lattice, class) from a rendered certificate.
std::pair<PicardLattice, DivisorClass> parse_certificate_subject(const std::string& text);

}  // namespace k3gauss
