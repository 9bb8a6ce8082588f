#include "k3gauss/positivity.hpp"

#include <sstream>

namespace k3gauss {

std::string criterion_name(Criterion c) {
    switch (c) {
        case Criterion::AmpleRealizable: return "ample-realizable";
        case Criterion::NefAndAmple: return "nef-and-ample";
        case Criterion::BasePointFree: return "base-point-free";
        case Criterion::VeryAmple: return "very-ample";
        case Criterion::TwoToOnePlane: return "two-to-one-plane";
    }
    return "?";
}

std::string EvidenceRow::str() const {
    std::ostringstream os;
    os << "sigma=" << sigma << " degree-class=" << degree_class << " t=" << t_lo;
    if (t_hi != t_lo) os << ".." << t_hi;
    if (bound) os << " bound=" << *bound;
    os << " found=" << found << " nodes=" << nodes;
    if (!note.empty()) os << " note=" << note;
    return os.str();
}

std::string BoundProvenance::str() const {
    return kind == Certified ? "Certified" : ("SearchedUpTo(" + limit.get_str() + ")");
}

std::string PositivityReport::render() const {
    std::ostringstream os;
    os << "criterion: " << criterion_name(criterion) << "\n"
       << "lattice: " << lattice_id << "\n"
       << "class: " << cls.str() << "\n"
       << "verdict: " << (pass ? "Pass" : "Fail") << "\n";
    if (witness) os << "witness: " << witness->str() << "\n";
    if (morphism)
        os << "morphism: "
           << (*morphism == MorphismKind::TwoToOnePlane ? "two-to-one-plane" : "very-ample")
           << "\n";
    os << "provenance: " << provenance.str() << "\n";
    os << "evidence:\n";
    for (const auto& row : evidence) os << "  - " << row.str() << "\n";
    return os.str();
}

PositivityChecker::PositivityChecker(PicardLattice lat, PositivityOptions opts)
    : lat_(std::move(lat)), opts_(opts) {}

SliceEnumerator& PositivityChecker::enumerator_for(const DivisorClass& M) {
    const std::string k = M.str();
    std::lock_guard<std::mutex> g(mu_);
    auto it = enums_.find(k);
    if (it == enums_.end())
        it = enums_.emplace(k, std::make_shared<SliceEnumerator>(lat_, M, opts_.node_budget)).first;
    return *it->second;
}

const PositivityReport* PositivityChecker::cached(const std::string& key) {
    std::lock_guard<std::mutex> g(mu_);
    auto it = cache_.find(key);
    return it == cache_.end() ? nullptr : &it->second;
}

const PositivityReport& PositivityChecker::store(const std::string& key, PositivityReport r) {
    std::lock_guard<std::mutex> g(mu_);
    return cache_.emplace(key, std::move(r)).first->second;
}

std::string PositivityChecker::key(Criterion c, const DivisorClass& D,
                                   const DivisorClass& N) const {
    return criterion_name(c) + "|" + D.str() + "|" + N.str();
}

namespace {

// Orientation-normalized witness for sign-symmetric slices (t = 0): pick the
// representative whose first nonzero coordinate is positive.
DivisorClass normalize_sign(const DivisorClass& f) {
    for (const Int& x : f.coords) {
        if (x > 0) return f;
        if (x < 0) return -f;
    }
    return f;
}

}  // namespace

PositivityReport PositivityChecker::check_ample_realizable(const DivisorClass& D) {
    const std::string k = key(Criterion::AmpleRealizable, D, D);
    if (const auto* hit = cached(k)) return *hit;

    if (lat_.square(D) <= 0)
        throw PreconditionError("ample reference must have positive square, got D^2 = " +
                                lat_.square(D).get_str());
    PositivityReport rep;
    rep.lattice_id = lat_.id();
    rep.criterion = Criterion::AmpleRealizable;
    rep.cls = D;
    auto& en = enumerator_for(D);
    auto res = en.solve(0, -2);
    EvidenceRow row{Int(-2), "D", Int(0), Int(0), std::nullopt, "", res.stats.nodes,
                    static_cast<long long>(res.solutions.size())};
    rep.provenance = {BoundProvenance::Certified, 0};
    if (res.solutions.empty()) {
        rep.pass = true;
        row.note = "no root orthogonal to D; K3 with D ample exists";
    } else {
        rep.pass = false;
        rep.witness = normalize_sign(res.solutions.front());
        row.note = "witness";
    }
    rep.evidence.push_back(std::move(row));
    return store(k, std::move(rep));
}

void PositivityChecker::require_ample(const DivisorClass& D) {
    const auto rep = check_ample_realizable(D);
    if (!rep.pass)
        throw PreconditionError("reference class " + D.str() +
                                " is not ample-realizable (root " + rep.witness->str() +
                                " is orthogonal to it)");
}

EffectivityVerdict PositivityChecker::classify_effectivity(const DivisorClass& D,
                                                           const DivisorClass& F) {
    if (lat_.square(F) < -2)
        throw PreconditionError("effectivity defined only for F^2 >= -2, got " +
                                lat_.square(F).get_str());
    require_ample(D);
    if (F.is_zero()) return EffectivityVerdict::Zero;
    const Int fd = lat_.pair(F, D);
    if (fd > 0) return EffectivityVerdict::Effective;
    if (fd < 0) return EffectivityVerdict::AntiEffective;
    throw InconsistencyError("nonzero class " + F.str() + " with F^2 >= -2 orthogonal to the ample " +
                             D.str() + "; excluded by the realizability check");
}

PositivityReport PositivityChecker::check_nef_and_ample(const DivisorClass& D,
                                                        const DivisorClass& N) {
    const std::string k = key(Criterion::NefAndAmple, D, N);
    if (const auto* hit = cached(k)) return *hit;

    require_ample(D);
    if (lat_.square(N) <= 0)
        throw PreconditionError("nef-and-ample check requires N^2 > 0, got " +
                                lat_.square(N).get_str());

    PositivityReport rep;
    rep.lattice_id = lat_.id();
    rep.criterion = Criterion::NefAndAmple;
    rep.cls = N;
    const DegreeBound db = derive_degree_bound(lat_, D, N, -2, 0);
    Int bound;
    if (db.certified) {
        bound = db.bound;
        rep.provenance = {BoundProvenance::Certified, 0};
    } else {
        bound = opts_.search_bound;
        rep.provenance = {BoundProvenance::SearchedUpTo, bound};
    }
    auto& en = enumerator_for(D);
    rep.pass = true;
    for (Int x = 1; x <= bound; ++x) {
        auto res = en.solve(x, -2);
        long long bad = 0;
        std::optional<DivisorClass> witness;
        for (const auto& F : res.solutions) {
            if (lat_.pair(F, N) <= 0) {
                ++bad;
                if (!witness) witness = F;
            }
        }
        EvidenceRow row{Int(-2), "D", x, x, bound, "", res.stats.nodes,
                        static_cast<long long>(res.solutions.size())};
        if (bad > 0) {
            row.note = "witness (F.N <= 0)";
            rep.evidence.push_back(std::move(row));
            rep.pass = false;
            rep.witness = *witness;
            break;
        }
        rep.evidence.push_back(std::move(row));
    }
    if (rep.evidence.empty()) {
        // bound 0: the degree range is empty
        rep.evidence.push_back(EvidenceRow{Int(-2), "D", Int(1), Int(0), bound,
                                           "empty degree range", 0, 0});
    }
    return store(k, std::move(rep));
}

void PositivityChecker::require_nef_ample(const DivisorClass& D, const DivisorClass& N) {
    const auto rep = check_nef_and_ample(D, N);
    if (!rep.pass)
        throw PreconditionError("class " + N.str() + " failed nef-and-ample (witness " +
                                rep.witness->str() + ")");
}

PositivityReport PositivityChecker::check_base_point_free(const DivisorClass& D,
                                                          const DivisorClass& N) {
    const std::string k = key(Criterion::BasePointFree, D, N);
    if (const auto* hit = cached(k)) return *hit;

    require_nef_ample(D, N);
    PositivityReport rep;
    rep.lattice_id = lat_.id();
    rep.criterion = Criterion::BasePointFree;
    rep.cls = N;
    rep.provenance = {BoundProvenance::Certified, 0};

    if (lat_.all_entries_even()) {
        // F.G = 1 is impossible: every pairing is even.
        rep.pass = true;
        rep.evidence.push_back(EvidenceRow{Int(0), "N", Int(1), Int(1), std::nullopt,
                                           "parity: all pairings even", 0, 0});
        return store(k, std::move(rep));
    }
    const Int n2 = lat_.square(N);
    const Int a = (n2 + 2) / 2;
    // N = aF + G with F^2 = 0, G^2 = -2, F.G = 1 forces F.N = 1 and this a;
    // for a < 2 there is nothing to check (cannot happen once N^2 >= 2).
    auto& en = enumerator_for(N);
    auto res = en.solve(1, 0);
    EvidenceRow row{Int(0), "N", Int(1), Int(1), std::nullopt, "", res.stats.nodes,
                    static_cast<long long>(res.solutions.size())};
    rep.pass = true;
    if (a >= 2) {
        for (const auto& F : res.solutions) {
            const DivisorClass G = N - a * F;
            if (lat_.square(G) == -2 && lat_.pair(F, G) == 1) {
                rep.pass = false;
                rep.witness = F;
                row.note = "witness: N = " + a.get_str() + "F + G, G = " + G.str();
                break;
            }
        }
    } else {
        row.note = "a < 2: no decomposition possible";
    }
    if (rep.pass && row.note.empty()) row.note = "no isotropic F with F.N = 1";
    rep.evidence.push_back(std::move(row));
    return store(k, std::move(rep));
}

PositivityReport PositivityChecker::check_very_ample(const DivisorClass& D,
                                                     const DivisorClass& N) {
    const std::string k = key(Criterion::VeryAmple, D, N);
    if (const auto* hit = cached(k)) return *hit;

    {
        const auto bpf = check_base_point_free(D, N);
        if (!bpf.pass)
            throw PreconditionError("class " + N.str() + " failed base-point-free (witness " +
                                    bpf.witness->str() + ")");
    }
    if (lat_.square(N) < 4)
        throw PreconditionError("N^2 = " + lat_.square(N).get_str() +
                                ": square too small for very ampleness; use morphism_type");

    PositivityReport rep;
    rep.lattice_id = lat_.id();
    rep.criterion = Criterion::VeryAmple;
    rep.cls = N;
    const DegreeBound db = derive_degree_bound(lat_, D, N, 0, 2);
    Int bound;
    if (db.certified) {
        bound = db.bound;
        rep.provenance = {BoundProvenance::Certified, 0};
    } else {
        bound = opts_.search_bound;
        rep.provenance = {BoundProvenance::SearchedUpTo, bound};
    }
    auto& en = enumerator_for(D);
    rep.pass = true;
    for (Int x = 1; x <= bound; ++x) {
        auto res = en.solve(x, 0);
        std::optional<DivisorClass> witness;
        for (const auto& F : res.solutions) {
            const Int fn = lat_.pair(F, N);
            if (fn == 1 || fn == 2) {
                witness = F;
                break;
            }
        }
        EvidenceRow row{Int(0), "D", x, x, bound, "", res.stats.nodes,
                        static_cast<long long>(res.solutions.size())};
        if (witness) {
            row.note = "witness (F.N in {1,2})";
            rep.evidence.push_back(std::move(row));
            rep.pass = false;
            rep.witness = *witness;
            break;
        }
        rep.evidence.push_back(std::move(row));
    }
    if (rep.evidence.empty())
        rep.evidence.push_back(
            EvidenceRow{Int(0), "D", Int(1), Int(0), bound, "empty degree range", 0, 0});
    return store(k, std::move(rep));
}

MorphismKind PositivityChecker::morphism_type(const DivisorClass& D, const DivisorClass& N) {
    {
        const auto bpf = check_base_point_free(D, N);
        if (!bpf.pass)
            throw PreconditionError("class " + N.str() + " failed base-point-free (witness " +
                                    bpf.witness->str() + ")");
    }
    const Int n2 = lat_.square(N);
    if (n2 == 2) return MorphismKind::TwoToOnePlane;
    if (n2 < 2)
        throw PreconditionError("morphism type defined for N^2 in {2, 4, 6, ...}, got " +
                                n2.get_str());
    const auto va = check_very_ample(D, N);
    if (!va.pass)
        throw CriterionFailure("class " + N.str() + " is neither very ample nor of square 2 (witness " +
                                   va.witness->str() + ")",
                               va);
    return MorphismKind::VeryAmple;
}

PositivityReport PositivityChecker::morphism_type_report(const DivisorClass& D,
                                                         const DivisorClass& N) {
    const Int n2 = lat_.square(N);
    if (n2 == 2) {
        const auto bpf = check_base_point_free(D, N);
        PositivityReport rep;
        rep.lattice_id = lat_.id();
        rep.criterion = Criterion::TwoToOnePlane;
        rep.cls = N;
        rep.pass = bpf.pass;
        rep.witness = bpf.witness;
        rep.evidence = bpf.evidence;
        rep.provenance = bpf.provenance;
        if (bpf.pass) rep.morphism = MorphismKind::TwoToOnePlane;
        return rep;
    }
    auto rep = check_very_ample(D, N);
    if (rep.pass) rep.morphism = MorphismKind::VeryAmple;
    return rep;
}

}  // namespace k3gauss
