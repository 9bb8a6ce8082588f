#include "k3gauss/certify.hpp"

#include <algorithm>
#include <sstream>

namespace k3gauss {

std::optional<GeneratorFamily> detect_family(const PicardLattice& lat) {
    const int n = lat.rank();
    if (n == 5) {
        bool diagonal = true;
        for (int i = 0; i < 5 && diagonal; ++i)
            for (int j = 0; j < 5; ++j)
                if (i != j && lat.gram(i, j) != 0) { diagonal = false; break; }
        if (!diagonal) return std::nullopt;
        const Int h = lat.gram(0, 0) / 2;
        const Int k = -lat.gram(1, 1) / 2;
        const Int j = -lat.gram(2, 2) / 2;
        const Int l = -lat.gram(3, 3) / 2;
        const Int m = -lat.gram(4, 4) / 2;
        if (k < 2 || j < 2 || l < 2 || m < 2) return std::nullopt;
        if (h < k + 1 || h < j + 1 || h < l + 1 || h < m + 1) return std::nullopt;
        GeneratorFamily fam;
        fam.kind = "rank5-diagonal";
        fam.ample_ref = lat.basis_class(0);
        const DivisorClass D = lat.basis_class(0);
        fam.a_gens = {D, D + lat.basis_class(1), D + lat.basis_class(2), D + lat.basis_class(3),
                      D + lat.basis_class(4)};
        fam.a_names = {"D", "D+L", "D+R", "D+S", "D+T"};
        fam.b_gens = fam.a_gens;
        fam.b_names = fam.a_names;
        return fam;
    }
    if (n == 2) {
        if (lat.gram(0, 0) == 4 && lat.gram(1, 1) == 2 && lat.gram(0, 1) == 7) {
            GeneratorFamily fam;
            fam.kind = "rank2";
            fam.ample_ref = lat.basis_class(0);
            fam.a_gens = {lat.basis_class(0), lat.basis_class(1)};
            fam.a_names = {"D", "L"};
            fam.b_gens = fam.a_gens;
            fam.b_names = {"D", "L"};
            return fam;
        }
    }
    return std::nullopt;
}

std::string NamedCheck::str() const {
    std::ostringstream os;
    os << "name=" << name << " pass=" << (pass ? "true" : "false");
    if (!detail.empty()) os << " detail=" << detail;
    if (witness) os << " witness=" << witness->str();
    return os.str();
}

std::vector<NamedCheck> check_factor_hypotheses(PositivityChecker& checker, const DivisorClass& D,
                                     const std::vector<DivisorClass>& A) {
    const PicardLattice& lat = checker.lattice();
    std::vector<NamedCheck> out;
    auto fail_fast = [&]() { return !out.empty() && !out.back().pass; };

    // squares first: the positivity preconditions need A_i^2 >= 2 anyway
    for (size_t i = 0; i < A.size(); ++i) {
        const Int sq = lat.square(A[i]);
        NamedCheck c;
        c.name = "square(A" + std::to_string(i + 1) + ")>=2";
        c.pass = sq >= 2;
        c.detail = "A" + std::to_string(i + 1) + "^2 = " + sq.get_str();
        out.push_back(std::move(c));
        if (fail_fast()) return out;
    }
    for (size_t i = 0; i < A.size(); ++i) {
        const auto rep = checker.check_base_point_free(D, A[i]);
        NamedCheck c;
        c.name = "base-point-free(A" + std::to_string(i + 1) + ")";
        c.pass = rep.pass;
        c.witness = rep.witness;
        out.push_back(std::move(c));
        if (fail_fast()) return out;
    }
    {
        const auto rep = checker.check_very_ample(D, A[0]);
        NamedCheck c;
        c.name = "very-ample(A1)";
        c.pass = rep.pass;
        c.witness = rep.witness;
        out.push_back(std::move(c));
        if (fail_fast()) return out;
    }
    for (size_t i = 1; i < A.size(); ++i) {
        NamedCheck c;
        c.name = "morphism-type(A" + std::to_string(i + 1) + ")";
        try {
            const MorphismKind mk = checker.morphism_type(D, A[i]);
            c.pass = true;
            c.detail = mk == MorphismKind::TwoToOnePlane ? "two-to-one-plane" : "very-ample";
        } catch (const CriterionFailure& f) {
            c.pass = false;
            c.detail = "neither very ample nor of square 2";
            c.witness = f.report().witness;
        }
        out.push_back(std::move(c));
        if (fail_fast()) return out;
    }
    DivisorClass H = A[0];
    for (size_t i = 1; i < A.size(); ++i) H = H + A[i];
    for (size_t i = 0; i < A.size(); ++i) {
        if (lat.square(A[i]) != 2) continue;
        const Int deg = lat.pair(H, A[i]);
        NamedCheck c;
        c.name = "degree-12(A" + std::to_string(i + 1) + ")";
        c.pass = deg >= 12;
        c.detail = "H.A" + std::to_string(i + 1) + " = " + deg.get_str();
        out.push_back(std::move(c));
        if (fail_fast()) return out;
    }
    return out;
}

CertifyEngine::CertifyEngine(PositivityChecker& checker) : checker_(checker) {
    fam_ = detect_family(checker.lattice());
    if (!fam_) return;
    const int pool = static_cast<int>(fam_->a_gens.size());
    for (int i2 = 0; i2 < pool; ++i2)
        for (int i3 = i2; i3 < pool; ++i3)
            for (int i4 = i3; i4 < pool; ++i4) {
                multisets_.push_back({i2, i3, i4});
                DivisorClass H = fam_->a_gens[0] + fam_->a_gens[i2] + fam_->a_gens[i3] +
                                 fam_->a_gens[i4];
                multiset_2h_.push_back(Int(2) * H);
            }
}

const GeneratorFamily& CertifyEngine::family() const {
    if (!fam_)
        throw PreconditionError("lattice " + checker_.lattice().id() +
                                " is not in a recognized generator family");
    return *fam_;
}

const CertifyEngine::MultisetEval& CertifyEngine::eval_multiset(const std::array<int, 3>& ms) {
    auto it = eval_cache_.find(ms);
    if (it != eval_cache_.end()) return it->second;
    const auto& fam = *fam_;
    std::vector<DivisorClass> A{fam.a_gens[0], fam.a_gens[ms[0]], fam.a_gens[ms[1]],
                                fam.a_gens[ms[2]]};
    MultisetEval ev;
    ev.checks = check_factor_hypotheses(checker_, fam.ample_ref, A);
    ev.all_pass = std::all_of(ev.checks.begin(), ev.checks.end(),
                              [](const NamedCheck& c) { return c.pass; });
    return eval_cache_.emplace(ms, std::move(ev)).first->second;
}

const NamedCheck& CertifyEngine::b_generators_check() {
    if (b_gen_check_) return *b_gen_check_;
    const auto& fam = *fam_;
    NamedCheck c;
    c.name = "B-generators nef and effective";
    c.pass = true;
    std::ostringstream detail;
    for (size_t i = 0; i < fam.b_gens.size(); ++i) {
        const auto rep = checker_.check_nef_and_ample(fam.ample_ref, fam.b_gens[i]);
        if (!rep.pass) {
            c.pass = false;
            c.witness = rep.witness;
            c.detail = fam.b_names[i] + " is not nef";
            break;
        }
        const auto eff = checker_.classify_effectivity(fam.ample_ref, fam.b_gens[i]);
        if (eff != EffectivityVerdict::Effective) {
            c.pass = false;
            c.detail = fam.b_names[i] + " is not effective";
            break;
        }
        if (i) detail << ", ";
        detail << fam.b_names[i];
    }
    if (c.pass) c.detail = detail.str();
    b_gen_check_ = std::move(c);
    return *b_gen_check_;
}

std::optional<Decomposition> CertifyEngine::try_decompose(const DivisorClass& htilde,
                                                          std::string* block) {
    const auto& fam = family();
    const PicardLattice& lat = checker_.lattice();
    if (htilde.dim() != lat.rank())
        throw DimensionError("class length does not match lattice rank");

    bool block_recorded = false;
    for (size_t mi = 0; mi < multisets_.size(); ++mi) {
        const auto& ms = multisets_[mi];
        const DivisorClass B = htilde - multiset_2h_[mi];
        // residual coefficients over the B generators (triangular by layout)
        std::vector<Int> coeffs;
        if (fam.kind == "rank5-diagonal") {
            const Int m = B.coords[1], r = B.coords[2], s = B.coords[3], t = B.coords[4];
            const Int n = B.coords[0] - (m + r + s + t);
            coeffs = {n, m, r, s, t};
        } else {
            coeffs = {B.coords[0], B.coords[1]};
        }
        int neg = -1;
        for (size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] < 0) { neg = static_cast<int>(i); break; }
        if (neg >= 0) {
            if (block != nullptr && !block_recorded) {
                *block = "residual B = H~ - 2(A1+A2+A3+A4) has negative coefficient " +
                         coeffs[neg].get_str() + " over " + fam.b_names[neg] +
                         " for the canonical choice (A2,A3,A4)=(" + fam.a_names[ms[0]] + "," +
                         fam.a_names[ms[1]] + "," + fam.a_names[ms[2]] + ")";
                block_recorded = true;
            }
            continue;
        }
        const auto& ev = eval_multiset(ms);
        if (!ev.all_pass) {
            if (block != nullptr && !block_recorded) {
                const auto bad = std::find_if(ev.checks.begin(), ev.checks.end(),
                                              [](const NamedCheck& c) { return !c.pass; });
                *block = "hypothesis check failed: " + bad->str();
                block_recorded = true;
            }
            continue;
        }
        Decomposition dec;
        dec.A = {fam.a_gens[0], fam.a_gens[ms[0]], fam.a_gens[ms[1]], fam.a_gens[ms[2]]};
        dec.a_indices = {0, ms[0], ms[1], ms[2]};
        dec.B = B;
        dec.b_coeffs = std::move(coeffs);
        dec.H = dec.A[0] + dec.A[1] + dec.A[2] + dec.A[3];
        dec.Htilde = htilde;
        return dec;
    }
    if (block != nullptr && !block_recorded) *block = "no admissible (A2,A3,A4) choice";
    return std::nullopt;
}

Decomposition CertifyEngine::decompose(const DivisorClass& htilde) {
    std::string block;
    auto dec = try_decompose(htilde, &block);
    if (!dec) throw NoDecompositionError("no decomposition of " + htilde.str() + ": " + block);
    return *dec;
}

std::optional<Decomposition> CertifyEngine::maybe_decompose(const DivisorClass& htilde) {
    return try_decompose(htilde, nullptr);
}

SurjectivityCertificate CertifyEngine::certify(const DivisorClass& htilde) {
    const PicardLattice& lat = checker_.lattice();
    SurjectivityCertificate cert(lat, htilde);
    {
        const Int sq = lat.square(htilde);
        if (sq >= 0) cert.genus = 1 + sq / 2;
    }
    auto refuse = [&](const std::string& why) {
        cert.status = CertificateStatus::Refused;
        cert.refusal_reason = why;
        return cert;
    };

    if (!fam_) return refuse("lattice is not in a recognized generator family");

    std::string block;
    std::optional<Decomposition> dec = try_decompose(htilde, &block);
    if (!dec) {
        cert.checks.push_back(NamedCheck{"decomposition", false, block, std::nullopt});
        return refuse("no decomposition: " + block);
    }
    cert.decomposition = dec;
    cert.checks.push_back(NamedCheck{"decomposition", true,
                                     "(A2,A3,A4)=(" + fam_->a_names[dec->a_indices[1]] + "," +
                                         fam_->a_names[dec->a_indices[2]] + "," +
                                         fam_->a_names[dec->a_indices[3]] + ")",
                                     std::nullopt});
    const auto& ev = eval_multiset({dec->a_indices[1], dec->a_indices[2], dec->a_indices[3]});
    cert.checks.insert(cert.checks.end(), ev.checks.begin(), ev.checks.end());

    const auto& bgen = b_generators_check();
    cert.checks.push_back(bgen);
    if (!bgen.pass) return refuse("B generator check failed: " + bgen.detail);
    cert.checks.push_back(NamedCheck{
        "B-coefficients nonnegative", true,
        [&] {
            std::ostringstream os;
            for (size_t i = 0; i < dec->b_coeffs.size(); ++i) {
                if (i) os << " ";
                os << fam_->b_names[i] << "=" << dec->b_coeffs[i];
            }
            return os.str();
        }(),
        std::nullopt});

    // H~ very ample (nef+ample and base-point-free are its preconditions)
    NamedCheck va;
    va.name = "very-ample(H~)";
    try {
        const auto rep = checker_.check_very_ample(fam_->ample_ref, htilde);
        va.pass = rep.pass;
        va.witness = rep.witness;
        if (!rep.certified()) va.detail = "bound not certified: " + rep.provenance.str();
    } catch (const Error& e) {
        va.pass = false;
        va.detail = e.what();
    }
    cert.checks.push_back(va);
    if (!va.pass) return refuse("H~ very-ampleness failed: " + (va.detail.empty() ? va.witness->str() : va.detail));

    const Int genus = *cert.genus;
    NamedCheck g13;
    g13.name = "genus>=13";
    g13.pass = genus >= 13;
    g13.detail = "genus = " + genus.get_str();
    cert.checks.push_back(g13);
    if (!g13.pass) return refuse("genus " + genus.get_str() + " below 13");

    cert.primitive = is_primitive(htilde);
    cert.status = CertificateStatus::Certified;
    if (genus < 281) cert.markers.push_back("below-theorem-threshold example");
    if (fam_->kind == "rank2" && genus == 321) cert.markers.push_back("rank-2 g=321 route");
    return cert;
}

Decomposition decompose(const PicardLattice& lat, const DivisorClass& htilde) {
    PositivityChecker checker(lat);
    CertifyEngine engine(checker);
    return engine.decompose(htilde);
}

SurjectivityCertificate certify(PositivityChecker& checker, const DivisorClass& htilde) {
    CertifyEngine engine(checker);
    return engine.certify(htilde);
}

SurjectivityCertificate certify(const PicardLattice& lat, const DivisorClass& htilde) {
    PositivityChecker checker(lat);
    return certify(checker, htilde);
}

namespace {

std::string class_expr(const PicardLattice& lat, const DivisorClass& c) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < c.dim(); ++i) {
        const Int& x = c.coords[i];
        if (x == 0) continue;
        if (x > 0 && !first) os << "+";
        if (x == -1)
            os << "-";
        else if (x != 1)
            os << x;
        os << lat.basis_labels()[i];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

std::string SurjectivityCertificate::render() const {
    std::ostringstream os;
    os << "k3gauss-certificate v1\n";
    os << "status: " << (certified() ? "Certified" : "Refused") << "\n";
    if (!certified()) os << "refusal: " << refusal_reason << "\n";
    os << "lattice-name: " << lattice.name() << "\n";
    os << "rank: " << lattice.rank() << "\n";
    os << "gram:";
    for (int i = 0; i < lattice.rank(); ++i)
        for (int j = 0; j < lattice.rank(); ++j) os << " " << lattice.gram(i, j);
    os << "\n";
    os << "basis:";
    for (const auto& l : lattice.basis_labels()) os << " " << l;
    os << "\n";
    os << "class:";
    for (const Int& x : htilde.coords) os << " " << x;
    os << "\n";
    os << "class-expr: " << class_expr(lattice, htilde) << "\n";
    if (genus) os << "genus: " << *genus << "\n";
    os << "primitive: " << (primitive ? "true" : "false") << "\n";
    if (!markers.empty()) {
        os << "markers:";
        for (const auto& m : markers) os << " [" << m << "]";
        os << "\n";
    }
    if (decomposition) {
        os << "decomposition:\n";
        for (int i = 0; i < 4; ++i) {
            os << "  A" << (i + 1) << ":";
            for (const Int& x : decomposition->A[i].coords) os << " " << x;
            os << "\n";
        }
        os << "  B:";
        for (const Int& x : decomposition->B.coords) os << " " << x;
        os << "\n";
        os << "  B-coeffs:";
        for (const Int& x : decomposition->b_coeffs) os << " " << x;
        os << "\n";
    }
    os << "checks:\n";
    for (const auto& c : checks) os << "  - " << c.str() << "\n";
    os << "end-certificate\n";
    return os.str();
}

std::pair<PicardLattice, DivisorClass> parse_certificate_subject(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::string name;
    int rank = -1;
    std::vector<Int> gram_flat;
    std::vector<std::string> basis;
    std::vector<Int> cls;
    while (std::getline(is, line)) {
        auto starts = [&](const char* p) { return line.rfind(p, 0) == 0; };
        if (starts("lattice-name: ")) {
            name = line.substr(14);
        } else if (starts("rank: ")) {
            rank = std::stoi(line.substr(6));
        } else if (starts("gram:")) {
            std::istringstream ls(line.substr(5));
            std::string tok;
            while (ls >> tok) gram_flat.emplace_back(tok);
        } else if (starts("basis:")) {
            std::istringstream ls(line.substr(6));
            std::string tok;
            while (ls >> tok) basis.push_back(tok);
        } else if (starts("class:")) {
            std::istringstream ls(line.substr(6));
            std::string tok;
            while (ls >> tok) cls.emplace_back(tok);
        }
    }
    if (rank <= 0 || static_cast<int>(gram_flat.size()) != rank * rank ||
        static_cast<int>(cls.size()) != rank)
        throw ParseError("certificate text is missing or has inconsistent lattice/class fields");
    std::vector<std::vector<Int>> gram(rank, std::vector<Int>(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) gram[i][j] = gram_flat[i * rank + j];
    return {PicardLattice(std::move(gram), name, basis), DivisorClass(std::move(cls))};
}

RecheckResult recheck_certificate_text(const std::string& text) {
    RecheckResult out;
    // certificate body proper ends at the end-certificate line; anything after
    // (manifest, blank lines) is not compared
    const auto endpos = text.find("end-certificate");
    if (endpos == std::string::npos) throw ParseError("not a certificate: no end-certificate line");
    const std::string body = text.substr(0, endpos) + "end-certificate\n";

    out.stored_status = body.find("status: Certified") != std::string::npos
                            ? CertificateStatus::Certified
                            : CertificateStatus::Refused;
    auto [lat, cls] = parse_certificate_subject(body);
    const auto cert = certify(lat, cls);
    out.recomputed_status = cert.status;
    const std::string rebuilt = cert.render();
    out.identical_body = rebuilt == body;
    out.ok = out.identical_body && out.stored_status == out.recomputed_status &&
             out.stored_status == CertificateStatus::Certified;
    if (!out.identical_body)
        out.detail = "recomputed certificate differs from the stored one";
    else if (out.stored_status != CertificateStatus::Certified)
        out.detail = "stored certificate is not Certified";
    else
        out.detail = "recomputed certificate is identical and Certified";
    return out;
}

}  // namespace k3gauss
