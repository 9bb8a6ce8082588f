#include "k3gauss/coverage.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace k3gauss {

namespace {

constexpr long long kMaxCap = 1'000'000;       // keeps every int64 intermediate small
constexpr long long kMaxRangeWidth = 4'000'000;
constexpr long long kMaxGenus = 50'000'000;

void validate_range(long long g_min, long long g_max) {
    if (g_min < 2) throw PreconditionError("coverage range must start at genus >= 2");
    if (g_max < g_min) throw PreconditionError("empty coverage range");
    if (g_max > kMaxGenus || g_max - g_min > kMaxRangeWidth)
        throw PreconditionError("coverage range too large for this tool");
}

void validate_caps(const CoverageCaps& caps) {
    if (caps.param_cap < 2 || caps.h_cap < 3 || caps.product_genus_cap < 1 ||
        caps.product_degree_cap < 7)
        throw PreconditionError("caps too small to contain any family member");
    if (caps.param_cap > kMaxCap || caps.h_cap > kMaxCap || caps.product_genus_cap > kMaxCap ||
        caps.product_degree_cap > kMaxCap)
        throw PreconditionError("caps exceed the supported maximum of 1e6");
}

long long ll_gcd(long long a, long long b) { return std::gcd(a, b); }

}  // namespace

std::string Provenance::str() const {
    std::ostringstream os;
    os << family;
    for (const auto& [k, v] : params) os << " " << k << "=" << v;
    return os.str();
}

IntervalSet IntervalSet::from_sorted(const std::vector<long long>& xs) {
    IntervalSet s;
    for (long long x : xs) {
        if (!s.runs.empty() && s.runs.back().second + 1 == x)
            s.runs.back().second = x;
        else
            s.runs.push_back({x, x});
    }
    return s;
}

long long IntervalSet::count() const {
    long long c = 0;
    for (const auto& [a, b] : runs) c += b - a + 1;
    return c;
}

std::string IntervalSet::str() const {
    if (runs.empty()) return "none";
    std::ostringstream os;
    for (size_t i = 0; i < runs.size(); ++i) {
        if (i) os << ",";
        os << runs[i].first;
        if (runs[i].second != runs[i].first) os << "-" << runs[i].second;
    }
    return os.str();
}

std::string ExclusionCertificate::str() const {
    std::ostringstream os;
    os << "genus=" << genus << " excluded=" << (excluded ? "true" : "false");
    if (!h_bounds.empty()) {
        os << " bounds:";
        for (const auto& [a, hb] : h_bounds) os << " a=" << a << ":h<=" << hb;
    }
    if (witness) os << " witness: " << witness->str();
    return os.str();
}

std::string CoverageReport::render(const std::vector<long long>& provenance_for) const {
    std::ostringstream os;
    os << "k3gauss-coverage v1\n";
    os << "family: " << family << "\n";
    os << "range: " << g_min << " " << g_max << "\n";
    os << "caps: param=" << caps.param_cap << " h=" << caps.h_cap
       << " product-genus=" << caps.product_genus_cap
       << " product-degree=" << caps.product_degree_cap << "\n";
    os << "achieved: " << achieved_intervals.str() << "\n";
    os << "achieved-count: " << achieved_intervals.count() << "\n";
    os << "missing: " << missing_intervals.str() << "\n";
    os << "missing-count: " << missing_intervals.count() << "\n";
    os << "stabilized: " << (stabilized ? "true" : "false") << "\n";
    if (!primitivity_note.empty()) os << "primitivity-delta: " << primitivity_note << "\n";
    if (!exclusions.empty()) {
        os << "exclusions:\n";
        for (const auto& e : exclusions) os << "  - " << e.str() << "\n";
    }
    if (!provenance_for.empty()) {
        os << "provenance:\n";
        for (long long g : provenance_for) {
            auto it = achieved.find(g);
            if (it == achieved.end())
                os << "  " << g << ": missing\n";
            else
                os << "  " << g << ": " << it->second.str() << "\n";
        }
    }
    os << "end-coverage\n";
    return os.str();
}

const std::vector<ClosedFormFamily>& closed_form_families() {
    static const std::vector<ClosedFormFamily> fams = {
        {170, {45, 44, 81}},
        {170, {44, 80, 81}},
    };
    return fams;
}

CoverageReport closed_form_coverage(long long g_min, long long g_max) {
    validate_range(g_min, g_max);
    CoverageReport rep;
    rep.family = "closed-forms";
    rep.g_min = g_min;
    rep.g_max = g_max;

    const auto& fams = closed_form_families();
    for (size_t fi = 0; fi < fams.size(); ++fi) {
        const auto& f = fams[fi];
        const auto& g = f.generators;
        for (long long p0 = 0; f.offset + g[0] * p0 <= g_max; ++p0)
            for (long long p1 = 0; f.offset + g[0] * p0 + g[1] * p1 <= g_max; ++p1)
                for (long long p2 = 0; f.offset + g[0] * p0 + g[1] * p1 + g[2] * p2 <= g_max;
                     ++p2) {
                    const long long val = f.offset + g[0] * p0 + g[1] * p1 + g[2] * p2;
                    if (val < g_min) continue;
                    if (rep.achieved.count(val)) continue;
                    Provenance prov;
                    prov.family = "closed-form-" + std::to_string(fi + 1);
                    const char* names[2][3] = {{"rho", "m", "t"}, {"n", "alpha", "beta"}};
                    prov.params = {{names[fi][0], p0}, {names[fi][1], p1}, {names[fi][2], p2}};
                    rep.achieved.emplace(val, std::move(prov));
                }
    }
    std::vector<long long> got, miss;
    for (long long g = g_min; g <= g_max; ++g)
        (rep.achieved.count(g) ? got : miss).push_back(g);
    rep.achieved_intervals = IntervalSet::from_sorted(got);
    rep.missing = miss;
    rep.missing_intervals = IntervalSet::from_sorted(miss);
    // parameter enumeration above is complete for the range, so absences are
    // proved, not cap-limited
    for (long long g : miss) rep.exclusion_certified[g] = true;
    rep.stabilized = true;
    return rep;
}

// ---------------------------------------------------------------------------
// rank-5 family
// ---------------------------------------------------------------------------

namespace {

struct Rank5Tuple {
    int a;
    std::array<long long, 4> c;  // s, t, v, r
    bool alt_primitive;          // gcd(s,t,v,r) == 1 (the alternative reading)
};

// Canonical tuple list: a ascending, then (s,t,v,r) lexicographic. Filters:
// sum <= a-2, decomposability (#odd <= a-8), full-gcd coprimality.
const std::vector<Rank5Tuple>& rank5_tuples() {
    static const std::vector<Rank5Tuple> tuples = [] {
        std::vector<Rank5Tuple> out;
        for (int a = 9; a <= 14; ++a) {
            const long long lim = a - 2;
            for (long long s = 0; s <= lim; ++s)
                for (long long t = 0; s + t <= lim; ++t)
                    for (long long v = 0; s + t + v <= lim; ++v)
                        for (long long r = 0; s + t + v + r <= lim; ++r) {
                            const int odd = int(s % 2) + int(t % 2) + int(v % 2) + int(r % 2);
                            if (odd > a - 8) continue;
                            long long g_all = ll_gcd(ll_gcd(ll_gcd(ll_gcd(a, s), t), v), r);
                            if (g_all != 1) continue;
                            long long g_strv = ll_gcd(ll_gcd(ll_gcd(s, t), v), r);
                            out.push_back({a, {s, t, v, r}, g_strv == 1});
                        }
        }
        return out;
    }();
    return tuples;
}

struct Rank5Candidate {
    size_t tuple_idx;
    long long k, j, l, m, h;
};

Provenance rank5_provenance(const Rank5Tuple& t, const Rank5Candidate& c) {
    Provenance p;
    p.family = "rank5";
    p.params = {{"a", t.a}, {"s", t.c[0]}, {"t", t.c[1]}, {"v", t.c[2]}, {"r", t.c[3]},
                {"h", c.h}, {"k", c.k},    {"j", c.j},    {"l", c.l},    {"m", c.m}};
    return p;
}

// Lazily built per-lattice certification state, shared within one worker.
class LatticeEngines {
public:
    CertifyEngine& engine(long long h, long long k, long long j, long long l, long long m) {
        std::ostringstream key;
        key << h << "," << k << "," << j << "," << l << "," << m;
        auto it = map_.find(key.str());
        if (it == map_.end()) {
            auto lat = make_rank5_lattice(
                DiagonalFamilyParams{to_int(h), to_int(k), to_int(j), to_int(l), to_int(m)});
            auto holder = std::make_unique<Holder>(std::move(lat));
            it = map_.emplace(key.str(), std::move(holder)).first;
        }
        return it->second->engine;
    }

private:
    struct Holder {
        PositivityChecker checker;
        CertifyEngine engine;
        explicit Holder(PicardLattice lat) : checker(std::move(lat)), engine(checker) {}
    };
    std::unordered_map<std::string, std::unique_ptr<Holder>> map_;
};

struct Rank5WorkerResult {
    // genus -> (tuple index, candidate); worker-local canonical minimum of the
    // candidates that actually certified
    std::map<long long, std::pair<size_t, Rank5Candidate>> achieved;
    std::vector<char> alt_achieved;  // offset by g_min, arithmetic only
};

// Sweep the candidates of tuples [t_lo, t_hi) in canonical order, certifying
// the first representative of each genus this worker sees.
Rank5WorkerResult rank5_sweep(long long g_min, long long g_max, const CoverageCaps& caps,
                              size_t t_lo, size_t t_hi, LatticeEngines& engines) {
    const auto& tuples = rank5_tuples();
    Rank5WorkerResult res;
    res.alt_achieved.assign(static_cast<size_t>(g_max - g_min + 1), 0);

    for (size_t ti = t_lo; ti < t_hi; ++ti) {
        const auto& tup = tuples[ti];
        const long long a2 = static_cast<long long>(tup.a) * tup.a;
        // g >= 1 + (4a-4)h + (a-2)^2 for every admissible representation
        const long long hb_range = (g_max - 1 - (tup.a - 2) * (tup.a - 2)) / (4 * tup.a - 4);
        const long long hb = std::min(caps.h_cap, hb_range);
        if (hb < 3) continue;
        const long long pmax = std::min(caps.param_cap, hb - 1);

        // active parameter positions (zero coefficients pin their parameter to 2,
        // which never constrains h and never changes the genus)
        std::vector<int> active;
        for (int i = 0; i < 4; ++i)
            if (tup.c[i] > 0) active.push_back(i);

        std::array<long long, 4> prm = {2, 2, 2, 2};
        auto emit = [&](long long cost) {
            const long long mx = std::max({prm[0], prm[1], prm[2], prm[3]});
            long long h1 = std::max(mx + 1, (g_min - 1 + cost + a2 - 1) / a2);
            long long h2 = std::min(hb, (g_max - 1 + cost) / a2);
            for (long long h = h1; h <= h2; ++h) {
                const long long g = 1 + a2 * h - cost;
                const size_t off = static_cast<size_t>(g - g_min);
                if (tup.alt_primitive) res.alt_achieved[off] = 1;
                if (res.achieved.count(g)) continue;
                Rank5Candidate cand{ti, prm[0], prm[1], prm[2], prm[3], h};
                auto& eng = engines.engine(h, prm[0], prm[1], prm[2], prm[3]);
                DivisorClass ht({tup.a, 0, 0, 0, 0});
                for (int ci = 0; ci < 4; ++ci) ht.coords[ci + 1] = to_int(tup.c[ci]);
                const auto cert = eng.certify(ht);
                if (!cert.certified()) continue;  // keep scanning representations
                if (*cert.genus != to_int(g))
                    throw InconsistencyError("coverage candidate genus mismatch");
                res.achieved.emplace(g, std::make_pair(ti, cand));
            }
        };
        // recursive sweep over active parameters with cost pruning
        auto rec = [&](auto&& self, size_t idx, long long cost) -> void {
            if (1 + a2 * hb - cost < g_min) return;
            if (idx == active.size()) {
                emit(cost);
                return;
            }
            const long long coef = tup.c[active[idx]];
            const long long w = coef * coef;
            for (long long p = 2; p <= pmax; ++p) {
                const long long ncost = cost + w * p;
                if (1 + a2 * hb - ncost < g_min) break;
                prm[active[idx]] = p;
                self(self, idx + 1, ncost);
            }
            prm[active[idx]] = 2;
        };
        rec(rec, 0, 0);
    }
    return res;
}

struct Rank5Run {
    std::map<long long, Provenance> achieved;
    std::vector<long long> achieved_list;
    std::vector<char> alt_achieved;
};

Rank5Run rank5_run(long long g_min, long long g_max, const CoverageCaps& caps, int jobs) {
    const auto& tuples = rank5_tuples();
    const size_t n = tuples.size();
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));

    std::vector<Rank5WorkerResult> results(workers);
    if (workers == 1) {
        LatticeEngines engines;
        results[0] = rank5_sweep(g_min, g_max, caps, 0, n, engines);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            const size_t lo = n * w / workers;
            const size_t hi = n * (w + 1) / workers;
            threads.emplace_back([&, w, lo, hi] {
                LatticeEngines engines;  // per-worker cache partition
                results[w] = rank5_sweep(g_min, g_max, caps, lo, hi, engines);
            });
        }
        for (auto& t : threads) t.join();
    }

    Rank5Run run;
    run.alt_achieved.assign(static_cast<size_t>(g_max - g_min + 1), 0);
    std::map<long long, std::pair<size_t, Rank5Candidate>> best;
    for (const auto& r : results) {
        for (const auto& [g, cand] : r.achieved) {
            auto it = best.find(g);
            if (it == best.end() || cand.first < it->second.first)
                best[g] = cand;
        }
        for (size_t i = 0; i < r.alt_achieved.size(); ++i)
            if (r.alt_achieved[i]) run.alt_achieved[i] = 1;
    }
    for (const auto& [g, cand] : best) {
        run.achieved.emplace(g, rank5_provenance(tuples[cand.first], cand.second));
        run.achieved_list.push_back(g);
    }
    return run;
}

}  // namespace

ExclusionCertificate certify_exclusion(long long genus) {
    if (genus < 2 || genus > kMaxGenus)
        throw PreconditionError("exclusion genus out of supported range");
    ExclusionCertificate cert;
    cert.genus = genus;
    const auto& tuples = rank5_tuples();
    LatticeEngines engines;

    for (int a = 9; a <= 14; ++a) {
        const long long hb = (genus - 1 - static_cast<long long>(a - 2) * (a - 2)) / (4 * a - 4);
        cert.h_bounds.push_back({a, hb});
    }
    for (size_t ti = 0; ti < tuples.size(); ++ti) {
        const auto& tup = tuples[ti];
        const long long a2 = static_cast<long long>(tup.a) * tup.a;
        const long long hb =
            (genus - 1 - static_cast<long long>(tup.a - 2) * (tup.a - 2)) / (4 * tup.a - 4);
        if (hb < 3) continue;
        std::vector<int> active;
        for (int i = 0; i < 4; ++i)
            if (tup.c[i] > 0) active.push_back(i);
        std::array<long long, 4> prm = {2, 2, 2, 2};
        std::optional<Rank5Candidate> found;
        auto rec = [&](auto&& self, size_t idx, long long cost) -> void {
            if (found) return;
            if (1 + a2 * hb - cost < genus) return;
            if (idx == active.size()) {
                // h uniquely determined by the genus equation
                const long long num = genus - 1 + cost;
                if (num % a2 != 0) return;
                const long long h = num / a2;
                const long long mx = std::max({prm[0], prm[1], prm[2], prm[3]});
                if (h < mx + 1 || h > hb) return;
                Rank5Candidate cand{ti, prm[0], prm[1], prm[2], prm[3], h};
                auto& eng = engines.engine(h, prm[0], prm[1], prm[2], prm[3]);
                DivisorClass ht({tup.a, 0, 0, 0, 0});
                for (int ci = 0; ci < 4; ++ci) ht.coords[ci + 1] = to_int(tup.c[ci]);
                if (eng.certify(ht).certified()) found = cand;
                return;
            }
            const long long coef = tup.c[active[idx]];
            const long long w = coef * coef;
            for (long long p = 2; p <= hb - 1 && !found; ++p) {
                const long long ncost = cost + w * p;
                if (1 + a2 * hb - ncost < genus) break;
                prm[active[idx]] = p;
                self(self, idx + 1, ncost);
            }
            prm[active[idx]] = 2;
        };
        rec(rec, 0, 0);
        if (found) {
            cert.excluded = false;
            cert.witness = rank5_provenance(tup, *found);
            return cert;
        }
    }
    cert.excluded = true;
    return cert;
}

CoverageReport rank5_family_coverage(long long g_min, long long g_max, const CoverageCaps& caps,
                                     int jobs) {
    validate_range(g_min, g_max);
    validate_caps(caps);
    CoverageReport rep;
    rep.family = "rank5";
    rep.g_min = g_min;
    rep.g_max = g_max;
    rep.caps = caps;

    Rank5Run run = rank5_run(g_min, g_max, caps, jobs);
    rep.achieved = std::move(run.achieved);

    CoverageCaps halved = caps;
    halved.param_cap = std::max<long long>(2, caps.param_cap / 2);
    halved.h_cap = std::max<long long>(3, caps.h_cap / 2);
    Rank5Run half = rank5_run(g_min, g_max, halved, jobs);
    rep.stabilized = half.achieved_list == run.achieved_list;

    std::vector<long long> got, miss;
    for (long long g = g_min; g <= g_max; ++g)
        (rep.achieved.count(g) ? got : miss).push_back(g);
    rep.achieved_intervals = IntervalSet::from_sorted(got);
    rep.missing = miss;
    rep.missing_intervals = IntervalSet::from_sorted(miss);

    // primitivity-reading delta: genera achieved only through tuples whose
    // (s,t,v,r) part is not itself coprime
    std::vector<long long> delta;
    for (long long g : got)
        if (!run.alt_achieved[static_cast<size_t>(g - g_min)]) delta.push_back(g);
    rep.primitivity_note =
        delta.empty() ? "none" : ("only-under-full-gcd: " + IntervalSet::from_sorted(delta).str());

    if (miss.size() <= 64) {
        for (long long g : miss) {
            auto ex = certify_exclusion(g);
            rep.exclusion_certified[g] = ex.excluded;
            rep.exclusions.push_back(std::move(ex));
        }
    } else {
        for (long long g : miss) rep.exclusion_certified[g] = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// product of curves
// ---------------------------------------------------------------------------

namespace {

struct ProductRun {
    std::map<long long, Provenance> achieved;
    std::vector<long long> achieved_list;
};

ProductRun product_run(long long g_min, long long g_max, const CoverageCaps& caps) {
    ProductRun run;
    auto add = [&](long long g, int regime, long long g1, long long g2, long long d1,
                   long long d2) {
        if (g < g_min || g > g_max) return;
        if (run.achieved.count(g)) return;
        Provenance p;
        p.family = "product-regime" + std::to_string(regime);
        p.params = {{"g1", g1}, {"g2", g2}, {"d1", d1}, {"d2", d2}};
        run.achieved.emplace(g, std::move(p));
    };
    const long long gc = caps.product_genus_cap, dc = caps.product_degree_cap;

    // regime 1: g1, g2 >= 2, d_i >= 2 g_i + 5
    for (long long g1 = 2; g1 <= gc; ++g1) {
        if (29 * g1 + 42 > g_max) break;  // minimal genus at g2=2, minimal degrees
        for (long long g2 = 2; g2 <= gc; ++g2) {
            const long long d1min = 2 * g1 + 5, d2min = 2 * g2 + 5;
            if (1 + (g2 - 1) * d1min + (g1 - 1) * d2min + d1min * d2min > g_max) break;
            for (long long d1 = d1min; d1 <= dc; ++d1) {
                if (1 + (g2 - 1) * d1 + (g1 - 1) * d2min + d1 * d2min > g_max) break;
                for (long long d2 = d2min; d2 <= dc; ++d2) {
                    const long long g = 1 + (g2 - 1) * d1 + (g1 - 1) * d2 + d1 * d2;
                    if (g > g_max) break;
                    add(g, 1, g1, g2, d1, d2);
                }
            }
        }
    }
    // regime 2: g2 = 1, d1 >= 2 g1 + 5, d2 >= 7
    for (long long g1 = 2; g1 <= gc; ++g1) {
        if (21 * g1 + 29 > g_max) break;
        const long long d1min = 2 * g1 + 5;
        for (long long d1 = d1min; d1 <= dc; ++d1) {
            if (1 + 7 * (g1 - 1 + d1) > g_max) break;
            for (long long d2 = 7; d2 <= dc; ++d2) {
                const long long g = 1 + (g1 - 1) * d2 + d1 * d2;
                if (g > g_max) break;
                add(g, 2, g1, 1, d1, d2);
            }
        }
    }
    // regime 3: g2 = 0, d2 >= 7, d2 (g1 - 1) > 2 d1 >= 4 g1 + 10
    for (long long g1 = 2; g1 <= gc; ++g1) {
        if (19 * g1 + 24 > g_max) break;  // loose lower bound on the regime minimum
        for (long long d1 = 2 * g1 + 5; d1 <= dc; ++d1) {
            bool any = false;
            for (long long d2 = 7; d2 <= dc; ++d2) {
                if (d2 * (g1 - 1) <= 2 * d1) continue;
                const long long g = 1 - d1 + (g1 - 1) * d2 + d1 * d2;
                if (g > g_max) break;
                any = true;
                add(g, 3, g1, 0, d1, d2);
            }
            if (!any && 1 - d1 + (g1 - 1) * dc + d1 * dc > g_max) break;
        }
    }
    for (const auto& [g, _] : run.achieved) run.achieved_list.push_back(g);
    return run;
}

}  // namespace

CoverageReport product_family_coverage(long long g_min, long long g_max, const CoverageCaps& caps,
                                       int /*jobs*/) {
    validate_range(g_min, g_max);
    validate_caps(caps);
    CoverageReport rep;
    rep.family = "product";
    rep.g_min = g_min;
    rep.g_max = g_max;
    rep.caps = caps;

    ProductRun run = product_run(g_min, g_max, caps);
    rep.achieved = std::move(run.achieved);

    CoverageCaps halved = caps;
    halved.product_genus_cap = std::max<long long>(2, caps.product_genus_cap / 2);
    halved.product_degree_cap = std::max<long long>(7, caps.product_degree_cap / 2);
    ProductRun half = product_run(g_min, g_max, halved);
    rep.stabilized = half.achieved_list == run.achieved_list;

    std::vector<long long> got, miss;
    for (long long g = g_min; g <= g_max; ++g)
        (rep.achieved.count(g) ? got : miss).push_back(g);
    rep.achieved_intervals = IntervalSet::from_sorted(got);
    rep.missing = miss;
    rep.missing_intervals = IntervalSet::from_sorted(miss);
    for (long long g : miss) rep.exclusion_certified[g] = false;
    return rep;
}

CoverageReport rank2_coverage(long long g_min, long long g_max) {
    validate_range(g_min, g_max);
    CoverageReport rep;
    rep.family = "rank2";
    rep.g_min = g_min;
    rep.g_max = g_max;
    if (g_min <= 321 && 321 <= g_max) {
        const auto lat = make_rank2_lattice();
        const auto cert = certify(lat, DivisorClass({11, 1}));
        if (cert.certified() && *cert.genus == 321) {
            Provenance p;
            p.family = "rank2";
            p.params = {{"htilde-D", 11}, {"htilde-L", 1}};
            rep.achieved.emplace(321, std::move(p));
        }
    }
    std::vector<long long> got, miss;
    for (long long g = g_min; g <= g_max; ++g)
        (rep.achieved.count(g) ? got : miss).push_back(g);
    rep.achieved_intervals = IntervalSet::from_sorted(got);
    rep.missing = miss;
    rep.missing_intervals = IntervalSet::from_sorted(miss);
    rep.stabilized = true;
    return rep;
}

CoverageReport theorem_coverage(long long g_min, long long g_max, const CoverageCaps& caps,
                                int jobs) {
    validate_range(g_min, g_max);
    if (g_min < 153)
        throw PreconditionError("theorem coverage is claimed for genus >= 153 only");
    validate_caps(caps);
    CoverageReport rep;
    rep.family = "theorem";
    rep.g_min = g_min;
    rep.g_max = g_max;
    rep.caps = caps;
    rep.stabilized = true;

    if (g_min <= 280) {
        auto prod = product_family_coverage(g_min, std::min<long long>(280, g_max), caps, jobs);
        rep.stabilized = rep.stabilized && prod.stabilized;
        for (auto& [g, p] : prod.achieved) rep.achieved.emplace(g, std::move(p));
    }
    if (g_min <= 321 && 321 <= g_max) {
        auto r2 = rank2_coverage(321, 321);
        for (auto& [g, p] : r2.achieved) rep.achieved.emplace(g, std::move(p));
    }
    if (g_max >= 281) {
        auto r5 = rank5_family_coverage(std::max<long long>(281, g_min), g_max, caps, jobs);
        rep.stabilized = rep.stabilized && r5.stabilized;
        for (auto& [g, p] : r5.achieved) rep.achieved.emplace(g, std::move(p));
    }

    std::vector<long long> got, miss;
    for (long long g = g_min; g <= g_max; ++g)
        (rep.achieved.count(g) ? got : miss).push_back(g);
    rep.achieved_intervals = IntervalSet::from_sorted(got);
    rep.missing = miss;
    rep.missing_intervals = IntervalSet::from_sorted(miss);
    for (long long g : miss) rep.exclusion_certified[g] = false;
    return rep;
}

}  // namespace k3gauss
