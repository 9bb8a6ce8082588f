#include <doctest.h>

#include <random>

#include "k3gauss/enumerate.hpp"

using namespace k3gauss;

TEST_SUITE_BEGIN("enumerate");

namespace {

EnumerationResult slice(const PicardLattice& lat, const DivisorClass& M, long t, long sigma) {
    SliceQuery q{&lat, M, Int(t), Int(sigma)};
    return enumerate_slice(q);
}

}  // namespace

TEST_CASE("paper slices on the diagonal family") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const DivisorClass D = lat.basis_class(0);
    // no root orthogonal to D: 1 = k b^2 + j c^2 + l d^2 + m e^2 is impossible
    const auto res = slice(lat, D, 0, -2);
    CHECK(res.solutions.empty());
    CHECK(res.exhaustive);
}

TEST_CASE("rank-1 slice") {
    const PicardLattice lat({{Int(2)}});
    const auto res = slice(lat, lat.basis_class(0), 2, 2);
    REQUIRE(res.solutions.size() == 1);
    CHECK(res.solutions[0] == DivisorClass({1}));
    CHECK(slice(lat, lat.basis_class(0), 3, 2).solutions.empty());  // parity of the linear form
}

TEST_CASE("rank-2 isotropic slice is empty") {
    const auto lat = make_rank2_lattice();
    const DivisorClass D = lat.basis_class(0);
    CHECK(slice(lat, D, 1, 0).solutions.empty());
    // brute-force cross-check over the stated box
    const auto brute = brute_force_oracle(lat, 100, [&](const DivisorClass& F) {
        return lat.square(F) == 0 && lat.pair(F, D) == 1;
    });
    CHECK(brute.empty());
}

TEST_CASE("solutions come in canonical order and satisfy the constraints") {
    const PicardLattice lat({{Int(2), Int(0)}, {Int(0), Int(-2)}});
    const auto res = slice(lat, lat.basis_class(0), 0, -2);
    REQUIRE(res.solutions.size() == 2);
    CHECK(res.solutions[0] == DivisorClass({0, -1}));
    CHECK(res.solutions[1] == DivisorClass({0, 1}));
}

TEST_CASE("slice preconditions") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const DivisorClass L = lat.basis_class(1);  // L^2 = -4
    CHECK_THROWS_AS((void)slice(lat, L, 0, -2), PreconditionError);
    SliceQuery bad{&lat, DivisorClass({1, 0}), 0, 0};
    CHECK_THROWS_AS((void)enumerate_slice(bad), DimensionError);
}

TEST_CASE("symmetry: F solves (sigma, M, t) iff -F solves (sigma, M, -t)") {
    const auto lat = make_rank2_lattice();
    const DivisorClass D = lat.basis_class(0);
    for (long t = 1; t <= 5; ++t)
        for (long sigma : {-2L, 0L, 2L}) {
            auto pos = slice(lat, D, t, sigma).solutions;
            auto neg = slice(lat, D, -t, sigma).solutions;
            std::vector<DivisorClass> flipped;
            for (const auto& F : neg) flipped.push_back(-F);
            std::sort(flipped.begin(), flipped.end());
            CHECK(pos == flipped);
        }
}

TEST_CASE("empty-by-parity on all-even lattices") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{4, 3, 2, 2, 2});
    const DivisorClass D = lat.basis_class(0);
    for (long t : {1L, 3L, 5L, 7L}) {
        const auto res = slice(lat, D, t, -2);
        CHECK(res.solutions.empty());
        CHECK(res.stats.nodes == 0);  // rejected by the divisibility precheck
    }
}

TEST_CASE("work limit triggers a distinct error") {
    // an ample class of huge square makes the t-slice ellipsoid large
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{200, 2, 2, 2, 2});
    SliceEnumerator en(lat, lat.basis_class(0), /*node_budget=*/50);
    CHECK_THROWS_AS((void)en.solve(400 * 30, 0), WorkLimitError);
}

TEST_CASE("degree bounds: frozen values") {
    const auto lat32 = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const DivisorClass D = lat32.basis_class(0);
    const DivisorClass DL = D + lat32.basis_class(1);

    // roots meeting D+L nonpositively: x^2 <= 4kh/(h-k) = 24, ceiling of sqrt(24)
    const auto b1 = derive_degree_bound(lat32, D, DL, -2, 0);
    REQUIRE(b1.certified);
    CHECK(b1.bound == 5);

    // N = D leaves no room at all
    const auto b2 = derive_degree_bound(lat32, D, D, -2, 0);
    REQUIRE(b2.certified);
    CHECK(b2.bound == 0);

    // isotropic classes with F.(D+L) <= 2: largest root 6 + sqrt(24)
    const auto b3 = derive_degree_bound(lat32, D, DL, 0, 2);
    REQUIRE(b3.certified);
    CHECK(b3.bound == 11);

    // (h,k) = (9,8): x^2 <= 4*8*9/1 = 288
    const auto lat98 = make_rank5_lattice(DiagonalFamilyParams{9, 8, 2, 2, 2});
    const auto b4 = derive_degree_bound(lat98, lat98.basis_class(0),
                                        lat98.basis_class(0) + lat98.basis_class(1), -2, 0);
    REQUIRE(b4.certified);
    CHECK(b4.bound == 17);

    const auto lat2 = make_rank2_lattice();
    const auto b5 = derive_degree_bound(lat2, lat2.basis_class(0), lat2.basis_class(1), -2, 0);
    REQUIRE(b5.certified);
    CHECK(b5.bound == 7);

    CHECK_THROWS_AS(
        (void)derive_degree_bound(lat32, lat32.basis_class(1), D, -2, 0),  // D^2 <= 0 reference
        PreconditionError);
}

TEST_CASE("degree bound is unbounded when N.D <= 0") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const DivisorClass D = lat.basis_class(0);
    const auto db = derive_degree_bound(lat, D, -D, -2, 0);
    CHECK_FALSE(db.certified);
}

TEST_CASE("degree bound soundness on the (3,2) instance up to x = 20") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const DivisorClass D = lat.basis_class(0);
    const DivisorClass DL = D + lat.basis_class(1);
    SliceEnumerator en(lat, D);
    for (long x = 1; x <= 20; ++x) {
        for (const auto& F : en.solve(x, -2).solutions) CHECK(lat.pair(F, DL) > 0);
        for (const auto& F : en.solve(x, 0).solutions) CHECK(lat.pair(F, DL) > 2);
    }
}

TEST_CASE("oracle box-radius covers every solution") {
    const auto lat = make_rank2_lattice();
    SliceEnumerator en(lat, lat.basis_class(0));
    for (long t = 0; t <= 6; ++t)
        for (long sigma : {-2L, 0L, 2L}) {
            const auto res = en.solve(t, sigma);
            const Int radius = en.solution_box_radius(t, sigma);
            for (const auto& F : res.solutions)
                for (const Int& c : F.coords) CHECK(abs(c) <= radius);
        }
}

TEST_CASE("randomized equivalence with the brute-force oracle") {
    std::mt19937_64 rng(20240811);
    auto uniform = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    int lattices = 0;
    while (lattices < 60) {
        const int n = uniform(2, 4);
        std::vector<std::vector<Int>> g(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i) {
            g[i][i] = 2 * uniform(-5, 5);
            for (int j = i + 1; j < n; ++j) g[i][j] = g[j][i] = uniform(-10, 10);
        }
        const auto in = exact_inertia(g);
        if (in.zero != 0 || in.positive != 1) continue;
        PicardLattice lat(g);
        DivisorClass M;
        bool found = false;
        for (int tries = 0; tries < 100 && !found; ++tries) {
            std::vector<Int> c(n);
            for (auto& x : c) x = uniform(-3, 3);
            M = DivisorClass(c);
            found = !M.is_zero() && lat.square(M) > 0;
        }
        if (!found) continue;
        ++lattices;
        SliceEnumerator en(lat, M);
        const Int t = uniform(-6, 6);
        const Int sigma = 2 * uniform(-1, 1);
        const auto res = en.solve(t, sigma);
        Int radius = en.solution_box_radius(t, sigma);
        if (radius > 10) radius = 10;
        if (radius < 1) radius = 1;
        const auto brute = brute_force_oracle(lat, radius, [&](const DivisorClass& F) {
            return lat.square(F) == sigma && lat.pair(F, M) == t;
        });
        std::vector<DivisorClass> inside;
        for (const auto& F : res.solutions) {
            bool ok = true;
            for (const Int& c : F.coords)
                if (abs(c) > radius) { ok = false; break; }
            if (ok) inside.push_back(F);
        }
        CHECK(inside == brute);
    }
}

TEST_CASE("brute-force oracle basics") {
    const PicardLattice lat({{Int(2), Int(0)}, {Int(0), Int(-2)}});
    // radius-1 box: isotropic nonzero classes are (1,1),(1,-1),(-1,1),(-1,-1)
    const auto iso = brute_force_oracle(lat, 1, [&](const DivisorClass& F) {
        return !F.is_zero() && lat.square(F) == 0;
    });
    CHECK(iso.size() == 4);
    CHECK_THROWS_AS((void)brute_force_oracle(lat, 0, [](const DivisorClass&) { return true; }),
                    PreconditionError);
    CHECK_THROWS_AS(
        (void)brute_force_oracle(lat, Int("100000000000"), [](const DivisorClass&) { return true; }),
        WorkLimitError);
}

TEST_SUITE_END();
