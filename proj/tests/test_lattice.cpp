#include <doctest.h>

#include <random>

#include "k3gauss/lattice.hpp"

using namespace k3gauss;

TEST_SUITE_BEGIN("lattice");

TEST_CASE("rank-5 family construction") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    CHECK(lat.rank() == 5);
    CHECK(lat.gram(0, 0) == 6);
    CHECK(lat.gram(1, 1) == -4);
    CHECK(lat.gram(4, 4) == -4);
    CHECK(lat.signature() == Signature{1, 4});
    CHECK(lat.all_entries_even());
    CHECK(lat.basis_labels()[0] == "D");
    CHECK(lat.basis_labels()[4] == "T");

    const auto big = make_rank5_lattice(DiagonalFamilyParams{9, 8, 2, 2, 2});
    CHECK(big.gram(0, 0) == 18);
    CHECK(big.gram(1, 1) == -16);
}

TEST_CASE("family constraint violations name the failed inequality") {
    CHECK_THROWS_WITH_AS(make_rank5_lattice(DiagonalFamilyParams{2, 2, 2, 2, 2}),
                         doctest::Contains("h >= k+1"), ConstraintError);
    CHECK_THROWS_WITH_AS(make_rank5_lattice(DiagonalFamilyParams{5, 2, 1, 2, 2}),
                         doctest::Contains("j >= 2"), ConstraintError);
}

TEST_CASE("rank-2 lattice") {
    const auto lat = make_rank2_lattice();
    CHECK(lat.gram(0, 0) == 4);
    CHECK(lat.gram(0, 1) == 7);
    CHECK(lat.gram(1, 1) == 2);
    CHECK(lat.signature() == Signature{1, 1});
    CHECK(lat.det() == -41);
    CHECK_FALSE(lat.all_entries_even());
}

TEST_CASE("lattice invariant violations") {
    CHECK_THROWS_WITH_AS(PicardLattice({{Int(2), Int(1)}, {Int(2), Int(-2)}}),
                         doctest::Contains("not symmetric"), ConstraintError);
    CHECK_THROWS_WITH_AS(PicardLattice({{Int(3)}}), doctest::Contains("odd diagonal"),
                         ConstraintError);
    CHECK_THROWS_WITH_AS(PicardLattice({{Int(2), Int(0)}, {Int(0), Int(0)}}),
                         doctest::Contains("degenerate"), ConstraintError);
    // positive definite: wrong signature
    CHECK_THROWS_WITH_AS(PicardLattice({{Int(2), Int(0)}, {Int(0), Int(2)}}),
                         doctest::Contains("signature"), ConstraintError);
    // rank cap
    std::vector<std::vector<Int>> g(21, std::vector<Int>(21, Int(0)));
    g[0][0] = 2;
    for (int i = 1; i < 21; ++i) g[i][i] = -2;
    CHECK_THROWS_WITH_AS(PicardLattice(std::move(g)), doctest::Contains("exceeds 20"),
                         ConstraintError);
}

TEST_CASE("zero diagonal entries are repaired by congruence, not rejected") {
    const PicardLattice lat({{Int(0), Int(1)}, {Int(1), Int(-2)}});
    CHECK(lat.signature() == Signature{1, 1});
    CHECK(lat.det() == -1);
}

TEST_CASE("pairing values") {
    const auto lat5 = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const DivisorClass D = lat5.basis_class(0), L = lat5.basis_class(1);
    CHECK(lat5.pair(D, D) == 6);
    CHECK(lat5.pair(D + L, D + L) == 2);  // (D+L)^2 = 2h - 2k

    const auto lat2 = make_rank2_lattice();
    const DivisorClass Ht({11, 1});
    CHECK(lat2.pair(Ht, Ht) == 640);  // genus 321 = 1 + 640/2

    CHECK_THROWS_AS((void)lat5.pair(Ht, Ht), DimensionError);
}

TEST_CASE("genus of a class") {
    const auto lat2 = make_rank2_lattice();
    CHECK(genus_of_class(lat2, DivisorClass({11, 1})) == 321);

    // g(9D+6L+R) = 1 + 81h - 36k - j on the diagonal family
    for (int h = 3; h <= 6; ++h)
        for (int k = 2; k < h; ++k)
            for (int j = 2; j < h; ++j) {
                const auto lat = make_rank5_lattice(DiagonalFamilyParams{h, k, j, 2, 2});
                const DivisorClass ht({9, 6, 1, 0, 0});
                CHECK(genus_of_class(lat, ht) == 1 + 81 * h - 36 * k - j);
            }
    const auto lat170 = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    CHECK(genus_of_class(lat170, DivisorClass({9, 6, 1, 0, 0})) == 170);

    // negative squares rejected
    const auto lat5 = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    CHECK_THROWS_AS((void)genus_of_class(lat5, lat5.basis_class(1)), PreconditionError);
}

TEST_CASE("primitivity") {
    CHECK(is_primitive(DivisorClass({9, 6, 1, 0, 0})));
    CHECK_FALSE(is_primitive(DivisorClass({4, 2, 2, 0, 0})));
    CHECK(is_primitive(DivisorClass({11, 1})));
    CHECK_THROWS_AS((void)is_primitive(DivisorClass({0, 0})), PreconditionError);
}

TEST_CASE("dimension-count genus bound") {
    CHECK(min_genus_for_expected_surjectivity() == 18);
    // the two closed forms at the boundary
    CHECK((18 - 2) * (18 - 3) / 2 == 120);
    CHECK(7 * (18 - 1) == 119);
    CHECK((17 - 2) * (17 - 3) / 2 == 105);
    CHECK(7 * (17 - 1) == 112);
    CHECK(105 < 112);
}

TEST_CASE("squares are always even on an even lattice") {
    std::mt19937_64 rng(7);
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{5, 4, 3, 2, 2});
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> c(5);
        for (auto& x : c) x = static_cast<long>(rng() % 21) - 10;
        const DivisorClass F(c);
        CHECK(lat.square(F) % 2 == 0);
    }
}

TEST_CASE("pairing is bilinear and symmetric") {
    std::mt19937_64 rng(11);
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{6, 5, 4, 3, 2});
    auto rnd_class = [&] {
        std::vector<Int> c(5);
        for (auto& x : c) x = static_cast<long>(rng() % 15) - 7;
        return DivisorClass(c);
    };
    for (int trial = 0; trial < 100; ++trial) {
        const auto F = rnd_class(), G = rnd_class(), H = rnd_class();
        const Int a = static_cast<long>(rng() % 9) - 4;
        const Int b = static_cast<long>(rng() % 9) - 4;
        CHECK(lat.pair(F, G) == lat.pair(G, F));
        CHECK(lat.pair(a * F + b * G, H) == a * lat.pair(F, H) + b * lat.pair(G, H));
        CHECK(lat.pair(F, G) % 2 == 0);  // all Gram entries even
    }
}

TEST_CASE("genus doubling identity") {
    std::mt19937_64 rng(13);
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{9, 2, 2, 2, 2});
    int tested = 0;
    while (tested < 50) {
        std::vector<Int> c(5);
        for (auto& x : c) x = static_cast<long>(rng() % 9) - 4;
        const DivisorClass F(c);
        if (lat.square(F) < 0) continue;
        ++tested;
        CHECK(genus_of_class(lat, Int(2) * F) == 4 * genus_of_class(lat, F) - 3);
    }
}

TEST_CASE("signature: congruence reduction agrees with leading minors") {
    // all family instances with parameters <= 10
    for (int k = 2; k <= 10; ++k)
        for (int j = 2; j <= 10; j += 3)
            for (int l = 2; l <= 10; l += 4)
                for (int m = 2; m <= 10; m += 4) {
                    const int mx = std::max({k, j, l, m});
                    for (int h = mx + 1; h <= std::min(10, mx + 2); ++h) {
                        const auto lat =
                            make_rank5_lattice(DiagonalFamilyParams{h, k, j, l, m});
                        const auto by_minors = signature_by_leading_minors(lat.gram_matrix());
                        REQUIRE(by_minors.has_value());
                        CHECK(*by_minors == lat.signature());
                    }
                }
    // and on random even nondegenerate matrices where the minor route applies
    std::mt19937_64 rng(17);
    int compared = 0;
    while (compared < 100) {
        const int n = 2 + static_cast<int>(rng() % 3);
        std::vector<std::vector<Int>> g(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i) {
            g[i][i] = 2 * (static_cast<long>(rng() % 11) - 5);
            for (int j2 = i + 1; j2 < n; ++j2)
                g[i][j2] = g[j2][i] = static_cast<long>(rng() % 21) - 10;
        }
        const auto in = exact_inertia(g);
        if (in.zero != 0) continue;
        const auto by_minors = signature_by_leading_minors(g);
        if (!by_minors) continue;
        ++compared;
        CHECK(by_minors->positive == in.positive);
        CHECK(by_minors->negative == in.negative);
    }
}

TEST_SUITE_END();
