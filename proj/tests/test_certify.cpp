#include <doctest.h>

#include "k3gauss/certify.hpp"

using namespace k3gauss;

TEST_SUITE_BEGIN("certify");

TEST_CASE("family detection") {
    const auto lat5 = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const auto fam5 = detect_family(lat5);
    REQUIRE(fam5.has_value());
    CHECK(fam5->kind == "rank5-diagonal");
    CHECK(fam5->a_gens.size() == 5);
    CHECK(fam5->a_names[1] == "D+L");

    const auto fam2 = detect_family(make_rank2_lattice());
    REQUIRE(fam2.has_value());
    CHECK(fam2->kind == "rank2");
    CHECK(fam2->a_gens.size() == 2);

    CHECK_FALSE(detect_family(PicardLattice({{Int(2), Int(0)}, {Int(0), Int(-2)}})).has_value());
}

TEST_CASE("factor hypothesis checks") {
    const auto lat2 = make_rank2_lattice();
    PositivityChecker c2(lat2);
    const DivisorClass D = lat2.basis_class(0);

    // A = (D,D,D,D): the square-2 condition is vacuous, everything passes
    auto checks = check_factor_hypotheses(c2, D, {D, D, D, D});
    CHECK(std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; }));
    CHECK(std::none_of(checks.begin(), checks.end(),
                       [](const NamedCheck& c) { return c.name.rfind("degree-12", 0) == 0; }));

    // rank-5: A = (D, D+L, D+R, D+S), with H.(D+L) = 20 >= 12
    const auto lat5 = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    PositivityChecker c5(lat5);
    const DivisorClass D5 = lat5.basis_class(0);
    const DivisorClass A2 = D5 + lat5.basis_class(1);
    const DivisorClass A3 = D5 + lat5.basis_class(2);
    const DivisorClass A4 = D5 + lat5.basis_class(3);
    const DivisorClass H = D5 + A2 + A3 + A4;
    CHECK(lat5.pair(H, A2) == 20);
    checks = check_factor_hypotheses(c5, D5, {D5, A2, A3, A4});
    CHECK(std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; }));
    // square-2 factors got their degree condition recorded
    CHECK(std::count_if(checks.begin(), checks.end(), [](const NamedCheck& c) {
              return c.name.rfind("degree-12", 0) == 0;
          }) == 3);

    // degenerate: an A_i of negative square fails at the square condition
    checks = check_factor_hypotheses(c5, D5, {D5, lat5.basis_class(1), D5, D5});
    const auto bad = std::find_if(checks.begin(), checks.end(),
                                  [](const NamedCheck& c) { return !c.pass; });
    REQUIRE(bad != checks.end());
    CHECK(bad->name == "square(A2)>=2");
}

TEST_CASE("decompose: canonical first choice") {
    const auto lat5 = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    SUBCASE("9D+6L+R needs three D+L factors") {
        const auto dec = decompose(lat5, DivisorClass({9, 6, 1, 0, 0}));
        CHECK(dec.a_indices == std::vector<int>{0, 1, 1, 1});
        CHECK(dec.B == DivisorClass({1, 0, 1, 0, 0}));
        // residual coefficients (n, m, r, s, t) over [D, D+L, D+R, D+S, D+T]
        CHECK(dec.b_coeffs == std::vector<Int>{0, 0, 1, 0, 0});
        CHECK(Int(2) * dec.H + dec.B == dec.Htilde);
    }
    SUBCASE("3D cannot absorb the 8D from 2H") {
        CHECK_THROWS_WITH_AS((void)decompose(lat5, DivisorClass({3, 0, 0, 0, 0})),
                             doctest::Contains("negative coefficient"), NoDecompositionError);
    }
    SUBCASE("rank-2: 11D+L = 2(4D) + 3D + L") {
        const auto dec = decompose(make_rank2_lattice(), DivisorClass({11, 1}));
        CHECK(dec.a_indices == std::vector<int>{0, 0, 0, 0});
        CHECK(dec.B == DivisorClass({3, 1}));
        CHECK(dec.b_coeffs == std::vector<Int>{3, 1});
    }
}

TEST_CASE("recomposition holds for every decomposition over a parameter grid") {
    for (int k = 2; k <= 4; ++k)
        for (int h = std::max(k, 3) + 1; h <= std::max(k, 3) + 2; ++h) {
            const auto lat = make_rank5_lattice(DiagonalFamilyParams{h, k, 2, 3, 2});
            PositivityChecker checker(lat);
            CertifyEngine engine(checker);
            for (int a = 9; a <= 12; ++a)
                for (int s = 0; s <= 3; ++s)
                    for (int t = 0; t <= 2; ++t) {
                        const DivisorClass ht({a, s, t, 0, 0});
                        auto dec = engine.maybe_decompose(ht);
                        if (!dec) continue;
                        CHECK(Int(2) * dec->H + dec->B == ht);
                        for (const Int& c : dec->b_coeffs) CHECK(c >= 0);
                    }
        }
}

TEST_CASE("paper-family tuples all decompose under the parity rules") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{4, 3, 2, 2, 3});
    PositivityChecker checker(lat);
    CertifyEngine engine(checker);
    for (int a = 9; a <= 14; ++a) {
        const int lim = a - 2;
        for (int s = 0; s <= lim; ++s)
            for (int t = 0; s + t <= lim; ++t)
                for (int v = 0; s + t + v <= lim; ++v)
                    for (int r = 0; s + t + v + r <= lim; ++r) {
                        const int odd = (s & 1) + (t & 1) + (v & 1) + (r & 1);
                        if (odd > a - 8) continue;
                        CHECK(engine.maybe_decompose(DivisorClass({a, s, t, v, r})).has_value());
                    }
    }
}

TEST_CASE("certify: rank-2 genus 321") {
    const auto cert = certify(make_rank2_lattice(), DivisorClass({11, 1}));
    REQUIRE(cert.certified());
    REQUIRE(cert.genus.has_value());
    CHECK(*cert.genus == 321);
    CHECK(cert.primitive);
    CHECK(std::find(cert.markers.begin(), cert.markers.end(), "rank-2 g=321 route") !=
          cert.markers.end());
    CHECK(std::find(cert.markers.begin(), cert.markers.end(), "below-theorem-threshold example") ==
          cert.markers.end());
}

TEST_CASE("certify: rank-5 genus 170 carries the below-threshold marker") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const auto cert = certify(lat, DivisorClass({9, 6, 1, 0, 0}));
    REQUIRE(cert.certified());
    CHECK(*cert.genus == 170);
    CHECK(std::find(cert.markers.begin(), cert.markers.end(), "below-theorem-threshold example") !=
          cert.markers.end());
}

TEST_CASE("certify refusals") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const auto cert = certify(lat, DivisorClass({3, 0, 0, 0, 0}));
    CHECK_FALSE(cert.certified());
    CHECK(cert.refusal_reason.find("no decomposition") != std::string::npos);

    const auto unknown = certify(PicardLattice({{Int(2), Int(3)}, {Int(3), Int(-2)}}),
                                 DivisorClass({1, 0}));
    CHECK_FALSE(unknown.certified());
    CHECK(unknown.refusal_reason.find("not in a recognized generator family") != std::string::npos);
}

TEST_CASE("certify is deterministic") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{4, 2, 3, 2, 2});
    const DivisorClass ht({10, 2, 1, 1, 0});
    const auto a = certify(lat, ht);
    const auto b = certify(lat, ht);
    CHECK(a.render() == b.render());
}

TEST_CASE("certificate text round-trip") {
    const auto lat = make_rank2_lattice();
    const auto cert = certify(lat, DivisorClass({11, 1}));
    const std::string text = cert.render();

    auto [lat2, cls] = parse_certificate_subject(text);
    CHECK(lat2 == lat);
    CHECK(cls == DivisorClass({11, 1}));

    const auto res = recheck_certificate_text(text);
    CHECK(res.ok);
    CHECK(res.identical_body);

    // a tampered genus line must be caught
    std::string tampered = text;
    const auto pos = tampered.find("genus: 321");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 10, "genus: 322");
    const auto res2 = recheck_certificate_text(tampered);
    CHECK_FALSE(res2.ok);
    CHECK_FALSE(res2.identical_body);
}

TEST_SUITE_END();
