#include <doctest.h>

#include "k3gauss/lattice_io.hpp"

using namespace k3gauss;

TEST_SUITE_BEGIN("io");

TEST_CASE("lattice file round-trip") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    const auto parsed = parse_lattice_text(render_lattice(lat));
    CHECK(parsed == lat);
    CHECK(parsed.name() == lat.name());
    CHECK(parsed.basis_labels() == lat.basis_labels());
}

TEST_CASE("lattice file with comments and continuation lines") {
    const std::string text =
        "# a rank-2 example\n"
        "name: sample\n"
        "rank: 2\n"
        "gram: 4 7\n"
        "  7 2\n"
        "basis_labels: D L\n";
    const auto lat = parse_lattice_text(text);
    CHECK(lat.rank() == 2);
    CHECK(lat.gram(0, 1) == 7);
    CHECK(lat.signature() == Signature{1, 1});
}

TEST_CASE("parser rejections name the violated invariant") {
    CHECK_THROWS_WITH_AS((void)parse_lattice_text("rank: 2\ngram: 4 7 7 3\n"),
                         doctest::Contains("odd diagonal"), ConstraintError);
    CHECK_THROWS_WITH_AS((void)parse_lattice_text("rank: 2\ngram: 4 7 6 2\n"),
                         doctest::Contains("not symmetric"), ConstraintError);
    CHECK_THROWS_WITH_AS((void)parse_lattice_text("rank: 2\ngram: 4 7 7\n"),
                         doctest::Contains("expected 4 entries"), ParseError);
    CHECK_THROWS_WITH_AS((void)parse_lattice_text("gram: 2\n"), doctest::Contains("missing `rank`"),
                         ParseError);
    CHECK_THROWS_WITH_AS((void)parse_lattice_text("rank: 1\ngram: x\n"),
                         doctest::Contains("bad integer"), ParseError);
}

TEST_CASE("class expressions") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{3, 2, 2, 2, 2});
    CHECK(parse_class_expr(lat, "D") == lat.basis_class(0));
    CHECK(parse_class_expr(lat, "D+L") == DivisorClass({1, 1, 0, 0, 0}));
    CHECK(parse_class_expr(lat, "9D+6L+R") == DivisorClass({9, 6, 1, 0, 0}));
    CHECK(parse_class_expr(lat, "-2T+D") == DivisorClass({1, 0, 0, 0, -2}));
    CHECK(parse_class_expr(lat, "9,6,1,0,0") == DivisorClass({9, 6, 1, 0, 0}));
    CHECK(parse_class_expr(lat, "-3,0,0,0,1") == DivisorClass({-3, 0, 0, 0, 1}));

    const auto lat2 = make_rank2_lattice();
    CHECK(parse_class_expr(lat2, "11D+L") == DivisorClass({11, 1}));
    CHECK(class_to_expr(lat2, DivisorClass({11, 1})) == "11D+L");
    CHECK(class_to_expr(lat2, DivisorClass({0, 0})) == "0");
    CHECK(class_to_expr(lat2, DivisorClass({-1, 2})) == "-D+2L");

    CHECK_THROWS_AS((void)parse_class_expr(lat, "9D+6Q"), ParseError);
    CHECK_THROWS_AS((void)parse_class_expr(lat, "1,2"), ParseError);
    CHECK_THROWS_AS((void)parse_class_expr(lat, ""), ParseError);
}

TEST_CASE("expression/coordinate round-trip") {
    const auto lat = make_rank5_lattice(DiagonalFamilyParams{4, 3, 2, 2, 2});
    for (long a = -3; a <= 3; ++a)
        for (long b = -2; b <= 2; ++b) {
            const DivisorClass c({a, b, 0, 1, 0});
            CHECK(parse_class_expr(lat, class_to_expr(lat, c)) == c);
        }
}

TEST_CASE("content fingerprint is stable") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("k3gauss") != fnv1a64_hex("k3gauss "));
}

TEST_SUITE_END();
