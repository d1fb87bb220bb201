#include <doctest.h>

#include "kcurve/tower.hpp"

using namespace kcurve;

namespace {
Caps caps;
}

TEST_CASE("tower_valuations: anchors") {
    auto vs = tower_valuations(parse_curve("3:0:-1:-1"), 19, caps);
    REQUIRE(vs.size() >= 3);
    CHECK(vs[0] == 1);
    CHECK(vs[1] == 2);
    CHECK(vs[2] == 3);

    vs = tower_valuations(parse_curve("5:0:1:0"), 2, caps);
    CHECK(vs[0] == 2);
    CHECK(vs[1] == 5);
    CHECK(vs[2] == 7);  // v_2(1 + 14*625 + 625^3)

    vs = tower_valuations(parse_curve("3:-1:0:-1"), 2, caps);
    CHECK(vs[1] == 2);
    CHECK(vs[2] == 5);
    CHECK(vs[3] == 7);

    CHECK_THROWS_AS(tower_valuations(parse_curve("3:0:-1:-1"), 5, caps), std::invalid_argument);
}

TEST_CASE("valuations never decrease along the tower") {
    for (const char* spec : {"3:0:-1:-1", "5:0:2:0", "7:0:0:4", "13:0:0:6"}) {
        Curve c = parse_curve(spec);
        ZetaData z = zeta_data(c);
        for (const auto& [l, e] : factorize(kgroup_order(z.a, z.q, 1, 1)).factors) {
            (void)e;
            auto vs = tower_valuations(c, l, caps);
            for (size_t i = 0; i + 1 < vs.size(); ++i) CHECK(vs[i + 1] >= vs[i]);
        }
    }
}

TEST_CASE("lambda_invariant: printed values") {
    CHECK(lambda_invariant(parse_curve("3:0:-1:-1"), 19, caps).lambda == 1);
    CHECK(lambda_invariant(parse_curve("5:0:1:0"), 2, caps).lambda == 2);
    CHECK(lambda_invariant(parse_curve("13:0:0:6"), 7, caps).lambda == 1);
    CHECK(lambda_invariant(parse_curve("13:0:0:6"), 43, caps).lambda == 1);
    // multi-lambda row: V 25 prints lambda(2)=lambda(3)=2, lambda(5)=1
    Curve v25 = parse_curve("13:0:1:1");
    CHECK(lambda_invariant(v25, 2, caps).lambda == 2);
    CHECK(lambda_invariant(v25, 3, caps).lambda == 2);
    CHECK(lambda_invariant(v25, 5, caps).lambda == 1);
    // the largest prime in the corpus
    CHECK(lambda_invariant(parse_curve("13:0:2:4"), 2237, caps).lambda == 1);
}

TEST_CASE("lambda methods carry certificates") {
    auto f = lambda_invariant(parse_curve("3:0:-1:-1"), 19, caps);
    CHECK(f.certified);
    CHECK(f.method == "unramified");  // 19 does not divide D = -3
    CHECK(f.m0 == 0);

    f = lambda_invariant(parse_curve("7:0:1:1"), 19, caps);  // D = 9 - 28 = -19
    CHECK(f.certified);
    CHECK(f.method == "ramified");
    CHECK(f.lambda == 2);

    f = lambda_invariant(parse_curve("5:0:2:0"), 2, caps);
    CHECK(f.certified);
    CHECK(f.method == "window");
    CHECK(f.lambda == 2);
    CHECK(f.m0 == 2);  // v = 1, 2, 7, 9, ...
}

TEST_CASE("tower_structures: offsets from the tables") {
    Prng rng(1);
    // I row 1: cyclic 19-tower, offset (1)
    TowerReport rep = tower_structures(parse_curve("3:0:-1:-1"), 19, 1, caps, rng);
    CHECK(rep.lambda == 1);
    CHECK(rep.offsets_ok);
    CHECK(rep.offsets == std::vector<int>{1});
    CHECK(rep.m0_struct <= 1);

    // II row 10: offsets (0, 3) from level 1
    rep = tower_structures(parse_curve("5:0:-1:-1"), 2, 3, caps, rng);
    CHECK(rep.lambda == 2);
    REQUIRE(rep.offsets_ok);
    std::vector<int> offs = rep.offsets;
    std::sort(offs.begin(), offs.end());
    CHECK(offs == std::vector<int>{0, 3});
    CHECK(rep.m0_struct == 1);

    // I row 4: offsets (1, 1) from level 1
    rep = tower_structures(parse_curve("3:0:1:0"), 2, 3, caps, rng);
    REQUIRE(rep.offsets_ok);
    offs = rep.offsets;
    std::sort(offs.begin(), offs.end());
    CHECK(offs == std::vector<int>{1, 1});
    CHECK(rep.m0_struct == 1);

    // I row 5 holds already at the base level
    rep = tower_structures(parse_curve("3:0:-1:0"), 2, 3, caps, rng);
    REQUIRE(rep.offsets_ok);
    CHECK(rep.m0_struct == 0);

    // exponents sum to the valuation at every verified level
    for (const auto& lev : rep.structures) {
        if (!lev.verified) continue;
        CHECK(lev.e1 + lev.e2 == rep.valuations[lev.m]);
    }
}

TEST_CASE("sylow_formula rendering") {
    CHECK(sylow_formula(19, {1}, 1) == "K_2(19^m)(19) ~ Z/19^{m+1}Z, m >= 1");
    CHECK(sylow_formula(2, {3, 0}, 1) == "K_2(2^m)(2) ~ Z/2^{m}Z x Z/2^{m+3}Z, m >= 1");
    CHECK(sylow_formula(5, {2}, 0) == "K_2(5^m)(5) ~ Z/5^{m+2}Z, m >= 0");
}
