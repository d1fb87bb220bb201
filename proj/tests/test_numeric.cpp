#include <doctest.h>

#include <set>
#include "kcurve/numeric.hpp"
#include "kcurve/prng.hpp"

using namespace kcurve;

namespace {

// independent trial-division oracle used to freeze expected factorizations
std::vector<std::pair<BigInt, unsigned>> trial_division(BigInt n) {
    std::vector<std::pair<BigInt, unsigned>> out;
    for (BigInt f = 2; f * f <= n; ++f) {
        unsigned e = 0;
        while (n % f == 0) {
            n /= f;
            ++e;
        }
        if (e) out.emplace_back(f, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

TEST_CASE("factorize: spec examples") {
    CHECK(factorize(1).factors.empty());

    auto f = factorize(2107);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<BigInt, unsigned>{7, 2});
    CHECK(f.factors[1] == std::pair<BigInt, unsigned>{43, 1});

    // frozen from the trial-division oracle: 1592137 = 157 * 10141
    auto g = factorize(1592137);
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0] == std::pair<BigInt, unsigned>{157, 1});
    CHECK(g.factors[1] == std::pair<BigInt, unsigned>{10141, 1});
    CHECK(g.factors == trial_division(1592137));
}

TEST_CASE("factorize: recomposition on random inputs") {
    Prng rng(42);
    for (int i = 0; i < 10000; ++i) {
        BigInt n = BigInt(long(rng.below(1000000000000ull))) + 1;
        auto f = factorize(n);
        BigInt prod = 1;
        BigInt last = 1;
        for (const auto& [p, e] : f.factors) {
            CHECK(p > last);  // strictly increasing primes
            last = p;
            CHECK(is_prime(p));
            prod *= bi_pow(p, e);
        }
        CHECK(prod == n);
    }
}

TEST_CASE("l_adic_valuation") {
    auto v = l_adic_valuation(136, 2);
    CHECK(v.v == 3);
    CHECK(v.cofactor == 17);

    // 15776 = #K_2 over F_25 for trace -6 (checked by the Lucas recurrence in the zeta tests)
    v = l_adic_valuation(15776, 2);
    CHECK(v.v == 5);
    CHECK(v.cofactor == 493);

    v = l_adic_valuation(19, 19);
    CHECK(v.v == 1);
    CHECK(v.cofactor == 1);

    Prng rng(7);
    for (int i = 0; i < 2000; ++i) {
        BigInt n = BigInt(long(rng.below(1ull << 50))) + 1;
        BigInt l = std::array<long, 4>{2, 3, 5, 19}[rng.below(4)];
        auto val = l_adic_valuation(n, l);
        CHECK(bi_pow(l, val.v) * val.cofactor == n);
        CHECK(val.cofactor % l != 0);
    }
}

TEST_CASE("multiplicative_order") {
    CHECK(multiplicative_order(1, 4) == 1);
    CHECK(multiplicative_order(3, 8) == 2);
    // direct powering oracle: 5^9 = 1953125 = 19*102796 + 1
    CHECK(multiplicative_order(5, 19) == 9);
    CHECK_THROWS_AS(multiplicative_order(6, 8), std::invalid_argument);

    Prng rng(3);
    for (int i = 0; i < 500; ++i) {
        BigInt mod = BigInt(long(rng.below(5000))) + 2;
        BigInt r = BigInt(long(rng.below(mod.get_ui())));
        if (bi_gcd(r, mod) != 1) continue;
        BigInt s = multiplicative_order(r, mod);
        CHECK(bi_powmod(r, s, mod) == 1);
        for (BigInt t = 1; t < s && t < 40; ++t) CHECK(bi_powmod(r, t, mod) != 1);
    }
}

TEST_CASE("snf_2x2: spec examples") {
    auto e = snf_2x2({2, 0, 0, 4}, 2, 5);
    CHECK(e.e1 == 1);
    CHECK(e.e2 == 2);

    e = snf_2x2({1, 0, 0, 1}, 2, 5);
    CHECK(e.e1 == 0);
    CHECK(e.e2 == 0);

    e = snf_2x2({6, 0, 0, 6}, 3, 4);
    CHECK(e.e1 == 1);
    CHECK(e.e2 == 1);
}

TEST_CASE("snf_2x2: determinant identity on random matrices") {
    Prng rng(11);
    for (int i = 0; i < 4000; ++i) {
        BigInt l = std::array<long, 3>{2, 3, 5}[rng.below(3)];
        unsigned K = unsigned(rng.below(5)) + 1;
        std::array<BigInt, 4> m;
        for (auto& x : m) x = long(rng.below(200)) - 100;
        auto e = snf_2x2(m, l, K);
        CHECK(e.e1 <= e.e2);
        CHECK(e.e2 <= K);
        BigInt det = m[0] * m[3] - m[1] * m[2];
        if (det != 0) {
            auto vd = l_adic_valuation(abs(det), l);
            if (vd.v < K) CHECK(e.e1 + e.e2 == vd.v);
        }
    }
}

TEST_CASE("snf_2x2: cokernel oracle by brute force") {
    // enumerate the image of the matrix on (Z/l^K)^2 and compare group sizes
    Prng rng(13);
    for (int iter = 0; iter < 200; ++iter) {
        long l = std::array<long, 2>{2, 3}[rng.below(2)];
        unsigned K = unsigned(rng.below(3)) + 1;
        long mod = 1;
        for (unsigned i = 0; i < K; ++i) mod *= l;
        std::array<BigInt, 4> m;
        for (auto& x : m) x = long(rng.below(uint64_t(mod)));
        std::set<std::pair<long, long>> image;
        for (long x = 0; x < mod; ++x)
            for (long y = 0; y < mod; ++y)
                image.insert({(m[0].get_si() * x + m[1].get_si() * y) % mod,
                              (m[2].get_si() * x + m[3].get_si() * y) % mod});
        auto e = snf_2x2(m, l, K);
        long coker = (mod * mod) / long(image.size());
        BigInt want = bi_pow(l, e.e1 + e.e2);
        CHECK(want == coker);
    }
}

TEST_CASE("InvariantFactors: canonicalization") {
    auto f = InvariantFactors::from_factors({BigInt(9), BigInt(39)});
    REQUIRE(f.factors().size() == 2);
    CHECK(f.factors()[0] == 3);
    CHECK(f.factors()[1] == 117);
    CHECK(f.str() == "Z/3Z x Z/117Z");

    auto g = InvariantFactors::from_factors({BigInt(4), BigInt(34)});
    CHECK(g.factors()[0] == 2);
    CHECK(g.factors()[1] == 68);
    CHECK(g.isomorphic(InvariantFactors::from_factors({BigInt(2), BigInt(68)})));

    auto t = InvariantFactors::from_factors({});
    CHECK(t.trivial());
    CHECK(t.str() == "1");
    CHECK(t.order() == 1);

    auto h = InvariantFactors::from_factors({BigInt(2), BigInt(14)});
    CHECK(h.factors()[0] == 2);
    CHECK(h.factors()[1] == 14);
    CHECK(h.order() == 28);
}

TEST_CASE("InvariantFactors: divisibility chain on random inputs") {
    Prng rng(17);
    for (int i = 0; i < 2000; ++i) {
        std::vector<BigInt> fs;
        BigInt prod = 1;
        for (unsigned k = 0; k < 1 + rng.below(3); ++k) {
            BigInt d = BigInt(long(rng.below(500))) + 2;
            fs.push_back(d);
            prod *= d;
        }
        auto f = InvariantFactors::from_factors(fs);
        CHECK(f.order() == prod);
        for (size_t k = 0; k + 1 < f.factors().size(); ++k) {
            CHECK(f.factors()[k] >= 2);
            CHECK(f.factors()[k + 1] % f.factors()[k] == 0);
        }
        CHECK(f.isomorphic(InvariantFactors::from_factors({prod}) ) == (f.factors().size() == 1));
    }
}
