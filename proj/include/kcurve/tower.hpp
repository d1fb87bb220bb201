#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kcurve/kgroup.hpp"

namespace kcurve {

// growth of the l-part of #K_2 along F_{q^{l^m}}
struct TowerReport {
    BigInt l;
    int lambda = 0;
    long nu = 0;
    unsigned m0 = 0;                   // first level with v_m = lambda*m + nu inside the window
    std::vector<unsigned> valuations;  // v_0 .. v_max

    struct Level {
        unsigned m;
        unsigned e1, e2;
        bool verified;  // false when caps or budget bound the structure check
        std::string note;
    };
    std::vector<Level> structures;

    std::vector<int> offsets;  // structure = Z/l^{m+c1} (x Z/l^{m+c2}) for m >= m0_struct
    unsigned m0_struct = 0;
    bool offsets_ok = false;      // offsets fitted and consistent with the whole valuation window
    bool fully_verified = true;   // no partial-verification flag raised
    std::string flags;
};

struct LambdaFit {
    int lambda = 0;
    long nu = 0;
    unsigned m0 = 0;
    bool certified = false;
    std::string method;  // "window", "unramified", "ramified"
};

// v_m for m = 0..max_m (or the bits-budget window when max_m = 0)
std::vector<unsigned> tower_valuations(const Curve& c, const BigInt& l, const Caps& caps, unsigned max_m = 0);

// lambda, nu, and the onset level; throws when l does not divide #K_2(E/F_q)
// or when the window cannot certify stabilization
LambdaFit lambda_invariant(const Curve& c, const BigInt& l, const Caps& caps);

TowerReport tower_structures(const Curve& c, const BigInt& l, unsigned max_verified_m, const Caps& caps, Prng& rng);

// "K_2(l^m)(l) ~ Z/l^{m+c1}Z x Z/l^{m+c2}Z, m >= m0"
std::string sylow_formula(const BigInt& l, const std::vector<int>& offsets, unsigned m0);

}  // namespace kcurve
