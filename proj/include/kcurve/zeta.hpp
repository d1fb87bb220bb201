#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kcurve/curve.hpp"

namespace kcurve {

// base-field zeta data of an elliptic curve
struct ZetaData {
    BigInt q;          // base field size
    BigInt N;          // #E(F_q)
    BigInt a;          // Frobenius trace, N = q + 1 - a
    BigInt D;          // a^2 - 4q < 0
    std::string surd;  // normalized inverse-root rendering
};

ZetaData zeta_data(const Curve& c);

// alpha^n + conj(alpha)^n for T^2 - aT + q, by the Lucas doubling ladder
BigInt extension_trace(const BigInt& a, const BigInt& q, uint64_t n);

// #E(F_{q^n}) = q^n + 1 - extension_trace(a, q, n)
BigInt count_extension(const Curve& c, uint64_t n);
BigInt count_extension(const BigInt& a, const BigInt& q, uint64_t n);

// #K_{2m}(E/F_Q) = 1 - A Q^m + Q^{2m+1} with Q = q^n and A the trace over F_Q
BigInt kgroup_order(const BigInt& a, const BigInt& q, uint64_t n, unsigned m);

// normalized surd: D = -c^2 D0 with D0 squarefree;
// both a, c even -> "a/2 +- (c/2) sqrt(-D0)" else "(a +- c sqrt(-D0))/2",
// with unit coefficients and a zero rational part suppressed
std::string surd_string(const BigInt& a, const BigInt& q);
// inverse of surd_string: recovers (a, D)
std::optional<std::pair<BigInt, BigInt>> parse_surd(const std::string& s);

// numerator of the zeta function: degree 2g, constant term 1,
// functional equation c_{2g-i} = q^{g-i} c_i
struct ZetaNumerator {
    unsigned g = 0;
    std::vector<BigInt> c;  // size 2g+1, ascending
};

ZetaNumerator make_numerator(unsigned g, std::vector<BigInt> coeffs, const BigInt& q);

// |P(q^m)|
BigInt genus_g_order(const ZetaNumerator& P, const BigInt& q, unsigned m);

// Newton identities on S_n = q^n + 1 - N_n, then functional-equation completion
ZetaNumerator derive_numerator(const std::vector<BigInt>& counts, const BigInt& q, unsigned g);

}  // namespace kcurve
