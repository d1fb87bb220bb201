#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kcurve/bigint.hpp"

namespace kcurve {

bool is_prime(const BigInt& n);

// value = product of prime^exponent, primes strictly increasing
struct Factorization {
    BigInt value;
    std::vector<std::pair<BigInt, unsigned>> factors;
};

// trial division to 10^6, then deterministic Brent rho
Factorization factorize(const BigInt& n);

struct Valuation {
    unsigned v;
    BigInt cofactor;  // n = l^v * cofactor, l does not divide cofactor
};

Valuation l_adic_valuation(const BigInt& n, const BigInt& l);

// smallest s >= 1 with r^s = 1 mod modulus; rejects gcd(r, modulus) != 1
BigInt multiplicative_order(const BigInt& r, const BigInt& modulus);

struct SnfPair {
    unsigned e1, e2;  // e1 <= e2; cokernel on (Z/l^K)^2 is Z/l^e1 x Z/l^e2
};

// Smith normal form exponents of a 2x2 matrix over Z/l^K, row-major [a b; c d]
SnfPair snf_2x2(const std::array<BigInt, 4>& m, const BigInt& l, unsigned K);

// canonical invariant factor chain d1 | d2 | ... , every d_i >= 2
class InvariantFactors {
public:
    InvariantFactors() = default;

    // canonicalize an arbitrary product of cyclic factors
    static InvariantFactors from_factors(const std::vector<BigInt>& fs);
    // per-prime exponent lists (CRT assembly)
    static InvariantFactors from_primary(const std::map<BigInt, std::vector<unsigned>>& per_prime);

    const std::vector<BigInt>& factors() const { return d_; }
    BigInt order() const;
    bool trivial() const { return d_.empty(); }
    // multiset of (prime, exponent) components; the isomorphism-class fingerprint
    std::vector<std::pair<BigInt, unsigned>> primary() const;
    bool isomorphic(const InvariantFactors& other) const { return primary() == other.primary(); }

    // "1" or "Z/d1Z x Z/d2Z"
    std::string str() const;
    // "1" or "d1xd2" (canonical factors only, for CSV output)
    std::string str_csv() const;
    // primary decomposition "Z/2Z x Z/4Z x Z/17Z"; the rendering any printed
    // non-canonical product decomposes to
    std::string str_primary() const;

    bool operator==(const InvariantFactors&) const = default;

private:
    std::vector<BigInt> d_;
};

}  // namespace kcurve
