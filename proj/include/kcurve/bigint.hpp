#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kcurve {

using BigInt = mpz_class;

inline BigInt bi_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt bi_powmod(const BigInt& base, const BigInt& e, const BigInt& mod) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return r;
}

// canonical representative in [0, mod)
inline BigInt bi_mod(const BigInt& a, const BigInt& mod) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline BigInt bi_invmod(const BigInt& a, const BigInt& mod) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::invalid_argument("bi_invmod: not invertible");
    return r;
}

inline BigInt bi_gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline size_t bi_bits(const BigInt& a) { return mpz_sizeinbase(a.get_mpz_t(), 2); }

inline std::string bi_str(const BigInt& a) { return a.get_str(); }

}  // namespace kcurve
