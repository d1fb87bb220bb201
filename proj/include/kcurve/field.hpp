#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kcurve/bigint.hpp"

namespace kcurve {

// F_{p^d} as polynomials modulo the deterministically chosen irreducible
// (smallest monic irreducible when coefficient vectors are read as base-p
// numbers, constant digit least significant)
struct FieldCtx {
    uint32_t p = 0;
    uint32_t d = 0;
    std::vector<uint32_t> modulus;  // monic, size d+1; empty when d == 1
    BigInt order;                   // p^d
};

using FieldRef = std::shared_ptr<const FieldCtx>;

inline constexpr uint32_t kDefaultDegreeCap = 256;

// cached; repeated calls return the identical context
FieldRef make_field(uint32_t p, uint32_t d, uint32_t degree_cap = kDefaultDegreeCap);

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(FieldRef ctx, std::vector<uint32_t> coeffs);

    static FieldElem zero(const FieldRef& ctx);
    static FieldElem one(const FieldRef& ctx);
    static FieldElem from_int(const FieldRef& ctx, long v);

    const FieldRef& ctx() const { return ctx_; }
    const std::vector<uint32_t>& coeffs() const { return c_; }
    bool is_zero() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inv() const;
    FieldElem pow(const BigInt& e) const;
    // x -> x^(p^n); n-fold arithmetic Frobenius
    FieldElem frobenius(unsigned n = 1) const;

    bool operator==(const FieldElem& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElem& o) const { return c_ != o.c_; }
    bool operator<(const FieldElem& o) const;  // lex on coefficient vector

    std::string str() const;
    // index in [0, p^d): mixed-radix value of the coefficient vector
    uint64_t index() const;
    static FieldElem from_index(const FieldRef& ctx, uint64_t idx);

private:
    FieldRef ctx_;
    std::vector<uint32_t> c_;
};

// 0 for zero, +1 for nonzero squares, -1 otherwise (Euler criterion)
int quadratic_character(const FieldElem& e);

// canonical square root (lexicographically smaller of the pair); throws on non-residues
FieldElem field_sqrt(const FieldElem& e);

// roots in the element's field, deterministically ordered;
// gcd with x^{p^d} - x, then equal-degree splitting
std::vector<FieldElem> find_roots(const std::vector<FieldElem>& poly);

}  // namespace kcurve
