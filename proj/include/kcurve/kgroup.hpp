#pragma once

#include <array>
#include <optional>
#include <string>

#include "kcurve/curve.hpp"
#include "kcurve/zeta.hpp"

namespace kcurve {

struct Caps {
    uint64_t enum_bound = 1000000;      // largest field size for full point enumeration
    uint32_t degree_cap = 256;          // absolute extension degree limit
    uint64_t bits_budget = 100000;      // tower valuation window: l^m * log2(q) <= bits_budget
    uint64_t budget_factor = 64;        // torsion sampling budget = budget_factor * l^j + slack
    uint64_t exhaustive_bound = 20000;  // fields up to this size use deterministic enumeration
};

// generators of E(F_{Q^s})[l^j]; exact generator orders l^{j1} >= l^{j2}
struct TorsionBasis {
    BigInt l;
    unsigned j = 0;
    unsigned s = 1;
    int rank = 0;
    unsigned j1 = 0, j2 = 0;
    std::optional<Point> P1, P2;
    FieldRef field;
};

enum class CertStatus { True, False, CapExceeded, BudgetExhausted };

struct MembershipResult {
    CertStatus status;
    std::string note;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// basis of E(F_{Q^s})[l^j] for Q = p^n; throws BudgetError ("increase budget") or CapError
TorsionBasis torsion_subgroup(const Curve& c, uint64_t n, unsigned s, const BigInt& l, unsigned j, const Caps& caps,
                              Prng& rng);

// E[l^j] inside ker(Q^m phi_Q - 1)?  Certified both ways:
// cheap characteristic-polynomial / cardinality / pairing obstructions for "no",
// explicit basis with Frobenius acting as the scalar (Q^m)^{-1} mod l^j for "yes"
MembershipResult kernel_membership(const Curve& c, uint64_t n, unsigned m, const BigInt& l, unsigned j,
                                   const Caps& caps, Prng& rng);

struct LPartResult {
    unsigned e1 = 0, e2 = 0;  // l-Sylow of K_{2m}(E/F_Q) = Z/l^e1 x Z/l^e2
    bool verified = true;     // false when a cap or budget bound the j-search
    std::string note;
};

LPartResult l_part_structure(const Curve& c, uint64_t n, unsigned m, const BigInt& l, const Caps& caps, Prng& rng);

struct KGroupStructure {
    uint64_t n = 1;
    unsigned m = 1;
    BigInt order;
    InvariantFactors factors;  // at most two invariant factors
    bool verified = true;
    std::string note;
};

KGroupStructure kgroup_structure(const Curve& c, uint64_t n, unsigned m, const Caps& caps, Prng& rng);

// matrix of the q-power Frobenius on E[l^K], column convention:
// phi(P1) = m[0] P1 + m[2] P2, phi(P2) = m[1] P1 + m[3] P2
struct FrobMatrix {
    std::array<BigInt, 4> mat;  // row-major [a b; c d]
    BigInt l;
    unsigned K = 0;
    unsigned s = 0;  // field of definition of the basis
};

// cross-validation oracle; nullopt when the splitting search exceeds the cap (skipped, not failed)
std::optional<FrobMatrix> frobenius_matrix_oracle(const Curve& c, const BigInt& l, unsigned K, uint32_t degree_cap,
                                                  const Caps& caps, Prng& rng);

}  // namespace kcurve
