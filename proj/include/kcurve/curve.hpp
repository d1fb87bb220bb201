#pragma once

#include <string>
#include <vector>

#include "kcurve/field.hpp"
#include "kcurve/numeric.hpp"
#include "kcurve/prng.hpp"

namespace kcurve {

struct SingularCurveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// y^2 = x^3 + a2 x^2 + a4 x + a6 over F_p, p odd prime, nonsingular
struct Curve {
    uint32_t p = 0;
    uint32_t a2 = 0, a4 = 0, a6 = 0;  // reduced mod p
    bool operator==(const Curve&) const = default;
};

// validates p (odd prime) and the discriminant; throws SingularCurveError when disc = 0
Curve make_curve(uint32_t p, long a2, long a4, long a6);

// b2 = 4a2, b4 = 2a4, b6 = 4a6, b8 = 4a2a6 - a4^2,
// disc = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6  (mod p)
uint32_t discriminant(uint32_t p, long a2, long a4, long a6);

// "p:a2:a4:a6" with signed coefficients, reduced mod p
Curve parse_curve(const std::string& spec);
std::string curve_str(const Curve& c);
// "y^2=x^3..." display form with coefficients in (-p/2, p/2]
std::string curve_equation(const Curve& c);

struct Point {
    bool inf = true;
    FieldElem x, y;

    static Point infinity() { return Point{}; }
    static Point affine(FieldElem px, FieldElem py) { return Point{false, std::move(px), std::move(py)}; }

    bool operator==(const Point& o) const {
        if (inf != o.inf) return false;
        return inf || (x == o.x && y == o.y);
    }
};

// x^3 + a2 x^2 + a4 x + a6 evaluated in the point field
FieldElem curve_rhs(const Curve& c, const FieldElem& x);
bool on_curve(const Curve& c, const Point& P);

Point ec_add(const Curve& c, const Point& P, const Point& Q);
Point ec_neg(const Point& P);
Point ec_sub(const Curve& c, const Point& P, const Point& Q);
Point scalar_mul(const Curve& c, const BigInt& k, const Point& P);

// all points of E(F_{p^s}); throws when p^s exceeds the bound
std::vector<Point> enumerate_points(const Curve& c, unsigned s, uint64_t bound = 1000000);
// point count by full enumeration (streaming; same bound)
BigInt count_points_enumerated(const Curve& c, unsigned s, uint64_t bound = 1000000);

// uniform affine point of E(F) for F an extension of the base field
Point random_point(const Curve& c, const FieldRef& F, Prng& rng);

// y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6 for a non-residue d; negates the trace
Curve quadratic_twist(const Curve& c, uint32_t d);

// group structure of E(F_{p^s}) by full enumeration (exponent method, rank <= 2)
InvariantFactors ef_structure(const Curve& c, unsigned s = 1, uint64_t bound = 1000000);

}  // namespace kcurve
