#include "kcurve/curve.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kcurve {

uint32_t discriminant(uint32_t p, long a2, long a4, long a6) {
    BigInt b2 = 4 * BigInt(a2), b4 = 2 * BigInt(a4), b6 = 4 * BigInt(a6);
    BigInt b8 = 4 * BigInt(a2) * a6 - BigInt(a4) * a4;
    BigInt disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    return uint32_t(bi_mod(disc, BigInt(p)).get_ui());
}

Curve make_curve(uint32_t p, long a2, long a4, long a6) {
    if (p < 3 || !is_prime(BigInt(p))) throw std::invalid_argument("make_curve: p must be an odd prime");
    if (discriminant(p, a2, a4, a6) == 0) throw SingularCurveError("singular curve");
    auto md = [&](long v) {
        long r = v % long(p);
        return uint32_t(r < 0 ? r + p : r);
    };
    return Curve{p, md(a2), md(a4), md(a6)};
}

Curve parse_curve(const std::string& spec) {
    std::istringstream is(spec);
    std::string tok;
    std::vector<long> parts;
    while (std::getline(is, tok, ':')) parts.push_back(std::stol(tok));
    if (parts.size() != 4) throw std::invalid_argument("curve spec must be p:a2:a4:a6");
    if (parts[0] < 3) throw std::invalid_argument("curve spec: p must be an odd prime");
    return make_curve(uint32_t(parts[0]), parts[1], parts[2], parts[3]);
}

std::string curve_str(const Curve& c) {
    std::ostringstream os;
    os << c.p << ":" << c.a2 << ":" << c.a4 << ":" << c.a6;
    return os.str();
}

std::string curve_equation(const Curve& c) {
    auto signed_rep = [&](uint32_t v) -> long {
        long s = long(v);
        if (s > long(c.p) / 2) s -= long(c.p);
        return s;
    };
    std::ostringstream os;
    os << "y^2=x^3";
    auto term = [&](uint32_t coeff, const char* var) {
        long s = signed_rep(coeff);
        if (s == 0) return;
        os << (s > 0 ? "+" : "-");
        long a = std::abs(s);
        if (a != 1 || std::string(var).empty()) os << a;
        os << var;
    };
    term(c.a2, "x^2");
    term(c.a4, "x");
    term(c.a6, "");
    return os.str();
}

FieldElem curve_rhs(const Curve& c, const FieldElem& x) {
    const FieldRef& F = x.ctx();
    FieldElem r = x * x * x;
    if (c.a2) r = r + FieldElem::from_int(F, c.a2) * x * x;
    if (c.a4) r = r + FieldElem::from_int(F, c.a4) * x;
    if (c.a6) r = r + FieldElem::from_int(F, c.a6);
    return r;
}

bool on_curve(const Curve& c, const Point& P) {
    if (P.inf) return true;
    return P.y * P.y == curve_rhs(c, P.x);
}

Point ec_add(const Curve& c, const Point& P, const Point& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x.ctx() != Q.x.ctx()) throw std::invalid_argument("ec_add: mismatched fields");
    const FieldRef& F = P.x.ctx();
    FieldElem s = FieldElem::zero(F);
    if (P.x == Q.x) {
        if ((P.y + Q.y).is_zero()) return Point::infinity();
        // tangent: (3x^2 + 2 a2 x + a4) / (2y)
        FieldElem num = FieldElem::from_int(F, 3) * P.x * P.x + FieldElem::from_int(F, 2 * long(c.a2)) * P.x +
                        FieldElem::from_int(F, c.a4);
        s = num * (FieldElem::from_int(F, 2) * P.y).inv();
    } else {
        s = (Q.y - P.y) * (Q.x - P.x).inv();
    }
    FieldElem x3 = s * s - FieldElem::from_int(F, c.a2) - P.x - Q.x;
    FieldElem y3 = s * (P.x - x3) - P.y;
    return Point::affine(std::move(x3), std::move(y3));
}

Point ec_neg(const Point& P) {
    if (P.inf) return P;
    return Point::affine(P.x, -P.y);
}

Point ec_sub(const Curve& c, const Point& P, const Point& Q) { return ec_add(c, P, ec_neg(Q)); }

Point scalar_mul(const Curve& c, const BigInt& k, const Point& P) {
    if (P.inf || k == 0) return Point::infinity();
    BigInt n = k;
    Point base = P;
    if (n < 0) {
        n = -n;
        base = ec_neg(base);
    }
    Point r = Point::infinity();
    for (long i = long(bi_bits(n)) - 1; i >= 0; --i) {
        r = ec_add(c, r, r);
        if (mpz_tstbit(n.get_mpz_t(), i)) r = ec_add(c, r, base);
    }
    return r;
}

namespace {

uint64_t checked_field_size(const Curve& c, unsigned s, uint64_t bound) {
    BigInt P = bi_pow(BigInt(c.p), s);
    if (P > bound) throw std::invalid_argument("enumeration bound exceeded");
    return P.get_ui();
}

// square table: for each field index, the index of a canonical square root (or none)
std::vector<uint32_t> sqrt_table(const FieldRef& F, uint64_t P) {
    const uint32_t none = UINT32_MAX;
    std::vector<uint32_t> root(P, none);
    for (uint64_t yi = 0; yi < P; ++yi) {
        FieldElem y = FieldElem::from_index(F, yi);
        uint64_t si = (y * y).index();
        if (root[si] == none) root[si] = uint32_t(yi);  // first hit is the canonical root
    }
    return root;
}

}  // namespace

std::vector<Point> enumerate_points(const Curve& c, unsigned s, uint64_t bound) {
    uint64_t P = checked_field_size(c, s, bound);
    FieldRef F = make_field(c.p, s);
    auto root = sqrt_table(F, P);
    std::vector<Point> pts;
    pts.push_back(Point::infinity());
    for (uint64_t xi = 0; xi < P; ++xi) {
        FieldElem x = FieldElem::from_index(F, xi);
        FieldElem f = curve_rhs(c, x);
        uint64_t fi = f.index();
        if (root[fi] == UINT32_MAX) continue;
        FieldElem y = FieldElem::from_index(F, root[fi]);
        if (y.is_zero()) {
            pts.push_back(Point::affine(x, y));
        } else {
            pts.push_back(Point::affine(x, y));
            pts.push_back(Point::affine(x, -y));
        }
    }
    return pts;
}

BigInt count_points_enumerated(const Curve& c, unsigned s, uint64_t bound) {
    uint64_t P = checked_field_size(c, s, bound);
    FieldRef F = make_field(c.p, s);
    // count squares by marking
    std::vector<uint8_t> is_sq(P, 0);
    for (uint64_t yi = 0; yi < P; ++yi) {
        FieldElem y = FieldElem::from_index(F, yi);
        is_sq[(y * y).index()] = 1;
    }
    BigInt n = 1;
    for (uint64_t xi = 0; xi < P; ++xi) {
        FieldElem x = FieldElem::from_index(F, xi);
        FieldElem f = curve_rhs(c, x);
        if (f.is_zero())
            n += 1;
        else if (is_sq[f.index()])
            n += 2;
    }
    return n;
}

Point random_point(const Curve& c, const FieldRef& F, Prng& rng) {
    while (true) {
        std::vector<uint32_t> xc(F->d);
        for (auto& v : xc) v = uint32_t(rng.below(F->p));
        FieldElem x(F, std::move(xc));
        FieldElem f = curve_rhs(c, x);
        if (quadratic_character(f) < 0) continue;
        FieldElem y = field_sqrt(f);
        if (rng.coin()) y = -y;
        return Point::affine(std::move(x), std::move(y));
    }
}

Curve quadratic_twist(const Curve& c, uint32_t d) {
    FieldRef F = make_field(c.p, 1);
    if (quadratic_character(FieldElem::from_int(F, d)) != -1)
        throw std::invalid_argument("quadratic_twist: d must be a non-residue");
    long dd = long(d % c.p);
    return make_curve(c.p, long(c.a2) * dd, long(c.a4) * dd * dd, long(c.a6) * dd * dd * dd);
}

InvariantFactors ef_structure(const Curve& c, unsigned s, uint64_t bound) {
    auto pts = enumerate_points(c, s, bound);
    const BigInt N = BigInt(long(pts.size()));
    if (N == 1) return InvariantFactors::from_factors({});
    // exponent = max point order; rank <= 2 forces E = Z/d1 x Z/d2 with d2 = exponent
    BigInt expo = 1;
    for (const auto& P : pts) {
        if (P.inf) continue;
        BigInt o = 1;
        Point R = P;
        while (!R.inf) {
            R = ec_add(c, R, P);
            o += 1;
        }
        expo = expo / bi_gcd(expo, o) * o;
    }
    BigInt d1 = N / expo;
    if (d1 == 1) return InvariantFactors::from_factors({expo});
    return InvariantFactors::from_factors({d1, expo});
}

}  // namespace kcurve
