#include "kcurve/kgroup.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kcurve {

namespace {

// exponent k with [l^k]T = O; T must be in the l-Sylow
unsigned order_exp(const Curve& c, const BigInt& l, Point T, unsigned wmax) {
    unsigned k = 0;
    while (!T.inf) {
        T = scalar_mul(c, l, T);
        ++k;
        if (k > wmax + 1) throw std::logic_error("order_exp: point not in the l-Sylow");
    }
    return k;
}

// <P1> and <P2> (orders l^j each) intersect trivially iff the order-l point of <P2>
// avoids the unique order-l subgroup of <P1>
bool independent_level_j(const Curve& c, const BigInt& l, unsigned j, const Point& P1, const Point& P2) {
    BigInt lj1 = bi_pow(l, j - 1);
    Point Q1 = scalar_mul(c, lj1, P1);
    Point Q2 = scalar_mul(c, lj1, P2);
    Point R = Point::infinity();
    for (BigInt i = 0; i < l; ++i) {
        if (R == Q2) return false;
        R = ec_add(c, R, Q1);
    }
    return true;
}

struct SylowBasis {
    unsigned w = 0, w1 = 0, w2 = 0;  // orders: |Sylow| = l^w, exponents w1 <= w2
    std::optional<Point> G1, G2;     // ord G1 = l^{w2}, ord G2 = l^{w1}
    FieldRef F;
    BigInt N, u;  // N = l^w * u
};

// deterministic full-Sylow computation over small fields
SylowBasis sylow_exhaustive(const Curve& c, unsigned deg, const BigInt& l, const Caps& caps) {
    SylowBasis sb;
    sb.F = make_field(c.p, deg, caps.degree_cap);
    sb.N = count_extension(c, deg);
    Valuation val = l_adic_valuation(sb.N, l);
    sb.w = val.v;
    sb.u = val.cofactor;
    if (sb.w == 0) return sb;
    auto pts = enumerate_points(c, deg, caps.enum_bound);
    // [u] maps E(F) onto its l-Sylow
    std::map<std::pair<uint64_t, uint64_t>, Point> syl;
    for (const auto& P : pts) {
        Point T = scalar_mul(c, sb.u, P);
        if (T.inf) continue;
        syl.emplace(std::make_pair(T.x.index(), T.y.index()), T);
    }
    if (BigInt(long(syl.size())) + 1 != bi_pow(l, sb.w)) throw std::logic_error("sylow_exhaustive: size mismatch");
    unsigned best = 0;
    for (const auto& [k, T] : syl) {
        (void)k;
        unsigned o = order_exp(c, l, T, sb.w);
        if (o > best) {
            best = o;
            sb.G1 = T;
        }
    }
    sb.w2 = best;
    sb.w1 = sb.w - sb.w2;
    if (sb.w1 > 0) {
        Point s1 = scalar_mul(c, bi_pow(l, sb.w2 - 1), *sb.G1);
        for (const auto& [k, T] : syl) {
            (void)k;
            if (order_exp(c, l, T, sb.w) != sb.w1) continue;
            Point s2 = scalar_mul(c, bi_pow(l, sb.w1 - 1), T);
            if (independent_level_j(c, l, 1, s1, s2)) {
                sb.G2 = T;
                break;
            }
        }
        if (!sb.G2) throw std::logic_error("sylow_exhaustive: no independent generator found");
    }
    return sb;
}

struct LevelCert {
    CertStatus status;
    Point P1, P2;  // exact order l^j, independent (status == True)
    FieldRef F;
};

// certified decision of "E[l^j] contained in E(F_{p^deg})" with explicit witnesses
LevelCert rank2_level(const Curve& c, unsigned deg, const BigInt& l, unsigned j, const Caps& caps, Prng& rng) {
    LevelCert out{CertStatus::False, {}, {}, nullptr};
    BigInt N = count_extension(c, deg);
    Valuation val = l_adic_valuation(N, l);
    const unsigned w = val.v;
    if (w < 2 * j) return out;  // cardinality obstruction
    BigInt lj = bi_pow(l, j);
    if (bi_mod(bi_pow(BigInt(c.p), deg) - 1, lj) != 0) return out;  // Weil pairing needs mu_{l^j}

    FieldRef F = make_field(c.p, deg, caps.degree_cap);
    out.F = F;
    if (F->order <= caps.exhaustive_bound) {
        SylowBasis sb = sylow_exhaustive(c, deg, l, caps);
        if (sb.w1 < j) return out;
        out.status = CertStatus::True;
        out.P1 = scalar_mul(c, bi_pow(l, sb.w2 - j), *sb.G1);
        out.P2 = scalar_mul(c, bi_pow(l, sb.w1 - j), *sb.G2);
        return out;
    }

    BigInt budget_b = BigInt(long(caps.budget_factor)) * lj + 64;
    uint64_t budget = budget_b > 100000 ? 100000 : budget_b.get_ui();
    unsigned maxk = 0;
    std::vector<Point> cands;
    for (uint64_t it = 0; it < budget; ++it) {
        Point R = random_point(c, F, rng);
        Point T = scalar_mul(c, val.cofactor, R);
        unsigned k = T.inf ? 0 : order_exp(c, l, T, w);
        maxk = std::max(maxk, k);
        if (w - maxk < j) return out;  // exhibited order l^maxk forces w1 <= w - maxk < j
        if (k >= j) {
            Point C = scalar_mul(c, bi_pow(l, k - j), T);
            for (const auto& prev : cands) {
                if (independent_level_j(c, l, j, prev, C)) {
                    out.status = CertStatus::True;
                    out.P1 = prev;
                    out.P2 = C;
                    return out;
                }
            }
            if (cands.size() < 12) cands.push_back(C);
        }
    }
    out.status = CertStatus::BudgetExhausted;
    return out;
}

BigInt curve_trace(const Curve& c) { return zeta_data(c).a; }

}  // namespace

TorsionBasis torsion_subgroup(const Curve& c, uint64_t n, unsigned s, const BigInt& l, unsigned j, const Caps& caps,
                              Prng& rng) {
    if (l == c.p) throw std::invalid_argument("torsion_subgroup: l must differ from the characteristic");
    BigInt deg_b;
    mpz_set_ui(deg_b.get_mpz_t(), n);
    deg_b *= s;
    if (deg_b > caps.degree_cap) throw CapError("torsion_subgroup: field degree cap exceeded");
    unsigned deg = unsigned(deg_b.get_ui());
    FieldRef F = make_field(c.p, deg, caps.degree_cap);

    TorsionBasis tb;
    tb.l = l;
    tb.j = j;
    tb.s = s;
    tb.field = F;

    if (F->order <= caps.exhaustive_bound) {
        SylowBasis sb = sylow_exhaustive(c, deg, l, caps);
        unsigned j1 = std::min(j, sb.w2), j2 = std::min(j, sb.w1);
        tb.j1 = j1;
        tb.j2 = j2;
        tb.rank = (j1 > 0) + (j2 > 0);
        if (j1 > 0) tb.P1 = scalar_mul(c, bi_pow(l, sb.w2 - j1), *sb.G1);
        if (j2 > 0) tb.P2 = scalar_mul(c, bi_pow(l, sb.w1 - j2), *sb.G2);
        return tb;
    }

    // sampling path: find j2 = min(w1, j) by descending certified level tests,
    // then j1 = min(w2, j) from the cardinality identity w1 + w2 = w
    BigInt N = count_extension(c, deg);
    Valuation val = l_adic_valuation(N, l);
    if (val.v == 0) return tb;
    unsigned j2 = 0;
    Point P1w, P2w;
    for (unsigned jj = std::min(j, val.v / 2); jj >= 1; --jj) {
        LevelCert cert = rank2_level(c, deg, l, jj, caps, rng);
        if (cert.status == CertStatus::BudgetExhausted) throw BudgetError("torsion_subgroup: increase budget");
        if (cert.status == CertStatus::True) {
            j2 = jj;
            P1w = cert.P1;
            P2w = cert.P2;
            break;
        }
    }
    // below the cap the descent certifies w1 = j2 exactly; above it only j2 = j matters,
    // and then min(j, v - j2) = min(j, w2) either way
    unsigned j1 = std::min(j, val.v - j2);
    tb.j1 = j1;
    tb.j2 = j2;
    tb.rank = (j1 > 0) + (j2 > 0);
    if (j1 == 0) return tb;
    if (j2 > 0 && j1 == j2) {
        tb.P1 = P1w;
        tb.P2 = P2w;
        return tb;
    }
    // exhibit a generator of order l^{j1}; when rank 2, pick whichever certified
    // generator has a different order-l shadow (at least one of the two qualifies)
    BigInt budget_b = BigInt(long(caps.budget_factor)) * bi_pow(l, j) + 64;
    uint64_t budget = budget_b > 100000 ? 100000 : budget_b.get_ui();
    for (uint64_t it = 0; it < budget; ++it) {
        Point R = random_point(c, F, rng);
        Point T = scalar_mul(c, val.cofactor, R);
        unsigned k = T.inf ? 0 : order_exp(c, l, T, val.v);
        if (k < j1) continue;
        Point C = scalar_mul(c, bi_pow(l, k - j1), T);
        if (j2 == 0) {
            tb.P1 = C;
            return tb;
        }
        Point shC = scalar_mul(c, bi_pow(l, j1 - 1), C);
        for (const Point* cand : {&P2w, &P1w}) {
            Point shG = scalar_mul(c, bi_pow(l, j2 - 1), *cand);
            Point Rm = Point::infinity();
            bool dep = false;
            for (BigInt i = 0; i < l; ++i) {
                if (Rm == shG) {
                    dep = true;
                    break;
                }
                Rm = ec_add(c, Rm, shC);
            }
            if (!dep) {
                tb.P1 = C;
                tb.P2 = *cand;
                return tb;
            }
        }
    }
    throw BudgetError("torsion_subgroup: increase budget");
}

MembershipResult kernel_membership(const Curve& c, uint64_t n, unsigned m, const BigInt& l, unsigned j,
                                   const Caps& caps, Prng& rng) {
    if (j < 1) throw std::invalid_argument("kernel_membership: j must be >= 1");
    if (l == c.p) throw std::invalid_argument("kernel_membership: l must differ from the characteristic");
    const BigInt q = c.p;
    const BigInt lj = bi_pow(l, j);
    const BigInt A = extension_trace(curve_trace(c), q, n);
    BigInt nn;
    mpz_set_ui(nn.get_mpz_t(), n);
    const BigInt Qmod = bi_powmod(q, nn, lj);  // Q mod l^j
    const BigInt Qm = bi_powmod(Qmod, BigInt(m), lj);
    // scalar action needs trace = 2 and det = 1 mod l^j
    if (bi_mod(Qm * A - 2, lj) != 0) return {CertStatus::False, "trace obstruction"};
    if (bi_mod(bi_powmod(Qmod, BigInt(2 * m + 1), lj) - 1, lj) != 0) return {CertStatus::False, "det obstruction"};

    const BigInt r = bi_invmod(Qm, lj);
    const BigInt sprime = r == 1 ? BigInt(1) : multiplicative_order(r, lj);
    BigInt deg_b = nn * sprime;
    if (deg_b > caps.degree_cap) return {CertStatus::CapExceeded, "field degree " + deg_b.get_str()};
    unsigned deg = unsigned(deg_b.get_ui());

    LevelCert cert = rank2_level(c, deg, l, j, caps, rng);
    if (cert.status == CertStatus::False) return {CertStatus::False, "torsion not rational over the kernel field"};
    if (cert.status == CertStatus::BudgetExhausted) return {CertStatus::BudgetExhausted, "sampling budget exhausted"};

    // Frobenius must act as the scalar r on the exhibited basis
    const BigInt Q = bi_pow(q, n);
    for (const Point* P : {&cert.P1, &cert.P2}) {
        Point phiP = Point::affine(P->x.pow(Q), P->y.pow(Q));
        if (!(phiP == scalar_mul(c, r, *P))) return {CertStatus::False, "Frobenius acts non-scalarly"};
    }
    return {CertStatus::True, ""};
}

LPartResult l_part_structure(const Curve& c, uint64_t n, unsigned m, const BigInt& l, const Caps& caps, Prng& rng) {
    const BigInt order = kgroup_order(curve_trace(c), BigInt(c.p), n, m);
    Valuation val = l_adic_valuation(order, l);
    LPartResult res;
    if (val.v == 0) return res;
    res.e2 = val.v;
    for (unsigned j = 1; j <= val.v / 2; ++j) {
        MembershipResult mr = kernel_membership(c, n, m, l, j, caps, rng);
        if (mr.status == CertStatus::True) {
            res.e1 = j;
            res.e2 = val.v - j;
        } else if (mr.status == CertStatus::False) {
            break;  // membership is monotone decreasing in j
        } else {
            res.verified = false;
            res.note = mr.note;
            break;
        }
    }
    return res;
}

KGroupStructure kgroup_structure(const Curve& c, uint64_t n, unsigned m, const Caps& caps, Prng& rng) {
    KGroupStructure ks;
    ks.n = n;
    ks.m = m;
    ks.order = kgroup_order(curve_trace(c), BigInt(c.p), n, m);
    std::map<BigInt, std::vector<unsigned>> per;
    std::ostringstream note;
    for (const auto& [l, e] : factorize(ks.order).factors) {
        if (e == 1) {
            per[l] = {1};  // v = 1 forces a cyclic l-part
            continue;
        }
        LPartResult lp = l_part_structure(c, n, m, l, caps, rng);
        per[l] = {lp.e1, lp.e2};
        if (!lp.verified) {
            ks.verified = false;
            note << (note.tellp() > 0 ? "; " : "") << "l=" << l.get_str() << ": " << lp.note;
        }
    }
    ks.factors = InvariantFactors::from_primary(per);
    ks.note = note.str();
    return ks;
}

std::optional<FrobMatrix> frobenius_matrix_oracle(const Curve& c, const BigInt& l, unsigned K, uint32_t degree_cap,
                                                  const Caps& caps, Prng& rng) {
    const BigInt lK = bi_pow(l, K);
    if (lK > 4096) return std::nullopt;  // discrete-log table would be unreasonable
    const BigInt q = c.p;
    for (unsigned s = 1; s <= degree_cap; ++s) {
        BigInt Ns = count_extension(c, s);
        if (l_adic_valuation(Ns, l).v < 2 * K) continue;
        if (bi_mod(bi_pow(q, s) - 1, lK) != 0) continue;
        LevelCert cert = rank2_level(c, s, l, K, caps, rng);
        if (cert.status == CertStatus::BudgetExhausted) return std::nullopt;
        if (cert.status != CertStatus::True) continue;

        // two-dimensional discrete log in E[l^K] by table lookup on <P1>;
        // key on full coordinates (the compact index truncates on large fields)
        auto point_key = [](const Point& P) {
            return P.inf ? std::string("inf") : P.x.str() + "|" + P.y.str();
        };
        std::map<std::string, BigInt> table;
        Point R = Point::infinity();
        BigInt count = 0;
        for (; count < lK; ++count) {
            table[point_key(R)] = count;
            R = ec_add(c, cert.P1, R);
        }
        auto dlog = [&](const Point& T) -> std::optional<std::pair<BigInt, BigInt>> {
            Point W = T;
            for (BigInt b = 0; b < lK; ++b) {
                if (auto it = table.find(point_key(W)); it != table.end()) return std::make_pair(it->second, b);
                W = ec_sub(c, W, cert.P2);
            }
            return std::nullopt;
        };
        const BigInt Q = q;  // base-field Frobenius
        auto phi = [&](const Point& P) { return Point::affine(P.x.pow(Q), P.y.pow(Q)); };
        auto d1 = dlog(phi(cert.P1));
        auto d2 = dlog(phi(cert.P2));
        if (!d1 || !d2) return std::nullopt;
        FrobMatrix fm;
        fm.mat = {d1->first, d2->first, d1->second, d2->second};  // [a b; c d] row-major
        fm.l = l;
        fm.K = K;
        fm.s = s;
        return fm;
    }
    return std::nullopt;
}

}  // namespace kcurve
