#include "kcurve/tower.hpp"

#include <algorithm>
#include <sstream>

namespace kcurve {

namespace {

unsigned window_limit(const BigInt& l, uint32_t p, const Caps& caps) {
    const uint64_t qbits = mpz_sizeinbase(BigInt(p).get_mpz_t(), 2);
    unsigned m = 0;
    BigInt lm = 1;
    while (true) {
        lm *= l;
        if (lm * qbits > caps.bits_budget) break;
        ++m;
        if (m >= 32) break;
    }
    return m;
}

}  // namespace

std::vector<unsigned> tower_valuations(const Curve& c, const BigInt& l, const Caps& caps, unsigned max_m) {
    if (l == c.p) throw std::invalid_argument("tower_valuations: l must differ from the characteristic");
    const ZetaData z = zeta_data(c);
    unsigned M = max_m ? max_m : window_limit(l, c.p, caps);
    std::vector<unsigned> vs;
    BigInt lm = 1;
    for (unsigned m = 0; m <= M; ++m) {
        if (lm * mpz_sizeinbase(BigInt(c.p).get_mpz_t(), 2) > caps.bits_budget && m > 0) break;
        vs.push_back(l_adic_valuation(kgroup_order(z.a, z.q, lm.get_ui(), 1), l).v);
        lm *= l;
    }
    if (vs.empty() || vs[0] == 0) throw std::invalid_argument("tower_valuations: l does not divide the base order");
    return vs;
}

LambdaFit lambda_invariant(const Curve& c, const BigInt& l, const Caps& caps) {
    const ZetaData z = zeta_data(c);
    const std::vector<unsigned> vs = tower_valuations(c, l, caps);
    const BigInt D = z.D;
    LambdaFit fit;

    auto window_linear_from = [&](unsigned m0, int lam) {
        for (unsigned m = m0; m + 1 < vs.size(); ++m)
            if (int(vs[m + 1]) - int(vs[m]) != lam) return false;
        return true;
    };

    if (l == 2) {
        // three consecutive equal first differences, then linear through the window
        for (unsigned m0 = 0; m0 + 3 < vs.size(); ++m0) {
            int lam = int(vs[m0 + 1]) - int(vs[m0]);
            if (int(vs[m0 + 2]) - int(vs[m0 + 1]) == lam && int(vs[m0 + 3]) - int(vs[m0 + 2]) == lam &&
                window_linear_from(m0, lam)) {
                fit.lambda = lam;
                fit.m0 = m0;
                fit.nu = long(vs[m0]) - long(lam) * m0;
                fit.certified = true;
                fit.method = "window";
                return fit;
            }
        }
        throw std::runtime_error("lambda_invariant: window exhausted without stabilization");
    }

    if (bi_mod(D, l) != 0) {
        // l odd and unramified in Q(sqrt(D)): the residue group order is prime to l,
        // so a unit factor contributes from the base level and lifting-the-exponent
        // makes v_m exactly linear from m = 0
        if (vs.size() < 2) throw std::runtime_error("lambda_invariant: window too small");
        fit.lambda = int(vs[1]) - int(vs[0]);
        fit.m0 = 0;
        fit.nu = long(vs[0]);
        fit.certified = window_linear_from(0, fit.lambda);
        fit.method = "unramified";
        if (!fit.certified) throw std::runtime_error("lambda_invariant: unramified linearity violated");
        return fit;
    }

    // l odd and ramified (so l <= 4q): one sharpening step may occur between
    // levels 0 and 1; linear from level 1 on
    if (vs.size() < 3) throw std::runtime_error("lambda_invariant: window too small for a ramified prime");
    fit.lambda = int(vs[2]) - int(vs[1]);
    fit.m0 = (int(vs[1]) - int(vs[0]) == fit.lambda) ? 0 : 1;
    fit.nu = long(vs[fit.m0]) - long(fit.lambda) * fit.m0;
    fit.certified = window_linear_from(1, fit.lambda);
    fit.method = "ramified";
    if (!fit.certified) throw std::runtime_error("lambda_invariant: ramified linearity violated");
    return fit;
}

TowerReport tower_structures(const Curve& c, const BigInt& l, unsigned max_verified_m, const Caps& caps, Prng& rng) {
    TowerReport rep;
    rep.l = l;
    rep.valuations = tower_valuations(c, l, caps);
    LambdaFit fit = lambda_invariant(c, l, caps);
    rep.lambda = fit.lambda;
    rep.nu = fit.nu;
    rep.m0 = fit.m0;

    std::ostringstream flags;
    for (unsigned m = 0; m <= max_verified_m && m < rep.valuations.size(); ++m) {
        BigInt lm = bi_pow(l, m);
        if (lm > 1024) break;  // structure checks stay in the small-exponent regime
        LPartResult lp = l_part_structure(c, lm.get_ui(), 1, l, caps, rng);
        rep.structures.push_back({m, lp.e1, lp.e2, lp.verified, lp.note});
        if (!lp.verified) {
            rep.fully_verified = false;
            flags << (flags.tellp() > 0 ? "; " : "") << "m=" << m << ": " << lp.note;
        }
    }

    // fit offsets on the verified structure levels, then demand consistency with
    // every valuation in the window
    const unsigned rank = rep.lambda >= 2 ? 2 : 1;
    for (unsigned m_c = 0; m_c < rep.valuations.size(); ++m_c) {
        std::optional<std::vector<int>> offs;
        bool consistent = true;
        bool any_verified = false;
        for (const auto& lev : rep.structures) {
            if (lev.m < m_c || !lev.verified) continue;
            std::vector<int> cur;
            if (rank == 2) {
                if (lev.e1 == 0) {
                    consistent = false;
                    break;
                }
                cur = {int(lev.e1) - int(lev.m), int(lev.e2) - int(lev.m)};
            } else {
                if (lev.e1 != 0) {
                    consistent = false;
                    break;
                }
                cur = {int(lev.e2) - int(lev.m)};
            }
            if (!offs)
                offs = cur;
            else if (*offs != cur) {
                consistent = false;
                break;
            }
            any_verified = true;
        }
        if (!consistent || !any_verified || !offs) continue;
        for (unsigned m = m_c; m < rep.valuations.size(); ++m) {
            long want = 0;
            for (int o : *offs) want += long(m) + o;
            if (want != long(rep.valuations[m])) {
                consistent = false;
                break;
            }
        }
        if (consistent) {
            rep.offsets = *offs;
            rep.m0_struct = m_c;
            rep.offsets_ok = true;
            break;
        }
    }
    rep.flags = flags.str();
    return rep;
}

std::string sylow_formula(const BigInt& l, const std::vector<int>& offsets, unsigned m0) {
    std::ostringstream os;
    os << "K_2(" << l.get_str() << "^m)(" << l.get_str() << ") ~ ";
    std::vector<int> offs = offsets;
    std::sort(offs.begin(), offs.end());
    for (size_t i = 0; i < offs.size(); ++i) {
        if (i) os << " x ";
        os << "Z/" << l.get_str() << "^{m";
        if (offs[i] > 0) os << "+" << offs[i];
        os << "}Z";
    }
    os << ", m >= " << m0;
    return os.str();
}

}  // namespace kcurve
