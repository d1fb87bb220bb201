#include "kcurve/zeta.hpp"

#include <sstream>
#include <stdexcept>

namespace kcurve {

ZetaData zeta_data(const Curve& c) {
    ZetaData z;
    z.q = c.p;
    z.N = count_points_enumerated(c, 1);
    z.a = z.q + 1 - z.N;
    z.D = z.a * z.a - 4 * z.q;
    z.surd = surd_string(z.a, z.q);
    return z;
}

BigInt extension_trace(const BigInt& a, const BigInt& q, uint64_t n) {
    if (n == 0) return 2;
    // state (t_k, t_{k+1}, q^k), doubling:
    //   t_{2k}   = t_k^2 - 2 q^k
    //   t_{2k+1} = t_k t_{k+1} - a q^k
    //   t_{2k+2} = t_{k+1}^2 - 2 q^{k+1}
    BigInt tk = 2, tk1 = a, qk = 1;
    int top = 63;
    while (top > 0 && !((n >> top) & 1)) --top;
    for (int i = top; i >= 0; --i) {
        if ((n >> i) & 1) {
            tk = tk * tk1 - a * qk;
            tk1 = tk1 * tk1 - 2 * qk * q;
            qk = qk * qk * q;
        } else {
            tk1 = tk * tk1 - a * qk;
            tk = tk * tk - 2 * qk;
            qk = qk * qk;
        }
    }
    return tk;
}

BigInt count_extension(const BigInt& a, const BigInt& q, uint64_t n) {
    return bi_pow(q, n) + 1 - extension_trace(a, q, n);
}

BigInt count_extension(const Curve& c, uint64_t n) {
    ZetaData z = zeta_data(c);
    return count_extension(z.a, z.q, n);
}

BigInt kgroup_order(const BigInt& a, const BigInt& q, uint64_t n, unsigned m) {
    if (m < 1) throw std::invalid_argument("kgroup_order: m must be >= 1");
    BigInt Q = bi_pow(q, n);
    BigInt A = extension_trace(a, q, n);
    BigInt Qm = bi_pow(Q, m);
    return 1 - A * Qm + Qm * Qm * Q;
}

std::string surd_string(const BigInt& a, const BigInt& q) {
    BigInt D = a * a - 4 * q;
    if (D >= 0) throw std::invalid_argument("surd_string: a^2 - 4q must be negative");
    BigInt rest = -D, c = 1;
    for (BigInt f = 2; f * f <= rest; ++f) {
        while (rest % (f * f) == 0) {
            rest /= f * f;
            c *= f;
        }
    }
    // now -D = c^2 * rest with rest squarefree
    std::ostringstream os;
    auto coeff = [](const BigInt& v) { return v == 1 ? std::string() : v.get_str(); };
    if (a % 2 == 0 && c % 2 == 0) {
        BigInt x = a / 2, y = c / 2;
        if (x != 0) os << x.get_str();
        os << "+-" << coeff(y) << "sqrt(-" << rest.get_str() << ")";
    } else {
        os << "(" << a.get_str() << "+-" << coeff(c) << "sqrt(-" << rest.get_str() << "))/2";
    }
    return os.str();
}

std::optional<std::pair<BigInt, BigInt>> parse_surd(const std::string& s) {
    auto parse_core = [](const std::string& core, BigInt& x, BigInt& y, BigInt& d) -> bool {
        auto pm = core.find("+-");
        if (pm == std::string::npos) return false;
        std::string xs = core.substr(0, pm);
        x = xs.empty() ? BigInt(0) : BigInt(xs);
        auto sq = core.find("sqrt(-", pm);
        if (sq == std::string::npos) return false;
        std::string ys = core.substr(pm + 2, sq - pm - 2);
        y = ys.empty() ? BigInt(1) : BigInt(ys);
        auto close = core.find(')', sq);
        if (close == std::string::npos) return false;
        d = BigInt(core.substr(sq + 6, close - sq - 6));
        return true;
    };
    BigInt x, y, d;
    if (!s.empty() && s.front() == '(') {
        auto close = s.rfind(")/2");
        if (close == std::string::npos) return std::nullopt;
        if (!parse_core(s.substr(1, close - 1) + ")", x, y, d)) return std::nullopt;
        // (x +- y sqrt(-d))/2: a = x, D = -y^2 d
        return std::make_pair(x, -y * y * d);
    }
    if (!parse_core(s, x, y, d)) return std::nullopt;
    // x +- y sqrt(-d): a = 2x, D = -4 y^2 d
    return std::make_pair(2 * x, -4 * y * y * d);
}

ZetaNumerator make_numerator(unsigned g, std::vector<BigInt> coeffs, const BigInt& q) {
    ZetaNumerator P{g, std::move(coeffs)};
    if (P.c.size() != 2 * g + 1) throw std::invalid_argument("ZetaNumerator: need 2g+1 coefficients");
    if (P.c[0] != 1) throw std::invalid_argument("ZetaNumerator: constant term must be 1");
    for (unsigned i = 0; i <= g; ++i)
        if (P.c[2 * g - i] != bi_pow(q, g - i) * P.c[i])
            throw std::invalid_argument("ZetaNumerator: functional equation violated");
    return P;
}

BigInt genus_g_order(const ZetaNumerator& P, const BigInt& q, unsigned m) {
    BigInt t = bi_pow(q, m);
    BigInt acc = 0, power = 1;
    for (const auto& ci : P.c) {
        acc += ci * power;
        power *= t;
    }
    return abs(acc);
}

ZetaNumerator derive_numerator(const std::vector<BigInt>& counts, const BigInt& q, unsigned g) {
    if (g < 1) throw std::invalid_argument("derive_numerator: g must be >= 1");
    if (counts.size() < g) throw std::invalid_argument("derive_numerator: need g point counts");
    // power sums of the inverse roots
    std::vector<BigInt> S(g + 1);
    for (unsigned n = 1; n <= g; ++n) {
        S[n] = bi_pow(q, n) + 1 - counts[n - 1];
        // Weil: |S_n| <= 2g q^{n/2}
        if (S[n] * S[n] > 4 * BigInt(g) * BigInt(g) * bi_pow(q, n))
            throw std::invalid_argument("derive_numerator: counts violate the Weil bound");
    }
    // Newton: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} S_i
    std::vector<BigInt> e(g + 1);
    e[0] = 1;
    for (unsigned k = 1; k <= g; ++k) {
        BigInt acc = 0;
        for (unsigned i = 1; i <= k; ++i) acc += (i % 2 ? 1 : -1) * e[k - i] * S[i];
        if (acc % k != 0) throw std::invalid_argument("derive_numerator: inconsistent power sums");
        e[k] = acc / k;
    }
    std::vector<BigInt> c(2 * g + 1);
    for (unsigned i = 0; i <= g; ++i) c[i] = (i % 2 ? -e[i] : e[i]);
    for (unsigned i = 0; i < g; ++i) c[2 * g - i] = bi_pow(q, g - i) * c[i];
    return make_numerator(g, std::move(c), q);
}

}  // namespace kcurve
