#include "kcurve/numeric.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace kcurve {

bool is_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

// Brent's cycle variant; deterministic (c and x0 advance on failure)
BigInt rho_split(const BigInt& n) {
    for (unsigned long c = 1;; ++c) {
        BigInt x = 2, y = 2, d = 1;
        BigInt saved_x;
        unsigned long power = 1, lam = 0;
        auto f = [&](const BigInt& v) { return bi_mod(v * v + c, n); };
        saved_x = x;
        while (d == 1) {
            if (lam == power) {
                saved_x = x;
                power *= 2;
                lam = 0;
            }
            x = f(x);
            ++lam;
            d = bi_gcd(abs(x - saved_x), n);
        }
        if (d != n) return d;
    }
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    BigInt d = rho_split(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Factorization factorize(const BigInt& n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization out;
    out.value = n;
    BigInt rest = n;
    std::map<BigInt, unsigned> fs;
    for (BigInt f = 2; f <= 1000000 && f * f <= rest; f == 2 ? f = 3 : f += 2) {
        while (rest % f == 0) {
            fs[f] += 1;
            rest /= f;
        }
    }
    if (rest > 1) factor_into(rest, fs);
    for (auto& [p, e] : fs) out.factors.emplace_back(p, e);
    return out;
}

Valuation l_adic_valuation(const BigInt& n, const BigInt& l) {
    if (n < 1) throw std::invalid_argument("l_adic_valuation: n must be >= 1");
    Valuation val{0, n};
    while (val.cofactor % l == 0) {
        val.cofactor /= l;
        ++val.v;
    }
    return val;
}

BigInt multiplicative_order(const BigInt& r, const BigInt& modulus) {
    if (modulus < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
    if (bi_gcd(r, modulus) != 1) throw std::invalid_argument("multiplicative_order: gcd(r, modulus) != 1");
    // group order = phi(modulus), then strip redundant prime factors
    BigInt phi = 1;
    for (const auto& [p, e] : factorize(modulus).factors) phi *= bi_pow(p, e - 1) * (p - 1);
    BigInt ord = phi;
    for (const auto& [p, e] : factorize(phi).factors) {
        (void)e;
        while (ord % p == 0 && bi_powmod(r, ord / p, modulus) == 1) ord /= p;
    }
    return ord;
}

SnfPair snf_2x2(const std::array<BigInt, 4>& m_in, const BigInt& l, unsigned K) {
    if (K < 1) throw std::invalid_argument("snf_2x2: K must be >= 1");
    const BigInt mod = bi_pow(l, K);
    std::array<BigInt, 4> m;
    for (int i = 0; i < 4; ++i) m[i] = bi_mod(m_in[i], mod);

    auto vl = [&](const BigInt& x) -> unsigned {
        if (x == 0) return K;
        unsigned v = 0;
        BigInt t = x;
        while (t % l == 0) {
            t /= l;
            ++v;
        }
        return std::min(v, K);
    };

    unsigned e1 = K;
    int piv = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned v = vl(m[i]);
        if (v < e1) {
            e1 = v;
            piv = i;
        }
    }
    if (e1 >= K) return {K, K};  // zero matrix mod l^K

    // move pivot to (0,0): row-major [0 1; 2 3]
    if (piv == 1 || piv == 3) {
        std::swap(m[0], m[1]);
        std::swap(m[2], m[3]);
    }
    if (piv >= 2) {
        std::swap(m[0], m[2]);
        std::swap(m[1], m[3]);
    }

    const BigInt le1 = bi_pow(l, e1);
    const BigInt unit = m[0] / le1;
    const BigInt unit_inv = bi_invmod(unit, mod);
    // eliminate m[2] (row op) and m[1] (col op); both have valuation >= e1
    BigInt t = bi_mod(m[2] / le1 * unit_inv, mod);
    m[2] = bi_mod(m[2] - t * m[0], mod);
    m[3] = bi_mod(m[3] - t * m[1], mod);
    t = bi_mod(m[1] / le1 * unit_inv, mod);
    m[1] = bi_mod(m[1] - t * m[0], mod);  // column op; m[2] is already zero so m[3] is final
    unsigned e2 = vl(m[3]);
    return {e1, std::max(e1, e2)};
}

InvariantFactors InvariantFactors::from_factors(const std::vector<BigInt>& fs) {
    std::map<BigInt, std::vector<unsigned>> per;
    for (const auto& d : fs) {
        if (d < 1) throw std::invalid_argument("InvariantFactors: factor < 1");
        if (d == 1) continue;
        for (const auto& [p, e] : factorize(d).factors) per[p].push_back(e);
    }
    return from_primary(per);
}

InvariantFactors InvariantFactors::from_primary(const std::map<BigInt, std::vector<unsigned>>& per_prime) {
    size_t rank = 0;
    std::map<BigInt, std::vector<unsigned>> per = per_prime;
    for (auto& [p, es] : per) {
        std::erase(es, 0u);
        std::sort(es.begin(), es.end(), std::greater<>());
        rank = std::max(rank, es.size());
    }
    InvariantFactors out;
    for (size_t i = 0; i < rank; ++i) {
        BigInt d = 1;
        for (auto& [p, es] : per)
            if (i < es.size()) d *= bi_pow(p, es[i]);
        out.d_.push_back(d);
    }
    std::reverse(out.d_.begin(), out.d_.end());  // ascending chain d1 | d2 | ...
    return out;
}

BigInt InvariantFactors::order() const {
    BigInt o = 1;
    for (const auto& d : d_) o *= d;
    return o;
}

std::vector<std::pair<BigInt, unsigned>> InvariantFactors::primary() const {
    std::vector<std::pair<BigInt, unsigned>> out;
    for (const auto& d : d_)
        for (const auto& [p, e] : factorize(d).factors) out.emplace_back(p, e);
    std::sort(out.begin(), out.end());
    return out;
}

std::string InvariantFactors::str() const {
    if (d_.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < d_.size(); ++i) {
        if (i) os << " x ";
        os << "Z/" << d_[i].get_str() << "Z";
    }
    return os.str();
}

std::string InvariantFactors::str_primary() const {
    auto prim = primary();
    if (prim.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < prim.size(); ++i) {
        if (i) os << " x ";
        os << "Z/" << bi_pow(prim[i].first, prim[i].second).get_str() << "Z";
    }
    return os.str();
}

std::string InvariantFactors::str_csv() const {
    if (d_.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < d_.size(); ++i) {
        if (i) os << "x";
        os << d_[i].get_str();
    }
    return os.str();
}

}  // namespace kcurve
