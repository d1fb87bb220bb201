#include "kcurve/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "kcurve/numeric.hpp"

namespace kcurve {

namespace {

// ---- polynomials over F_p, coefficient vectors, ascending degree ----

using FpPoly = std::vector<uint32_t>;

void fp_norm(FpPoly& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint32_t p) {
    FpPoly out(a.size() + b.size() - 1, 0);
    std::vector<uint64_t> acc(out.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) acc[i + j] += uint64_t(a[i]) * b[j];
    for (size_t i = 0; i < out.size(); ++i) out[i] = uint32_t(acc[i] % p);
    fp_norm(out);
    return out;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, uint32_t p) {
    fp_norm(a);
    const size_t dm = m.size() - 1;
    if (dm == 0) return {0};
    // m need not be monic in general; invert leading coefficient
    uint32_t lead_inv = 1;
    if (m.back() != 1) {
        BigInt li = bi_invmod(BigInt(m.back()), BigInt(p));
        lead_inv = uint32_t(li.get_ui());
    }
    for (size_t i = a.size(); i-- > dm;) {
        uint64_t c = a[i] % p;
        if (!c) continue;
        c = c * lead_inv % p;
        for (size_t j = 0; j <= dm; ++j) {
            uint64_t sub = c * m[j] % p;
            a[i - dm + j] = uint32_t((a[i - dm + j] + p - sub) % p);
        }
    }
    a.resize(std::max<size_t>(dm, 1));
    fp_norm(a);
    return a;
}

FpPoly fp_powmod(const FpPoly& base, const BigInt& e, const FpPoly& m, uint32_t p) {
    FpPoly r{1};
    FpPoly b = fp_mod(base, m, p);
    for (long i = long(bi_bits(e)) - 1; i >= 0; --i) {
        r = fp_mod(fp_mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_mod(fp_mul(r, b, p), m, p);
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint32_t p) {
    fp_norm(a);
    fp_norm(b);
    while (!(b.size() == 1 && b[0] == 0)) {
        if (a.size() < b.size()) std::swap(a, b);
        a = fp_mod(a, b, p);
        std::swap(a, b);
    }
    return a;
}

bool fp_is_x(const FpPoly& a) { return a.size() == 2 && a[0] == 0 && a[1] == 1; }

// Rabin irreducibility test for monic f of degree d
bool fp_irreducible(const FpPoly& f, uint32_t p) {
    const size_t d = f.size() - 1;
    FpPoly h{0, 1};  // x
    std::map<size_t, FpPoly> at_step;
    for (size_t i = 1; i <= d; ++i) {
        h = fp_powmod(h, BigInt(p), f, p);  // h <- h^p mod f
        at_step[i] = h;
    }
    if (!fp_is_x(at_step[d])) return false;
    std::vector<unsigned> prim;
    for (const auto& [q, e] : factorize(BigInt(d)).factors) {
        (void)e;
        size_t sub = d / size_t(q.get_ui());
        FpPoly g = at_step[sub];
        // g - x
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        fp_norm(g);
        FpPoly gc = fp_gcd(f, g, p);
        if (gc.size() > 1) return false;
    }
    return true;
}

std::map<std::pair<uint32_t, uint32_t>, FieldRef> g_field_cache;
std::mutex g_field_mutex;

}  // namespace

FieldRef make_field(uint32_t p, uint32_t d, uint32_t degree_cap) {
    if (p < 3 || !is_prime(BigInt(p))) throw std::invalid_argument("make_field: p must be an odd prime");
    if (d < 1 || d > degree_cap) throw std::invalid_argument("make_field: degree out of range");
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto key = std::make_pair(p, d);
    if (auto it = g_field_cache.find(key); it != g_field_cache.end()) return it->second;

    auto ctx = std::make_shared<FieldCtx>();
    ctx->p = p;
    ctx->d = d;
    ctx->order = bi_pow(BigInt(p), d);
    if (d > 1) {
        // first irreducible x^d + k with k read base-p, constant digit least significant
        for (BigInt k = 0;; ++k) {
            FpPoly cand(d + 1, 0);
            cand[d] = 1;
            BigInt t = k;
            for (uint32_t i = 0; i < d && t > 0; ++i) {
                cand[i] = uint32_t(BigInt(t % p).get_ui());
                t /= p;
            }
            if (fp_irreducible(cand, p)) {
                ctx->modulus = cand;
                break;
            }
        }
    }
    FieldRef ref = ctx;
    g_field_cache[key] = ref;
    return ref;
}

FieldElem::FieldElem(FieldRef ctx, std::vector<uint32_t> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    c_.resize(ctx_->d, 0);
    for (auto& x : c_) x %= ctx_->p;
}

FieldElem FieldElem::zero(const FieldRef& ctx) { return FieldElem(ctx, std::vector<uint32_t>(ctx->d, 0)); }

FieldElem FieldElem::one(const FieldRef& ctx) { return from_int(ctx, 1); }

FieldElem FieldElem::from_int(const FieldRef& ctx, long v) {
    long r = v % long(ctx->p);
    if (r < 0) r += ctx->p;
    std::vector<uint32_t> c(ctx->d, 0);
    c[0] = uint32_t(r);
    return FieldElem(ctx, std::move(c));
}

bool FieldElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](uint32_t x) { return x == 0; });
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    std::vector<uint32_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = (c_[i] + o.c_[i]) % ctx_->p;
    return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    std::vector<uint32_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = (c_[i] + ctx_->p - o.c_[i]) % ctx_->p;
    return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::operator-() const {
    std::vector<uint32_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] ? ctx_->p - c_[i] : 0;
    return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    const uint32_t p = ctx_->p;
    const uint32_t d = ctx_->d;
    if (d == 1) return FieldElem(ctx_, {uint32_t(uint64_t(c_[0]) * o.c_[0] % p)});
    std::vector<uint64_t> acc(2 * d - 1, 0);
    for (uint32_t i = 0; i < d; ++i)
        if (c_[i])
            for (uint32_t j = 0; j < d; ++j) acc[i + j] += uint64_t(c_[i]) * o.c_[j];
    // fold x^{d+i} via the monic modulus
    const auto& m = ctx_->modulus;
    for (uint32_t i = 2 * d - 2; i >= d; --i) {
        uint64_t c = acc[i] % p;
        if (c)
            for (uint32_t j = 0; j < d; ++j)
                if (m[j]) acc[i - d + j] += c * (p - m[j]);
        if (i == d) break;
    }
    std::vector<uint32_t> r(d);
    for (uint32_t i = 0; i < d; ++i) r[i] = uint32_t(acc[i] % p);
    return FieldElem(ctx_, std::move(r));
}

FieldElem FieldElem::inv() const {
    if (is_zero()) throw std::domain_error("FieldElem::inv: zero");
    const uint32_t p = ctx_->p;
    if (ctx_->d == 1) {
        BigInt iv = bi_invmod(BigInt(c_[0]), BigInt(p));
        return FieldElem(ctx_, {uint32_t(iv.get_ui())});
    }
    // extended Euclid in F_p[x] against the modulus
    FpPoly r0(ctx_->modulus), r1(c_.begin(), c_.end());
    fp_norm(r1);
    FpPoly s0{0}, s1{1};
    while (!(r1.size() == 1 && r1[0] == 0)) {
        // divide r0 by r1
        FpPoly q(std::max<size_t>(r0.size() - r1.size() + 1, 1), 0);
        FpPoly rem = r0;
        BigInt li = bi_invmod(BigInt(r1.back()), BigInt(p));
        uint32_t lead_inv = uint32_t(li.get_ui());
        for (size_t i = rem.size(); i-- > r1.size() - 1;) {
            if (i + 1 < r1.size()) break;
            size_t shift = i - (r1.size() - 1);
            uint64_t c = rem[i] % p;
            if (!c) continue;
            c = c * lead_inv % p;
            q[shift] = uint32_t(c);
            for (size_t j = 0; j < r1.size(); ++j) {
                uint64_t sub = c * r1[j] % p;
                rem[shift + j] = uint32_t((rem[shift + j] + p - sub) % p);
            }
        }
        fp_norm(rem);
        // s_{k+1} = s_{k-1} - q s_k
        FpPoly qs = fp_mul(q, s1, p);
        FpPoly s2(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s2.size(); ++i) {
            uint32_t a = i < s0.size() ? s0[i] : 0;
            uint32_t b = i < qs.size() ? qs[i] : 0;
            s2[i] = (a + p - b % p) % p;
        }
        fp_norm(s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd (a nonzero constant since modulus is irreducible)
    BigInt ci = bi_invmod(BigInt(r0[0]), BigInt(p));
    uint32_t cinv = uint32_t(ci.get_ui());
    std::vector<uint32_t> out(ctx_->d, 0);
    for (size_t i = 0; i < s0.size() && i < out.size(); ++i) out[i] = uint32_t(uint64_t(s0[i]) * cinv % p);
    return FieldElem(ctx_, std::move(out));
}

FieldElem FieldElem::pow(const BigInt& e) const {
    if (e < 0) throw std::invalid_argument("FieldElem::pow: negative exponent");
    if (is_zero()) return e == 0 ? one(ctx_) : *this;
    BigInt ered = bi_mod(e, ctx_->order - 1);
    FieldElem r = one(ctx_);
    FieldElem b = *this;
    for (long i = long(bi_bits(ered)) - 1; i >= 0; --i) {
        r = r * r;
        if (mpz_tstbit(ered.get_mpz_t(), i)) r = r * b;
    }
    return ered == 0 ? one(ctx_) : r;
}

FieldElem FieldElem::frobenius(unsigned n) const { return pow(bi_pow(BigInt(ctx_->p), n)); }

bool FieldElem::operator<(const FieldElem& o) const {
    return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

std::string FieldElem::str() const {
    std::ostringstream os;
    if (ctx_->d == 1) {
        os << c_[0];
        return os.str();
    }
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

uint64_t FieldElem::index() const {
    uint64_t idx = 0;
    for (size_t i = c_.size(); i-- > 0;) idx = idx * ctx_->p + c_[i];
    return idx;
}

FieldElem FieldElem::from_index(const FieldRef& ctx, uint64_t idx) {
    std::vector<uint32_t> c(ctx->d, 0);
    for (uint32_t i = 0; i < ctx->d; ++i) {
        c[i] = uint32_t(idx % ctx->p);
        idx /= ctx->p;
    }
    return FieldElem(ctx, std::move(c));
}

int quadratic_character(const FieldElem& e) {
    if (e.is_zero()) return 0;
    FieldElem t = e.pow((e.ctx()->order - 1) / 2);
    return t == FieldElem::one(e.ctx()) ? 1 : -1;
}

FieldElem field_sqrt(const FieldElem& e) {
    const FieldRef& F = e.ctx();
    if (e.is_zero()) return e;
    if (quadratic_character(e) != 1) throw std::domain_error("field_sqrt: non-residue");
    const BigInt P = F->order;
    FieldElem r = FieldElem::zero(F);
    if (bi_mod(P, 4) == 3) {
        r = e.pow((P + 1) / 4);
    } else {
        // Tonelli-Shanks; non-residue from a deterministic scan
        BigInt Q = P - 1;
        unsigned S = 0;
        while (Q % 2 == 0) {
            Q /= 2;
            ++S;
        }
        FieldElem z = FieldElem::zero(F);
        for (uint64_t k = 1;; ++k) {
            FieldElem cand = FieldElem::from_index(F, k);
            if (quadratic_character(cand) == -1) {
                z = cand;
                break;
            }
        }
        unsigned M = S;
        FieldElem c = z.pow(Q);
        FieldElem t = e.pow(Q);
        r = e.pow((Q + 1) / 2);
        const FieldElem one = FieldElem::one(F);
        while (t != one) {
            unsigned i = 0;
            FieldElem tt = t;
            while (tt != one) {
                tt = tt * tt;
                ++i;
            }
            FieldElem b = c;
            for (unsigned k = 0; k + i + 1 < M; ++k) b = b * b;
            M = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
    }
    FieldElem rn = -r;
    return rn < r ? rn : r;
}

namespace {

// ---- polynomials with FieldElem coefficients (root finding) ----

using EPoly = std::vector<FieldElem>;

void ep_norm(EPoly& a) {
    while (a.size() > 1 && a.back().is_zero()) a.pop_back();
}

EPoly ep_mul(const EPoly& a, const EPoly& b) {
    const FieldRef& F = a[0].ctx();
    EPoly out(a.size() + b.size() - 1, FieldElem::zero(F));
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero())
            for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    ep_norm(out);
    return out;
}

EPoly ep_mod(EPoly a, const EPoly& m) {
    ep_norm(a);
    const size_t dm = m.size() - 1;
    if (dm == 0) return {FieldElem::zero(m[0].ctx())};
    FieldElem lead_inv = m.back().inv();
    for (size_t i = a.size(); i-- > dm;) {
        if (a[i].is_zero()) continue;
        FieldElem c = a[i] * lead_inv;
        for (size_t j = 0; j <= dm; ++j) a[i - dm + j] = a[i - dm + j] - c * m[j];
    }
    a.resize(std::max<size_t>(dm, 1), FieldElem::zero(m[0].ctx()));
    ep_norm(a);
    return a;
}

EPoly ep_powmod(const EPoly& base, const BigInt& e, const EPoly& m) {
    const FieldRef& F = m[0].ctx();
    EPoly r{FieldElem::one(F)};
    EPoly b = ep_mod(base, m);
    for (long i = long(bi_bits(e)) - 1; i >= 0; --i) {
        r = ep_mod(ep_mul(r, r), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = ep_mod(ep_mul(r, b), m);
    }
    return r;
}

EPoly ep_gcd(EPoly a, EPoly b) {
    ep_norm(a);
    ep_norm(b);
    auto zero = [](const EPoly& x) { return x.size() == 1 && x[0].is_zero(); };
    while (!zero(b)) {
        if (a.size() < b.size()) std::swap(a, b);
        a = ep_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

EPoly ep_make_monic(EPoly a) {
    ep_norm(a);
    if (a.back().is_zero()) return a;
    FieldElem li = a.back().inv();
    for (auto& c : a) c = c * li;
    return a;
}

void ep_split_roots(const EPoly& g, std::vector<FieldElem>& out, uint64_t& delta_counter) {
    const FieldRef& F = g[0].ctx();
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        out.push_back(-(g[0] * g[1].inv()));
        return;
    }
    const BigInt half = (F->order - 1) / 2;
    const uint64_t delta_lim =
        F->order > BigInt("4611686018427387904") ? uint64_t(1) << 62 : F->order.get_ui();
    while (true) {
        FieldElem delta = FieldElem::from_index(F, delta_counter++ % delta_lim);
        // (x + delta)^((P-1)/2) - 1 splits the roots into residue classes
        EPoly lin{delta, FieldElem::one(F)};
        EPoly h = ep_powmod(lin, half, g);
        h[0] = h[0] - FieldElem::one(F);
        ep_norm(h);
        EPoly g1 = ep_make_monic(ep_gcd(g, h));
        if (g1.size() > 1 && g1.size() < g.size()) {
            // divide g by g1
            EPoly q(g.size() - g1.size() + 1, FieldElem::zero(F));
            EPoly rem = g;
            for (size_t i = rem.size(); i-- > g1.size() - 1;) {
                size_t shift = i - (g1.size() - 1);
                if (rem[i].is_zero()) continue;
                FieldElem c = rem[i];  // g1 monic
                q[shift] = c;
                for (size_t j = 0; j < g1.size(); ++j) rem[shift + j] = rem[shift + j] - c * g1[j];
            }
            ep_norm(q);
            ep_split_roots(g1, out, delta_counter);
            ep_split_roots(q, out, delta_counter);
            return;
        }
        // the shifted power may also vanish identically on g (all roots at -delta class); retry
    }
}

}  // namespace

std::vector<FieldElem> find_roots(const std::vector<FieldElem>& poly) {
    EPoly f = poly;
    ep_norm(f);
    if (f.size() == 1 && f[0].is_zero()) throw std::invalid_argument("find_roots: zero polynomial");
    if (f.size() == 1) return {};
    FieldRef F = f[0].ctx();  // by value: f is reassigned below
    f = ep_make_monic(f);
    // g = gcd(f, x^P - x) collects exactly the rational roots (with multiplicity one)
    EPoly x{FieldElem::zero(F), FieldElem::one(F)};
    EPoly xp = ep_powmod(x, F->order, f);
    // xp - x
    if (xp.size() < 2) xp.resize(2, FieldElem::zero(F));
    xp[1] = xp[1] - FieldElem::one(F);
    ep_norm(xp);
    EPoly g = ep_make_monic(ep_gcd(f, xp));
    std::vector<FieldElem> roots;
    uint64_t delta_counter = 0;
    if (!(g.size() == 1)) ep_split_roots(g, roots, delta_counter);
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace kcurve
