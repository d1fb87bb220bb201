#include <CLI11.hpp>

#include <iostream>
#include <set>

#include "kcurve/atlas.hpp"

using namespace kcurve;

namespace {

#ifndef KCURVE_DATA_DIR
#define KCURVE_DATA_DIR "data"
#endif

struct Options {
    std::string format = "human";
    uint64_t seed = 0;
    Caps caps;
    std::string data_dir = KCURVE_DATA_DIR;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--seed", opt.seed, "PRNG seed");
    cmd->add_option("--enum-bound", opt.caps.enum_bound, "largest field size enumerated");
    cmd->add_option("--degree-cap", opt.caps.degree_cap, "extension degree cap");
    cmd->add_option("--bits-budget", opt.caps.bits_budget, "big-integer budget for towers (bits)");
    cmd->add_option("--format", opt.format, "human|csv|kv")->check(CLI::IsMember({"human", "csv", "kv"}));
}

struct MRange {
    unsigned lo = 1, hi = 6;
};

MRange parse_mrange(const std::string& s) {
    MRange r;
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = unsigned(std::stoul(s));
    } else {
        r.lo = unsigned(std::stoul(s.substr(0, dots)));
        r.hi = unsigned(std::stoul(s.substr(dots + 2)));
    }
    if (r.lo < 1 || r.hi < r.lo) throw CLI::ValidationError("--m", "range must be A..B with 1 <= A <= B");
    return r;
}

void emit_kv(const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) std::cout << k << "=" << v << "\n";
}

int cmd_curve_info(const std::string& spec, const Options& opt) {
    Curve c = parse_curve(spec);
    ZetaData z = zeta_data(c);
    InvariantFactors ef = ef_structure(c);
    std::vector<std::pair<std::string, std::string>> kv{
        {"curve", curve_str(c)},
        {"equation", curve_equation(c)},
        {"disc", std::to_string(discriminant(c.p, c.a2, c.a4, c.a6))},
        {"N", z.N.get_str()},
        {"EF", ef.str()},
        {"trace", z.a.get_str()},
        {"D", z.D.get_str()},
        {"roots", z.surd},
    };
    if (opt.format == "kv") {
        emit_kv(kv);
    } else if (opt.format == "csv") {
        std::cout << "curve,disc,N,EF,trace,D,roots\n"
                  << curve_str(c) << "," << kv[2].second << "," << z.N.get_str() << "," << ef.str_csv() << ","
                  << z.a.get_str() << "," << z.D.get_str() << "," << z.surd << "\n";
    } else {
        for (const auto& [k, v] : kv) std::cout << k << ": " << v << "\n";
    }
    return 0;
}

int cmd_kgroup(const std::string& spec, const std::string& mrange, uint64_t n, const Options& opt) {
    Curve c = parse_curve(spec);
    MRange r = parse_mrange(mrange);
    Prng rng(opt.seed);
    if (opt.format == "csv") std::cout << "m,n,order,structure,verified\n";
    for (unsigned m = r.lo; m <= r.hi; ++m) {
        Prng task = rng.split(m);
        KGroupStructure ks = kgroup_structure(c, n, m, opt.caps, task);
        if (opt.format == "csv") {
            std::cout << m << "," << n << "," << ks.order.get_str() << "," << ks.factors.str_csv() << ","
                      << (ks.verified ? "1" : "0") << "\n";
        } else if (opt.format == "kv") {
            std::cout << "m=" << m << " order=" << ks.order.get_str() << " structure=" << ks.factors.str_csv()
                      << " verified=" << (ks.verified ? "1" : "0") << "\n";
        } else {
            std::cout << "K_" << 2 * m << "(E/F_" << c.p;
            if (n > 1) std::cout << "^" << n;
            std::cout << ") = " << ks.factors.str() << "  (order " << ks.order.get_str();
            if (ks.factors.factors().size() > 1) std::cout << ", primary " << ks.factors.str_primary();
            std::cout << ")";
            if (!ks.verified) std::cout << "  [structure unverified: " << ks.note << "]";
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_tower(const std::string& spec, long lval, unsigned max_m, const Options& opt) {
    Curve c = parse_curve(spec);
    ZetaData z = zeta_data(c);
    BigInt l(lval);
    if (bi_mod(kgroup_order(z.a, z.q, 1, 1), l) != 0) {
        std::cerr << "error: " << l.get_str() << " does not divide #K_2(E/F_" << c.p << ")\n";
        return 2;
    }
    Prng rng(opt.seed);
    TowerReport rep = tower_structures(c, l, max_m, opt.caps, rng);
    std::string formula = rep.offsets_ok ? sylow_formula(l, rep.offsets, rep.m0_struct) : "<no stable formula>";
    if (opt.format == "kv" || opt.format == "csv") {
        std::ostringstream vs;
        for (size_t i = 0; i < rep.valuations.size(); ++i) vs << (i ? " " : "") << rep.valuations[i];
        std::ostringstream st;
        for (size_t i = 0; i < rep.structures.size(); ++i) {
            const auto& s = rep.structures[i];
            st << (i ? " " : "") << s.m << ":" << s.e1 << "+" << s.e2 << (s.verified ? "" : "?");
        }
        emit_kv({{"l", l.get_str()},
                 {"lambda", std::to_string(rep.lambda)},
                 {"nu", std::to_string(rep.nu)},
                 {"m0", std::to_string(rep.m0)},
                 {"valuations", vs.str()},
                 {"structures", st.str()},
                 {"formula", formula},
                 {"fully_verified", rep.fully_verified ? "1" : "0"}});
    } else {
        std::cout << "l = " << l.get_str() << ": lambda = " << rep.lambda << ", nu = " << rep.nu
                  << ", m0 = " << rep.m0 << "\n";
        std::cout << "valuations v_m:";
        for (auto v : rep.valuations) std::cout << " " << v;
        std::cout << "\n" << formula << "\n";
        for (const auto& s : rep.structures) {
            std::cout << "  level m=" << s.m << ": exponents (" << s.e1 << ", " << s.e2 << ")"
                      << (s.verified ? "" : " [unverified: " + s.note + "]") << "\n";
        }
        if (!rep.fully_verified) std::cout << "partial verification: " << rep.flags << "\n";
    }
    return 0;
}

// representative of each isomorphism class: lexicographically least (a2,a4,a6) in the
// orbit under x -> u^2 x + r, y -> u^3 y
std::vector<Curve> curve_classes(uint32_t p) {
    auto md = [&](long v) {
        long r = v % long(p);
        return uint32_t(r < 0 ? r + p : r);
    };
    std::set<std::tuple<uint32_t, uint32_t, uint32_t>> reps;
    std::vector<Curve> out;
    for (uint32_t a2 = 0; a2 < p; ++a2)
        for (uint32_t a4 = 0; a4 < p; ++a4)
            for (uint32_t a6 = 0; a6 < p; ++a6) {
                if (discriminant(p, a2, a4, a6) == 0) continue;
                auto canon = std::make_tuple(a2, a4, a6);
                for (uint32_t u = 1; u < p; ++u) {
                    BigInt u2inv = bi_invmod(BigInt(u) * u, BigInt(p));
                    long iu2 = long(u2inv.get_ui());
                    long iu4 = md(iu2 * iu2);
                    long iu6 = md(iu4 * iu2);
                    for (uint32_t r = 0; r < p; ++r) {
                        long b2 = md((3 * long(r) + a2) * iu2);
                        long b4 = md((3 * long(r) * r + 2 * long(a2) * r + a4) * iu4);
                        long b6 = md(((long(r) * r % p) * r + long(a2) * r % p * r + long(a4) * r + a6) * iu6);
                        canon = std::min(canon, std::make_tuple(uint32_t(b2), uint32_t(b4), uint32_t(b6)));
                    }
                }
                if (canon == std::make_tuple(a2, a4, a6) && !reps.count(canon)) {
                    reps.insert(canon);
                    out.push_back(make_curve(p, a2, a4, a6));
                }
            }
    std::stable_sort(out.begin(), out.end(), [](const Curve& a, const Curve& b) {
        return count_points_enumerated(a, 1) < count_points_enumerated(b, 1);
    });
    return out;
}

int cmd_tables(uint32_t field, const Options& opt) {
    if (field < 3 || !is_prime(BigInt(field))) {
        std::cerr << "error: --field must be an odd prime\n";
        return 2;
    }
    auto classes = curve_classes(field);
    Prng rng(opt.seed);
    if (opt.format == "csv") std::cout << "no,curve,equation,roots,EF,K2,lambda\n";
    unsigned no = 0;
    for (const auto& c : classes) {
        ++no;
        ZetaData z = zeta_data(c);
        InvariantFactors ef = ef_structure(c);
        Prng task = rng.split(no);
        KGroupStructure k2 = kgroup_structure(c, 1, 1, opt.caps, task);
        std::ostringstream lam;
        bool first = true;
        for (const auto& [l, e] : factorize(k2.order).factors) {
            (void)e;
            LambdaFit fit = lambda_invariant(c, l, opt.caps);
            lam << (first ? "" : ", ") << "lambda(" << l.get_str() << ")=" << fit.lambda;
            first = false;
        }
        if (opt.format == "csv") {
            std::cout << no << "," << curve_str(c) << "," << curve_equation(c) << "," << z.surd << ","
                      << ef.str_csv() << "," << k2.factors.str_csv() << ",\"" << lam.str() << "\"\n";
        } else if (opt.format == "kv") {
            std::cout << "no=" << no << " curve=" << curve_str(c) << " roots=" << z.surd
                      << " EF=" << ef.str_csv() << " K2=" << k2.factors.str_csv() << " lambda=\"" << lam.str()
                      << "\"\n";
        } else {
            std::cout << no << ". " << curve_equation(c) << "  roots " << z.surd << "  E(F) " << ef.str()
                      << "  K_2 " << k2.factors.str() << "  " << lam.str() << "\n";
        }
    }
    return 0;
}

const char* status_name(CellCheck::Status s) {
    switch (s) {
        case CellCheck::Match: return "match";
        case CellCheck::Registered: return "registered-erratum";
        case CellCheck::Anomaly: return "duplicate-anomaly";
        default: return "MISMATCH";
    }
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

int cmd_verify(const std::string& table, const Options& opt) {
    Atlas atlas = load_golden(opt.data_dir);
    VerifyOutcome out = verify_tables(atlas, opt.caps, opt.seed, table);
    if (opt.format == "csv") {
        std::cout << "table,row,cell,status,printed,computed\n";
        for (const auto& r : out.rows)
            for (const auto& cc : r.cells)
                std::cout << r.table << "," << r.row << "," << cc.cell << "," << status_name(cc.status) << ","
                          << csv_quote(cc.printed) << "," << csv_quote(cc.computed) << "\n";
        for (const auto& d : out.duplicates)
            std::cout << d.table << "," << d.row_a << "/" << d.row_b << ",equation,duplicate,"
                      << csv_quote(d.equation) << "," << csv_quote(d.resolution) << "\n";
        for (const auto& f : out.errata_failures) std::cout << ",,errata,MISMATCH," << csv_quote(f) << ",\n";
        std::cout << "summary,,,," << (out.ok ? "ok" : "failed") << "," << out.findings << "\n";
    } else if (opt.format == "kv") {
        for (const auto& r : out.rows)
            for (const auto& cc : r.cells)
                std::cout << r.table << "." << r.row << "." << cc.cell << "=" << status_name(cc.status) << "\n";
        for (const auto& d : out.duplicates)
            std::cout << d.table << "." << d.row_a << "/" << d.row_b << ".equation=duplicate\n";
        for (const auto& f : out.errata_failures) std::cout << "errata_failure=" << f << "\n";
        std::cout << "ok=" << (out.ok ? 1 : 0) << "\nfindings=" << out.findings << "\n";
    } else {
        unsigned cells = 0;
        for (const auto& r : out.rows) {
            cells += unsigned(r.cells.size());
            for (const auto& cc : r.cells) {
                if (cc.status == CellCheck::Match) continue;
                std::cout << "[" << status_name(cc.status) << "] " << r.table << " row " << r.row << " " << cc.cell
                          << ": printed '" << cc.printed << "' computed '" << cc.computed << "'"
                          << (cc.note.empty() ? "" : " (" + cc.note + ")") << "\n";
            }
        }
        for (const auto& d : out.duplicates)
            std::cout << "[duplicate] " << d.table << " rows " << d.row_a << "/" << d.row_b << ": '" << d.equation
                      << "' (" << d.resolution << ")\n";
        for (const auto& f : out.errata_failures) std::cout << "[MISMATCH] errata: " << f << "\n";
        std::cout << (out.ok ? "OK" : "FAILED") << ": " << out.rows.size() << " rows, " << cells << " cells, "
                  << out.findings << " registered findings\n";
    }
    return out.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orders and structures of even K-groups of elliptic curves over small prime fields"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--data-dir", opt.data_dir, "golden data directory");

    std::string spec, mrange = "1..6", table;
    uint64_t n = 1;
    long lval = 0;
    unsigned max_m = 3;
    uint32_t field = 0;

    auto* info = app.add_subcommand("curve-info", "base-field data of one curve");
    info->add_option("spec", spec, "curve p:a2:a4:a6")->required();
    add_common(info, opt);

    auto* kg = app.add_subcommand("kgroup", "orders and structures of K_{2m}");
    kg->add_option("spec", spec)->required();
    kg->add_option("--m", mrange, "index range A..B (K_{2m})");
    kg->add_option("--n", n, "base extension degree");
    add_common(kg, opt);

    auto* tw = app.add_subcommand("tower", "l-Sylow growth along F_{q^{l^m}}");
    tw->add_option("spec", spec)->required();
    tw->add_option("--l", lval, "prime l")->required();
    tw->add_option("--max-m", max_m, "deepest structure level to verify");
    add_common(tw, opt);

    auto* tb = app.add_subcommand("tables", "recompute the table for a field");
    tb->add_option("--field", field, "odd prime p")->required();
    add_common(tb, opt);

    auto* vf = app.add_subcommand("verify", "recompute every golden cell");
    vf->add_option("--table", table, "restrict to one table (I..V)");
    add_common(vf, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (info->parsed()) return cmd_curve_info(spec, opt);
        if (kg->parsed()) return cmd_kgroup(spec, mrange, n, opt);
        if (tw->parsed()) return cmd_tower(spec, lval, max_m, opt);
        if (tb->parsed()) return cmd_tables(field, opt);
        if (vf->parsed()) return cmd_verify(table, opt);
    } catch (const SingularCurveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
