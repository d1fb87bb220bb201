#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kcurve/tower.hpp"

namespace kcurve {

struct TableRow {
    std::string table;  // "I".."V"
    int row = 0;
    std::string equation, roots, ef, k2, lambda, sylow;
    std::vector<std::string> kcols;  // K4, K6, K8, K10, K12 when present
    bool malformed = false;
    Curve curve;  // parsed equation (registered plausible reading when malformed)
    BigInt trace;
    BigInt N;
};

struct Erratum {
    std::string table;
    int row = 0;
    std::string cell, kind, printed, recomputed, note;
};

struct Atlas {
    std::string dir;
    std::vector<TableRow> rows;
    std::vector<Erratum> errata;

    const Erratum* find_erratum(const std::string& table, int row, const std::string& cell) const;
    std::vector<const TableRow*> table_rows(const std::string& id) const;
    const TableRow* row_at(const std::string& id, int row) const;
};

// loads the CSVs, verifies file checksums and sidecar agreement; throws on any integrity problem
Atlas load_golden(const std::string& data_dir);

struct CellCheck {
    enum Status { Match, Registered, Anomaly, Mismatch };
    Status status = Match;
    std::string cell, printed, computed, note;
};

struct RowReport {
    std::string table;
    int row = 0;
    std::vector<CellCheck> cells;
    bool ok() const;        // no Mismatch
    unsigned findings() const;  // Registered + Anomaly count
};

RowReport verify_row(const Atlas& atlas, const TableRow& row, const Caps& caps, uint64_t seed);

struct DuplicateFinding {
    std::string table;
    int row_a = 0, row_b = 0;
    std::string equation;
    std::string resolution;
};

// equation-text collisions; resolves data attribution by recomputed trace
std::vector<DuplicateFinding> duplicate_scan(const Atlas& atlas);

// recompute every value-erratum and check the registered value; returns failure messages
std::vector<std::string> validate_errata(const Atlas& atlas, const Caps& caps, uint64_t seed);

struct VerifyOutcome {
    std::vector<RowReport> rows;
    std::vector<DuplicateFinding> duplicates;
    std::vector<std::string> errata_failures;
    bool ok = false;
    unsigned findings = 0;
};

VerifyOutcome verify_tables(const Atlas& atlas, const Caps& caps, uint64_t seed, const std::string& table_filter = "",
                            unsigned threads = 0);

// ---- text helpers (golden cell grammar) ----

// "y^2=x^3[+-c]x^2[+-c]x[+-c]" -> (a2, a4, a6)
std::optional<std::tuple<long, long, long>> parse_equation(const std::string& eq);
// "{O}" / "1" / "Z/4Z x Z/34Z"
InvariantFactors parse_group_text(const std::string& s);
// "lambda(2)=2, lambda(3)=lambda(37)=1" -> {(2,2),(3,1),(37,1)}
std::vector<std::pair<BigInt, int>> parse_lambda_text(const std::string& s);

struct SylowClaim {
    BigInt l;
    std::vector<int> offsets;  // sorted ascending
    unsigned onset = 0;
};
// "K_2(2^m)(2) ~ Z/2^{m+1}Z x Z/2^{m}Z, m >= 2; ..." -> claims
std::vector<SylowClaim> parse_sylow_text(const std::string& s);

uint64_t fnv1a64(const std::string& bytes);

}  // namespace kcurve
