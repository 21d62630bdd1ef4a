#pragma once

// Bound-formula evaluation with user-supplied constants and discriminant
// range scans that tabulate class data, ramified-prime counts, Weil heights,
// and the bound right-hand sides next to each other.

#include <cmrel/moduli.hpp>
#include <cmrel/quadnt.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmrel {

// The shipped defaults are illustrative placeholders, not calibrated
// constants: every formula is monotone in them, so scans stay comparable
// across runs with the same config.
struct BoundConfig {
    mpq_class epsilon = mpq_class(1, 2);
    double c0 = 1, c1 = 1;       // height bound
    double C1 = 1, C2 = 1;       // isogeny bound / conjectured prime count
    double C3 = 9;               // conjectured prime count root
    double c4 = 1, c5 = 1;       // discriminant comparison
};

namespace detail {

inline void require_positive(double x, const char* what) {
    if (!(x > 0) || !std::isfinite(x))
        throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace detail

// c0 * degree^c1 * (pset_size + absd^epsilon)^c1. The discriminant enters
// through its absolute value.
inline double height_bound_rhs(const BoundConfig& cfg, long degree, long pset_size,
                               long absd) {
    detail::require_positive(cfg.c0, "c0");
    detail::require_positive(cfg.c1, "c1");
    if (cfg.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    if (degree <= 0) throw std::domain_error("degree must be positive");
    if (absd <= 0) throw std::domain_error("|d| must be positive");
    if (pset_size < 0) throw std::domain_error("pset size must be non-negative");
    double eps = cfg.epsilon.get_d();
    return cfg.c0 * std::pow(static_cast<double>(degree), cfg.c1) *
           std::pow(pset_size + std::pow(static_cast<double>(absd), eps), cfg.c1);
}

// C1 + C2 * log(degree).
inline double isogeny_bound_rhs(const BoundConfig& cfg, long degree) {
    if (degree <= 0) throw std::domain_error("degree must be positive");
    return cfg.C1 + cfg.C2 * std::log(static_cast<double>(degree));
}

// C1 * degree^C2 * absd^(1/C3).
inline double conjecture_rhs(const BoundConfig& cfg, long degree, long absd) {
    if (!(cfg.C3 > 0) || !std::isfinite(cfg.C3))
        throw std::invalid_argument("C3 must be positive");
    if (degree <= 0) throw std::domain_error("degree must be positive");
    if (absd <= 0) throw std::domain_error("|d| must be positive");
    return cfg.C1 * std::pow(static_cast<double>(degree), cfg.C2) *
           std::pow(static_cast<double>(absd), 1.0 / cfg.C3);
}

struct BrauerSiegelCheck {
    double lhs, rhs;
    bool holds;
};

// lhs = |d| against rhs = c4 * max(degree, pset_size)^c5.
inline BrauerSiegelCheck brauer_siegel_check(const BoundConfig& cfg, long degree,
                                             long pset_size, long absd) {
    detail::require_positive(cfg.c4, "c4");
    detail::require_positive(cfg.c5, "c5");
    if (degree <= 0) throw std::domain_error("degree must be positive");
    if (absd <= 0) throw std::domain_error("|d| must be positive");
    if (pset_size < 0) throw std::domain_error("pset size must be non-negative");
    double lhs = static_cast<double>(absd);
    double rhs = cfg.c4 * std::pow(static_cast<double>(std::max(degree, pset_size)),
                                   cfg.c5);
    return {lhs, rhs, lhs <= rhs};
}

// ---------------------------------------------------------------------------
// Discriminant range scans.

struct ScanRecord {
    long d = 0;
    long class_number = 0;
    long pset_size = 0;
    double weil_height = 0;
    double htbound_rhs = 0;
    double isogeny_rhs = 0;
    double conjecture_rhs = 0;
    bool ht_ok = false;    // weil_height <= htbound_rhs
    bool conj_ok = false;  // pset_size <= conjecture_rhs
    std::string status = "ok";  // row-level failures land here instead of aborting
};

// Per-row evaluation precision when the caller does not pin one.
inline unsigned scan_row_precision(const Discriminant& d) {
    mpz_class s, r;
    mpz_class v(-d.value);
    mpz_sqrtrem(s.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t());
    if (r != 0) ++s;
    mpz_class bits = 64 + 12 * s * class_number(d);
    if (bits < 128) return 128;
    if (bits > 4096) return 4096;
    return static_cast<unsigned>(bits.get_ui());
}

// One row per valid discriminant value (= 0, 1 mod 4) in the inclusive range,
// skipping d0 itself, ordered by |d| ascending.  precision_bits = 0 picks a
// per-row precision from the class data.
inline std::vector<ScanRecord> scan(const Discriminant& d0, long lo, long hi,
                                    const BoundConfig& cfg,
                                    unsigned precision_bits = 0) {
    if (lo >= 0 || hi >= 0) throw std::domain_error("scan range must be negative");
    if (lo > hi) std::swap(lo, hi);
    std::vector<ScanRecord> rows;
    for (long v = hi; v >= lo; --v) {
        long r4 = ((v % 4) + 4) % 4;
        if (r4 != 0 && r4 != 1) continue;
        if (v == d0.value) continue;
        ScanRecord row;
        row.d = v;
        try {
            Discriminant dj = Discriminant::make(v);
            row.class_number = class_number(dj);
            row.pset_size = static_cast<long>(pset(d0, dj).primes.size());
            unsigned prec = precision_bits ? precision_bits : scan_row_precision(dj);
            row.weil_height = weil_height(dj, prec).height.to_double();
            row.htbound_rhs = height_bound_rhs(cfg, row.class_number, row.pset_size, -v);
            row.isogeny_rhs = isogeny_bound_rhs(cfg, row.class_number);
            row.conjecture_rhs = conjecture_rhs(cfg, row.class_number, -v);
            row.ht_ok = row.weil_height <= row.htbound_rhs;
            row.conj_ok = static_cast<double>(row.pset_size) <= row.conjecture_rhs;
        } catch (const std::exception& e) {
            row.status = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

inline std::string real12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace detail

inline const char* kScanCsvHeader =
    "d,h_class,pset_size,weil_height,htbound_rhs,isogeny_rhs,conjecture_rhs,ht_ok,conj_ok";

// Byte-deterministic CSV: fixed header, 12 significant digits for reals,
// true/false booleans.
inline std::string scan_csv(const std::vector<ScanRecord>& rows) {
    std::string out = kScanCsvHeader;
    out += '\n';
    for (const ScanRecord& r : rows) {
        out += std::to_string(r.d);
        out += ',';
        out += std::to_string(r.class_number);
        out += ',';
        out += std::to_string(r.pset_size);
        out += ',';
        out += detail::real12(r.weil_height);
        out += ',';
        out += detail::real12(r.htbound_rhs);
        out += ',';
        out += detail::real12(r.isogeny_rhs);
        out += ',';
        out += detail::real12(r.conjecture_rhs);
        out += ',';
        out += r.ht_ok ? "true" : "false";
        out += ',';
        out += r.conj_ok ? "true" : "false";
        out += '\n';
    }
    return out;
}

}  // namespace cmrel
