// Command-line front end over the library modules with deterministic
// text/JSON/CSV output.  Exit codes: 0 success, 1 domain error (machine
// readable JSON {error, message} on stdout), 2 usage error (help text on
// stderr).

#include <CLI11.hpp>

#include <cmrel/parse.hpp>
#include <cmrel/reports.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace cmrel;

// Domain failures that deserve a specific machine-readable error code.
struct DomainFailure : std::runtime_error {
    std::string code;
    DomainFailure(std::string c, const std::string& message)
        : std::runtime_error(message), code(std::move(c)) {}
};

unsigned env_prec(unsigned fallback) {
    const char* s = std::getenv("CMREL_PREC");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (*end || v == 0 || v > kGZPrecisionCap)
        throw DomainFailure("invalid_argument", "CMREL_PREC must be an integer in [1, 4096]");
    return static_cast<unsigned>(v);
}

long env_box() {
    const char* s = std::getenv("CMREL_SAMPLE_BOX");
    if (!s || !*s) return 1000;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end || v < 1)
        throw DomainFailure("invalid_argument", "CMREL_SAMPLE_BOX must be a positive integer");
    return v;
}

mpq_class parse_rational(const std::string& text, const char* what) {
    try {
        mpq_class q(text);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw DomainFailure("invalid_argument",
                            std::string(what) + " expects a rational, got '" + text + "'");
    }
}

void emit_json(const ordered_json& j) { std::cout << j.dump() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cmrel: exact relation polynomials, quadratic class data, singular moduli, "
        "and bound scans"};
    app.require_subcommand(1);

    // reduce ----------------------------------------------------------------
    auto* reduce_cmd =
        app.add_subcommand("reduce", "Reduce polynomial text modulo X11*X22 - X12*X21 - 1");
    std::string rd_poly;
    std::vector<std::string> rd_symbols;
    std::vector<std::string> rd_roots;
    bool rd_quotient = false;
    reduce_cmd->add_option("--poly", rd_poly, "polynomial text")->required();
    reduce_cmd->add_option("--symbols", rd_symbols, "free constant names, comma separated")
        ->delimiter(',');
    reduce_cmd->add_option("--root", rd_roots,
                           "root constant as name=radicand (repeatable; declared after "
                           "--symbols names)");
    reduce_cmd->add_flag("--quotient", rd_quotient, "print the quotient on a second line");
    reduce_cmd->callback([&] {
        SymbolTable t;
        for (const std::string& s : rd_symbols) t.add_free(s);
        for (const std::string& s : rd_roots) {
            std::size_t eq = s.find('=');
            if (eq == std::string::npos || eq == 0)
                throw DomainFailure("invalid_argument", "--root expects name=radicand");
            t.add_root(s.substr(0, eq), parse_rational(s.substr(eq + 1), "--root radicand"));
        }
        RelPoly f = parse_relpoly(rd_poly, make_table(std::move(t)));
        ReductionResult res = reduce_sl2(f);
        std::cout << res.remainder.to_string() << "\n";
        if (rd_quotient) std::cout << res.quotient.to_string() << "\n";
    });

    // relations ---------------------------------------------------------------
    auto* rel_cmd =
        app.add_subcommand("relations", "Emit or list the built-in relation polynomials");
    rel_cmd->require_subcommand(1);
    auto* rel_emit = rel_cmd->add_subcommand("emit", "Print the canonical polynomial of a case");
    std::string re_case;
    bool re_reduced = false;
    std::string re_radicand = "9";
    rel_emit->add_option("--case", re_case, "case token (see 'relations list')")->required();
    rel_emit->add_flag("--reduced", re_reduced, "print the reduced remainder instead");
    rel_emit->add_option("--radicand", re_radicand, "radicand of the root constant s")
        ->capture_default_str();
    rel_emit->callback([&] {
        auto kind = case_from_token(re_case);
        if (!kind) throw DomainFailure("unknown_case", "unknown case token '" + re_case + "'");
        RelationSpec spec = build_relation(*kind, parse_rational(re_radicand, "--radicand"));
        std::cout << (re_reduced ? reduce_sl2(spec.polynomial).remainder.to_string()
                                 : spec.polynomial.to_string())
                  << "\n";
    });
    auto* rel_list = rel_cmd->add_subcommand("list", "List all case tokens");
    rel_list->callback([] {
        for (RelationCase c : kAllCases) std::cout << case_token(c) << "\n";
    });

    // nontrivial --------------------------------------------------------------
    auto* nt_cmd =
        app.add_subcommand("nontrivial", "Reduction and witness search for a relation case");
    std::string nt_case;
    unsigned nt_trials = 20;
    std::uint64_t nt_seed = 7;
    long nt_box = 1000;
    std::string nt_radicand = "9";
    nt_cmd->add_option("--case", nt_case, "case token")->required();
    nt_cmd->add_option("--trials", nt_trials, "sampling trials")->capture_default_str();
    nt_cmd->add_option("--seed", nt_seed, "RNG seed, echoed in the report")
        ->capture_default_str();
    nt_cmd->add_option("--box", nt_box,
                       "sampling box half-width (default from CMREL_SAMPLE_BOX or 1000)");
    nt_cmd->add_option("--radicand", nt_radicand, "radicand of the root constant s")
        ->capture_default_str();
    nt_cmd->callback([&] {
        auto kind = case_from_token(nt_case);
        if (!kind) throw DomainFailure("unknown_case", "unknown case token '" + nt_case + "'");
        long box = nt_cmd->count("--box") ? nt_box : env_box();
        RelationSpec spec = build_relation(*kind, parse_rational(nt_radicand, "--radicand"));
        emit_json(report_json(nontrivial_check(spec, nt_trials, nt_seed, box)));
    });

    // pset ----------------------------------------------------------------------
    auto* pset_cmd = app.add_subcommand("pset", "Ramified-prime set of a discriminant pair");
    long ps_d0 = 0, ps_dj = 0;
    bool ps_strict = false;
    pset_cmd->add_option("--d0", ps_d0, "base discriminant")->required();
    pset_cmd->add_option("--dj", ps_dj, "second discriminant")->required();
    pset_cmd->add_flag("--strict-def", ps_strict,
                       "require exactly one ramified odd place instead of p | m");
    pset_cmd->callback([&] {
        emit_json(report_json(
            pset(Discriminant::make(ps_d0), Discriminant::make(ps_dj), ps_strict)));
    });

    // class-number ---------------------------------------------------------------
    auto* h_cmd = app.add_subcommand("class-number", "Class number of a discriminant");
    h_cmd->allow_extras();  // a bare negative number parses as an unknown flag otherwise
    h_cmd->callback([&] {
        std::vector<std::string> extras = h_cmd->remaining();
        if (extras.size() != 1)
            throw CLI::ValidationError("class-number expects exactly one discriminant");
        char* end = nullptr;
        long v = std::strtol(extras[0].c_str(), &end, 10);
        if (*end != '\0' || extras[0].empty())
            throw CLI::ValidationError("not an integer: '" + extras[0] + "'");
        std::cout << class_number(Discriminant::make(v)) << "\n";
    });

    // forms -----------------------------------------------------------------------
    auto* forms_cmd = app.add_subcommand("forms", "Reduced forms of a discriminant");
    long fm_d = 0;
    forms_cmd->add_option("--d", fm_d, "discriminant")->required();
    forms_cmd->callback([&] {
        for (const ReducedForm& f : reduced_forms(Discriminant::make(fm_d)))
            std::cout << f.a << " " << f.b << " " << f.c << "\n";
    });

    // symbols ------------------------------------------------------------------------
    auto* sym_cmd = app.add_subcommand("symbols", "Kronecker and Hilbert symbols");
    sym_cmd->require_subcommand(1);
    auto* kro_cmd = sym_cmd->add_subcommand("kronecker", "Kronecker symbol (a|n)");
    long kr_a = 0, kr_n = 0;
    kro_cmd->add_option("--a", kr_a, "top argument")->required();
    kro_cmd->add_option("--n", kr_n, "bottom argument")->required();
    kro_cmd->callback([&] { std::cout << kronecker(kr_a, kr_n) << "\n"; });
    auto* hil_cmd = sym_cmd->add_subcommand("hilbert", "Hilbert symbol (a,b) at a place");
    long hi_a = 0, hi_b = 0;
    std::string hi_place;
    hil_cmd->add_option("--a", hi_a, "first argument")->required();
    hil_cmd->add_option("--b", hi_b, "second argument")->required();
    hil_cmd->add_option("--place", hi_place, "a prime, or 'inf'")->required();
    hil_cmd->callback([&] {
        HilbertPlace place = HilbertPlace::infinity();
        if (hi_place != "inf") {
            char* end = nullptr;
            long p = std::strtol(hi_place.c_str(), &end, 10);
            if (*end != '\0' || hi_place.empty())
                throw DomainFailure("invalid_argument",
                                    "--place expects a prime or 'inf', got '" + hi_place + "'");
            place = HilbertPlace::finite(p);
        }
        std::cout << hilbert(hi_a, hi_b, place) << "\n";
    });

    // deuring ---------------------------------------------------------------------------
    auto* de_cmd =
        app.add_subcommand("deuring", "Reduction type of the CM order's curve at a prime");
    long de_d = 0, de_p = 0;
    de_cmd->add_option("--d", de_d, "discriminant")->required();
    de_cmd->add_option("--p", de_p, "prime")->required();
    de_cmd->callback([&] {
        std::cout << deuring_token(deuring_classify(Discriminant::make(de_d), de_p)) << "\n";
    });

    // gz -----------------------------------------------------------------------
    auto* gz_cmd = app.add_subcommand("gz", "Difference product of two discriminants");
    long gz_d1 = 0, gz_d2 = 0;
    unsigned gz_prec = 0;
    gz_cmd->add_option("--d1", gz_d1, "first discriminant")->required();
    gz_cmd->add_option("--d2", gz_d2, "second discriminant")->required();
    gz_cmd->add_option("--prec", gz_prec,
                       "precision in bits (omitted: automatic ladder, seeded from "
                       "CMREL_PREC when set)");
    gz_cmd->callback([&] {
        Discriminant a = Discriminant::make(gz_d1), b = Discriminant::make(gz_d2);
        GZReport rep = gz_cmd->count("--prec") ? gz_product(a, b, gz_prec)
                                               : gz_product_auto(a, b, env_prec(0));
        if (!rep.trusted) {
            std::string hint =
                rep.precision_bits >= kGZPrecisionCap
                    ? "already at the precision cap"
                    : "retry with --prec " + std::to_string(rep.suggested_precision);
            throw DomainFailure("untrusted_rounding",
                                "residual " + detail::real12(rep.residual.to_double()) +
                                    " at " + std::to_string(rep.precision_bits) +
                                    " bits is not below 0.25; " + hint);
        }
        emit_json(report_json(rep));
    });

    // height-bound --------------------------------------------------------------
    auto* hb_cmd =
        app.add_subcommand("height-bound", "Evaluate the height bound right-hand side");
    long hb_degree = 0, hb_pset = 0, hb_absd = 0;
    BoundConfig hb_cfg;
    std::string hb_eps = "1/2";
    hb_cmd->add_option("--degree", hb_degree, "field degree of the value")->required();
    hb_cmd->add_option("--pset", hb_pset, "ramified-prime count")->required();
    hb_cmd->add_option("--absd", hb_absd, "|discriminant|")->required();
    hb_cmd->add_option("--c0", hb_cfg.c0, "leading constant")->capture_default_str();
    hb_cmd->add_option("--c1", hb_cfg.c1, "exponent constant")->capture_default_str();
    hb_cmd->add_option("--epsilon", hb_eps, "discriminant exponent (rational)")
        ->capture_default_str();
    hb_cmd->callback([&] {
        hb_cfg.epsilon = parse_rational(hb_eps, "--epsilon");
        std::cout << detail::real12(height_bound_rhs(hb_cfg, hb_degree, hb_pset, hb_absd))
                  << "\n";
    });

    // scan ---------------------------------------------------------------------
    auto* scan_cmd = app.add_subcommand("scan", "Discriminant range scan with CSV output");
    long sc_d0 = 0, sc_from = 0, sc_to = 0;
    unsigned sc_prec = 0;
    std::string sc_out, sc_json, sc_eps = "1/2";
    BoundConfig sc_cfg;
    scan_cmd->add_option("--d0", sc_d0, "base discriminant")->required();
    scan_cmd->add_option("--from", sc_from, "range endpoint (inclusive)")->required();
    scan_cmd->add_option("--to", sc_to, "range endpoint (inclusive)")->required();
    scan_cmd->add_option("--prec", sc_prec,
                         "fixed row precision in bits (omitted: per-row default, or "
                         "CMREL_PREC when set)");
    scan_cmd->add_option("--out", sc_out, "write CSV to this file instead of stdout");
    scan_cmd->add_option("--json", sc_json, "also write a JSON mirror to this file");
    scan_cmd->add_option("--c0", sc_cfg.c0, "height bound constant")->capture_default_str();
    scan_cmd->add_option("--c1", sc_cfg.c1, "height bound exponent")->capture_default_str();
    scan_cmd->add_option("--epsilon", sc_eps, "height bound discriminant exponent (rational)")
        ->capture_default_str();
    scan_cmd->add_option("--C1", sc_cfg.C1, "isogeny/conjecture constant")
        ->capture_default_str();
    scan_cmd->add_option("--C2", sc_cfg.C2, "isogeny/conjecture exponent")
        ->capture_default_str();
    scan_cmd->add_option("--C3", sc_cfg.C3, "conjecture root")->capture_default_str();
    scan_cmd->add_option("--c4", sc_cfg.c4, "discriminant comparison constant")
        ->capture_default_str();
    scan_cmd->add_option("--c5", sc_cfg.c5, "discriminant comparison exponent")
        ->capture_default_str();
    scan_cmd->callback([&] {
        sc_cfg.epsilon = parse_rational(sc_eps, "--epsilon");
        unsigned prec = scan_cmd->count("--prec") ? sc_prec : env_prec(0);
        std::vector<ScanRecord> rows = scan(Discriminant::make(sc_d0), sc_from, sc_to,
                                            sc_cfg, prec);
        std::string csv = scan_csv(rows);
        if (sc_out.empty()) {
            std::cout << csv;
        } else {
            std::ofstream f(sc_out, std::ios::binary);
            if (!f) throw DomainFailure("io_error", "cannot open '" + sc_out + "' for writing");
            f << csv;
        }
        if (!sc_json.empty()) {
            std::ofstream f(sc_json, std::ios::binary);
            if (!f) throw DomainFailure("io_error", "cannot open '" + sc_json + "' for writing");
            f << scan_json(rows).dump() << "\n";
        }
    });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const DomainFailure& e) {
        emit_json({{"error", e.code}, {"message", e.what()}});
        return 1;
    } catch (const cmrel::ParseError& e) {
        emit_json({{"error", "syntax_error"}, {"message", e.what()}});
        return 1;
    } catch (const std::domain_error& e) {
        emit_json({{"error", "domain_error"}, {"message", e.what()}});
        return 1;
    } catch (const std::invalid_argument& e) {
        emit_json({{"error", "invalid_argument"}, {"message", e.what()}});
        return 1;
    } catch (const std::exception& e) {
        emit_json({{"error", "internal_error"}, {"message", e.what()}});
        return 1;
    }
}
