#pragma once

// Command-line front end. Exit codes: 0 all requested checks pass, 1 some
// check failed (or the construction got stuck), 2 usage error.

#include "fibnest/exact.hpp"
#include "fibnest/fibonacci.hpp"
#include "fibnest/lemma_search.hpp"
#include "fibnest/nest_builder.hpp"
#include "fibnest/oracle.hpp"
#include "fibnest/report.hpp"
#include "fibnest/surd.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fibnest::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Previously known constant for the uniform quantity, quoted by limit-table.
inline constexpr const char* kPriorBound = "0.005326";

enum class Format { text, json, csv };

struct RunConfig {
    std::string subcommand;
    Format format = Format::text;
    std::string output_path;
    ScanOptions scan;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void emit(std::ostream& out, const RunConfig& cfg, const BoundReport& r) {
    switch (cfg.format) {
        case Format::json: out << to_json(r).dump(2) << "\n"; break;
        case Format::csv: out << kCsvHeader << "\n" << csv_row(r) << "\n"; break;
        case Format::text: write_text(out, r); break;
    }
}

inline void emit(std::ostream& out, const RunConfig& cfg, const Report& r) {
    switch (cfg.format) {
        case Format::json: out << to_json(r).dump(2) << "\n"; break;
        case Format::csv:
            out << kCsvHeader << "\n";
            for (const auto& c : r.checks) out << csv_row(c) << "\n";
            break;
        case Format::text: write_text(out, r); break;
    }
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << contents;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline Certificate load_certificate(const std::string& path) {
    try {
        return certificate_from_json(Json::parse(read_file(path)));
    } catch (const Json::exception& e) {
        throw UsageError("malformed certificate '" + path + "': " + e.what());
    }
}

inline Rat to_rat(double v) { return Rat(mpq_class(v)); }

/// Footer for limit-table: achieved constants against the prior bound.
inline std::string comparison_footer(const std::vector<MinRecord>& rows) {
    const MinRecord* lo = &rows.front();
    const MinRecord* hi = &rows.front();
    for (const auto& r : rows) {
        if (r.scaled < lo->scaled) lo = &r;
        if (r.scaled > hi->scaled) hi = &r;
    }
    return "# comparison: scaled minima over n=" + std::to_string(rows.front().n) + ".." +
           std::to_string(rows.back().n) + " lie in [" + lo->scaled.decimal(6) + ", " + hi->scaled.decimal(6) +
           "] against the prior bound " + kPriorBound + "; target " + kLittlewoodConstantLabel + " = " +
           littlewood_constant().decimal(6);
}

}  // namespace detail

/// Parses argv and runs one subcommand, writing results to `out` and
/// diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Nested Fibonacci-interval construction and exact Littlewood-bound verification", "fibnest"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "text";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--threads", cfg.scan.threads, "Scan workers (results do not depend on it)")
            ->check(CLI::Range(1u, 256u));
        sub->add_option("--cap", cfg.scan.cap, "Largest F_n a residue scan accepts")
            ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));
    };

    int depth = 0, n0 = 5, n = 0, level = 1, proxy = 2, n_from = 0, n_to = 0, k = 0;
    std::int64_t x_max = 0, count = 0, brute_cap = 10'000'000, j_max = 64;
    std::string a_text = "1", delta = "pow2", strategy = "auto", in_path, cap_text = "7/20";

    auto* construct = app.add_subcommand("construct", "Build a certificate and verify it");
    construct->add_option("--depth", depth, "Stages beyond the seed")->required()->check(CLI::NonNegativeNumber);
    construct->add_option("--n0", n0, "Smallest Fibonacci index for stage 1")->check(CLI::Range(4, 100000));
    construct->add_option("--delta", delta, "delta schedule")->check(CLI::IsMember({"pow2", "harmonic"}));
    construct->add_option("--strategy", strategy, "Lemma search strategy")
        ->check(CLI::IsMember({"auto", "brute", "two_scale"}));
    construct->add_option("--brute-cap", brute_cap, "Exhaustive scan limit")->check(CLI::PositiveNumber);
    construct->add_option("--j-max", j_max, "Coprimality adjustment range")->check(CLI::NonNegativeNumber);
    construct->add_option("--out", cfg.output_path, "Certificate path (stdout when absent)");
    add_common(construct);

    auto* verify = app.add_subcommand("verify-cert", "Verify a certificate file");
    verify->add_option("--in", in_path, "Certificate path")->required();
    add_common(verify);

    auto* min_scan = app.add_subcommand("min-scan", "Exact residue min-product and the q5 comparison");
    min_scan->add_option("--n", n, "Fibonacci index")->required();
    min_scan->add_option("--a", a_text, "Numerator coprime to F_n");
    add_common(min_scan);

    auto* table = app.add_subcommand("limit-table", "CSV of F_n * min product over a range of n");
    table->add_option("--n-from", n_from, "First index")->required();
    table->add_option("--n-to", n_to, "Last index")->required();
    table->add_option("--out", cfg.output_path, "CSV path (stdout when absent)");
    add_common(table);

    auto* q1 = app.add_subcommand("q1", "Non-convergent gap x^2 |F_{n-1}/F_n - y/x| >= 1/2");
    q1->add_option("--n", n, "Fibonacci index")->required();
    q1->add_option("--x-max", x_max, "Largest denominator")->required();
    add_common(q1);

    auto* q2 = app.add_subcommand("q2", "Gap to the convergent F_{k-1}/F_k");
    q2->add_option("--n", n, "Fibonacci index")->required();
    q2->add_option("--k", k, "Convergent index")->required();
    add_common(q2);

    auto* littlewood = app.add_subcommand("littlewood", "Certified lower bound for the constructed pair");
    littlewood->add_option("--cert", in_path, "Certificate path")->required();
    littlewood->add_option("--level", level, "Level defining Q = F_{n_level}");
    littlewood->add_option("--proxy", proxy, "Deeper level standing in for (alpha, beta)");
    add_common(littlewood);

    auto* disc = app.add_subcommand("discrepancy", "Star discrepancy of {F_{n-1} x/F_n}, x <= N");
    disc->add_option("--n", n, "Fibonacci index")->required();
    disc->add_option("--count", count, "Number of points N")->required();
    disc->add_option("--log-cap", cap_text, "Cap for N D*/ln(N+1), as p/q");
    add_common(disc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.format = format == "json" ? Format::json : (format == "csv" ? Format::csv : Format::text);

    try {
        if (construct->parsed()) {
            SearchConfig search;
            search.strategy = strategy_from_string(strategy);
            search.brute_cap = brute_cap;
            search.j_max = j_max;
            const Certificate cert = build(depth, DeltaSchedule::from_name(delta), n0, search);
            const std::string text = dump_certificate(cert);
            const Report report = verify_certificate(cert);
            if (cfg.output_path.empty()) {
                out << text;
            } else {
                detail::write_file(cfg.output_path, text);
                detail::emit(out, cfg, report);
            }
            return report.pass() ? kExitPass : kExitFail;
        }
        if (verify->parsed()) {
            const Report report = verify_certificate(detail::load_certificate(in_path));
            detail::emit(out, cfg, report);
            return report.pass() ? kExitPass : kExitFail;
        }
        if (min_scan->parsed()) {
            const MinRecord rec = min_product(n, parse_int(a_text), cfg.scan);
            const BoundReport q5 = check_q5(rec);
            if (cfg.format == Format::text) {
                out << "n = " << rec.n << "\nF_n = " << fib(rec.n).get_str() << "\na = " << rec.a.get_str()
                    << "\nx_min = " << rec.x_min.get_str() << "\nmin = " << rec.value.str()
                    << "\nscaled = " << rec.scaled.str() << " (" << rec.scaled.decimal(kReportDigits) << ")"
                    << "\npass_strict: " << (q5.pass ? "true" : "false") << "\n";
            }
            detail::emit(out, cfg, q5);
            return q5.pass ? kExitPass : kExitFail;
        }
        if (table->parsed()) {
            if (n_from < 3 || n_to < n_from) throw UsageError("limit-table: need 3 <= n-from <= n-to");
            std::ostringstream csv;
            csv << "n,F_n,scaled,decimal,pass_strict\n";
            std::vector<MinRecord> rows;
            for (int i = n_from; i <= n_to; ++i) {
                rows.push_back(min_product(i, Int(1), cfg.scan));
                const BoundReport q5 = check_q5(rows.back());
                csv << i << "," << fib(i).get_str() << "," << rows.back().scaled.str() << ","
                    << rows.back().scaled.decimal(kReportDigits) << "," << (q5.pass ? "true" : "false") << "\n";
            }
            csv << detail::comparison_footer(rows) << "\n";
            if (cfg.output_path.empty()) {
                out << csv.str();
            } else {
                detail::write_file(cfg.output_path, csv.str());
            }
            return kExitPass;
        }
        if (q1->parsed()) {
            const BoundReport r = check_q1(n, x_max);
            detail::emit(out, cfg, r);
            return r.pass ? kExitPass : kExitFail;
        }
        if (q2->parsed()) {
            const GapRecord g = gap_convergents(n, k);
            if (cfg.format == Format::text) {
                out << "gap = " << g.gap.str() << "\nclosed form F_{n-k}/(F_n F_k) = " << g.closed_form.str()
                    << "\nidentity: " << (g.identity_holds ? "holds" : "VIOLATED") << "\n";
            }
            detail::emit(out, cfg, g.bound);
            return g.bound.pass && g.identity_holds ? kExitPass : kExitFail;
        }
        if (littlewood->parsed()) {
            const LittlewoodBound b =
                littlewood_lower_bound(detail::load_certificate(in_path), level, proxy, cfg.scan);
            if (cfg.format == Format::text) {
                out << "Q = " << b.q.get_str() << "\nx_max = " << b.budget.x_max.get_str()
                    << "\nper_x_error = " << b.budget.per_x_error.str()
                    << "\nproduct_error = " << b.budget.product_error.str() << "\n";
            }
            detail::emit(out, cfg, b.report);
            return b.report.pass ? kExitPass : kExitFail;
        }
        if (disc->parsed()) {
            const DiscrepancyRecord rec = star_discrepancy(n, count, cfg.scan);
            const BoundReport r = check_log_discrepancy(rec, Rat::parse(cap_text));
            if (cfg.format == Format::text) {
                out << "D* = " << rec.d_star.str() << " (" << rec.d_star.decimal(kReportDigits) << ")"
                    << "\nN D* = " << rec.scaled.str() << "\nN D*/ln(N+1) = "
                    << detail::to_rat(rec.log_normalized).decimal(12) << "\n";
            }
            detail::emit(out, cfg, r);
            return r.pass ? kExitPass : kExitFail;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DepthUnreachable& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace fibnest::cli
