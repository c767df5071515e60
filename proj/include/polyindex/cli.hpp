#ifndef POLYINDEX_CLI_HPP
#define POLYINDEX_CLI_HPP

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"
#include "indexcore.hpp"
#include "parse.hpp"
#include "report.hpp"

namespace polyindex::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kHypothesisNotMet = 2,
    kInternalInconsistency = 3,
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::HypothesisNotMet:
        case ErrorKind::HypothesisViolated: return kHypothesisNotMet;
        case ErrorKind::InternalInconsistency: return kInternalInconsistency;
        default: return kUsageError;
    }
}

namespace detail {

inline void emit(std::ostream& out, Json doc, bool json) {
    doc["caveat"] = kIrreducibilityCaveat;
    if (json)
        out << doc.dump(2) << '\n';
    else
        write_text(out, doc);
}

inline std::string one_line(std::string s) {
    for (auto& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

}  // namespace detail

/// Runs the command line; reports go to `out`, single-line diagnostics to
/// `err`. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polyindex: p-adic lower bounds on the index of a monic integer polynomial", "polyindex"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = kDefaultSplittingSeed;
    bool json = false;
    app.add_option("--seed", seed, "seed for equal-degree splitting");

    std::string poly_text, f_text, g_text, a_text, b_text;
    std::uint64_t prime = 0;
    unsigned n = 0, m = 0, jobs = 1;
    std::uint64_t trial_bound = kDefaultTrialBound;
    std::vector<std::uint64_t> extra_primes;

    auto* bound = app.add_subcommand("bound", "lower bound on nu_p(Ind(P)) from P mod p");
    bound->add_option("-P", poly_text, "monic polynomial in x")->required();
    bound->add_option("-p", prime, "prime")->required();
    bound->add_flag("--json", json, "emit JSON");

    auto* stab = app.add_subcommand("stab", "stabilizer order of pA + f(a)A");
    stab->add_option("-P", poly_text, "monic polynomial in x")->required();
    stab->add_option("-p", prime, "prime")->required();
    stab->add_option("-f", f_text, "monic divisor of P mod p, same grammar")->required();
    stab->add_flag("--json", json, "emit JSON");

    auto* maximal = app.add_subcommand("maximal", "p-maximality test of Z[a]");
    maximal->add_option("-P", poly_text, "monic polynomial in x")->required();
    maximal->add_option("-p", prime, "prime")->required();
    maximal->add_flag("--json", json, "emit JSON");

    auto* scan_cmd = app.add_subcommand("scan", "scan the primes whose square divides disc(P)");
    scan_cmd->add_option("-P", poly_text, "monic polynomial in x")->required();
    scan_cmd->add_option("--trial-bound", trial_bound, "trial division bound")->capture_default_str();
    scan_cmd->add_option("--primes", extra_primes, "additional primes, comma separated")->delimiter(',');
    scan_cmd->add_option("--jobs", jobs, "primes evaluated concurrently")->check(CLI::PositiveNumber);
    scan_cmd->add_flag("--json", json, "emit JSON");

    auto* family = app.add_subcommand("family", "obstruction for P = g^n + a g^m + b");
    family->add_option("-g", g_text, "monic polynomial g in x")->required();
    family->add_option("-n", n, "outer exponent")->required();
    family->add_option("-m", m, "middle exponent")->required();
    family->add_option("-a", a_text, "middle coefficient")->required();
    family->add_option("-b", b_text, "constant term")->required();
    family->add_option("-p", prime, "prime")->required();
    family->add_flag("--json", json, "emit JSON");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << detail::one_line(e.what()) << '\n';
        return kUsageError;
    }

    try {
        if (bound->parsed()) {
            const BoundReport report = theorem_bound(parse_poly(poly_text), prime, seed);
            Json doc = to_json(report);
            detail::emit(out, std::move(doc), json);
            if (!report.applicable) {
                err << "HypothesisNotMet: T_bar = 0 at p = " << prime << "; no bound is asserted\n";
                return kHypothesisNotMet;
            }
            return kSuccess;
        }
        if (stab->parsed()) {
            const ContextPtr ctx = make_context(parse_poly(poly_text), prime);
            const ModPoly f_bar = reduce_mod_p(parse_poly(f_text), prime);
            Json doc{{"polynomial", ctx->polynomial().to_string()}, {"prime", prime}};
            doc.update(to_json(stabilizer_order(ctx, f_bar)));
            detail::emit(out, std::move(doc), json);
            return kSuccess;
        }
        if (maximal->parsed()) {
            const ContextPtr ctx = make_context(parse_poly(poly_text), prime);
            Json doc{{"polynomial", ctx->polynomial().to_string()}, {"prime", prime}};
            doc.update(to_json(p_maximality_test(ctx)));
            detail::emit(out, std::move(doc), json);
            return kSuccess;
        }
        if (scan_cmd->parsed()) {
            ScanOptions options;
            options.trial_bound = trial_bound;
            options.extra_primes = extra_primes;
            options.jobs = jobs;
            options.seed = seed;
            detail::emit(out, to_json(scan(parse_poly(poly_text), options)), json);
            return kSuccess;
        }
        if (family->parsed()) {
            const IntPoly g = parse_poly(g_text);
            const Integer a = parse_integer(a_text);
            const Integer b = parse_integer(b_text);
            const BoundReport report = family_obstruction(g, n, m, a, b, prime);
            Json doc{{"family", Json{{"g", g.to_string()}, {"n", n}, {"m", m}, {"a", a.str()}, {"b", b.str()}}}};
            doc.update(to_json(report));
            detail::emit(out, std::move(doc), json);
            return kSuccess;
        }
    } catch (const Error& e) {
        err << detail::one_line(e.what()) << '\n';
        return exit_code_for(e.kind());
    }
    err << "usage error: no subcommand\n";
    return kUsageError;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace polyindex::cli

#endif  // POLYINDEX_CLI_HPP
