#ifndef POLYINDEX_INDEXCORE_HPP
#define POLYINDEX_INDEXCORE_HPP

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "integer.hpp"
#include "intpoly.hpp"
#include "modpoly.hpp"
#include "plattice.hpp"

namespace polyindex {

/// Outcome of the stabilizer construction for a decomposition P = f*g + p*T.
struct StabilizerResult {
    IntPoly f;
    IntPoly g;
    IntPoly T;
    ModPoly f_bar;
    ModPoly g_bar;
    ModPoly T_bar;
    ModPoly D_bar;    // gcd(f, g, T) mod p
    ModPoly h_bar;    // f / gcd(f, T) mod p
    ModPoly U_bar;    // P / D mod p
    ModPoly fhT_gcd;  // gcd(f, h, T) mod p, kept for inspection
    unsigned deg_D = 0;
    PLattice lattice;  // A + (U(a)/p) A
    bool order_certified = false;
    bool T_bar_zero = false;
};

/// Builds the stabilizer order from an explicit decomposition P = f*g + p*T.
/// f must be monic with f*g congruent to P mod p. When T vanishes mod p the
/// gcd(x, 0) = x convention is used and the result is only returned if the
/// lattice independently certifies as an order (HypothesisNotMet otherwise).
inline StabilizerResult stabilizer_from_decomposition(const ContextPtr& ctx, const IntPoly& f, const IntPoly& g) {
    const IntPoly& P = ctx->polynomial();
    const std::uint64_t p = ctx->prime();
    if (!f.is_monic()) throw Error(ErrorKind::NonMonic, "f = " + f.to_string() + " is not monic");
    const IntPoly diff = P - f * g;
    if (diff.content() % p != 0)
        throw Error(ErrorKind::NotADivisor, "f*g is not congruent to P modulo " + std::to_string(p));
    const IntPoly T = diff.divided_exactly(Integer(p));

    const ModPoly P_bar = reduce_mod_p(P, p);
    const ModPoly f_bar = reduce_mod_p(f, p);
    const ModPoly g_bar = reduce_mod_p(g, p);
    const ModPoly T_bar = reduce_mod_p(T, p);

    const ModPoly D_bar = gcd(f_bar, g_bar, T_bar);
    const ModPoly h_bar = exact_div(f_bar, gcd(f_bar, T_bar)).monic();
    const ModPoly U_bar = exact_div(P_bar, D_bar);
    if (U_bar != lcm(h_bar * g_bar, f_bar))
        throw Error(ErrorKind::InternalInconsistency,
                    "U = P/D differs from lcm(h*g, f) for f = " + f_bar.to_string());

    PLattice lattice = adjoin_scaled(standard_order(ctx), lift(U_bar), 1);
    const auto deg_D = static_cast<unsigned>(D_bar.degree());
    const unsigned index = index_valuation(lattice, standard_order(ctx));
    if (index != deg_D)
        throw Error(ErrorKind::InternalInconsistency, "stabilizer index " + std::to_string(index) +
                                                          " differs from deg D = " + std::to_string(deg_D));

    const bool certified = certify_order(lattice);
    if (!certified) {
        if (!T_bar.is_zero())
            throw Error(ErrorKind::InternalInconsistency, "stabilizer lattice is not closed under multiplication");
        throw Error(ErrorKind::HypothesisNotMet,
                    "T vanishes mod p and the convention-based stabilizer is not a certified order");
    }

    return StabilizerResult{f,
                            g,
                            T,
                            f_bar,
                            g_bar,
                            T_bar,
                            D_bar,
                            h_bar,
                            U_bar,
                            gcd(f_bar, h_bar, T_bar),
                            deg_D,
                            std::move(lattice),
                            certified,
                            T_bar.is_zero()};
}

/// Stabilizer order of the ideal pA + f(a)A for a monic divisor f_bar of
/// P mod p, using the canonical lifts f = lift(f_bar), g = lift(P_bar/f_bar).
inline StabilizerResult stabilizer_order(const ContextPtr& ctx, const ModPoly& f_bar) {
    const std::uint64_t p = ctx->prime();
    if (f_bar.modulus() != p) throw Error(ErrorKind::ModulusMismatch, "f is not reduced modulo " + std::to_string(p));
    if (!f_bar.is_monic()) throw Error(ErrorKind::NonMonic, "f = " + f_bar.to_string() + " is not monic");
    const ModPoly P_bar = reduce_mod_p(ctx->polynomial(), p);
    auto [g_bar, rem] = divmod(P_bar, f_bar);
    if (!rem.is_zero())
        throw Error(ErrorKind::NotADivisor, f_bar.to_string() + " does not divide " + P_bar.to_string() + " mod " + std::to_string(p));
    return stabilizer_from_decomposition(ctx, lift(f_bar), lift(g_bar));
}

inline StabilizerResult stabilizer_order(const IntPoly& P, std::uint64_t p, const ModPoly& f_bar) {
    return stabilizer_order(make_context(P, p), f_bar);
}

struct FactorReport {
    ModPoly factor;  // P_i mod p
    IntPoly lift;    // P_i
    unsigned degree = 0;
    unsigned multiplicity = 0;   // l_i
    std::optional<unsigned> t;   // multiplicity of P_i in T mod p; empty when T vanishes mod p
    unsigned s = 0;              // min(floor(l_i/2), t_i)
};

/// Lower bound on nu_p(Ind(P)) together with every intermediate witness.
struct BoundReport {
    IntPoly polynomial;
    Integer discriminant;
    std::uint64_t p = 0;
    unsigned disc_valuation = 0;
    IntPoly T;  // (P - prod P_i^l_i) / p
    ModPoly T_bar;
    std::vector<FactorReport> per_factor;
    unsigned bound = 0;
    bool applicable = false;
    /// Stabilizer order for f = prod P_i^s_i when the bound is positive; its
    /// index over A equals the bound.
    std::optional<StabilizerResult> witness;
};

/// Evaluates the bound for a given monic irreducible factorization of P mod p
/// and a choice of monic lifts P_i (one per factor, same order), with a = p.
inline BoundReport theorem_bound_with_lifts(const ContextPtr& ctx, const FactorizationModP& factorization,
                                            const std::vector<IntPoly>& lifts) {
    const IntPoly& P = ctx->polynomial();
    const std::uint64_t p = ctx->prime();
    if (lifts.size() != factorization.factors.size())
        throw Error(ErrorKind::DimensionMismatch, "one lift per irreducible factor is required");

    BoundReport report{P, ctx->discriminant(), p, valuation(ctx->discriminant(), p), {}, ModPoly(p), {}, 0, false, {}};
    IntPoly product = IntPoly::constant(1);
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        const auto& [factor, l] = factorization.factors[i];
        if (!lifts[i].is_monic() || reduce_mod_p(lifts[i], p) != factor)
            throw Error(ErrorKind::InvalidArgument, lifts[i].to_string() + " is not a monic lift of " + factor.to_string());
        product = product * pow(lifts[i], l);
    }
    const IntPoly diff = P - product;
    if (diff.content() % p != 0)
        throw Error(ErrorKind::InvalidArgument, "factorization does not reduce to P modulo " + std::to_string(p));
    report.T = diff.divided_exactly(Integer(p));
    report.T_bar = reduce_mod_p(report.T, p);
    report.applicable = !report.T_bar.is_zero();

    for (std::size_t i = 0; i < lifts.size(); ++i) {
        const auto& [factor, l] = factorization.factors[i];
        FactorReport fr{factor, lifts[i], static_cast<unsigned>(factor.degree()), l, std::nullopt, 0};
        if (report.applicable) {
            fr.t = multiplicity(report.T_bar, factor);
            fr.s = std::min(l / 2, *fr.t);
            report.bound += fr.s * fr.degree;
        }
        report.per_factor.push_back(std::move(fr));
    }

    if (report.applicable && 2 * report.bound > report.disc_valuation)
        throw Error(ErrorKind::InternalInconsistency, "bound " + std::to_string(report.bound) +
                                                          " exceeds half the valuation of the discriminant");

    if (report.bound > 0) {
        // Re-derive the bound through the stabilizer of pA + f(a)A with
        // f = prod P_i^s_i and g = prod P_i^(l_i - s_i), which shares T.
        IntPoly f = IntPoly::constant(1);
        IntPoly g = IntPoly::constant(1);
        for (const auto& fr : report.per_factor) {
            f = f * pow(fr.lift, fr.s);
            g = g * pow(fr.lift, fr.multiplicity - fr.s);
        }
        StabilizerResult witness = stabilizer_from_decomposition(ctx, f, g);
        if (witness.deg_D != report.bound)
            throw Error(ErrorKind::InternalInconsistency, "stabilizer degree " + std::to_string(witness.deg_D) +
                                                              " disagrees with bound " + std::to_string(report.bound));
        report.witness = std::move(witness);
    }
    return report;
}

/// Lower bound on nu_p(Ind(P)) from the factorization of P mod p with
/// canonical lifts. Irreducibility of P over Q is assumed, not checked.
inline BoundReport theorem_bound(const ContextPtr& ctx, std::uint64_t seed = kDefaultSplittingSeed) {
    const FactorizationModP factorization = factor(reduce_mod_p(ctx->polynomial(), ctx->prime()), seed);
    std::vector<IntPoly> lifts;
    for (const auto& [factor, l] : factorization.factors) lifts.push_back(lift(factor));
    return theorem_bound_with_lifts(ctx, factorization, lifts);
}

inline BoundReport theorem_bound(const IntPoly& P, std::uint64_t p, std::uint64_t seed = kDefaultSplittingSeed) {
    return theorem_bound(make_context(P, p), seed);
}

struct MaximalityResult {
    bool maximal = false;
    StabilizerResult witness;
};

/// Dedekind-style test: the stabilizer for f = radical of the square part of
/// P mod p is strictly larger than A exactly when A is not p-maximal.
inline MaximalityResult p_maximality_test(const ContextPtr& ctx) {
    const ModPoly P_bar = reduce_mod_p(ctx->polynomial(), ctx->prime());
    const ModPoly f_bar = radical_and_square_part(P_bar).radical_of_square_part;
    StabilizerResult witness = stabilizer_order(ctx, f_bar);
    const bool maximal = witness.deg_D == 0;
    return {maximal, std::move(witness)};
}

inline MaximalityResult p_maximality_test(const IntPoly& P, std::uint64_t p) {
    return p_maximality_test(make_context(P, p));
}

/// Family P = g^n + a g^m + b with g mod p irreducible, n > 1, n >= m >= 1,
/// nu_p(a) = 1 and nu_p(b) >= 2. The bound is evaluated with g itself as the
/// lift of the single factor, which makes T = (a/p) g^m + b/p.
inline BoundReport family_obstruction(const IntPoly& g, unsigned n, unsigned m, const Integer& a, const Integer& b,
                                      std::uint64_t p) {
    require_prime(p);
    std::vector<std::string> failures;
    if (!g.is_monic()) failures.push_back("g is not monic");
    if (g.degree() < 1) failures.push_back("g has degree 0");
    if (g.is_monic() && g.degree() >= 1 && !is_irreducible(reduce_mod_p(g, p)))
        failures.push_back("g is reducible mod " + std::to_string(p));
    if (n <= 1) failures.push_back("n must exceed 1");
    if (m < 1 || m > n) failures.push_back("m must satisfy 1 <= m <= n");
    if (m == n && n > 1) failures.push_back("m = n makes the leading coefficient 1 + a, so P is not monic");
    if (valuation(a, p) != 1) failures.push_back("nu_p(a) must be exactly 1");
    if (b != 0 && valuation(b, p) < 2) failures.push_back("nu_p(b) must be at least 2");
    if (!failures.empty()) {
        std::string joined;
        for (const auto& f : failures) joined += (joined.empty() ? "" : "; ") + f;
        throw Error(ErrorKind::HypothesisViolated, joined);
    }

    const IntPoly P = pow(g, n) + a * pow(g, m) + IntPoly::constant(b);
    const ContextPtr ctx = make_context(P, p);
    const FactorizationModP factorization{{{reduce_mod_p(g, p), n}}};
    BoundReport report = theorem_bound_with_lifts(ctx, factorization, {g});
    if (!report.applicable || report.bound < static_cast<unsigned>(g.degree()))
        throw Error(ErrorKind::InternalInconsistency, "family bound " + std::to_string(report.bound) +
                                                          " is below deg g = " + std::to_string(g.degree()));
    return report;
}

enum class PrimeSource { TrialDivision, UserSupplied };

inline std::string_view to_string(PrimeSource source) {
    return source == PrimeSource::TrialDivision ? "trial-division" : "user-supplied";
}

struct ScannedPrime {
    std::uint64_t p = 0;
    PrimeSource source = PrimeSource::TrialDivision;
    unsigned disc_valuation = 0;
    bool examined = false;  // false when p^2 does not divide disc
    std::string note;
};

struct Conclusion {
    enum class Kind { ObstructionFound, NoObstructionFound, Inconclusive };
    Kind kind = Kind::NoObstructionFound;
    std::uint64_t prime = 0;  // ObstructionFound only
    unsigned bound = 0;       // ObstructionFound only
    std::vector<std::string> reasons;
};

inline std::string_view to_string(Conclusion::Kind kind) {
    switch (kind) {
        case Conclusion::Kind::ObstructionFound: return "ObstructionFound";
        case Conclusion::Kind::NoObstructionFound: return "NoObstructionFound";
        case Conclusion::Kind::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

struct Certificate {
    IntPoly polynomial;
    Integer discriminant;
    std::uint64_t trial_bound = 0;
    std::vector<ScannedPrime> primes;  // ascending
    std::vector<BoundReport> reports;  // one per examined prime, ascending
    std::optional<Integer> unfactored_cofactor;
    Conclusion conclusion;
};

inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

struct ScanOptions {
    std::uint64_t trial_bound = kDefaultTrialBound;
    std::vector<std::uint64_t> extra_primes;
    unsigned jobs = 1;
    std::uint64_t seed = kDefaultSplittingSeed;
};

/// Runs the bound at every prime whose square divides disc(P): primes up to
/// the trial bound found by trial division plus any user-supplied primes.
inline Certificate scan(const IntPoly& P, const ScanOptions& options = {}) {
    if (!P.is_monic()) throw Error(ErrorKind::NonMonic, P.to_string() + " is not monic");
    if (P.degree() < 2) throw Error(ErrorKind::DegreeZero, "polynomial must have degree at least 2");
    Certificate cert;
    cert.polynomial = P;
    cert.discriminant = discriminant(P);
    cert.trial_bound = options.trial_bound;
    if (cert.discriminant == 0) throw Error(ErrorKind::ZeroDiscriminant, P.to_string() + " has a repeated root");

    Integer cofactor = abs(cert.discriminant);
    auto divide_out = [&cofactor](std::uint64_t d) {
        unsigned e = 0;
        while (cofactor % d == 0) {
            cofactor /= d;
            ++e;
        }
        return e;
    };
    for (std::uint64_t d = 2; d <= options.trial_bound && Integer(d) * d <= cofactor; d += (d == 2 ? 1 : 2)) {
        if (cofactor % d != 0) continue;
        const unsigned e = divide_out(d);
        if (e >= 2) cert.primes.push_back({d, PrimeSource::TrialDivision, e, true, ""});
    }
    const Integer bound_sq = Integer(options.trial_bound + 1) * (options.trial_bound + 1);
    if (cofactor > 1 && cofactor >= bound_sq) cert.unfactored_cofactor = cofactor;

    for (std::uint64_t q : options.extra_primes) {
        require_prime(q);
        if (std::any_of(cert.primes.begin(), cert.primes.end(), [q](const auto& s) { return s.p == q; })) continue;
        const unsigned e = valuation(cert.discriminant, q);
        ScannedPrime sp{q, PrimeSource::UserSupplied, e, e >= 2, ""};
        if (!sp.examined) sp.note = "skipped: p^2 does not divide the discriminant";
        cert.primes.push_back(std::move(sp));
    }
    std::sort(cert.primes.begin(), cert.primes.end(), [](const auto& l, const auto& r) { return l.p < r.p; });

    std::vector<std::uint64_t> examined;
    for (const auto& sp : cert.primes)
        if (sp.examined) examined.push_back(sp.p);

    const unsigned jobs = std::max(1u, options.jobs);
    for (std::size_t start = 0; start < examined.size(); start += jobs) {
        const std::size_t stop = std::min(examined.size(), start + jobs);
        if (jobs == 1) {
            cert.reports.push_back(theorem_bound(P, examined[start], options.seed));
            continue;
        }
        std::vector<std::future<BoundReport>> batch;
        for (std::size_t i = start; i < stop; ++i)
            batch.push_back(std::async(std::launch::async, [&P, q = examined[i], seed = options.seed] {
                return theorem_bound(P, q, seed);
            }));
        for (auto& fut : batch) cert.reports.push_back(fut.get());
    }

    Conclusion& c = cert.conclusion;
    for (const auto& r : cert.reports) {
        if (r.applicable && r.bound >= 1) {
            c.kind = Conclusion::Kind::ObstructionFound;
            c.prime = r.p;
            c.bound = r.bound;
            return cert;
        }
    }
    for (const auto& r : cert.reports)
        if (!r.applicable) c.reasons.push_back("T_bar = 0 at p = " + std::to_string(r.p));
    if (cert.unfactored_cofactor)
        c.reasons.push_back("unfactored discriminant cofactor " + cert.unfactored_cofactor->str() +
                            " exceeds the square of the trial bound");
    c.kind = c.reasons.empty() ? Conclusion::Kind::NoObstructionFound : Conclusion::Kind::Inconclusive;
    return cert;
}

}  // namespace polyindex

#endif  // POLYINDEX_INDEXCORE_HPP
