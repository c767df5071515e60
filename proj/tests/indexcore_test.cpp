#include <gtest/gtest.h>

#include <polyindex/indexcore.hpp>

#include <random>

#include "oracles.hpp"

namespace polyindex {
namespace {

const IntPoly X = IntPoly::x();
ModPoly M(std::uint64_t p, std::initializer_list<ModPoly::Residue> c) { return ModPoly(p, c); }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

TEST(Oracle, KnownIndices) {
    EXPECT_EQ(oracle::exact_index_valuation(IntPoly{-48, 0, 1}, 2), 2u);     // Z[4 sqrt3] in Z[sqrt3]
    EXPECT_EQ(oracle::exact_index_valuation(IntPoly{-5, 0, 1}, 2), 1u);      // golden ratio
    EXPECT_EQ(oracle::exact_index_valuation(IntPoly{-54, 0, 0, 1}, 3), 3u);  // Z[3 cbrt2]
    EXPECT_EQ(oracle::exact_index_valuation(IntPoly{-54, 0, 0, 1}, 2), 0u);
    EXPECT_EQ(oracle::exact_index_valuation(IntPoly{-10, 0, 0, 1}, 3), 1u);  // 10 = 1 mod 9
}

TEST(TheoremBound, EisensteinQuadratic) {
    const BoundReport r = theorem_bound(IntPoly{4, 2, 1}, 2);
    ASSERT_EQ(r.per_factor.size(), 1u);
    EXPECT_EQ(r.per_factor[0].factor, M(2, {0, 1}));
    EXPECT_EQ(r.per_factor[0].multiplicity, 2u);
    EXPECT_EQ(r.per_factor[0].t, 1u);
    EXPECT_EQ(r.per_factor[0].s, 1u);
    EXPECT_EQ(r.T_bar, M(2, {0, 1}));
    EXPECT_EQ(r.bound, 1u);
    EXPECT_TRUE(r.applicable);
    EXPECT_EQ(oracle::exact_index_valuation(IntPoly{4, 2, 1}, 2), 1u);
}

TEST(TheoremBound, SqrtTwoIsTwoMaximal) {
    const BoundReport r = theorem_bound(IntPoly{-2, 0, 1}, 2);
    EXPECT_EQ(r.T_bar, M(2, {1}));
    EXPECT_EQ(r.per_factor[0].t, 0u);
    EXPECT_EQ(r.per_factor[0].s, 0u);
    EXPECT_EQ(r.bound, 0u);
    EXPECT_TRUE(r.applicable);
    EXPECT_EQ(oracle::exact_index_valuation(IntPoly{-2, 0, 1}, 2), 0u);
}

TEST(TheoremBound, Cubic) {
    const BoundReport r = theorem_bound(IntPoly{9, 3, 0, 1}, 3);
    EXPECT_EQ(r.T_bar, M(3, {0, 1}));
    EXPECT_EQ(r.per_factor[0].multiplicity, 3u);
    EXPECT_EQ(r.per_factor[0].t, 1u);
    EXPECT_EQ(r.per_factor[0].s, 1u);
    EXPECT_EQ(r.bound, 1u);
    EXPECT_EQ(r.disc_valuation, 3u);
    EXPECT_GE(oracle::exact_index_valuation(IntPoly{9, 3, 0, 1}, 3), r.bound);
}

TEST(TheoremBound, DegenerateTBarZero) {
    const BoundReport r = theorem_bound(IntPoly{4, 0, 1}, 2);
    EXPECT_EQ(r.T, IntPoly{2});
    EXPECT_TRUE(r.T_bar.is_zero());
    EXPECT_FALSE(r.applicable);
    EXPECT_EQ(r.bound, 0u);
    EXPECT_FALSE(r.per_factor[0].t.has_value());
    // the true index is positive even though the hypothesis fails
    EXPECT_EQ(oracle::exact_index_valuation(IntPoly{4, 0, 1}, 2), 1u);
}

TEST(TheoremBound, Errors) {
    EXPECT_EQ(kind_of([] { theorem_bound(IntPoly{1, 0, 2}, 2); }), ErrorKind::NonMonic);
    EXPECT_EQ(kind_of([] { theorem_bound(pow(X - IntPoly{1}, 2), 2); }), ErrorKind::ZeroDiscriminant);
    EXPECT_EQ(kind_of([] { theorem_bound(IntPoly{4, 2, 1}, 6); }), ErrorKind::NotPrime);
}

TEST(TheoremBound, WitnessLatticeMatchesBound) {
    const BoundReport r = theorem_bound(IntPoly{9, 3, 0, 1}, 3);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->deg_D, r.bound);
    EXPECT_TRUE(r.witness->order_certified);
    EXPECT_EQ(r.witness->T, r.T);
}

TEST(StabilizerOrder, EisensteinQuadratic) {
    const StabilizerResult s = stabilizer_order(IntPoly{4, 2, 1}, 2, M(2, {0, 1}));
    EXPECT_EQ(s.g, X);
    EXPECT_EQ(s.T, (IntPoly{2, 1}));
    EXPECT_EQ(s.T_bar, M(2, {0, 1}));
    EXPECT_EQ(s.D_bar, M(2, {0, 1}));
    EXPECT_EQ(s.h_bar, M(2, {1}));
    EXPECT_EQ(s.U_bar, M(2, {0, 1}));
    EXPECT_EQ(s.deg_D, 1u);
    EXPECT_TRUE(s.order_certified);
    EXPECT_EQ(s.lattice.den_exp(), 1u);
    EXPECT_EQ(s.lattice.basis(), (IntMatrix{{2, 0}, {0, 1}}));
}

TEST(StabilizerOrder, SqrtTwo) {
    const StabilizerResult s = stabilizer_order(IntPoly{-2, 0, 1}, 2, M(2, {0, 1}));
    EXPECT_EQ(s.g, X);
    EXPECT_EQ(s.T, IntPoly{-1});
    EXPECT_EQ(s.T_bar, M(2, {1}));
    EXPECT_EQ(s.D_bar, M(2, {1}));
    EXPECT_EQ(s.U_bar, M(2, {0, 0, 1}));
    EXPECT_EQ(s.deg_D, 0u);
    EXPECT_EQ(s.lattice, standard_order(make_context(IntPoly{-2, 0, 1}, 2)));
}

TEST(StabilizerOrder, FullDivisorIsDegenerateButValid) {
    const IntPoly P{9, 3, 0, 1};
    const StabilizerResult s = stabilizer_order(P, 3, reduce_mod_p(P, 3));
    EXPECT_EQ(s.g, IntPoly{1});
    EXPECT_EQ(s.deg_D, 0u);
    EXPECT_EQ(s.T, (P - lift(reduce_mod_p(P, 3))).divided_exactly(3));
}

TEST(StabilizerOrder, Errors) {
    EXPECT_EQ(kind_of([] { stabilizer_order(IntPoly{4, 2, 1}, 2, M(2, {1, 1})); }), ErrorKind::NotADivisor);
    EXPECT_EQ(kind_of([] { stabilizer_order(IntPoly{4, 2, 1}, 2, M(3, {0, 1})); }), ErrorKind::ModulusMismatch);
}

TEST(StabilizerOrder, LiftRouteAvoidsSpuriousZeroT) {
    // Euclidean division of x^2+2x+4 by x leaves T = 2, which vanishes mod 2;
    // the lift route gives T = x + 2.
    const auto [q, r] = div_monic(IntPoly{4, 2, 1}, X);
    EXPECT_EQ(r, IntPoly{4});
    const StabilizerResult s = stabilizer_order(IntPoly{4, 2, 1}, 2, M(2, {0, 1}));
    EXPECT_FALSE(s.T_bar.is_zero());
}

TEST(StabilizerOrder, ZeroTConventionStillCertified) {
    // x^2 + 4 at 2 with f = x: g = x, T = 2, T_bar = 0.
    const StabilizerResult s = stabilizer_order(IntPoly{4, 0, 1}, 2, M(2, {0, 1}));
    EXPECT_TRUE(s.T_bar_zero);
    EXPECT_EQ(s.D_bar, M(2, {0, 1}));
    EXPECT_EQ(s.h_bar, M(2, {1}));
    EXPECT_TRUE(s.order_certified);
    EXPECT_EQ(s.deg_D, 1u);
}

TEST(PMaximality, Examples) {
    EXPECT_TRUE(p_maximality_test(IntPoly{-2, 0, 1}, 2).maximal);
    const auto m = p_maximality_test(IntPoly{4, 2, 1}, 2);
    EXPECT_FALSE(m.maximal);
    EXPECT_EQ(index_valuation(m.witness.lattice, standard_order(make_context(IntPoly{4, 2, 1}, 2))), 1u);
    const auto sq = p_maximality_test(IntPoly{1, 1, 1}, 2);
    EXPECT_TRUE(sq.maximal);
    EXPECT_EQ(sq.witness.f_bar, M(2, {1}));
}

TEST(PMaximality, AgreesWithOracle) {
    std::mt19937_64 rng(41);
    int checked = 0;
    while (checked < 150) {
        const IntPoly P = oracle::random_monic(rng, 2 + rng() % 3, -30, 30);
        const Integer disc = discriminant(P);
        if (disc == 0) continue;
        for (std::uint64_t p : {2u, 3u, 5u}) {
            const bool maximal = p_maximality_test(P, p).maximal;
            EXPECT_EQ(maximal, oracle::exact_index_valuation(P, p) == 0) << P.to_string() << " p=" << p;
            ++checked;
        }
    }
}

TEST(FamilyObstruction, Examples) {
    const BoundReport cubic = family_obstruction(X, 3, 1, 3, 9, 3);
    EXPECT_EQ(cubic.polynomial, (IntPoly{9, 3, 0, 1}));
    EXPECT_EQ(cubic.bound, 1u);
    const BoundReport quad = family_obstruction(X, 2, 1, 2, 4, 2);
    EXPECT_EQ(quad.bound, 1u);
    // trinomial x^6 + 10 x^4 + 50 at p = 5, 4 does not divide 6
    const BoundReport tri = family_obstruction(X, 6, 4, 10, 50, 5);
    EXPECT_GE(tri.bound, 1u);
}

TEST(FamilyObstruction, NonCanonicalLiftKeepsGuarantee) {
    // g = x - 1 at p = 3: the canonical lift x + 2 would give T_bar = 0 here.
    const IntPoly g = X - IntPoly{1};
    const IntPoly P = pow(g, 2) + Integer(6) * g + IntPoly{18};
    EXPECT_FALSE(theorem_bound(P, 3).applicable);
    const BoundReport r = family_obstruction(g, 2, 1, 6, 18, 3);
    EXPECT_TRUE(r.applicable);
    EXPECT_GE(r.bound, 1u);
    EXPECT_GE(oracle::exact_index_valuation(P, 3), r.bound);
}

TEST(FamilyObstruction, HypothesisViolations) {
    EXPECT_EQ(kind_of([] { family_obstruction(X, 3, 1, 9, 9, 3); }), ErrorKind::HypothesisViolated);
    EXPECT_EQ(kind_of([] { family_obstruction(X, 3, 1, 3, 3, 3); }), ErrorKind::HypothesisViolated);
    EXPECT_EQ(kind_of([] { family_obstruction(X, 1, 1, 3, 9, 3); }), ErrorKind::HypothesisViolated);
    EXPECT_EQ(kind_of([] { family_obstruction(X, 3, 4, 3, 9, 3); }), ErrorKind::HypothesisViolated);
    EXPECT_EQ(kind_of([] { family_obstruction(X, 3, 3, 3, 9, 3); }), ErrorKind::HypothesisViolated);
    EXPECT_EQ(kind_of([] { family_obstruction(IntPoly{1, 0, 1}, 2, 1, 2, 4, 2); }), ErrorKind::HypothesisViolated);
    try {
        family_obstruction(X, 3, 1, 9, 9, 3);
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("nu_p(a)"), std::string::npos);
    }
}

TEST(Scan, Examples) {
    const Certificate eis = scan(IntPoly{4, 2, 1}, ScanOptions{.trial_bound = 100, .extra_primes = {}, .jobs = 1, .seed = kDefaultSplittingSeed});
    EXPECT_EQ(eis.discriminant, -12);
    ASSERT_EQ(eis.primes.size(), 1u);
    EXPECT_EQ(eis.primes[0].p, 2u);
    EXPECT_EQ(eis.conclusion.kind, Conclusion::Kind::ObstructionFound);
    EXPECT_EQ(eis.conclusion.prime, 2u);
    EXPECT_EQ(eis.conclusion.bound, 1u);

    const Certificate sqrt2 = scan(IntPoly{-2, 0, 1});
    EXPECT_EQ(sqrt2.discriminant, 8);
    ASSERT_EQ(sqrt2.primes.size(), 1u);
    EXPECT_EQ(sqrt2.conclusion.kind, Conclusion::Kind::NoObstructionFound);

    const Certificate degenerate = scan(IntPoly{4, 0, 1});
    EXPECT_EQ(degenerate.discriminant, -16);
    EXPECT_EQ(degenerate.conclusion.kind, Conclusion::Kind::Inconclusive);
    ASSERT_EQ(degenerate.conclusion.reasons.size(), 1u);
    EXPECT_NE(degenerate.conclusion.reasons[0].find("p = 2"), std::string::npos);
}

TEST(Scan, UserPrimesAndCofactor) {
    // disc(x^2 + 11x + 847) = -27 * 11^2
    const IntPoly P{847, 11, 1};
    ScanOptions options;
    options.trial_bound = 5;
    options.extra_primes = {11, 7};
    const Certificate c = scan(P, options);
    ASSERT_EQ(c.primes.size(), 3u);
    EXPECT_EQ(c.primes[0].p, 3u);
    EXPECT_EQ(c.primes[0].source, PrimeSource::TrialDivision);
    EXPECT_EQ(c.primes[1].p, 7u);
    EXPECT_FALSE(c.primes[1].examined);
    EXPECT_EQ(c.primes[1].source, PrimeSource::UserSupplied);
    EXPECT_TRUE(c.primes[2].examined);
    ASSERT_TRUE(c.unfactored_cofactor.has_value());
    EXPECT_EQ(*c.unfactored_cofactor, 121);
    EXPECT_EQ(c.conclusion.kind, Conclusion::Kind::ObstructionFound);
    EXPECT_EQ(c.conclusion.prime, 11u);
    EXPECT_EQ(c.conclusion.bound, 1u);

    options.extra_primes = {9};
    EXPECT_EQ(kind_of([&] { scan(P, options); }), ErrorKind::NotPrime);
}

TEST(Scan, ParallelMatchesSerial) {
    const IntPoly P = IntPoly{-900, 0, 0, 0, 1};  // disc divisible by 2, 3, 5 squared
    ScanOptions serial{};
    ScanOptions parallel;
    parallel.jobs = 3;
    const Certificate a = scan(P, serial);
    const Certificate b = scan(P, parallel);
    ASSERT_EQ(a.reports.size(), b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
        EXPECT_EQ(a.reports[i].p, b.reports[i].p);
        EXPECT_EQ(a.reports[i].bound, b.reports[i].bound);
    }
    for (const auto& sp : a.primes) EXPECT_GE(sp.disc_valuation, 2u);
}

// Random P with a prescribed repeated-factor shape mod p.
IntPoly random_structured(std::mt19937_64& rng, std::uint64_t p, unsigned max_degree) {
    for (;;) {
        IntPoly P = IntPoly::constant(1);
        unsigned degree = 0;
        while (degree < 2 || (degree < max_degree && rng() % 2)) {
            const unsigned d = 1 + static_cast<unsigned>(rng() % 2);
            const unsigned e = 1 + static_cast<unsigned>(rng() % 3);
            if (degree + d * e > max_degree) break;
            P = P * pow(oracle::random_monic(rng, d, -3, 3), e);
            degree += d * e;
        }
        if (degree < 2) continue;
        std::vector<Integer> noise(degree, 0);
        for (auto& v : noise) v = Integer(static_cast<long>(rng() % 7) - 3) * p * (1 + rng() % 2 * (p - 1) * (rng() % 2));
        P = P + IntPoly(noise);
        if (discriminant(P) != 0) return P;
    }
}

ModPoly random_divisor(std::mt19937_64& rng, const ModPoly& P_bar) {
    ModPoly f = ModPoly::constant(P_bar.modulus(), 1);
    for (const auto& [q, l] : factor(P_bar).factors) f = f * pow(q, static_cast<unsigned>(rng() % (l + 1)));
    return f;
}

TEST(Properties, DegDBoundedByExactIndex) {
    std::mt19937_64 rng(42);
    int checked = 0;
    while (checked < 150) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[rng() % 3];
        const IntPoly P = random_structured(rng, p, 4);
        const ModPoly f_bar = random_divisor(rng, reduce_mod_p(P, p));
        const StabilizerResult s = stabilizer_order(P, p, f_bar);
        if (s.T_bar_zero) continue;
        EXPECT_LE(s.deg_D, oracle::exact_index_valuation(P, p)) << P.to_string() << " p=" << p;
        ++checked;
    }
}

TEST(Properties, ContrapositiveWhenMaximal) {
    std::mt19937_64 rng(43);
    int checked = 0;
    while (checked < 120) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[rng() % 3];
        const IntPoly P = random_structured(rng, p, 4);
        if (oracle::exact_index_valuation(P, p) != 0) continue;
        for (int k = 0; k < 4; ++k) {
            const StabilizerResult s = stabilizer_order(P, p, random_divisor(rng, reduce_mod_p(P, p)));
            if (s.T_bar_zero) continue;
            EXPECT_EQ(s.deg_D, 0u) << P.to_string();
            ++checked;
        }
    }
}

TEST(Properties, BoundIsGcdDegreeWithWitness) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[rng() % 4];
        const IntPoly P = random_structured(rng, p, 6);
        const BoundReport r = theorem_bound(P, p);
        if (!r.applicable) continue;
        ModPoly f_bar = ModPoly::constant(p, 1);
        ModPoly h_bar = ModPoly::constant(p, 1);
        for (const auto& fr : r.per_factor) {
            f_bar = f_bar * pow(fr.factor, fr.s);
            h_bar = h_bar * pow(fr.factor, fr.multiplicity - fr.s);
        }
        EXPECT_EQ(static_cast<unsigned>(gcd(f_bar, h_bar, r.T_bar).degree()), r.bound);
        EXPECT_LE(2 * r.bound, r.disc_valuation);
        if (r.bound > 0) {
            ASSERT_TRUE(r.witness.has_value());
            EXPECT_TRUE(r.witness->order_certified);
        }
    }
}

}  // namespace
}  // namespace polyindex
