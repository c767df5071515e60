#ifndef POLYINDEX_MODPOLY_HPP
#define POLYINDEX_MODPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "integer.hpp"

namespace polyindex {

/// Dense polynomial over the prime field F_p. Coefficient i is the
/// coefficient of X^i; trailing zeros are trimmed so the zero polynomial has
/// no coefficients and degree -1.
class ModPoly {
   public:
    using Residue = std::uint64_t;

    /// Zero polynomial over F_p. Throws NotPrime.
    explicit ModPoly(std::uint64_t p) : p_(p) { require_prime(p); }

    /// Coefficients are reduced into {0, ..., p-1}. Throws NotPrime.
    ModPoly(std::uint64_t p, std::vector<Residue> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
        require_prime(p);
        for (auto& c : coeffs_) c %= p_;
        trim();
    }

    ModPoly(std::uint64_t p, std::initializer_list<Residue> coeffs)
        : ModPoly(p, std::vector<Residue>(coeffs)) {}

    static ModPoly constant(std::uint64_t p, Residue c) { return ModPoly(p, {c}); }
    static ModPoly x(std::uint64_t p) { return ModPoly(p, {0, 1}); }

    std::uint64_t modulus() const noexcept { return p_; }
    std::span<const Residue> coeffs() const noexcept { return coeffs_; }

    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
    Residue leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
    Residue operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }

    friend bool operator==(const ModPoly&, const ModPoly&) = default;

    ModPoly operator-() const {
        ModPoly r = *this;
        for (auto& c : r.coeffs_) c = c == 0 ? 0 : p_ - c;
        return r;
    }

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
        a.check_same(b);
        std::vector<Residue> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = add(a[i], b[i], a.p_);
        return from_raw(a.p_, std::move(out));
    }

    friend ModPoly operator-(const ModPoly& a, const ModPoly& b) { return a + (-b); }

    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
        a.check_same(b);
        if (a.is_zero() || b.is_zero()) return from_raw(a.p_, {});
        std::vector<Residue> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] = add(out[i + j], detail::mulmod(a.coeffs_[i], b.coeffs_[j], a.p_), a.p_);
        }
        return from_raw(a.p_, std::move(out));
    }

    ModPoly scaled(Residue c) const {
        std::vector<Residue> out(coeffs_);
        for (auto& v : out) v = detail::mulmod(v, c % p_, p_);
        return from_raw(p_, std::move(out));
    }

    /// Multiplicative inverse of a nonzero residue.
    Residue inverse(Residue c) const {
        if (c % p_ == 0) throw Error(ErrorKind::InvalidArgument, "zero has no inverse mod " + std::to_string(p_));
        return detail::powmod(c, p_ - 2, p_);
    }

    /// Monic normalization; the zero polynomial maps to itself.
    ModPoly monic() const { return is_zero() ? *this : scaled(inverse(leading())); }

    /// Quotient and remainder by a nonzero divisor.
    friend std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& d) {
        a.check_same(d);
        if (d.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
        const std::uint64_t p = a.p_;
        if (a.degree() < d.degree()) return {from_raw(p, {}), a};
        std::vector<Residue> rem(a.coeffs_);
        std::vector<Residue> quo(a.coeffs_.size() - d.coeffs_.size() + 1, 0);
        const Residue lead_inv = a.inverse(d.leading());
        const std::size_t dn = d.coeffs_.size() - 1;
        for (std::size_t k = quo.size(); k-- > 0;) {
            const Residue c = detail::mulmod(rem[k + dn], lead_inv, p);
            quo[k] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j <= dn; ++j)
                rem[k + j] = sub(rem[k + j], detail::mulmod(c, d.coeffs_[j], p), p);
        }
        rem.resize(dn);
        return {from_raw(p, std::move(quo)), from_raw(p, std::move(rem))};
    }

    friend ModPoly operator%(const ModPoly& a, const ModPoly& d) { return divmod(a, d).second; }

    ModPoly derivative() const {
        if (coeffs_.size() <= 1) return from_raw(p_, {});
        std::vector<Residue> out(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = detail::mulmod(coeffs_[i], i % p_, p_);
        return from_raw(p_, std::move(out));
    }

    /// Inverse Frobenius on a polynomial whose exponents are all multiples
    /// of p: returns r with r^p = *this.
    ModPoly pth_root() const {
        std::vector<Residue> out;
        for (std::size_t i = 0; i < coeffs_.size(); i += p_) out.push_back(coeffs_[i]);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (i % p_ != 0 && coeffs_[i] != 0)
                throw Error(ErrorKind::InvalidArgument, "polynomial is not a p-th power");
        return from_raw(p_, std::move(out));
    }

    /// Text form using the CLI grammar, e.g. "x^2+3*x+1".
    friend std::ostream& operator<<(std::ostream& os, const ModPoly& a) { return os << a.to_string(); }

    std::string to_string() const;

    /// Unchecked constructor for internal use: p is known prime and the
    /// coefficients are already reduced.
    static ModPoly from_raw(std::uint64_t p, std::vector<Residue> coeffs) {
        ModPoly r(p, Unchecked{});
        r.coeffs_ = std::move(coeffs);
        r.trim();
        return r;
    }

   private:
    struct Unchecked {};
    ModPoly(std::uint64_t p, Unchecked) : p_(p) {}

    static Residue add(Residue a, Residue b, std::uint64_t p) {
        const Residue s = a + b;  // p < 2^62 so no wrap
        return s >= p ? s - p : s;
    }
    static Residue sub(Residue a, Residue b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }

    void check_same(const ModPoly& other) const {
        if (p_ != other.p_)
            throw Error(ErrorKind::ModulusMismatch,
                        "moduli " + std::to_string(p_) + " and " + std::to_string(other.p_) + " differ");
    }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::uint64_t p_;
    std::vector<Residue> coeffs_;
};

namespace detail {

inline std::string format_terms(const std::vector<std::pair<std::string, std::size_t>>& terms) {
    // terms: (signed decimal coefficient, exponent), highest exponent first
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [coeff, exp] : terms) {
        const bool negative = !coeff.empty() && coeff[0] == '-';
        const std::string magnitude = negative ? coeff.substr(1) : coeff;
        if (negative)
            out += "-";
        else if (!first)
            out += "+";
        first = false;
        if (exp == 0) {
            out += magnitude;
            continue;
        }
        if (magnitude != "1") out += magnitude + "*";
        out += "x";
        if (exp > 1) out += "^" + std::to_string(exp);
    }
    return out;
}

}  // namespace detail

inline std::string ModPoly::to_string() const {
    std::vector<std::pair<std::string, std::size_t>> terms;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        if (coeffs_[i] != 0) terms.emplace_back(std::to_string(coeffs_[i]), i);
    return detail::format_terms(terms);
}

/// (degree, coefficients from the constant term upward) ordering used for
/// deterministic factor lists.
inline bool canonical_less(const ModPoly& a, const ModPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                        b.coeffs().end());
}

/// Monic gcd; gcd(a, 0) is monic a and gcd(0, 0) is 0.
inline ModPoly gcd(ModPoly a, ModPoly b) {
    if (a.modulus() != b.modulus()) throw Error(ErrorKind::ModulusMismatch, "gcd of polynomials over different fields");
    while (!b.is_zero()) {
        ModPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline ModPoly gcd(const ModPoly& a, const ModPoly& b, const ModPoly& c) { return gcd(gcd(a, b), c); }

/// Quotient a / d; throws InexactDivision on a nonzero remainder.
inline ModPoly exact_div(const ModPoly& a, const ModPoly& d) {
    auto [q, r] = divmod(a, d);
    if (!r.is_zero())
        throw Error(ErrorKind::InexactDivision, d.to_string() + " does not divide " + a.to_string());
    return q;
}

inline bool divides(const ModPoly& d, const ModPoly& a) { return (a % d).is_zero(); }

/// Monic least common multiple of two nonzero polynomials.
inline ModPoly lcm(const ModPoly& a, const ModPoly& b) {
    if (a.modulus() != b.modulus()) throw Error(ErrorKind::ModulusMismatch, "lcm of polynomials over different fields");
    if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "lcm with the zero polynomial");
    return exact_div(a * b, gcd(a, b)).monic();
}

/// Largest t with q^t dividing a.
inline unsigned multiplicity(ModPoly a, const ModPoly& q) {
    if (a.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "multiplicity in the zero polynomial is unbounded");
    if (q.degree() < 1 || !q.is_monic())
        throw Error(ErrorKind::InvalidArgument, "multiplicity needs a monic divisor of positive degree");
    unsigned t = 0;
    for (;;) {
        auto [quo, rem] = divmod(a, q);
        if (!rem.is_zero()) return t;
        a = std::move(quo);
        ++t;
    }
}

/// base^exponent mod modulus with an arbitrary-precision exponent.
inline ModPoly powmod(const ModPoly& base, const Integer& exponent, const ModPoly& modulus) {
    ModPoly result = ModPoly::from_raw(base.modulus(), {1}) % modulus;
    ModPoly b = base % modulus;
    const std::size_t bits = exponent == 0 ? 0 : boost::multiprecision::msb(exponent) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % modulus;
        if (boost::multiprecision::bit_test(exponent, static_cast<unsigned>(i))) result = (result * b) % modulus;
    }
    return result;
}

inline ModPoly pow(const ModPoly& base, unsigned exponent) {
    ModPoly result = ModPoly::from_raw(base.modulus(), {1});
    for (unsigned i = 0; i < exponent; ++i) result = result * base;
    return result;
}

struct SquarefreePart {
    ModPoly part;
    unsigned exponent;
};

/// Squarefree decomposition in characteristic p: a = prod part^exponent with
/// parts squarefree, pairwise coprime, of positive degree.
inline std::vector<SquarefreePart> squarefree_decomposition(const ModPoly& a) {
    if (!a.is_monic()) throw Error(ErrorKind::NonMonic, "squarefree decomposition needs a monic polynomial");
    const std::uint64_t p = a.modulus();
    std::vector<SquarefreePart> out;
    if (a.degree() == 0) return out;

    const ModPoly da = a.derivative();
    if (da.is_zero()) {
        for (auto [part, e] : squarefree_decomposition(a.pth_root())) out.push_back({part, e * static_cast<unsigned>(p)});
    } else {
        ModPoly c = gcd(a, da);
        ModPoly w = exact_div(a, c);
        unsigned i = 1;
        while (w.degree() > 0) {
            ModPoly y = gcd(w, c);
            ModPoly fac = exact_div(w, y);
            if (fac.degree() > 0) out.push_back({fac.monic(), i});
            ++i;
            w = std::move(y);
            c = exact_div(c, w);
        }
        if (c.degree() > 0) {
            for (auto [part, e] : squarefree_decomposition(c.monic().pth_root()))
                out.push_back({part, e * static_cast<unsigned>(p)});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.exponent < r.exponent; });
    return out;
}

struct ModFactor {
    ModPoly factor;
    unsigned multiplicity;

    friend bool operator==(const ModFactor&, const ModFactor&) = default;
};

/// Monic irreducible factorization, factors in canonical order.
struct FactorizationModP {
    std::vector<ModFactor> factors;

    ModPoly product(std::uint64_t p) const {
        ModPoly out = ModPoly::constant(p, 1);
        for (const auto& [f, m] : factors) out = out * pow(f, m);
        return out;
    }
};

namespace detail {

struct DegreeBlock {
    ModPoly product;  // product of all irreducible factors of this degree
    unsigned degree;
};

/// Distinct-degree factorization of a monic squarefree polynomial.
inline std::vector<DegreeBlock> distinct_degree(ModPoly f) {
    const std::uint64_t p = f.modulus();
    const ModPoly x = ModPoly::x(p);
    std::vector<DegreeBlock> out;
    ModPoly h = x % f;
    unsigned d = 0;
    while (f.degree() >= 2 * static_cast<long>(d + 1)) {
        ++d;
        h = powmod(h, Integer(p), f);  // h = X^{p^d} mod f
        ModPoly g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.push_back({g, d});
            f = exact_div(f, g);
            h = h % f;
        }
    }
    if (f.degree() > 0) out.push_back({f.monic(), static_cast<unsigned>(f.degree())});
    return out;
}

inline ModPoly random_below(std::uint64_t p, long degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    std::vector<ModPoly::Residue> c(static_cast<std::size_t>(std::max(degree, 0L)));
    for (auto& v : c) v = dist(rng);
    return ModPoly::from_raw(p, std::move(c));
}

/// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product of
/// irreducibles of the given degree.
inline void equal_degree(const ModPoly& f, unsigned d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (f.degree() == static_cast<long>(d)) {
        out.push_back(f.monic());
        return;
    }
    const std::uint64_t p = f.modulus();
    const Integer half = (pow(Integer(p), d) - 1) / 2;
    for (;;) {
        ModPoly a = random_below(p, f.degree(), rng);
        if (a.degree() < 1) continue;
        ModPoly b = ModPoly::from_raw(p, {});
        if (p == 2) {
            // trace map a + a^2 + ... + a^{2^{d-1}}
            ModPoly term = a % f;
            b = term;
            for (unsigned i = 1; i < d; ++i) {
                term = (term * term) % f;
                b = b + term;
            }
        } else {
            b = powmod(a, half, f) - ModPoly::from_raw(p, {1});
        }
        ModPoly g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(exact_div(f, g), d, rng, out);
            return;
        }
    }
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultSplittingSeed = 0x5eed'1dea'0f1d'0c75ull;

/// Complete factorization of a monic polynomial of positive degree. The
/// generator drives equal-degree splitting only; output order is canonical.
inline FactorizationModP factor(const ModPoly& a, std::mt19937_64& rng) {
    if (a.degree() < 1) throw Error(ErrorKind::DegreeZero, "cannot factor a constant polynomial");
    if (!a.is_monic()) throw Error(ErrorKind::NonMonic, "factorization needs a monic polynomial");
    FactorizationModP result;
    for (const auto& [part, e] : squarefree_decomposition(a)) {
        for (const auto& block : detail::distinct_degree(part)) {
            std::vector<ModPoly> irreducibles;
            detail::equal_degree(block.product, block.degree, rng, irreducibles);
            for (auto& q : irreducibles) result.factors.push_back({std::move(q), e});
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const ModFactor& l, const ModFactor& r) { return canonical_less(l.factor, r.factor); });
    return result;
}

inline FactorizationModP factor(const ModPoly& a, std::uint64_t seed = kDefaultSplittingSeed) {
    std::mt19937_64 rng(seed);
    return factor(a, rng);
}

/// True when a is irreducible over F_p (degree >= 1).
inline bool is_irreducible(const ModPoly& a) {
    if (a.degree() < 1) return false;
    const ModPoly m = a.monic();
    const auto sf = squarefree_decomposition(m);
    if (sf.size() != 1 || sf[0].exponent != 1) return false;
    const auto blocks = detail::distinct_degree(m);
    return blocks.size() == 1 && blocks[0].degree == static_cast<unsigned>(m.degree());
}

struct RadicalParts {
    ModPoly radical;
    ModPoly square_part;
    ModPoly radical_of_square_part;
};

/// radical = product of distinct irreducible factors, square_part = a / radical,
/// radical_of_square_part = product of the factors with multiplicity >= 2.
inline RadicalParts radical_and_square_part(const ModPoly& a) {
    if (a.degree() < 1) throw Error(ErrorKind::DegreeZero, "radical of a constant polynomial");
    if (!a.is_monic()) throw Error(ErrorKind::NonMonic, "radical needs a monic polynomial");
    const std::uint64_t p = a.modulus();
    ModPoly radical = ModPoly::constant(p, 1);
    ModPoly repeated = ModPoly::constant(p, 1);
    for (const auto& [part, e] : squarefree_decomposition(a)) {
        radical = radical * part;
        if (e >= 2) repeated = repeated * part;
    }
    return {radical, exact_div(a, radical), repeated};
}

}  // namespace polyindex

#endif  // POLYINDEX_MODPOLY_HPP
