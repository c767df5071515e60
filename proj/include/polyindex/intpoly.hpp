#ifndef POLYINDEX_INTPOLY_HPP
#define POLYINDEX_INTPOLY_HPP

#include <algorithm>
#include <initializer_list>
#include <span>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "integer.hpp"
#include "modpoly.hpp"

namespace polyindex {

/// Dense univariate polynomial over the integers; coefficient i belongs to
/// X^i and trailing zeros are trimmed. The zero polynomial has degree -1.
class IntPoly {
   public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<Integer> coeffs) : coeffs_(coeffs) { trim(); }

    static IntPoly constant(const Integer& c) { return IntPoly({c}); }
    static IntPoly x() { return IntPoly({0, 1}); }
    /// X^k
    static IntPoly monomial(std::size_t k, const Integer& c = 1) {
        std::vector<Integer> v(k + 1, 0);
        v[k] = c;
        return IntPoly(std::move(v));
    }

    std::span<const Integer> coeffs() const noexcept { return coeffs_; }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
    const Integer& leading() const {
        static const Integer zero = 0;
        return coeffs_.empty() ? zero : coeffs_.back();
    }
    Integer operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

    IntPoly operator-() const {
        IntPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
        return IntPoly(std::move(out));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
        return IntPoly(std::move(out));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return IntPoly(std::move(out));
    }

    friend IntPoly operator*(const Integer& c, const IntPoly& a) {
        std::vector<Integer> out(a.coeffs_);
        for (auto& v : out) v *= c;
        return IntPoly(std::move(out));
    }

    /// Exact division of every coefficient by c; throws InexactDivision.
    IntPoly divided_exactly(const Integer& c) const {
        std::vector<Integer> out(coeffs_);
        Integer q, r;
        for (auto& v : out) {
            boost::multiprecision::divide_qr(v, c, q, r);
            if (r != 0) throw Error(ErrorKind::InexactDivision, to_string() + " is not divisible by " + c.str());
            v = q;
        }
        return IntPoly(std::move(out));
    }

    IntPoly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Integer> out(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * i;
        return IntPoly(std::move(out));
    }

    Integer evaluate(const Integer& x) const {
        Integer acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    /// this(inner(X))
    IntPoly compose(const IntPoly& inner) const {
        IntPoly acc;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * inner + constant(coeffs_[i]);
        return acc;
    }

    /// Gcd of the coefficients, non-negative.
    Integer content() const {
        Integer g = 0;
        for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
        return g;
    }

    /// Text form using the CLI grammar, e.g. "x^3+3*x+9".
    friend std::ostream& operator<<(std::ostream& os, const IntPoly& a) { return os << a.to_string(); }

    std::string to_string() const {
        std::vector<std::pair<std::string, std::size_t>> terms;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            if (coeffs_[i] != 0) terms.emplace_back(coeffs_[i].str(), i);
        return detail::format_terms(terms);
    }

   private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

inline IntPoly pow(const IntPoly& base, unsigned exponent) {
    IntPoly result = IntPoly::constant(1);
    IntPoly b = base;
    while (exponent) {
        if (exponent & 1) result = result * b;
        exponent >>= 1;
        if (exponent) b = b * b;
    }
    return result;
}

struct IntDivision {
    IntPoly quotient;
    IntPoly remainder;
};

/// Euclidean division by a monic divisor: a = d*q + r, deg r < deg d.
inline IntDivision div_monic(const IntPoly& a, const IntPoly& d) {
    if (d.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
    if (!d.is_monic()) throw Error(ErrorKind::NonMonicDivisor, d.to_string() + " is not monic");
    if (a.degree() < d.degree()) return {IntPoly{}, a};
    std::vector<Integer> rem(a.coeffs().begin(), a.coeffs().end());
    const std::size_t dn = static_cast<std::size_t>(d.degree());
    std::vector<Integer> quo(rem.size() - dn, 0);
    for (std::size_t k = quo.size(); k-- > 0;) {
        const Integer c = rem[k + dn];
        quo[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) rem[k + j] -= c * d[j];
    }
    rem.resize(dn);
    return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

namespace detail {

/// lc(b)^(deg a - deg b + 1) * a  mod  b
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> rem(a.coeffs().begin(), a.coeffs().end());
    const std::size_t bn = static_cast<std::size_t>(b.degree());
    const Integer& lead = b.leading();
    for (std::size_t top = rem.size(); top-- > bn;) {
        const Integer c = rem[top];
        for (auto& v : rem) v *= lead;
        for (std::size_t j = 0; j <= bn; ++j) rem[top - bn + j] -= c * b[j];
    }
    rem.resize(bn);
    return IntPoly(std::move(rem));
}

}  // namespace detail

/// Resultant as the Sylvester-matrix determinant (rows of a first), computed
/// with the subresultant remainder sequence.
inline Integer resultant(IntPoly a, IntPoly b) {
    if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "resultant with the zero polynomial");
    Integer sign = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() * b.degree()) % 2 == 1) sign = -1;
        std::swap(a, b);
    }
    if (b.degree() == 0) return sign * pow(b.leading(), static_cast<unsigned>(a.degree()));

    const Integer ca = a.content();
    const Integer cb = b.content();
    const Integer t = pow(ca, static_cast<unsigned>(b.degree())) * pow(cb, static_cast<unsigned>(a.degree()));
    a = a.divided_exactly(ca);
    b = b.divided_exactly(cb);

    Integer g = 1;
    Integer h = 1;
    for (;;) {
        const long delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
        IntPoly r = detail::pseudo_remainder(a, b);
        if (r.is_zero()) return 0;
        a = std::move(b);
        b = r.divided_exactly(g * pow(h, static_cast<unsigned>(delta)));
        g = a.leading();
        // h <- g^delta / h^(delta-1)
        if (delta > 0) h = pow(g, static_cast<unsigned>(delta)) / pow(h, static_cast<unsigned>(delta - 1));
        if (b.degree() == 0) break;
    }
    const auto da = static_cast<unsigned>(a.degree());
    // h <- h^(1 - deg a) * lc(b)^(deg a)
    const Integer result = pow(b.leading(), da) / pow(h, da - 1);
    return sign * t * result;
}

/// disc(a) = (-1)^(n(n-1)/2) * res(a, a') for monic a of degree n >= 1.
inline Integer discriminant(const IntPoly& a) {
    if (!a.is_monic()) throw Error(ErrorKind::NonMonic, a.to_string() + " is not monic");
    if (a.degree() < 1) throw Error(ErrorKind::DegreeZero, "discriminant of a constant");
    const long n = a.degree();
    if (n == 1) return 1;
    Integer r = resultant(a, a.derivative());
    return ((n * (n - 1) / 2) % 2 == 0) ? r : Integer(-r);
}

/// Coefficientwise reduction into F_p. Throws NotPrime.
inline ModPoly reduce_mod_p(const IntPoly& a, std::uint64_t p) {
    require_prime(p);
    std::vector<ModPoly::Residue> out;
    out.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) out.push_back(residue(c, p));
    return ModPoly::from_raw(p, std::move(out));
}

/// Canonical lift with coefficients in {0, ..., p-1}.
inline IntPoly lift(const ModPoly& a) {
    std::vector<Integer> out;
    out.reserve(a.coeffs().size());
    for (auto c : a.coeffs()) out.emplace_back(c);
    return IntPoly(std::move(out));
}

}  // namespace polyindex

#endif  // POLYINDEX_INTPOLY_HPP
