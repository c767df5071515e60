#ifndef POLYINDEX_PLATTICE_HPP
#define POLYINDEX_PLATTICE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "integer.hpp"
#include "intpoly.hpp"

namespace polyindex {

using IntMatrix = std::vector<std::vector<Integer>>;
using Rational = boost::multiprecision::cpp_rational;

/// The algebra Q[X]/(P) together with the prime p at which lattices are
/// compared. Elements are coordinate vectors over 1, a, ..., a^(n-1) where a
/// is the class of X.
class NumberRingContext {
   public:
    /// Throws NonMonic, DegreeZero (deg P < 2), ZeroDiscriminant or NotPrime.
    NumberRingContext(IntPoly polynomial, std::uint64_t p) : polynomial_(std::move(polynomial)), p_(p) {
        require_prime(p_);
        if (!polynomial_.is_monic()) throw Error(ErrorKind::NonMonic, polynomial_.to_string() + " is not monic");
        if (polynomial_.degree() < 2)
            throw Error(ErrorKind::DegreeZero, "defining polynomial must have degree at least 2");
        discriminant_ = polyindex::discriminant(polynomial_);
        if (discriminant_ == 0)
            throw Error(ErrorKind::ZeroDiscriminant, polynomial_.to_string() + " has a repeated root");
    }

    const IntPoly& polynomial() const noexcept { return polynomial_; }
    std::size_t degree() const noexcept { return static_cast<std::size_t>(polynomial_.degree()); }
    std::uint64_t prime() const noexcept { return p_; }
    const Integer& discriminant() const noexcept { return discriminant_; }

    friend bool operator==(const NumberRingContext& a, const NumberRingContext& b) {
        return a.p_ == b.p_ && a.polynomial_ == b.polynomial_;
    }

   private:
    IntPoly polynomial_;
    std::uint64_t p_;
    Integer discriminant_;
};

using ContextPtr = std::shared_ptr<const NumberRingContext>;

inline ContextPtr make_context(IntPoly polynomial, std::uint64_t p) {
    return std::make_shared<const NumberRingContext>(std::move(polynomial), p);
}

/// An element num / p^den_exp of Q[X]/(P) in power-basis coordinates.
struct FieldElement {
    std::vector<Integer> num;
    unsigned den_exp = 0;

    /// Strip common factors of p from numerator and denominator.
    FieldElement& normalize(std::uint64_t p) {
        while (den_exp > 0) {
            for (const auto& c : num)
                if (c % p != 0) return *this;
            for (auto& c : num) c /= p;
            --den_exp;
        }
        return *this;
    }

    bool is_zero() const {
        for (const auto& c : num)
            if (c != 0) return false;
        return true;
    }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

inline FieldElement element_from_poly(const NumberRingContext& ctx, const IntPoly& w, unsigned den_exp = 0) {
    const IntPoly r = div_monic(w, ctx.polynomial()).remainder;
    std::vector<Integer> num(ctx.degree(), 0);
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) num[i] = r[i];
    return {std::move(num), den_exp};
}

/// x*y in Q[X]/(P). Throws DimensionMismatch.
inline FieldElement mul_mod_P(const NumberRingContext& ctx, const FieldElement& x, const FieldElement& y) {
    const std::size_t n = ctx.degree();
    if (x.num.size() != n || y.num.size() != n)
        throw Error(ErrorKind::DimensionMismatch, "expected coordinate vectors of length " + std::to_string(n));
    const IntPoly product = IntPoly(x.num) * IntPoly(y.num);
    FieldElement out = element_from_poly(ctx, product, x.den_exp + y.den_exp);
    out.normalize(ctx.prime());
    return out;
}

/// Row Hermite normal form of a full-column-rank integer matrix: upper
/// triangular, positive diagonal, entries above each pivot reduced into
/// [0, pivot). Returns exactly `columns` rows.
inline IntMatrix hermite_normal_form(IntMatrix rows, std::size_t columns) {
    for (const auto& row : rows)
        if (row.size() != columns) throw Error(ErrorKind::DimensionMismatch, "ragged generator matrix");
    auto sub_multiple = [](std::vector<Integer>& target, const std::vector<Integer>& source, const Integer& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < target.size(); ++j) target[j] -= q * source[j];
    };
    std::size_t r = 0;
    for (std::size_t col = 0; col < columns; ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
            }
            if (best == rows.size())
                throw Error(ErrorKind::DimensionMismatch, "generators do not span a full-rank lattice");
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                sub_multiple(rows[i], rows[r], rows[i][col] / rows[r][col]);
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][col] < 0)
            for (auto& v : rows[r]) v = -v;
        const Integer& pivot = rows[r][col];
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = rows[i][col] / pivot;
            if (rows[i][col] - q * pivot < 0) --q;  // floor division
            sub_multiple(rows[i], rows[r], q);
        }
        ++r;
    }
    rows.resize(columns);
    return rows;
}

/// A full-rank lattice (1/p^den_exp) * rowspan(basis) in power-basis
/// coordinates. The basis is kept in row HNF and den_exp is minimal, so two
/// lattices are equal exactly when their representations compare equal.
class PLattice {
   public:
    static PLattice from_generators(ContextPtr ctx, IntMatrix generators, unsigned den_exp) {
        const std::size_t n = ctx->degree();
        IntMatrix basis = hermite_normal_form(std::move(generators), n);
        const std::uint64_t p = ctx->prime();
        while (den_exp > 0) {
            bool divisible = true;
            for (const auto& row : basis)
                for (const auto& v : row)
                    if (v % p != 0) divisible = false;
            if (!divisible) break;
            for (auto& row : basis)
                for (auto& v : row) v /= p;
            --den_exp;
        }
        return PLattice(std::move(ctx), std::move(basis), den_exp);
    }

    const NumberRingContext& context() const noexcept { return *ctx_; }
    const ContextPtr& context_ptr() const noexcept { return ctx_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    unsigned den_exp() const noexcept { return den_exp_; }
    const IntMatrix& basis() const noexcept { return basis_; }

    FieldElement basis_element(std::size_t i) const { return FieldElement{basis_[i], den_exp_}; }

    /// Product of the HNF diagonal.
    Integer determinant() const {
        Integer d = 1;
        for (std::size_t i = 0; i < basis_.size(); ++i) d *= basis_[i][i];
        return d;
    }

    /// nu_p of the covolume relative to the standard order (may be negative).
    long covolume_valuation() const {
        return static_cast<long>(valuation(determinant(), ctx_->prime())) -
               static_cast<long>(dimension()) * static_cast<long>(den_exp_);
    }

    friend bool operator==(const PLattice& a, const PLattice& b) {
        return *a.ctx_ == *b.ctx_ && a.den_exp_ == b.den_exp_ && a.basis_ == b.basis_;
    }

   private:
    PLattice(ContextPtr ctx, IntMatrix basis, unsigned den_exp)
        : ctx_(std::move(ctx)), basis_(std::move(basis)), den_exp_(den_exp) {}

    ContextPtr ctx_;
    IntMatrix basis_;
    unsigned den_exp_;
};

/// A = Z[a], the identity basis.
inline PLattice standard_order(const ContextPtr& ctx) {
    const std::size_t n = ctx->degree();
    IntMatrix id(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return PLattice::from_generators(ctx, std::move(id), 0);
}

/// L + (w(a)/p^k) L.
inline PLattice adjoin_scaled(const PLattice& lattice, const IntPoly& w, unsigned k) {
    const NumberRingContext& ctx = lattice.context();
    const Integer scale = pow(Integer(ctx.prime()), k);
    const FieldElement wa = element_from_poly(ctx, w);
    IntMatrix generators;
    generators.reserve(2 * lattice.dimension());
    for (const auto& row : lattice.basis()) {
        std::vector<Integer> scaled(row);
        for (auto& v : scaled) v *= scale;
        generators.push_back(std::move(scaled));
    }
    for (const auto& row : lattice.basis()) {
        const IntPoly product = IntPoly(wa.num) * IntPoly(row);
        generators.push_back(element_from_poly(ctx, product).num);
    }
    return PLattice::from_generators(lattice.context_ptr(), std::move(generators), lattice.den_exp() + k);
}

namespace detail {

inline long rational_valuation(const Rational& q, std::uint64_t p) {
    return static_cast<long>(valuation(numerator(q), p)) - static_cast<long>(valuation(denominator(q), p));
}

}  // namespace detail

/// x in L tensor Z_(p): the coordinates of x against the basis have
/// non-negative p-adic valuation. Throws DimensionMismatch.
inline bool contains_p_locally(const PLattice& lattice, const FieldElement& x) {
    const std::size_t n = lattice.dimension();
    if (x.num.size() != n) throw Error(ErrorKind::DimensionMismatch, "expected a coordinate vector of length " + std::to_string(n));
    if (x.is_zero()) return true;
    const std::uint64_t p = lattice.context().prime();
    const auto& h = lattice.basis();
    // Solve c * H = x.num; x lies in L iff every c_i * p^(den_L - den_x) is p-integral.
    const long shift = static_cast<long>(lattice.den_exp()) - static_cast<long>(x.den_exp);
    std::vector<Rational> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational acc = Rational(x.num[j]);
        for (std::size_t i = 0; i < j; ++i)
            if (c[i] != 0) acc -= c[i] * h[i][j];
        c[j] = acc / h[j][j];
        if (c[j] != 0 && detail::rational_valuation(c[j], p) + shift < 0) return false;
    }
    return true;
}

/// L2 subset of L1, p-locally.
inline bool contains_p_locally(const PLattice& outer, const PLattice& inner) {
    for (std::size_t i = 0; i < inner.dimension(); ++i)
        if (!contains_p_locally(outer, inner.basis_element(i))) return false;
    return true;
}

/// nu_p([outer : inner]). Throws NotASublattice unless inner is contained in
/// outer p-locally.
inline unsigned index_valuation(const PLattice& outer, const PLattice& inner) {
    if (!(outer.context() == inner.context()))
        throw Error(ErrorKind::NotASublattice, "lattices live in different algebras");
    if (!contains_p_locally(outer, inner)) throw Error(ErrorKind::NotASublattice, "inner lattice is not contained in outer lattice");
    return static_cast<unsigned>(inner.covolume_valuation() - outer.covolume_valuation());
}

/// True iff 1 is in L and L is closed under multiplication (checked on
/// pairs of basis vectors), i.e. L is a p-local order.
inline bool certify_order(const PLattice& lattice) {
    const NumberRingContext& ctx = lattice.context();
    const std::size_t n = lattice.dimension();
    FieldElement one{std::vector<Integer>(n, 0), 0};
    one.num[0] = 1;
    if (!contains_p_locally(lattice, one)) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (!contains_p_locally(lattice, mul_mod_P(ctx, lattice.basis_element(i), lattice.basis_element(j))))
                return false;
    return true;
}

}  // namespace polyindex

#endif  // POLYINDEX_PLATTICE_HPP
