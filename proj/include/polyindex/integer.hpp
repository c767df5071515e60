#ifndef POLYINDEX_INTEGER_HPP
#define POLYINDEX_INTEGER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "error.hpp"

namespace polyindex {

using Integer = boost::multiprecision::cpp_int;

/// Largest modulus accepted for residue arithmetic (p < 2^62).
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

/// Sentinel returned by valuation() for zero.
inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

/// p-adic valuation of an integer; kInfiniteValuation for zero.
inline unsigned valuation(Integer value, std::uint64_t p) {
    if (value == 0) return kInfiniteValuation;
    unsigned v = 0;
    Integer q, r;
    for (;;) {
        boost::multiprecision::divide_qr(value, Integer(p), q, r);
        if (r != 0) return v;
        value = std::move(q);
        ++v;
    }
}

/// Residue of value in {0, ..., p-1}.
inline std::uint64_t residue(const Integer& value, std::uint64_t p) {
    Integer r = value % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
}

inline Integer pow(const Integer& base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

inline std::string to_decimal(const Integer& value) { return value.str(); }

inline Integer parse_integer(const std::string& text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw Error(ErrorKind::InvalidArgument, "not an integer: '" + text + "'");
    Integer value = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9')
            throw Error(ErrorKind::InvalidArgument, "not an integer: '" + text + "'");
        value = value * 10 + (text[i] - '0');
    }
    return negative ? Integer(-value) : value;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exponent) {
        if (exponent & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exponent >>= 1;
    }
    return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is exact for every n < 2^64.
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        a %= n;
        if (a == 0) continue;
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Throws NotPrime unless p is a prime below kMaxModulus.
inline void require_prime(std::uint64_t p) {
    if (p >= kMaxModulus) throw Error(ErrorKind::NotPrime, std::to_string(p) + " exceeds the machine-word modulus limit 2^62");
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
}

}  // namespace polyindex

#endif  // POLYINDEX_INTEGER_HPP
