#ifndef POLYINDEX_ERROR_HPP
#define POLYINDEX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyindex {

enum class ErrorKind {
    NonMonicDivisor,
    NonMonic,
    ZeroPolynomial,
    NotPrime,
    ModulusMismatch,
    InexactDivision,
    DegreeZero,
    DimensionMismatch,
    NotASublattice,
    ZeroDiscriminant,
    NotADivisor,
    HypothesisNotMet,
    HypothesisViolated,
    InternalInconsistency,
    SyntaxError,
    NegativeExponent,
    UnknownVariable,
    InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonMonicDivisor: return "NonMonicDivisor";
        case ErrorKind::NonMonic: return "NonMonic";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::ModulusMismatch: return "ModulusMismatch";
        case ErrorKind::InexactDivision: return "InexactDivision";
        case ErrorKind::DegreeZero: return "DegreeZero";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotASublattice: return "NotASublattice";
        case ErrorKind::ZeroDiscriminant: return "ZeroDiscriminant";
        case ErrorKind::NotADivisor: return "NotADivisor";
        case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::InternalInconsistency: return "InternalInconsistency";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::NegativeExponent: return "NegativeExponent";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

/// Parse failures additionally record the byte offset into the source text.
class ParseError : public Error {
   public:
    ParseError(ErrorKind kind, std::size_t offset, const std::string& what)
        : Error(kind, what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

   private:
    std::size_t offset_;
};

}  // namespace polyindex

#endif  // POLYINDEX_ERROR_HPP
