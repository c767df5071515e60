#ifndef POLYINDEX_REPORT_HPP
#define POLYINDEX_REPORT_HPP

#include <json.hpp>

#include <ostream>
#include <string>

#include "indexcore.hpp"

namespace polyindex {

using Json = nlohmann::ordered_json;

inline constexpr const char* kIrreducibilityCaveat =
    "bounds and certificates assume the polynomial is irreducible over Q; this is not verified";

/// Big integers are emitted as decimal strings.
inline Json to_json(const PLattice& lattice) {
    Json basis = Json::array();
    for (const auto& row : lattice.basis()) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(v.str());
        basis.push_back(std::move(r));
    }
    return Json{{"den_exp", lattice.den_exp()}, {"basis", std::move(basis)}};
}

inline std::string bound_conclusion(const BoundReport& r) {
    if (!r.applicable) return "HypothesisNotMet";
    return r.bound >= 1 ? "ObstructionFound" : "NoObstructionFound";
}

inline Json to_json(const StabilizerResult& s) {
    return Json{{"f", s.f.to_string()},
                {"g", s.g.to_string()},
                {"T", s.T.to_string()},
                {"f_bar", s.f_bar.to_string()},
                {"g_bar", s.g_bar.to_string()},
                {"T_bar", s.T_bar.to_string()},
                {"T_bar_zero", s.T_bar_zero},
                {"D_bar", s.D_bar.to_string()},
                {"h_bar", s.h_bar.to_string()},
                {"U_bar", s.U_bar.to_string()},
                {"fhT_gcd", s.fhT_gcd.to_string()},
                {"deg_D", s.deg_D},
                {"index_valuation", s.deg_D},
                {"order_certified", s.order_certified},
                {"lattice", to_json(s.lattice)}};
}

/// A report that is not applicable carries "bound": null, never a number.
inline Json to_json(const BoundReport& r) {
    Json factors = Json::array();
    for (const auto& f : r.per_factor) {
        factors.push_back(Json{{"poly", f.factor.to_string()},
                               {"multiplicity", f.multiplicity},
                               {"t", f.t ? Json(*f.t) : Json(nullptr)},
                               {"s", f.s},
                               {"deg", f.degree}});
    }
    Json out{{"polynomial", r.polynomial.to_string()},
             {"discriminant", r.discriminant.str()},
             {"prime", r.p},
             {"disc_valuation", r.disc_valuation},
             {"factors", std::move(factors)},
             {"T", r.T.to_string()},
             {"T_bar", r.T_bar.to_string()},
             {"bound", r.applicable ? Json(r.bound) : Json(nullptr)},
             {"applicable", r.applicable},
             {"conclusion", bound_conclusion(r)}};
    if (r.witness) out["witness_lattice"] = to_json(r.witness->lattice);
    return out;
}

inline Json to_json(const MaximalityResult& m) {
    return Json{{"maximal", m.maximal}, {"f_bar", m.witness.f_bar.to_string()}, {"deg_D", m.witness.deg_D},
                {"witness", to_json(m.witness)}};
}

inline Json to_json(const Certificate& c) {
    Json primes = Json::array();
    for (const auto& sp : c.primes) {
        primes.push_back(Json{{"prime", sp.p},
                              {"source", std::string(to_string(sp.source))},
                              {"disc_valuation", sp.disc_valuation},
                              {"examined", sp.examined},
                              {"note", sp.note}});
    }
    Json reports = Json::array();
    for (const auto& r : c.reports) reports.push_back(to_json(r));
    Json conclusion{{"kind", std::string(to_string(c.conclusion.kind))}};
    if (c.conclusion.kind == Conclusion::Kind::ObstructionFound) {
        conclusion["prime"] = c.conclusion.prime;
        conclusion["bound"] = c.conclusion.bound;
    }
    conclusion["reasons"] = c.conclusion.reasons;
    return Json{{"polynomial", c.polynomial.to_string()},
                {"discriminant", c.discriminant.str()},
                {"trial_bound", c.trial_bound},
                {"primes_scanned", std::move(primes)},
                {"reports", std::move(reports)},
                {"unfactored_cofactor", c.unfactored_cofactor ? Json(c.unfactored_cofactor->str()) : Json(nullptr)},
                {"conclusion", std::move(conclusion)},
                {"caveat", kIrreducibilityCaveat}};
}

namespace detail {

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "none";
    return v.dump();
}

inline void write_text(std::ostream& os, const Json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& [key, value] : v.items()) {
            if (value.is_structured() && !value.empty()) {
                os << pad << key << ":\n";
                write_text(os, value, indent + 2);
            } else {
                os << pad << key << ": " << (value.is_structured() ? std::string("[]") : scalar_text(value)) << '\n';
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v) {
            if (item.is_array()) {
                os << pad << "- [";
                for (std::size_t i = 0; i < item.size(); ++i) os << (i ? ", " : "") << scalar_text(item[i]);
                os << "]\n";
            } else if (item.is_object()) {
                os << pad << "-\n";
                write_text(os, item, indent + 2);
            } else {
                os << pad << "- " << scalar_text(item) << '\n';
            }
        }
    }
}

}  // namespace detail

/// Indented "key: value" rendering of the same document the JSON mode prints,
/// so both modes carry identical content.
inline void write_text(std::ostream& os, const Json& doc) { detail::write_text(os, doc, 0); }

}  // namespace polyindex

#endif  // POLYINDEX_REPORT_HPP
