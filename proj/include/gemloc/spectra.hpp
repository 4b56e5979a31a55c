#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gemloc/functors.hpp"
#include "gemloc/group.hpp"

namespace gemloc {

/// The complete localization-relevant data of a spectrum E: whether E ^ HQ is
/// nonzero, and the set of primes p with E ^ HZ/p nonzero. Any combination is
/// admissible.
struct AcyclicityProfile {
    bool rational_nonacyclic = false;
    PrimeSet nonacyclic_primes = PrimeSet::empty();

    friend bool operator==(const AcyclicityProfile&, const AcyclicityProfile&) = default;
};

enum class Pattern { I, II, III, IV };

inline const char* to_string(Pattern p) {
    switch (p) {
        case Pattern::I: return "I";
        case Pattern::II: return "II";
        case Pattern::III: return "III";
        case Pattern::IV: return "IV";
    }
    return "?";
}

inline Pattern pattern_of(const AcyclicityProfile& prof) {
    if (prof.nonacyclic_primes.is_empty())
        return prof.rational_nonacyclic ? Pattern::II : Pattern::I;
    return prof.rational_nonacyclic ? Pattern::IV : Pattern::III;
}

/// Profiles agree componentwise. This is "EM-localization equivalence": equal
/// profiles induce identical localizations of every stable GEM (a coarsening
/// of Bousfield equivalence).
inline bool em_equivalent(const AcyclicityProfile& a, const AcyclicityProfile& b) {
    return a == b;
}

/// Profile of the Eilenberg-Mac Lane spectrum HG (equally of the Moore
/// spectrum MG: their rational and mod-p homology vanish under the same
/// conditions on G).
inline AcyclicityProfile profile_of_em(const GroupExpr& g) {
    return {!tensor_q(g).is_zero(), support_primes(g)};
}

/// Catalog of named spectra. K(n) and E(n) take the parameter n; the
/// acyclicity facts for K(n), E(n) and KU are standard inputs recorded as
/// catalog data.
inline AcyclicityProfile profile_of_named(std::string_view name,
                                          std::optional<long long> n = std::nullopt) {
    auto no_param = [&](AcyclicityProfile p) {
        if (n) throw std::invalid_argument("spectrum " + std::string(name) + " takes no parameter");
        return p;
    };
    if (name == "S" || name == "Sphere") return no_param({true, PrimeSet::all()});
    if (name == "HZ" || name == "MZ") return no_param({true, PrimeSet::all()});
    if (name == "HQ" || name == "MQ") return no_param({true, PrimeSet::empty()});
    if (name == "KU") return no_param({true, PrimeSet::empty()});
    if (name == "K") {
        if (!n || *n < 0) throw std::invalid_argument("K(n) requires n >= 0");
        if (*n == 0) return {true, PrimeSet::empty()};  // K(0) = HQ
        return {false, PrimeSet::empty()};
    }
    if (name == "E") {
        if (!n || *n < 1) throw std::invalid_argument("E(n) requires n >= 1");
        return {true, PrimeSet::empty()};
    }
    throw std::invalid_argument("unknown spectrum name: " + std::string(name));
}

}  // namespace gemloc
