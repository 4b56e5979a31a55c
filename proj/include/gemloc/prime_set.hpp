#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gemloc/error.hpp"
#include "gemloc/primes.hpp"

namespace gemloc {

/// A finite or cofinite set of primes with exact boolean algebra.
///
/// The representation is unique: the basis is sorted, duplicate-free and every
/// element is a validated prime, so two values denote the same set iff they
/// compare equal. Finite with empty basis is the empty set; Cofinite with
/// empty basis is the set of all primes.
class PrimeSet {
public:
    enum class Kind : int { Finite = 0, Cofinite = 1 };

    PrimeSet() = default;  // empty set

    static PrimeSet finite(std::vector<std::uint64_t> primes) {
        return PrimeSet(Kind::Finite, std::move(primes));
    }
    static PrimeSet cofinite(std::vector<std::uint64_t> removed) {
        return PrimeSet(Kind::Cofinite, std::move(removed));
    }
    static PrimeSet empty() { return PrimeSet(); }
    static PrimeSet all() { return cofinite({}); }
    static PrimeSet single(std::uint64_t p) { return finite({p}); }

    Kind kind() const { return kind_; }
    const std::vector<std::uint64_t>& basis() const { return basis_; }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_empty() const { return is_finite() && basis_.empty(); }
    bool is_all() const { return !is_finite() && basis_.empty(); }

    bool contains(std::uint64_t p) const {
        if (!is_prime(p))
            throw GrammarError("prime set membership asked for non-prime " + std::to_string(p));
        bool in_basis = std::binary_search(basis_.begin(), basis_.end(), p);
        return is_finite() ? in_basis : !in_basis;
    }

    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;
    friend std::strong_ordering operator<=>(const PrimeSet&, const PrimeSet&) = default;

private:
    PrimeSet(Kind kind, std::vector<std::uint64_t> basis) : kind_(kind), basis_(std::move(basis)) {
        std::sort(basis_.begin(), basis_.end());
        basis_.erase(std::unique(basis_.begin(), basis_.end()), basis_.end());
        for (std::uint64_t p : basis_)
            if (!is_prime(p))
                throw GrammarError("not a prime: " + std::to_string(p));
    }

    Kind kind_ = Kind::Finite;
    std::vector<std::uint64_t> basis_;
};

namespace detail {

inline std::vector<std::uint64_t> merge_union(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<std::uint64_t> merge_intersection(const std::vector<std::uint64_t>& a,
                                                     const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<std::uint64_t> merge_difference(const std::vector<std::uint64_t>& a,
                                                   const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace detail

inline PrimeSet complement(const PrimeSet& s) {
    return s.is_finite() ? PrimeSet::cofinite(s.basis()) : PrimeSet::finite(s.basis());
}

inline PrimeSet intersect(const PrimeSet& a, const PrimeSet& b) {
    using detail::merge_difference;
    using detail::merge_intersection;
    using detail::merge_union;
    if (a.is_finite() && b.is_finite())
        return PrimeSet::finite(merge_intersection(a.basis(), b.basis()));
    if (a.is_finite())
        return PrimeSet::finite(merge_difference(a.basis(), b.basis()));
    if (b.is_finite())
        return PrimeSet::finite(merge_difference(b.basis(), a.basis()));
    return PrimeSet::cofinite(merge_union(a.basis(), b.basis()));
}

inline PrimeSet set_union(const PrimeSet& a, const PrimeSet& b) {
    return complement(intersect(complement(a), complement(b)));
}

inline PrimeSet difference(const PrimeSet& a, const PrimeSet& b) {
    return intersect(a, complement(b));
}

inline bool set_equal(const PrimeSet& a, const PrimeSet& b) { return a == b; }

}  // namespace gemloc
