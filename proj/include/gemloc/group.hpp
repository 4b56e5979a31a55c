#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gemloc/error.hpp"
#include "gemloc/prime_set.hpp"
#include "gemloc/primes.hpp"

namespace gemloc {

/// Term multiplicity: a finite count >= 1, or omega (a countable direct sum,
/// permitted on the atom Q only). Addition and multiplication absorb omega.
class Mult {
public:
    static Mult one() { return Mult(1); }
    static Mult of(std::uint64_t n) {
        if (n == 0) throw GrammarError("multiplicity must be >= 1");
        return Mult(n);
    }
    static Mult omega() { return Mult(0); }

    bool is_omega() const { return n_ == 0; }
    std::uint64_t count() const { return n_; }  // finite multiplicities only

    friend Mult operator+(Mult a, Mult b) {
        if (a.is_omega() || b.is_omega()) return omega();
        return Mult(a.n_ + b.n_);
    }
    friend Mult operator*(Mult a, Mult b) {
        if (a.is_omega() || b.is_omega()) return omega();
        return Mult(a.n_ * b.n_);
    }
    friend bool operator==(Mult, Mult) = default;

private:
    explicit Mult(std::uint64_t n) : n_(n) {}
    std::uint64_t n_ = 1;  // 0 encodes omega
};

/// The closed grammar of abelian-group atoms. Alternative order is the fixed
/// total order used by normal forms.
namespace atoms {

struct Z {
    friend std::strong_ordering operator<=>(const Z&, const Z&) = default;
};
struct Zmod {  // Z/p^k
    std::uint64_t p;
    std::uint32_t k;
    friend std::strong_ordering operator<=>(const Zmod&, const Zmod&) = default;
};
struct Q {
    friend std::strong_ordering operator<=>(const Q&, const Q&) = default;
};
struct ZLocAt {  // Z_R: denominators coprime to every prime in `at`
    PrimeSet at;
    friend std::strong_ordering operator<=>(const ZLocAt&, const ZLocAt&) = default;
};
struct AdicInt {  // Zhat_p
    std::uint64_t p;
    friend std::strong_ordering operator<=>(const AdicInt&, const AdicInt&) = default;
};
struct AdicRat {  // Qhat_p = Q (x) Zhat_p
    std::uint64_t p;
    friend std::strong_ordering operator<=>(const AdicRat&, const AdicRat&) = default;
};
struct Prufer {  // Z/p^inf
    std::uint64_t p;
    friend std::strong_ordering operator<=>(const Prufer&, const Prufer&) = default;
};
struct PruferSum {  // one copy of Z/p^inf per prime in `over`
    PrimeSet over;
    friend std::strong_ordering operator<=>(const PruferSum&, const PruferSum&) = default;
};
struct AdicProd {  // product of Zhat_p over `over`
    PrimeSet over;
    friend std::strong_ordering operator<=>(const AdicProd&, const AdicProd&) = default;
};
struct AdicProdQ {  // Q (x) product of Zhat_p over `over`, kept symbolic
    PrimeSet over;
    friend std::strong_ordering operator<=>(const AdicProdQ&, const AdicProdQ&) = default;
};

}  // namespace atoms

using GroupAtom = std::variant<atoms::Z, atoms::Zmod, atoms::Q, atoms::ZLocAt, atoms::AdicInt,
                               atoms::AdicRat, atoms::Prufer, atoms::PruferSum, atoms::AdicProd,
                               atoms::AdicProdQ>;

/// A symbolic abelian group: a finite multiset of canonical atoms with
/// multiplicities, in normal form (atoms sorted and merged; the empty multiset
/// is the zero group).
///
/// Normal-form equality is the isomorphism test of the calculator. It is
/// sound: equal normal forms are isomorphic groups, and atoms from different
/// families (or with different parameters) are pairwise non-isomorphic. One
/// caveat is documented: a cofinite product atom is kept symbolic, so e.g.
/// AdicProd(all) and Zhat_2 + AdicProd(all\{2}) are distinct expressions even
/// though the underlying groups are isomorphic; consistency checks that must
/// see through such product splittings compare homological fingerprints
/// instead of normal forms.
class GroupExpr {
public:
    using Term = std::pair<GroupAtom, Mult>;

    GroupExpr() = default;  // zero group

    static GroupExpr zero() { return GroupExpr(); }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    friend bool operator==(const GroupExpr&, const GroupExpr&) = default;

private:
    friend class GroupBuilder;
    explicit GroupExpr(std::vector<Term> terms) : terms_(std::move(terms)) {}

    std::vector<Term> terms_;  // sorted by atom, unique atoms
};

namespace detail {

inline void require_prime(std::uint64_t p, const char* what) {
    if (!is_prime(p)) throw GrammarError(std::string(what) + ": " + std::to_string(p) + " is not prime");
}

}  // namespace detail

/// Accumulates atoms (degenerate parameters allowed) and produces the normal
/// form. Degenerate parametric atoms are rewritten on insertion:
///   Z_(all) -> Z, Z_({}) -> Q, and PruferSum/AdicProd/AdicProdQ over a finite
///   set expand into sums of Prufer/AdicInt/AdicRat atoms (empty set -> 0).
class GroupBuilder {
public:
    GroupBuilder& add(const GroupAtom& a, Mult m = Mult::one()) {
        std::visit([&](const auto& atom) { expand(atom, m); }, a);
        return *this;
    }

    GroupBuilder& add(const GroupExpr& g, Mult m = Mult::one()) {
        for (const auto& [a, am] : g.terms()) add(a, am * m);
        return *this;
    }

    GroupExpr build() const {
        std::vector<GroupExpr::Term> terms = terms_;
        std::sort(terms.begin(), terms.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<GroupExpr::Term> merged;
        for (const auto& t : terms) {
            if (!merged.empty() && merged.back().first == t.first)
                merged.back().second = merged.back().second + t.second;
            else
                merged.push_back(t);
        }
        for (const auto& [a, m] : merged)
            if (m.is_omega() && !std::holds_alternative<atoms::Q>(a))
                throw GrammarError("omega multiplicity is permitted on Q only");
        return GroupExpr(std::move(merged));
    }

private:
    void push(GroupAtom a, Mult m) { terms_.emplace_back(std::move(a), m); }

    void expand(const atoms::Z& a, Mult m) { push(a, m); }
    void expand(const atoms::Q& a, Mult m) { push(a, m); }
    void expand(const atoms::Zmod& a, Mult m) {
        detail::require_prime(a.p, "Z/p^k base");
        if (a.k == 0) throw GrammarError("Z/p^k requires k >= 1");
        push(a, m);
    }
    void expand(const atoms::ZLocAt& a, Mult m) {
        if (a.at.is_all())
            push(atoms::Z{}, m);
        else if (a.at.is_empty())
            push(atoms::Q{}, m);
        else
            push(a, m);
    }
    void expand(const atoms::AdicInt& a, Mult m) {
        detail::require_prime(a.p, "Zhat base");
        push(a, m);
    }
    void expand(const atoms::AdicRat& a, Mult m) {
        detail::require_prime(a.p, "Qhat base");
        push(a, m);
    }
    void expand(const atoms::Prufer& a, Mult m) {
        detail::require_prime(a.p, "Z/p^inf base");
        push(a, m);
    }
    void expand(const atoms::PruferSum& a, Mult m) {
        if (a.over.is_finite())
            for (std::uint64_t p : a.over.basis()) push(atoms::Prufer{p}, m);
        else
            push(a, m);
    }
    void expand(const atoms::AdicProd& a, Mult m) {
        if (a.over.is_finite())
            for (std::uint64_t p : a.over.basis()) push(atoms::AdicInt{p}, m);
        else
            push(a, m);
    }
    void expand(const atoms::AdicProdQ& a, Mult m) {
        if (a.over.is_finite())
            for (std::uint64_t p : a.over.basis()) push(atoms::AdicRat{p}, m);
        else
            push(a, m);
    }

    std::vector<GroupExpr::Term> terms_;
};

/// Raw input for `normalize`: atoms as above plus Z/n with arbitrary modulus
/// n >= 2, which is split by prime factorization.
struct ModN {
    std::uint64_t n;
};
struct RawTerm {
    std::variant<ModN, GroupAtom> atom;
    Mult mult = Mult::one();
};
using RawExpr = std::vector<RawTerm>;

inline GroupExpr normalize(const RawExpr& raw) {
    GroupBuilder b;
    for (const auto& t : raw) {
        if (const auto* zn = std::get_if<ModN>(&t.atom)) {
            if (zn->n < 2) throw GrammarError("Z/" + std::to_string(zn->n) + " is not a valid modulus");
            for (auto [p, k] : factorize(zn->n)) b.add(atoms::Zmod{p, k}, t.mult);
        } else {
            b.add(std::get<GroupAtom>(t.atom), t.mult);
        }
    }
    return b.build();
}

inline GroupExpr make_group(const GroupAtom& a, Mult m = Mult::one()) {
    return GroupBuilder().add(a, m).build();
}

inline GroupExpr direct_sum(const GroupExpr& a, const GroupExpr& b) {
    return GroupBuilder().add(a).add(b).build();
}

inline GroupExpr scale(const GroupExpr& g, Mult m) {
    return GroupBuilder().add(g, m).build();
}

/// Normal forms are the isomorphism test within the grammar (see GroupExpr).
inline bool iso_equal(const GroupExpr& a, const GroupExpr& b) { return a == b; }

inline bool has_prufer_part(const GroupExpr& g) {
    for (const auto& [a, m] : g.terms())
        if (std::holds_alternative<atoms::Prufer>(a) || std::holds_alternative<atoms::PruferSum>(a))
            return true;
    return false;
}

}  // namespace gemloc
