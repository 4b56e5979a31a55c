#pragma once

#include <cstdint>

#include "gemloc/group.hpp"

namespace gemloc {

/// Rationalization Q (x) G, computed atom by atom. Omega multiplicity on Q is
/// preserved; every torsion atom dies.
inline GroupExpr tensor_q(const GroupExpr& g) {
    GroupBuilder b;
    for (const auto& [a, m] : g.terms()) {
        const Mult mult = m;
        std::visit(
            [&](const auto& atom) {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, atoms::Z>)
                    b.add(atoms::Q{}, mult);
                else if constexpr (std::is_same_v<T, atoms::Q>)
                    b.add(atoms::Q{}, mult);
                else if constexpr (std::is_same_v<T, atoms::ZLocAt>)
                    b.add(atoms::Q{}, mult);
                else if constexpr (std::is_same_v<T, atoms::AdicInt>)
                    b.add(atoms::AdicRat{atom.p}, mult);
                else if constexpr (std::is_same_v<T, atoms::AdicRat>)
                    b.add(atoms::AdicRat{atom.p}, mult);
                else if constexpr (std::is_same_v<T, atoms::AdicProd>)
                    b.add(atoms::AdicProdQ{atom.over}, mult);
                else if constexpr (std::is_same_v<T, atoms::AdicProdQ>)
                    b.add(atoms::AdicProdQ{atom.over}, mult);
                // Zmod, Prufer, PruferSum are torsion: Q (x) - vanishes.
            },
            a);
    }
    return b.build();
}

struct ModPPair {
    GroupExpr quotient;  // G/pG
    GroupExpr torsion;   // Tor(Z/p, G) = G[p]

    friend bool operator==(const ModPPair&, const ModPPair&) = default;
};

/// The mod-p homology pair (G/pG, Tor(Z/p,G)). Both components are elementary
/// abelian; omega.Q contributes zero.
inline ModPPair mod_p_pair(const GroupExpr& g, std::uint64_t p) {
    detail::require_prime(p, "mod-p functor");
    GroupBuilder quot, tor;
    const atoms::Zmod zp{p, 1};
    for (const auto& [a, m] : g.terms()) {
        if (m.is_omega()) continue;  // only Q carries omega, and Q/p = Q[p] = 0
        const Mult mult = m;
        std::visit(
            [&](const auto& atom) {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, atoms::Z>)
                    quot.add(zp, mult);
                else if constexpr (std::is_same_v<T, atoms::Zmod>) {
                    if (atom.p == p) {
                        quot.add(zp, mult);
                        tor.add(zp, mult);
                    }
                } else if constexpr (std::is_same_v<T, atoms::ZLocAt>) {
                    if (atom.at.contains(p)) quot.add(zp, mult);
                } else if constexpr (std::is_same_v<T, atoms::AdicInt>) {
                    if (atom.p == p) quot.add(zp, mult);
                } else if constexpr (std::is_same_v<T, atoms::Prufer>) {
                    if (atom.p == p) tor.add(zp, mult);
                } else if constexpr (std::is_same_v<T, atoms::PruferSum>) {
                    if (atom.over.contains(p)) tor.add(zp, mult);
                } else if constexpr (std::is_same_v<T, atoms::AdicProd>) {
                    if (atom.over.contains(p)) quot.add(zp, mult);
                }
                // Q, AdicRat, AdicProdQ are uniquely divisible: both zero.
            },
            a);
    }
    return {quot.build(), tor.build()};
}

inline bool is_uniquely_p_divisible(const GroupExpr& g, std::uint64_t p) {
    ModPPair mp = mod_p_pair(g, p);
    return mp.quotient.is_zero() && mp.torsion.is_zero();
}

/// The exact set of primes p at which g fails to be uniquely p-divisible.
inline PrimeSet support_primes(const GroupExpr& g) {
    PrimeSet out = PrimeSet::empty();
    for (const auto& [a, m] : g.terms()) {
        std::visit(
            [&](const auto& atom) {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, atoms::Z>)
                    out = set_union(out, PrimeSet::all());
                else if constexpr (std::is_same_v<T, atoms::Zmod>)
                    out = set_union(out, PrimeSet::single(atom.p));
                else if constexpr (std::is_same_v<T, atoms::ZLocAt>)
                    out = set_union(out, atom.at);
                else if constexpr (std::is_same_v<T, atoms::AdicInt>)
                    out = set_union(out, PrimeSet::single(atom.p));
                else if constexpr (std::is_same_v<T, atoms::Prufer>)
                    out = set_union(out, PrimeSet::single(atom.p));
                else if constexpr (std::is_same_v<T, atoms::PruferSum>)
                    out = set_union(out, atom.over);
                else if constexpr (std::is_same_v<T, atoms::AdicProd>)
                    out = set_union(out, atom.over);
            },
            a);
    }
    return out;
}

/// B_p = Hom(Z/p^inf, G): zero except on the Prufer part at p, where each copy
/// of Z/p^inf contributes one Zhat_p. Always torsion-free.
inline GroupExpr hom_prufer(std::uint64_t p, const GroupExpr& g) {
    detail::require_prime(p, "Hom(Z/p^inf,-)");
    GroupBuilder b;
    for (const auto& [a, m] : g.terms()) {
        if (m.is_omega()) continue;
        const Mult mult = m;
        std::visit(
            [&](const auto& atom) {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, atoms::Prufer>) {
                    if (atom.p == p) b.add(atoms::AdicInt{p}, mult);
                } else if constexpr (std::is_same_v<T, atoms::PruferSum>) {
                    if (atom.over.contains(p)) b.add(atoms::AdicInt{p}, mult);
                }
            },
            a);
    }
    return b.build();
}

/// A_p = Ext(Z/p^inf, G): Zhat_p for each copy of Z, Z_R (p in R), Zhat_p or
/// a product containing it; Z/p^k stays Z/p^k; zero on p-divisible atoms.
inline GroupExpr ext_prufer(std::uint64_t p, const GroupExpr& g) {
    detail::require_prime(p, "Ext(Z/p^inf,-)");
    GroupBuilder b;
    for (const auto& [a, m] : g.terms()) {
        if (m.is_omega()) continue;
        const Mult mult = m;
        std::visit(
            [&](const auto& atom) {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, atoms::Z>)
                    b.add(atoms::AdicInt{p}, mult);
                else if constexpr (std::is_same_v<T, atoms::Zmod>) {
                    if (atom.p == p) b.add(atom, mult);
                } else if constexpr (std::is_same_v<T, atoms::ZLocAt>) {
                    if (atom.at.contains(p)) b.add(atoms::AdicInt{p}, mult);
                } else if constexpr (std::is_same_v<T, atoms::AdicInt>) {
                    if (atom.p == p) b.add(atoms::AdicInt{p}, mult);
                } else if constexpr (std::is_same_v<T, atoms::AdicProd>) {
                    // Ext into a product is the product of Ext values; only the
                    // factor at p survives.
                    if (atom.over.contains(p)) b.add(atoms::AdicInt{p}, mult);
                }
                // Q, AdicRat, AdicProdQ, Prufer, PruferSum are p-divisible.
            },
            a);
    }
    return b.build();
}

}  // namespace gemloc
