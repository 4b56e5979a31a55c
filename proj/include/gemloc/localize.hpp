#pragma once

#include <cstdint>

#include "gemloc/functors.hpp"
#include "gemloc/gem.hpp"
#include "gemloc/group.hpp"
#include "gemloc/spectra.hpp"

namespace gemloc {

/// Localization of HG at the mod-p Moore spectrum:
///   L HG = H(Ext(Z/p^inf,G)) v Sigma H(Hom(Z/p^inf,G)).
inline GemExpr localize_mod_p_em(std::uint64_t p, const GroupExpr& g) {
    GemExpr out;
    out.set_layer(0, ext_prufer(p, g));
    out.set_layer(1, hom_prufer(p, g));
    return out;
}

/// Localization of H(atom) for a canonical atom, by the per-atom rule table.
/// Each rule only sees the effective prime set: the profile's nonacyclic
/// primes intersected with the support of the atom.
inline GemExpr localize_atom(const AcyclicityProfile& prof, const GroupAtom& a) {
    const PrimeSet& nonacyclic = prof.nonacyclic_primes;
    const bool rat = prof.rational_nonacyclic;
    GroupBuilder deg0, deg1;

    std::visit(
        [&](const auto& atom) {
            using T = std::decay_t<decltype(atom)>;
            if constexpr (std::is_same_v<T, atoms::Z>) {
                if (nonacyclic.is_empty()) {
                    if (rat) deg0.add(atoms::Q{});
                } else if (rat) {
                    deg0.add(atoms::ZLocAt{nonacyclic});
                } else {
                    deg0.add(atoms::AdicProd{nonacyclic});
                }
            } else if constexpr (std::is_same_v<T, atoms::Zmod>) {
                if (nonacyclic.contains(atom.p)) deg0.add(atom);
            } else if constexpr (std::is_same_v<T, atoms::Q>) {
                if (rat) deg0.add(atom);
            } else if constexpr (std::is_same_v<T, atoms::ZLocAt>) {
                PrimeSet effective = intersect(nonacyclic, atom.at);
                if (effective.is_empty()) {
                    if (rat) deg0.add(atoms::Q{});
                } else if (rat) {
                    deg0.add(atoms::ZLocAt{effective});
                } else {
                    deg0.add(atoms::AdicProd{effective});
                }
            } else if constexpr (std::is_same_v<T, atoms::AdicInt>) {
                if (nonacyclic.contains(atom.p))
                    deg0.add(atom);
                else if (rat)
                    deg0.add(atoms::AdicRat{atom.p});
            } else if constexpr (std::is_same_v<T, atoms::AdicRat>) {
                if (rat) deg0.add(atom);
            } else if constexpr (std::is_same_v<T, atoms::Prufer>) {
                if (nonacyclic.contains(atom.p)) {
                    if (rat)
                        deg0.add(atom);
                    else
                        deg1.add(atoms::AdicInt{atom.p});
                }
            } else if constexpr (std::is_same_v<T, atoms::PruferSum>) {
                PrimeSet effective = intersect(nonacyclic, atom.over);
                if (!effective.is_empty()) {
                    if (rat)
                        deg0.add(atoms::PruferSum{effective});
                    else
                        deg1.add(atoms::AdicProd{effective});
                }
            } else if constexpr (std::is_same_v<T, atoms::AdicProd>) {
                PrimeSet effective = intersect(nonacyclic, atom.over);
                if (rat) {
                    // Pullback of the completed part against the rationalized
                    // whole: the factors at effective primes survive integrally,
                    // the rest only rationally.
                    deg0.add(atoms::AdicProd{effective});
                    deg0.add(atoms::AdicProdQ{difference(atom.over, effective)});
                } else {
                    deg0.add(atoms::AdicProd{effective});
                }
            } else if constexpr (std::is_same_v<T, atoms::AdicProdQ>) {
                if (rat) deg0.add(atom);
            }
        },
        a);

    GemExpr out;
    out.set_layer(0, deg0.build());
    out.set_layer(1, deg1.build());
    return out;
}

/// Localization of HG: the wedge of the per-atom localizations, multiplicities
/// preserved (omega.Q survives rationally, dies otherwise). Output layers are
/// contained in degrees {0,1}.
inline GemExpr localize_em(const AcyclicityProfile& prof, const GroupExpr& g) {
    GemExpr out;
    for (const auto& [a, m] : g.terms())
        out = wedge(out, scale(localize_atom(prof, a), m));
    return out;
}

/// Degreewise localization of a formal wedge of suspended EM spectra.
inline GemExpr localize_gem(const AcyclicityProfile& prof, const GemExpr& x) {
    GemExpr out;
    for (const auto& [k, g] : x.layers()) out = wedge(out, suspend(localize_em(prof, g), k));
    return out;
}

/// The four corners of the arithmetic square for HG, for auditing an answer:
///
///     localized ----------> per_prime
///         |                     |
///         v                     v
///     rational  ------> rational_per_prime
///
/// `per_prime` assembles the product over p in P of the mod-p localizations;
/// for infinite P the product is expressed through the symbolic AdicProd
/// forms (each atom of G contributes a constant family over its support, so
/// the assembly stays exact within the grammar).
struct CornerReport {
    GemExpr localized;
    GemExpr per_prime;
    GemExpr rational;
    GemExpr rational_per_prime;
    PrimeSet relevant_primes;  // P: nonacyclic primes meeting the support of G
    bool symbolic_product = false;  // P infinite: products rendered symbolically

    friend bool operator==(const CornerReport&, const CornerReport&) = default;
};

inline CornerReport arithmetic_corners(const AcyclicityProfile& prof, const GroupExpr& g) {
    const PrimeSet relevant = intersect(prof.nonacyclic_primes, support_primes(g));

    GroupBuilder deg0, deg1;
    for (const auto& [a, m] : g.terms()) {
        if (m.is_omega()) continue;  // omega.Q: no mod-p contribution
        const Mult mult = m;
        std::visit(
            [&](const auto& atom) {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, atoms::Z>) {
                    deg0.add(atoms::AdicProd{relevant}, mult);
                } else if constexpr (std::is_same_v<T, atoms::Zmod>) {
                    if (relevant.contains(atom.p)) deg0.add(atom, mult);
                } else if constexpr (std::is_same_v<T, atoms::ZLocAt>) {
                    deg0.add(atoms::AdicProd{intersect(relevant, atom.at)}, mult);
                } else if constexpr (std::is_same_v<T, atoms::AdicInt>) {
                    if (relevant.contains(atom.p)) deg0.add(atom, mult);
                } else if constexpr (std::is_same_v<T, atoms::AdicProd>) {
                    deg0.add(atoms::AdicProd{intersect(relevant, atom.over)}, mult);
                } else if constexpr (std::is_same_v<T, atoms::Prufer>) {
                    if (relevant.contains(atom.p)) deg1.add(atoms::AdicInt{atom.p}, mult);
                } else if constexpr (std::is_same_v<T, atoms::PruferSum>) {
                    deg1.add(atoms::AdicProd{intersect(relevant, atom.over)}, mult);
                }
                // Q, AdicRat, AdicProdQ have no mod-p localization.
            },
            a);
    }

    CornerReport report;
    report.localized = localize_em(prof, g);
    report.per_prime.set_layer(0, deg0.build());
    report.per_prime.set_layer(1, deg1.build());
    report.rational = GemExpr::em(tensor_q(g));
    for (const auto& [k, layer] : report.per_prime.layers())
        report.rational_per_prime.set_layer(k, tensor_q(layer));
    report.relevant_primes = relevant;
    report.symbolic_product = !relevant.is_finite();
    return report;
}

}  // namespace gemloc
