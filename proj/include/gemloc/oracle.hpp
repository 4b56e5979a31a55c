#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "gemloc/group.hpp"
#include "gemloc/primes.hpp"

namespace gemloc::oracle {

using Int = boost::multiprecision::cpp_int;

/// Dense integer matrix with exact (unbounded) entries. Coefficient growth in
/// Smith reduction is real even for small matrices, so fixed-width arithmetic
/// is not an option here.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows,
                               std::size_t cols_if_empty = 0) {
        std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        IntMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k) == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
            }
        return out;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

struct SmithResult {
    std::vector<Int> diag;  // d_1 | d_2 | ... , nonnegative, length min(rows, cols)
    IntMatrix left;         // unimodular, rows x rows
    IntMatrix right;        // unimodular, cols x cols
};

namespace detail {

inline void swap_rows(IntMatrix& a, std::size_t r, std::size_t s) {
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(s, j));
}
inline void swap_cols(IntMatrix& a, std::size_t c, std::size_t d) {
    for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, c), a.at(i, d));
}
// row[dst] += coef * row[src]
inline void row_axpy(IntMatrix& a, std::size_t dst, std::size_t src, const Int& coef) {
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(dst, j) += coef * a.at(src, j);
}
inline void col_axpy(IntMatrix& a, std::size_t dst, std::size_t src, const Int& coef) {
    for (std::size_t i = 0; i < a.rows(); ++i) a.at(i, dst) += coef * a.at(i, src);
}
inline void negate_row(IntMatrix& a, std::size_t r) {
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(r, j) = -a.at(r, j);
}

}  // namespace detail

/// Diagonalizes `a` by unimodular row and column operations:
/// left * a * right is diagonal with d_1 | d_2 | ... | d_r, entries >= 0.
inline SmithResult smith_normal_form(IntMatrix a) {
    using namespace detail;
    const std::size_t m = a.rows(), n = a.cols();
    IntMatrix u = IntMatrix::identity(m);
    IntMatrix v = IntMatrix::identity(n);
    const std::size_t bound = std::min(m, n);

    for (std::size_t t = 0; t < bound; ++t) {
        for (;;) {
            // pick the nonzero entry of smallest magnitude in the submatrix
            std::size_t pi = t, pj = t;
            bool found = false;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (a.at(i, j) == 0) continue;
                    Int mag = abs(a.at(i, j));
                    if (!found || mag < best) {
                        best = mag;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) goto finished;  // remaining submatrix is zero

            if (pi != t) {
                swap_rows(a, t, pi);
                swap_rows(u, t, pi);
            }
            if (pj != t) {
                swap_cols(a, t, pj);
                swap_cols(v, t, pj);
            }

            const Int pivot = a.at(t, t);
            bool remainder = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a.at(i, t) == 0) continue;
                Int q = a.at(i, t) / pivot;  // truncated: leaves |r| < |pivot|
                if (q != 0) {
                    row_axpy(a, i, t, -q);
                    row_axpy(u, i, t, -q);
                }
                if (a.at(i, t) != 0) remainder = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a.at(t, j) == 0) continue;
                Int q = a.at(t, j) / pivot;
                if (q != 0) {
                    col_axpy(a, j, t, -q);
                    col_axpy(v, j, t, -q);
                }
                if (a.at(t, j) != 0) remainder = true;
            }
            if (remainder) continue;  // smaller entries appeared; re-pick pivot

            // pivot divides its row and column; pull in any entry of the inner
            // submatrix it fails to divide, so the divisibility chain holds
            bool pulled = false;
            for (std::size_t i = t + 1; i < m && !pulled; ++i)
                for (std::size_t j = t + 1; j < n && !pulled; ++j)
                    if (a.at(i, j) % pivot != 0) {
                        row_axpy(a, t, i, 1);
                        row_axpy(u, t, i, 1);
                        pulled = true;
                    }
            if (!pulled) break;
        }
        if (a.at(t, t) < 0) {
            negate_row(a, t);
            negate_row(u, t);
        }
    }
finished:
    std::vector<Int> diag(bound);
    for (std::size_t i = 0; i < bound; ++i) diag[i] = a.at(i, i);
    return {std::move(diag), std::move(u), std::move(v)};
}

/// Independent route to the invariant factors: d_k = D_k / D_{k-1}, where D_k
/// is the gcd of all k x k minors. Exponential in the matrix size; used to
/// cross-examine smith_normal_form on small matrices.
namespace detail {

inline Int minor_det(const IntMatrix& a, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols, std::size_t skip_col_mask = 0) {
    // cofactor expansion along the first remaining row
    std::size_t k = rows.size();
    if (k == 0) return 1;
    if (k == 1) return a.at(rows[0], cols[0]);
    Int det = 0;
    int sign = 1;
    for (std::size_t j = 0; j < k; ++j) {
        if (a.at(rows[0], cols[j]) != 0) {
            std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
            std::vector<std::size_t> sub_cols;
            for (std::size_t jj = 0; jj < k; ++jj)
                if (jj != j) sub_cols.push_back(cols[jj]);
            det += sign * a.at(rows[0], cols[j]) * minor_det(a, sub_rows, sub_cols);
        }
        sign = -sign;
    }
    (void)skip_col_mask;
    return det;
}

inline void combinations(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                         std::size_t start, const auto& visit) {
    if (cur.size() == k) {
        visit(cur);
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        combinations(n, k, cur, i + 1, visit);
        cur.pop_back();
    }
}

}  // namespace detail

inline std::vector<Int> elementary_divisors_by_minors(const IntMatrix& a) {
    const std::size_t bound = std::min(a.rows(), a.cols());
    std::vector<Int> gcds(bound + 1);
    gcds[0] = 1;
    for (std::size_t k = 1; k <= bound; ++k) {
        Int g = 0;
        std::vector<std::size_t> rows_cur, cols_cur;
        detail::combinations(a.rows(), k, rows_cur, 0, [&](const std::vector<std::size_t>& rows) {
            std::vector<std::size_t> cc;
            detail::combinations(a.cols(), k, cc, 0, [&](const std::vector<std::size_t>& cols) {
                g = gcd(g, detail::minor_det(a, rows, cols));
            });
        });
        gcds[k] = abs(g);
    }
    std::vector<Int> divisors(bound);
    for (std::size_t k = 1; k <= bound; ++k) {
        if (gcds[k] == 0)
            divisors[k - 1] = 0;
        else
            divisors[k - 1] = gcds[k] / gcds[k - 1];
    }
    return divisors;
}

/// Presentation of a finitely generated abelian group as coker of an integer
/// matrix: one column per generator, one row per relation.
struct FgPresentation {
    IntMatrix relations;

    std::size_t generators() const { return relations.cols(); }
};

/// Isomorphism invariants: free rank plus prime-power torsion orders in
/// canonical order (sorted by prime, then exponent).
struct FgInvariants {
    std::size_t free_rank = 0;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> torsion;  // (p, k)

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    friend bool operator==(const FgInvariants&, const FgInvariants&) = default;
};

namespace detail {

inline std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_int(const Int& n) {
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return gemloc::factorize(n.convert_to<std::uint64_t>());
    // Rare path: invariant factors beyond 64 bits.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    Int rest = n;
    for (std::uint64_t p = 2; p < 100000 && rest > 1; p = (p == 2 ? 3 : p + 2)) {
        std::uint32_t k = 0;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        if (k) out.emplace_back(p, k);
    }
    while (rest > 1) {
        if (boost::multiprecision::miller_rabin_test(rest, 40)) {
            if (rest > std::numeric_limits<std::uint64_t>::max())
                throw std::overflow_error("torsion prime exceeds 64 bits");
            out.emplace_back(rest.convert_to<std::uint64_t>(), 1);
            break;
        }
        // deterministic Pollard rho over cpp_int
        Int d = rest;
        for (Int c = 1; d == rest || d == 1; ++c) {
            Int x = 2, y = 2;
            d = 1;
            while (d == 1) {
                x = (x * x + c) % rest;
                y = (y * y + c) % rest;
                y = (y * y + c) % rest;
                d = gcd(abs(x - y), rest);
            }
        }
        for (auto [p, k] : factor_int(d)) {
            (void)k;
            while (rest % p == 0) {
                out.emplace_back(p, 1);
                rest /= p;
            }
        }
    }
    std::sort(out.begin(), out.end());
    std::vector<std::pair<std::uint64_t, std::uint32_t>> merged;
    for (auto [p, k] : out) {
        if (!merged.empty() && merged.back().first == p)
            merged.back().second += k;
        else
            merged.emplace_back(p, k);
    }
    return merged;
}

}  // namespace detail

inline FgInvariants fg_invariants(const FgPresentation& pres) {
    SmithResult snf = smith_normal_form(pres.relations);
    FgInvariants inv;
    std::size_t rank = 0;
    for (const Int& d : snf.diag) {
        if (d == 0) continue;
        ++rank;
        if (d > 1)
            for (auto pk : detail::factor_int(d)) inv.torsion.push_back(pk);
    }
    inv.free_rank = pres.generators() - rank;
    std::sort(inv.torsion.begin(), inv.torsion.end());
    return inv;
}

inline GroupExpr to_group_expr(const FgInvariants& inv) {
    GroupBuilder b;
    if (inv.free_rank > 0) b.add(atoms::Z{}, Mult::of(inv.free_rank));
    for (auto [p, k] : inv.torsion) b.add(atoms::Zmod{p, k});
    return b.build();
}

/// The quotient tower G/p^k G for k = 1..depth, computed by appending the
/// relations p^k e_i to the presentation. The tower realizes the finite
/// truncations of Ext(Z/p^inf, G) for finitely generated G.
inline std::vector<FgInvariants> completion_tower(const FgPresentation& pres, std::uint64_t p,
                                                  int depth) {
    if (depth < 1) throw std::invalid_argument("tower depth must be >= 1");
    gemloc::detail::require_prime(p, "completion tower");
    const std::size_t r = pres.relations.rows(), c = pres.generators();
    std::vector<FgInvariants> tower;
    Int pk = 1;
    for (int k = 1; k <= depth; ++k) {
        pk *= p;
        IntMatrix stacked(r + c, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) stacked.at(i, j) = pres.relations.at(i, j);
        for (std::size_t j = 0; j < c; ++j) stacked.at(r + j, j) = pk;
        tower.push_back(fg_invariants(FgPresentation{std::move(stacked)}));
    }
    return tower;
}

/// Largest p-adic valuation among the nonzero invariant factors: the
/// p-exponent of the torsion of the presented group.
inline std::uint32_t p_exponent(const FgPresentation& pres, std::uint64_t p) {
    gemloc::detail::require_prime(p, "p-exponent");
    SmithResult snf = smith_normal_form(pres.relations);
    std::uint32_t e = 0;
    for (Int d : snf.diag) {
        if (d == 0) continue;
        std::uint32_t v = 0;
        while (d % p == 0) {
            d /= p;
            ++v;
        }
        e = std::max(e, v);
    }
    return e;
}

/// Certifies `a` (a claimed value of Ext(Z/p^inf, G), a sum of Zhat_p and
/// Z/p^j atoms) against the quotient tower of the presentation: for every
/// k <= depth the symbolic quotient a/p^k a must match G/p^k G.
/// Symbolically, Zhat_p/p^k = Z/p^k and (Z/p^j)/p^k = Z/p^min(j,k).
inline bool check_ext_consistency(const GroupExpr& a, const FgPresentation& pres, std::uint64_t p,
                                  int depth) {
    gemloc::detail::require_prime(p, "ext consistency");
    std::uint64_t adic_copies = 0;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> cyclic;  // (exponent j, copies)
    for (const auto& [atom, m] : a.terms()) {
        if (m.is_omega()) throw std::invalid_argument("ext consistency: omega multiplicity");
        if (const auto* adic = std::get_if<atoms::AdicInt>(&atom)) {
            if (adic->p != p) throw std::invalid_argument("ext consistency: Zhat at a different prime");
            adic_copies += m.count();
        } else if (const auto* zm = std::get_if<atoms::Zmod>(&atom)) {
            if (zm->p != p) throw std::invalid_argument("ext consistency: torsion at a different prime");
            cyclic.emplace_back(zm->k, m.count());
        } else {
            throw std::invalid_argument("ext consistency: atom outside Zhat_p / Z/p^j");
        }
    }

    std::vector<FgInvariants> tower = completion_tower(pres, p, depth);
    for (int k = 1; k <= depth; ++k) {
        std::vector<std::pair<std::uint64_t, std::uint32_t>> expect;
        auto push_copies = [&](std::uint32_t e, std::uint64_t copies) {
            for (std::uint64_t i = 0; i < copies; ++i) expect.emplace_back(p, e);
        };
        push_copies(static_cast<std::uint32_t>(k), adic_copies);
        for (auto [j, copies] : cyclic) push_copies(std::min<std::uint32_t>(j, k), copies);
        std::sort(expect.begin(), expect.end());

        const FgInvariants& got = tower[k - 1];
        if (got.free_rank != 0) return false;
        if (got.torsion != expect) return false;
    }
    return true;
}

/// Certifies Hom(Z/p^inf, G) = 0 for finitely generated G by the inverse
/// system of p^k-torsion subgroups with multiplication-by-p transitions: the
/// composite of `depth` transitions is multiplication by p^depth, whose image
/// vanishes iff depth reaches the p-exponent of the torsion of G. Returns
/// false when the depth is inconclusive.
inline bool check_hom_vanishing(const FgPresentation& pres, std::uint64_t p, int depth) {
    if (depth < 1) throw std::invalid_argument("tower depth must be >= 1");
    return static_cast<std::uint32_t>(depth) >= p_exponent(pres, p);
}

}  // namespace gemloc::oracle
