#pragma once

#include <map>
#include <utility>

#include "gemloc/group.hpp"

namespace gemloc {

/// A finite formal wedge of suspended Eilenberg-Mac Lane spectra: a map from
/// integer degree k to the nonzero group placed in that degree. An absent
/// degree is the zero group; the empty map is the zero spectrum.
class GemExpr {
public:
    GemExpr() = default;

    static GemExpr zero() { return GemExpr(); }

    static GemExpr em(GroupExpr g, int degree = 0) {
        GemExpr x;
        x.set_layer(degree, std::move(g));
        return x;
    }

    void set_layer(int degree, GroupExpr g) {
        if (g.is_zero())
            layers_.erase(degree);
        else
            layers_[degree] = std::move(g);
    }

    void add_to_layer(int degree, const GroupExpr& g) {
        set_layer(degree, direct_sum(layer(degree), g));
    }

    GroupExpr layer(int degree) const {
        auto it = layers_.find(degree);
        return it == layers_.end() ? GroupExpr::zero() : it->second;
    }

    const std::map<int, GroupExpr>& layers() const { return layers_; }
    bool is_zero() const { return layers_.empty(); }

    friend bool operator==(const GemExpr&, const GemExpr&) = default;

private:
    std::map<int, GroupExpr> layers_;
};

inline GemExpr wedge(const GemExpr& a, const GemExpr& b) {
    GemExpr out = a;
    for (const auto& [k, g] : b.layers()) out.add_to_layer(k, g);
    return out;
}

inline GemExpr suspend(const GemExpr& x, int k) {
    GemExpr out;
    for (const auto& [d, g] : x.layers()) out.set_layer(d + k, g);
    return out;
}

inline GemExpr scale(const GemExpr& x, Mult m) {
    GemExpr out;
    for (const auto& [d, g] : x.layers()) out.set_layer(d, scale(g, m));
    return out;
}

}  // namespace gemloc
