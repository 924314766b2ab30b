#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "affweyl/polynomial.hpp"
#include "affweyl/weyl.hpp"

// Finite standard parabolics W'_J, minimal (double) coset representatives,
// and the Ad-action of Weyl elements on simple reflections. Minima are
// computed by descent stripping: the unique element of w W'_J with no right
// descent in J is reached by repeatedly multiplying away right descents
// that lie in J, and symmetrically on the left.

namespace affweyl {

inline bool is_finite_parabolic(const SpecPtr& spec, NodeSet J) {
    return spec->finite_parabolic(J);
}

struct ParabolicTable {
    NodeSet J;
    std::vector<WeylElement> elements;  // ordered by (length, canonical word)
    WeylElement longest;
    int n_positive = 0;                 // N_J = l(w0(J))
    Polynomial poincare;                // sum over W'_J of q^l(y)
};

inline ParabolicTable enumerate_parabolic(const SpecPtr& spec, NodeSet J) {
    if (!is_finite_parabolic(spec, J))
        throw std::invalid_argument("enumerate_parabolic: W'_J is not finite");
    ParabolicTable table{J, {}, WeylElement::identity(spec), 0, Polynomial::one()};
    std::vector<int> gens = J.to_vector();
    std::unordered_map<IntMatrix, int, IntMatrixHash> seen;
    std::vector<int64_t> layer_counts{1};
    std::vector<WeylElement> layer{WeylElement::identity(spec)};
    seen.emplace(layer.front().matrix(), 0);
    table.elements = layer;
    int len = 0;
    while (!layer.empty()) {
        ++len;
        std::vector<WeylElement> next;
        for (const WeylElement& w : layer)
            for (int i : gens) {
                if (w.is_right_descent(i)) continue;
                WeylElement ws = w.times_simple_right(i);
                if (seen.emplace(ws.matrix(), len).second) next.push_back(ws);
            }
        std::vector<std::pair<std::vector<int>, WeylElement>> keyed;
        for (WeylElement& w : next) keyed.emplace_back(w.reduced_word(), std::move(w));
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        next.clear();
        for (auto& kv : keyed) next.push_back(std::move(kv.second));
        if (!next.empty()) {
            layer_counts.push_back(static_cast<int64_t>(next.size()));
            for (const WeylElement& w : next) table.elements.push_back(w);
        }
        layer = std::move(next);
    }
    table.n_positive = static_cast<int>(layer_counts.size()) - 1;
    table.poincare = Polynomial(layer_counts);
    const auto& last = table.elements.back();
    if (!layer_counts.empty() && layer_counts.back() != 1)
        throw std::logic_error("enumerate_parabolic: top length layer is not a single element");
    table.longest = last;
    return table;
}

inline WeylElement min_right(WeylElement w, NodeSet J) {
    for (;;) {
        NodeSet d = w.right_descents() & J;
        if (d.is_empty()) return w;
        w = w.times_simple_right(d.to_vector().front());
    }
}

inline WeylElement min_left(WeylElement w, NodeSet K) {
    for (;;) {
        NodeSet d = w.left_descents() & K;
        if (d.is_empty()) return w;
        w = w.times_simple_left(d.to_vector().front());
    }
}

inline bool is_min_double_rep(const WeylElement& w, NodeSet K, NodeSet J) {
    return (w.left_descents() & K).is_empty() && (w.right_descents() & J).is_empty();
}

// Alternate right/left stripping to a fixed point; lands on the unique
// minimal element of W'_K w W'_J.
inline WeylElement min_double(WeylElement w, NodeSet K, NodeSet J) {
    for (;;) {
        WeylElement next = min_left(min_right(std::move(w), J), K);
        if (is_min_double_rep(next, K, J)) return next;
        w = std::move(next);
    }
}

// Ad(w) s_j is again a simple reflection s_j' exactly when w(alpha_j) is
// +/- alpha_j'; returns j' in that case.
inline std::optional<int> ad_simple(const WeylElement& w, int j) {
    const int n = w.matrix().dim();
    if (j < 0 || j >= n) throw std::invalid_argument("ad_simple: node out of range");
    std::vector<int64_t> col = w.matrix().column(j);
    int idx = -1;
    for (int i = 0; i < n; ++i) {
        if (col[i] == 0) continue;
        if (idx >= 0 || (col[i] != 1 && col[i] != -1)) return std::nullopt;
        idx = i;
    }
    return idx < 0 ? std::nullopt : std::optional<int>(idx);
}

inline NodeSet ad_subset(const WeylElement& w, NodeSet J) {
    NodeSet out;
    for (int j : J.to_vector())
        if (auto k = ad_simple(w, j)) out = out.with(*k);
    return out;
}

} // namespace affweyl
