#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "affweyl/cartan.hpp"
#include "affweyl/nodeset.hpp"

// Elements of the affine Weyl group W' in the geometric representation on
// the root basis: w is stored as the integer matrix whose column j holds the
// coordinates of w(alpha_j). Affine Weyl groups are crystallographic, so
// this representation is faithful and matrix equality is element equality.
//
// Everything downstream (lengths, descents, coset minima, the Bedard
// recursion) reduces to two facts about this representation:
//   - s_i acts by alpha_j -> alpha_j - A[i][j] alpha_i, i.e. the identity
//     matrix with row i replaced;
//   - i is a right descent of w exactly when column i of w is nonpositive
//     (w sends alpha_i to a negative root).

namespace affweyl {

using SpecPtr = std::shared_ptr<const CartanSpec>;

class WeylElement {
public:
    static WeylElement identity(SpecPtr spec) {
        const int n = spec->node_count();
        return WeylElement(std::move(spec), IntMatrix::identity(n));
    }

    static WeylElement simple_reflection(SpecPtr spec, int i) {
        const int n = spec->node_count();
        if (i < 0 || i >= n) throw std::invalid_argument("simple_reflection: node out of range");
        IntMatrix m = IntMatrix::identity(n);
        for (int j = 0; j < n; ++j)
            m.at(i, j) = (i == j ? -1 : -spec->entry(i, j));
        return WeylElement(std::move(spec), std::move(m));
    }

    const SpecPtr& spec() const { return spec_; }
    const IntMatrix& matrix() const { return m_; }
    bool is_identity() const { return m_.is_identity(); }

    bool operator==(const WeylElement& o) const { return m_ == o.m_; }
    bool operator!=(const WeylElement& o) const { return m_ != o.m_; }

    friend WeylElement multiply(const WeylElement& a, const WeylElement& b) {
        a.require_same_spec(b);
        return WeylElement(a.spec_, a.m_.mul(b.m_));
    }

    WeylElement times_simple_right(int i) const {
        return multiply(*this, simple_reflection(spec_, i));
    }
    WeylElement times_simple_left(int i) const {
        return multiply(simple_reflection(spec_, i), *this);
    }

    // w(alpha_i) is a negative root exactly when column i is nonpositive.
    bool is_right_descent(int i) const {
        for (int r = 0; r < m_.dim(); ++r)
            if (m_.at(r, i) > 0) return false;
        return true;
    }

    NodeSet right_descents() const {
        NodeSet s;
        for (int i = 0; i < m_.dim(); ++i)
            if (is_right_descent(i)) s = s.with(i);
        return s;
    }

    // Some reduced word, obtained by greedy right-descent stripping. Used
    // internally; the canonical (lex-least) word is reduced_word().
    std::vector<int> any_reduced_word() const {
        std::vector<int> word;
        WeylElement w = *this;
        while (!w.is_identity()) {
            NodeSet d = w.right_descents();
            if (d.is_empty())
                throw std::logic_error("descent stripping stuck on a non-identity element");
            int i = d.to_vector().front();
            word.push_back(i);
            w = w.times_simple_right(i);
        }
        std::reverse(word.begin(), word.end());
        return word;
    }

    friend WeylElement inverse(const WeylElement& a) {
        std::vector<int> word = a.any_reduced_word();
        WeylElement w = identity(a.spec_);
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            w = w.times_simple_right(*it);
        return w;
    }

    NodeSet left_descents() const { return inverse(*this).right_descents(); }

    int length() const {
        int len = 0;
        WeylElement w = *this;
        while (!w.is_identity()) {
            NodeSet d = w.right_descents();
            if (d.is_empty())
                throw std::logic_error("descent stripping stuck on a non-identity element");
            w = w.times_simple_right(d.to_vector().front());
            ++len;
        }
        return len;
    }

    // Lexicographically least reduced word: repeatedly strip the smallest
    // left descent.
    std::vector<int> reduced_word() const {
        std::vector<int> word;
        WeylElement w = *this;
        while (!w.is_identity()) {
            NodeSet d = w.left_descents();
            if (d.is_empty())
                throw std::logic_error("descent stripping stuck on a non-identity element");
            int i = d.to_vector().front();
            word.push_back(i);
            w = w.times_simple_left(i);
        }
        return word;
    }

    static WeylElement from_word(SpecPtr spec, const std::vector<int>& word) {
        WeylElement w = identity(spec);
        for (int i : word) w = w.times_simple_right(i);
        return w;
    }

private:
    WeylElement(SpecPtr spec, IntMatrix m) : spec_(std::move(spec)), m_(std::move(m)) {}

    void require_same_spec(const WeylElement& o) const {
        if (spec_ != o.spec_ && !spec_->same_as(*o.spec_))
            throw std::invalid_argument("WeylElement: mismatched Cartan specs");
    }

    SpecPtr spec_;
    IntMatrix m_;
};

struct WeylHash {
    size_t operator()(const WeylElement& w) const { return IntMatrixHash{}(w.matrix()); }
};

// All elements of length <= L, grouped by length. Each layer is sorted by
// the canonical reduced word, so output order is deterministic.
struct Ball {
    std::vector<std::vector<WeylElement>> layers;

    size_t total() const {
        size_t t = 0;
        for (const auto& l : layers) t += l.size();
        return t;
    }
    std::vector<size_t> layer_sizes() const {
        std::vector<size_t> s;
        for (const auto& l : layers) s.push_back(l.size());
        return s;
    }
};

inline Ball ball_enumerate(SpecPtr spec, int L) {
    if (L < 0) throw std::invalid_argument("ball_enumerate: negative radius");
    const int n = spec->node_count();
    Ball ball;
    std::unordered_map<IntMatrix, int, IntMatrixHash> seen;
    std::vector<WeylElement> layer{WeylElement::identity(spec)};
    seen.emplace(layer.front().matrix(), 0);
    ball.layers.push_back(layer);
    for (int len = 1; len <= L; ++len) {
        std::vector<WeylElement> next;
        for (const WeylElement& w : ball.layers[len - 1])
            for (int i = 0; i < n; ++i) {
                if (w.is_right_descent(i)) continue;
                WeylElement ws = w.times_simple_right(i);
                if (seen.emplace(ws.matrix(), len).second) next.push_back(ws);
            }
        std::vector<std::pair<std::vector<int>, WeylElement>> keyed;
        keyed.reserve(next.size());
        for (WeylElement& w : next) keyed.emplace_back(w.reduced_word(), std::move(w));
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        next.clear();
        for (auto& kv : keyed) next.push_back(std::move(kv.second));
        ball.layers.push_back(std::move(next));
    }
    return ball;
}

} // namespace affweyl
