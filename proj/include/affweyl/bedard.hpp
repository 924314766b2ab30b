#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "affweyl/cosets.hpp"

// Diagram automorphisms delta and the set T(J, delta) of stabilizing
// sequences (J_n, w_n). A sequence satisfies
//
//   J_0 = J,  J_n = J_{n-1}  intersect  delta^{-1}( Ad(w_{n-1}) J_{n-1} ),
//   w_n has no left descent in delta(J_n) and no right descent in J_n,
//   w_n lies in w_{n-1} W'_{J_{n-1}}  (n >= 1),
//
// and stabilizes: the final stage reproduces itself under one more step,
// equivalently Ad(w_inf) J_inf = delta(J_inf). The map tau -> w_inf is a
// bijection onto the set of elements with no left descent in delta(J);
// sequence_from_w is its inverse, computed greedily (w_n = min_right(w, J_n),
// which the coset chain forces), and every stage is re-checked against the
// defining conditions so a wrong reconstruction aborts instead of repairing
// itself. bijection_check certifies all four directions on a length-bounded
// truncation.

namespace affweyl {

class DiagramAut {
public:
    DiagramAut(const SpecPtr& spec, std::vector<int> perm) : perm_(std::move(perm)) {
        const int n = spec->node_count();
        if (static_cast<int>(perm_.size()) != n)
            throw std::invalid_argument("diagram automorphism: permutation size mismatch");
        std::vector<bool> hit(n, false);
        for (int v : perm_) {
            if (v < 0 || v >= n || hit[v])
                throw std::invalid_argument("diagram automorphism: not a permutation of the nodes");
            hit[v] = true;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (spec->entry(perm_[i], perm_[j]) != spec->entry(i, j))
                    throw std::invalid_argument(
                        "diagram automorphism: permutation does not preserve the Cartan matrix");
        inv_.assign(n, 0);
        for (int i = 0; i < n; ++i) inv_[perm_[i]] = i;
    }

    static DiagramAut identity(const SpecPtr& spec) {
        std::vector<int> p(spec->node_count());
        for (size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
        return DiagramAut(spec, std::move(p));
    }

    int apply(int i) const { return perm_[i]; }
    int apply_inverse(int i) const { return inv_[i]; }
    NodeSet apply(NodeSet s) const {
        NodeSet out;
        for (int i : s.to_vector()) out = out.with(perm_[i]);
        return out;
    }
    NodeSet apply_inverse(NodeSet s) const {
        NodeSet out;
        for (int i : s.to_vector()) out = out.with(inv_[i]);
        return out;
    }
    const std::vector<int>& perm() const { return perm_; }
    bool operator==(const DiagramAut& o) const { return perm_ == o.perm_; }

private:
    std::vector<int> perm_;
    std::vector<int> inv_;
};

inline DiagramAut validate_automorphism(const SpecPtr& spec, const std::vector<int>& perm) {
    return DiagramAut(spec, perm);
}

struct BedardStage {
    NodeSet J;
    WeylElement w;

    bool operator==(const BedardStage& o) const { return J == o.J && w == o.w; }
};

class BedardSequence {
public:
    BedardSequence(SpecPtr spec, NodeSet J, DiagramAut delta, std::vector<BedardStage> stages)
        : spec_(std::move(spec)), J_(J), delta_(std::move(delta)), stages_(std::move(stages)) {
        verify();
    }

    const SpecPtr& spec() const { return spec_; }
    NodeSet J() const { return J_; }
    const DiagramAut& delta() const { return delta_; }
    const std::vector<BedardStage>& stages() const { return stages_; }
    NodeSet J_inf() const { return stages_.back().J; }
    const WeylElement& w_inf() const { return stages_.back().w; }

    bool operator==(const BedardSequence& o) const {
        return J_ == o.J_ && delta_ == o.delta_ && stages_ == o.stages_;
    }
    bool operator!=(const BedardSequence& o) const { return !(*this == o); }

    static BedardSequence from_w(const WeylElement& w, NodeSet J, const DiagramAut& delta);

private:
    // Every condition defining T(J, delta), re-checked on construction.
    void verify() const {
        const int n = spec_->node_count();
        if (!J_.is_proper_subset_of_full(n))
            throw std::invalid_argument("Bedard sequence: J must be a proper subset of I");
        if (stages_.empty()) throw std::invalid_argument("Bedard sequence: no stages");
        if (stages_.front().J != J_)
            throw std::logic_error("Bedard sequence: J_0 != J");
        for (size_t k = 0; k < stages_.size(); ++k) {
            const auto& st = stages_[k];
            if (!is_min_double_rep(st.w, delta_.apply(st.J), st.J))
                throw std::logic_error("Bedard sequence: w_n is not a minimal double coset representative");
            if (k > 0) {
                const auto& prev = stages_[k - 1];
                NodeSet expected = prev.J & delta_.apply_inverse(ad_subset(prev.w, prev.J));
                if (st.J != expected)
                    throw std::logic_error("Bedard sequence: J-recursion violated");
                // w_n in w_{n-1} W'_{J_{n-1}}: equal minimal representatives.
                if (min_right(st.w, prev.J) != prev.w)
                    throw std::logic_error("Bedard sequence: w_n not in w_{n-1} W'_{J_{n-1}}");
                if (st.w.length() < prev.w.length())
                    throw std::logic_error("Bedard sequence: lengths decreased");
            }
        }
        // Stability of the last stage: one more recursion step reproduces it.
        const auto& last = stages_.back();
        NodeSet Jn = last.J & delta_.apply_inverse(ad_subset(last.w, last.J));
        if (Jn != last.J || min_right(last.w, Jn) != last.w)
            throw std::logic_error("Bedard sequence: final stage is not stable");
        if (ad_subset(last.w, last.J) != delta_.apply(last.J))
            throw std::logic_error("Bedard sequence: Ad(w_inf) J_inf != delta(J_inf)");
    }

    SpecPtr spec_;
    NodeSet J_;
    DiagramAut delta_;
    std::vector<BedardStage> stages_;
};

inline BedardSequence BedardSequence::from_w(const WeylElement& w, NodeSet J,
                                             const DiagramAut& delta) {
    const SpecPtr& spec = w.spec();
    if (!(w.left_descents() & delta.apply(J)).is_empty())
        throw std::invalid_argument("sequence_from_w: w has a left descent in delta(J)");
    std::vector<BedardStage> stages;
    NodeSet Jn = J;
    WeylElement wn = min_right(w, Jn);
    stages.push_back({Jn, wn});
    for (;;) {
        NodeSet Jnext = Jn & delta.apply_inverse(ad_subset(wn, Jn));
        WeylElement wnext = min_right(w, Jnext);
        if (Jnext == Jn && wnext == wn) break;
        stages.push_back({Jnext, wnext});
        Jn = Jnext;
        wn = std::move(wnext);
    }
    if (stages.back().w != w)
        throw std::logic_error("sequence_from_w: reconstruction did not reach w");
    return BedardSequence(spec, J, delta, std::move(stages));
}

// All sequences in T(J, delta) with l(w_inf) <= L, by staged search: pick
// w_0 among minimal double coset representatives, then extend each stage
// through the coset w_{n-1} W'_{J_{n-1}}. Lengths weakly increase and the
// J-chain weakly decreases, so every branch terminates.
inline std::vector<BedardSequence> enumerate_sequences(const SpecPtr& spec, NodeSet J,
                                                       const DiagramAut& delta, int L) {
    const int n = spec->node_count();
    if (!J.is_proper_subset_of_full(n))
        throw std::invalid_argument("enumerate_sequences: J must be a proper subset of I");
    if (L < 0) throw std::invalid_argument("enumerate_sequences: negative length bound");

    std::map<uint32_t, ParabolicTable> tables;
    auto parabolic = [&](NodeSet S) -> const ParabolicTable& {
        auto it = tables.find(S.bits());
        if (it == tables.end())
            it = tables.emplace(S.bits(), enumerate_parabolic(spec, S)).first;
        return it->second;
    };

    std::vector<BedardSequence> out;
    std::vector<BedardStage> stack;

    // Extend the branch whose last stage is (Jn, wn).
    auto extend = [&](auto&& self, NodeSet Jn, const WeylElement& wn) -> void {
        NodeSet Jnext = Jn & delta.apply_inverse(ad_subset(wn, Jn));
        for (const WeylElement& y : parabolic(Jn).elements) {
            WeylElement cand = multiply(wn, y);
            if (!is_min_double_rep(cand, delta.apply(Jnext), Jnext)) continue;
            if (cand.length() > L) continue;
            if (Jnext == Jn && cand == wn) {
                out.emplace_back(spec, J, delta, stack);
            } else {
                stack.push_back({Jnext, cand});
                self(self, Jnext, cand);
                stack.pop_back();
            }
        }
    };

    Ball ball = ball_enumerate(spec, L);
    for (const auto& layer : ball.layers)
        for (const WeylElement& w0 : layer) {
            if (!is_min_double_rep(w0, delta.apply(J), J)) continue;
            stack.push_back({J, w0});
            extend(extend, J, w0);
            stack.pop_back();
        }

    std::sort(out.begin(), out.end(), [](const BedardSequence& a, const BedardSequence& b) {
        int la = a.w_inf().length(), lb = b.w_inf().length();
        if (la != lb) return la < lb;
        return a.w_inf().reduced_word() < b.w_inf().reduced_word();
    });
    return out;
}

struct BijectionReport {
    int sequence_count = 0;
    int target_count = 0;
    bool in_target = true;
    bool injective = true;
    bool surjective = true;
    bool roundtrip = true;
    std::vector<std::string> violations;

    bool pass() const { return in_target && injective && surjective && roundtrip; }
};

// Checks the four facets of the bijection T(J, delta) <-> {w : no left
// descent in delta(J)} on the truncation l(w) <= L.
inline BijectionReport bijection_check(const SpecPtr& spec, NodeSet J, const DiagramAut& delta,
                                       int L) {
    BijectionReport report;
    auto word_str = [](const WeylElement& w) {
        std::string s = "[";
        for (int i : w.reduced_word()) s += std::to_string(i) + ",";
        if (s.back() == ',') s.pop_back();
        return s + "]";
    };

    std::vector<BedardSequence> seqs = enumerate_sequences(spec, J, delta, L);
    report.sequence_count = static_cast<int>(seqs.size());
    NodeSet dJ = delta.apply(J);

    std::map<std::vector<int64_t>, size_t> by_matrix;
    for (size_t k = 0; k < seqs.size(); ++k) {
        const WeylElement& w = seqs[k].w_inf();
        if (!(w.left_descents() & dJ).is_empty()) {
            report.in_target = false;
            report.violations.push_back("w_inf " + word_str(w) + " has a left descent in delta(J)");
        }
        auto [it, fresh] = by_matrix.emplace(w.matrix().entries(), k);
        if (!fresh) {
            report.injective = false;
            report.violations.push_back("two sequences share w_inf " + word_str(w));
        }
        BedardSequence rebuilt = BedardSequence::from_w(w, J, delta);
        if (rebuilt != seqs[k]) {
            report.roundtrip = false;
            report.violations.push_back("sequence_from_w does not reproduce the sequence for " +
                                        word_str(w));
        }
    }

    Ball ball = ball_enumerate(spec, L);
    for (const auto& layer : ball.layers)
        for (const WeylElement& w : layer) {
            if (!(w.left_descents() & dJ).is_empty()) continue;
            ++report.target_count;
            if (!by_matrix.count(w.matrix().entries())) {
                report.surjective = false;
                report.violations.push_back("no sequence hits " + word_str(w));
            }
        }
    return report;
}

// Combinatorial shadow of the piece ^tau G^delta / U_P: the stabilized data
// plus the twist j -> delta^{-1}(Ad(w_inf) j) of J_inf.
struct PieceDescriptor {
    NodeSet J;
    BedardSequence tau;
    int w_inf_length;
    std::vector<std::pair<int, int>> twist;  // pairs (j, twist(j)), j in J_inf
    int twist_order;

    static PieceDescriptor from(const BedardSequence& tau) {
        PieceDescriptor d{tau.J(), tau, tau.w_inf().length(), {}, 1};
        NodeSet Jinf = tau.J_inf();
        std::map<int, int> t;
        for (int j : Jinf.to_vector()) {
            auto img = ad_simple(tau.w_inf(), j);
            if (!img) throw std::logic_error("piece descriptor: Ad(w_inf) not simple on J_inf");
            int k = tau.delta().apply_inverse(*img);
            if (!Jinf.contains(k))
                throw std::logic_error("piece descriptor: twist leaves J_inf");
            t[j] = k;
        }
        d.twist.assign(t.begin(), t.end());
        // minimal positive power that is the identity
        std::map<int, int> power = t;
        int order = 1;
        auto is_id = [](const std::map<int, int>& m) {
            for (const auto& [a, b] : m)
                if (a != b) return false;
            return true;
        };
        while (!is_id(power)) {
            for (auto& [a, b] : power) b = t.at(b);
            ++order;
        }
        d.twist_order = order;
        return d;
    }
};

// #(P/U_P) q^{l(w_inf)} as an exact polynomial, with the split reductive
// point count #(P/U_P) = q^{N_J} (q-1)^r P_{W'_J}(q).
inline Polynomial point_count(const PieceDescriptor& desc, int reductive_rank) {
    if (reductive_rank < 1) throw std::invalid_argument("point_count: rank must be positive");
    ParabolicTable table = enumerate_parabolic(desc.tau.spec(), desc.J);
    return Polynomial::monomial(table.n_positive) *
           Polynomial::q_minus_one().pow(reductive_rank) * table.poincare *
           Polynomial::monomial(desc.w_inf_length);
}

} // namespace affweyl
