#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Finite groups as explicit multiplication tables, bitorsors (a set E with
// commuting free transitive left and right L-actions), the automorphism
// tau_e defined by tau_e(l) e = e l, the semidirect product L x| <omega>
// with omega l omega^{-1} = tau_{e0}(l), the bijection f : E -> L omega,
// and twisted conjugacy classes (orbits of x -> l x theta(l)^{-1}).
//
// Everything here is exhaustively checkable; constructors validate the
// group axioms and torsor axioms in full.

namespace affweyl {

class FiniteGroup {
public:
    FiniteGroup(int n, std::vector<int> table, std::string name = "")
        : n_(n), table_(std::move(table)), name_(std::move(name)) {
        if (static_cast<int>(table_.size()) != n_ * n_)
            throw std::invalid_argument("FiniteGroup: table size mismatch");
        validate();
    }

    static FiniteGroup cyclic(int n, std::string name = "") {
        std::vector<int> t(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[static_cast<size_t>(i) * n + j] = (i + j) % n;
        return FiniteGroup(n, std::move(t), name.empty() ? "Z" + std::to_string(n) : name);
    }

    // Closure of a set of permutations under composition (p*q applies q
    // first); elements are indexed in lexicographic order of the
    // permutation vectors, so construction is deterministic.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                         std::string name = "");

    int order() const { return n_; }
    int identity() const { return id_; }
    int mult(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    const std::string& name() const { return name_; }

    int element_order(int a) const {
        int x = a, k = 1;
        while (x != id_) { x = mult(x, a); ++k; }
        return k;
    }

    bool is_abelian() const {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (mult(a, b) != mult(b, a)) return false;
        return true;
    }

    std::vector<std::vector<int>> conjugacy_classes() const {
        std::vector<std::vector<int>> classes;
        std::vector<bool> seen(n_, false);
        for (int x = 0; x < n_; ++x) {
            if (seen[x]) continue;
            std::set<int> orbit;
            for (int l = 0; l < n_; ++l) orbit.insert(mult(mult(l, x), inv_[l]));
            std::vector<int> cls(orbit.begin(), orbit.end());
            for (int y : cls) seen[y] = true;
            classes.push_back(std::move(cls));
        }
        return classes;
    }

private:
    void validate() {
        for (int v : table_)
            if (v < 0 || v >= n_) throw std::invalid_argument("FiniteGroup: entry out of range");
        id_ = -1;
        for (int e = 0; e < n_; ++e) {
            bool ok = true;
            for (int a = 0; a < n_ && ok; ++a)
                ok = mult(e, a) == a && mult(a, e) == a;
            if (ok) { id_ = e; break; }
        }
        if (id_ < 0) throw std::invalid_argument("FiniteGroup: no identity element");
        inv_.assign(n_, -1);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b)
                if (mult(a, b) == id_ && mult(b, a) == id_) { inv_[a] = b; break; }
            if (inv_[a] < 0) throw std::invalid_argument("FiniteGroup: element without inverse");
        }
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    if (mult(mult(a, b), c) != mult(a, mult(b, c)))
                        throw std::invalid_argument("FiniteGroup: table is not associative");
    }

    int n_;
    std::vector<int> table_;
    std::string name_;
    int id_ = -1;
    std::vector<int> inv_;
};

inline FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens,
                                                  std::string name) {
    if (gens.empty()) throw std::invalid_argument("from_permutations: no generators");
    const size_t deg = gens.front().size();
    auto compose = [deg](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(deg);
        for (size_t i = 0; i < deg; ++i) r[i] = p[q[i]];
        return r;
    };
    std::vector<int> idp(deg);
    std::iota(idp.begin(), idp.end(), 0);
    std::set<std::vector<int>> closure{idp};
    std::vector<std::vector<int>> frontier{idp};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                if (g.size() != deg)
                    throw std::invalid_argument("from_permutations: mixed degrees");
                auto pg = compose(p, g);
                if (closure.insert(pg).second) next.push_back(pg);
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> elems(closure.begin(), closure.end());
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    const int n = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            table[static_cast<size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
    return FiniteGroup(n, std::move(table), std::move(name));
}

// Backtracking isomorphism test; group orders here are tiny.
inline bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
    const int n = g.order();
    if (n != h.order()) return false;
    std::vector<int> go(n), ho(n);
    for (int i = 0; i < n; ++i) { go[i] = g.element_order(i); ho[i] = h.element_order(i); }
    {
        auto gs = go, hs = ho;
        std::sort(gs.begin(), gs.end());
        std::sort(hs.begin(), hs.end());
        if (gs != hs) return false;
    }
    std::vector<int> phi(n, -1);
    std::vector<bool> used(n, false);
    phi[g.identity()] = h.identity();
    used[h.identity()] = true;
    auto consistent = [&](int a) {
        for (int b = 0; b < n; ++b) {
            if (phi[b] < 0) continue;
            if (phi[g.mult(a, b)] >= 0 && phi[g.mult(a, b)] != h.mult(phi[a], phi[b])) return false;
            if (phi[g.mult(b, a)] >= 0 && phi[g.mult(b, a)] != h.mult(phi[b], phi[a])) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int a) -> bool {
        while (a < n && phi[a] >= 0) ++a;
        if (a == n) {
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (phi[g.mult(x, y)] != h.mult(phi[x], phi[y])) return false;
            return true;
        }
        for (int t = 0; t < n; ++t) {
            if (used[t] || ho[t] != go[a]) continue;
            phi[a] = t;
            used[t] = true;
            if (consistent(a) && self(self, a + 1)) return true;
            phi[a] = -1;
            used[t] = false;
        }
        return false;
    };
    return rec(rec, 0);
}

class BiTorsor {
public:
    BiTorsor(FiniteGroup L, int e_size, std::vector<int> left, std::vector<int> right)
        : L_(std::move(L)), esize_(e_size), left_(std::move(left)), right_(std::move(right)) {
        validate();
    }

    // E = L with both actions by multiplication.
    static BiTorsor regular(FiniteGroup L) {
        const int n = L.order();
        std::vector<int> left(static_cast<size_t>(n) * n), right(static_cast<size_t>(n) * n);
        for (int l = 0; l < n; ++l)
            for (int e = 0; e < n; ++e) {
                left[static_cast<size_t>(l) * n + e] = L.mult(l, e);
                right[static_cast<size_t>(e) * n + l] = L.mult(e, l);
            }
        return BiTorsor(std::move(L), n, std::move(left), std::move(right));
    }

    // L = a subgroup of Gamma (given by its sorted element indices), E = the
    // coset c L, with both actions by multiplication in Gamma. Requires the
    // left action to preserve the coset (c^{-1} L c = L).
    static BiTorsor coset(const FiniteGroup& gamma, const std::vector<int>& subgroup, int rep);

    const FiniteGroup& L() const { return L_; }
    int e_size() const { return esize_; }
    int act_left(int l, int e) const { return left_[static_cast<size_t>(l) * esize_ + e]; }
    int act_right(int e, int l) const { return right_[static_cast<size_t>(e) * esize_ + l]; }
    int conjugate(int l, int e) const { return act_left(l, act_right(e, L_.inv(l))); }

private:
    void validate() {
        const int n = L_.order();
        if (esize_ != n)
            throw std::invalid_argument("BiTorsor: |E| must equal |L| for free transitive actions");
        for (int e = 0; e < esize_; ++e) {
            std::vector<bool> hitL(esize_, false), hitR(esize_, false);
            for (int l = 0; l < n; ++l) {
                int a = act_left(l, e), b = act_right(e, l);
                if (a < 0 || a >= esize_ || b < 0 || b >= esize_)
                    throw std::invalid_argument("BiTorsor: action out of range");
                if (hitL[a] || hitR[b])
                    throw std::invalid_argument("BiTorsor: action is not free and transitive");
                hitL[a] = hitR[b] = true;
            }
            if (act_left(L_.identity(), e) != e || act_right(e, L_.identity()) != e)
                throw std::invalid_argument("BiTorsor: identity does not act trivially");
        }
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
                for (int e = 0; e < esize_; ++e) {
                    if (act_left(L_.mult(l, m), e) != act_left(l, act_left(m, e)))
                        throw std::invalid_argument("BiTorsor: left action law fails");
                    if (act_right(e, L_.mult(l, m)) != act_right(act_right(e, l), m))
                        throw std::invalid_argument("BiTorsor: right action law fails");
                    if (act_right(act_left(l, e), m) != act_left(l, act_right(e, m)))
                        throw std::invalid_argument("BiTorsor: actions do not commute");
                }
    }

    FiniteGroup L_;
    int esize_;
    std::vector<int> left_;   // |L| x |E|
    std::vector<int> right_;  // |E| x |L|
};

inline BiTorsor BiTorsor::coset(const FiniteGroup& gamma, const std::vector<int>& subgroup,
                                int rep) {
    const int m = static_cast<int>(subgroup.size());
    std::map<int, int> sub_index;
    for (int i = 0; i < m; ++i) sub_index[subgroup[i]] = i;
    if (!sub_index.count(gamma.identity()))
        throw std::invalid_argument("coset torsor: subgroup must contain the identity");
    std::vector<int> table(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int p = gamma.mult(subgroup[i], subgroup[j]);
            if (!sub_index.count(p))
                throw std::invalid_argument("coset torsor: subgroup is not closed");
            table[static_cast<size_t>(i) * m + j] = sub_index.at(p);
        }
    FiniteGroup L(m, std::move(table), gamma.name() + "-sub");

    std::set<int> eset;
    for (int s : subgroup) eset.insert(gamma.mult(rep, s));
    std::vector<int> evec(eset.begin(), eset.end());
    if (static_cast<int>(evec.size()) != m)
        throw std::invalid_argument("coset torsor: coset size mismatch");
    std::map<int, int> e_index;
    for (int i = 0; i < m; ++i) e_index[evec[i]] = i;

    std::vector<int> left(static_cast<size_t>(m) * m), right(static_cast<size_t>(m) * m);
    for (int l = 0; l < m; ++l)
        for (int e = 0; e < m; ++e) {
            int le = gamma.mult(subgroup[l], evec[e]);
            if (!e_index.count(le))
                throw std::invalid_argument("coset torsor: left action leaves the coset");
            left[static_cast<size_t>(l) * m + e] = e_index.at(le);
            right[static_cast<size_t>(e) * m + l] = e_index.at(gamma.mult(evec[e], subgroup[l]));
        }
    return BiTorsor(std::move(L), m, std::move(left), std::move(right));
}

// The unique map with tau_e(l) e = e l; validated to be an automorphism.
inline std::vector<int> tau_of(const BiTorsor& t, int e) {
    const FiniteGroup& L = t.L();
    const int n = L.order();
    if (e < 0 || e >= t.e_size()) throw std::invalid_argument("tau_of: e out of range");
    std::vector<int> to_l(n, -1);  // inverse of l -> l.e
    for (int l = 0; l < n; ++l) to_l[t.act_left(l, e)] = l;
    std::vector<int> tau(n);
    for (int l = 0; l < n; ++l) tau[l] = to_l[t.act_right(e, l)];
    std::vector<bool> hit(n, false);
    for (int v : tau) {
        if (hit[v]) throw std::logic_error("tau_e is not a bijection");
        hit[v] = true;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (tau[L.mult(a, b)] != L.mult(tau[a], tau[b]))
                throw std::logic_error("tau_e is not multiplicative");
    return tau;
}

inline int automorphism_order(const FiniteGroup& L, const std::vector<int>& theta) {
    std::vector<int> p(theta);
    int order = 1;
    auto is_id = [&] {
        for (int i = 0; i < L.order(); ++i)
            if (p[i] != i) return false;
        return true;
    };
    while (!is_id()) {
        for (int i = 0; i < L.order(); ++i) p[i] = theta[p[i]];
        ++order;
        if (order > L.order() * L.order())
            throw std::logic_error("automorphism_order: runaway");
    }
    return order;
}

struct TwistedComponent {
    FiniteGroup L;
    std::vector<int> theta;
    int d;

    // d defaults to the exact order of theta; an explicit multiple of the
    // order is also accepted.
    static TwistedComponent from(FiniteGroup L, std::vector<int> theta, int d_multiple = 0) {
        for (int a = 0; a < L.order(); ++a)
            for (int b = 0; b < L.order(); ++b)
                if (theta[L.mult(a, b)] != L.mult(theta[a], theta[b]))
                    throw std::invalid_argument("TwistedComponent: theta is not an automorphism");
        int ord = automorphism_order(L, theta);
        int d = (d_multiple == 0) ? ord : d_multiple;
        if (d % ord != 0)
            throw std::invalid_argument("TwistedComponent: d is not a multiple of ord(theta)");
        return TwistedComponent{std::move(L), std::move(theta), d};
    }
};

struct ComponentBuild {
    TwistedComponent component;
    FiniteGroup semidirect;  // L x| gamma_d, element (l, k) at index k*|L| + l
    int omega;               // index of (identity, 1); equals identity when d = 1
    std::vector<int> f;      // E -> index in the semidirect product, e = l.e0 -> l omega
};

inline ComponentBuild build_component(const BiTorsor& t, int e0, int d_multiple = 0) {
    const FiniteGroup& L = t.L();
    const int n = L.order();
    TwistedComponent comp = TwistedComponent::from(L, tau_of(t, e0), d_multiple);
    const int d = comp.d;

    std::vector<std::vector<int>> theta_pow(d, std::vector<int>(n));
    for (int l = 0; l < n; ++l) theta_pow[0][l] = l;
    for (int k = 1; k < d; ++k)
        for (int l = 0; l < n; ++l) theta_pow[k][l] = comp.theta[theta_pow[k - 1][l]];

    const int N = n * d;
    std::vector<int> table(static_cast<size_t>(N) * N);
    auto idx = [n](int l, int k) { return k * n + l; };
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < n; ++l)
            for (int k2 = 0; k2 < d; ++k2)
                for (int l2 = 0; l2 < n; ++l2)
                    table[static_cast<size_t>(idx(l, k)) * N + idx(l2, k2)] =
                        idx(L.mult(l, theta_pow[k][l2]), (k + k2) % d);
    FiniteGroup sd(N, std::move(table), L.name() + "|x|g" + std::to_string(d));

    const int omega = (d == 1) ? idx(L.identity(), 0) : idx(L.identity(), 1);
    for (int l = 0; l < n; ++l) {
        // omega l = tau_{e0}(l) omega
        if (sd.mult(omega, idx(l, 0)) != sd.mult(idx(comp.theta[l], 0), omega))
            throw std::logic_error("semidirect product: omega conjugation law fails");
    }

    std::vector<int> to_l(t.e_size(), -1);
    for (int l = 0; l < n; ++l) to_l[t.act_left(l, e0)] = l;
    std::vector<int> f(t.e_size());
    std::vector<bool> hit(static_cast<size_t>(N), false);
    for (int e = 0; e < t.e_size(); ++e) {
        f[e] = sd.mult(idx(to_l[e], 0), omega);
        if (hit[f[e]]) throw std::logic_error("f is not injective");
        hit[f[e]] = true;
    }
    return ComponentBuild{std::move(comp), std::move(sd), omega, std::move(f)};
}

// f(l e l^{-1}) = l f(e) l^{-1}, checked over every pair (l, e).
inline bool check_equivariance(const BiTorsor& t, int e0) {
    ComponentBuild b = build_component(t, e0);
    const FiniteGroup& L = t.L();
    const FiniteGroup& sd = b.semidirect;
    auto embed = [](int l) { return l; };  // (l, 0) sits at index l
    for (int l = 0; l < L.order(); ++l)
        for (int e = 0; e < t.e_size(); ++e) {
            int lhs = b.f[t.conjugate(l, e)];
            int rhs = sd.mult(sd.mult(embed(l), b.f[e]), sd.inv(embed(l)));
            if (lhs != rhs) return false;
        }
    return true;
}

// Orbits of x -> l x theta(l)^{-1} on L: the conjugation action of L on the
// coset L omega, transported through x -> x omega.
inline std::vector<std::vector<int>> twisted_classes(const TwistedComponent& c) {
    const FiniteGroup& L = c.L;
    const int n = L.order();
    std::vector<std::vector<int>> classes;
    std::vector<bool> seen(n, false);
    for (int x = 0; x < n; ++x) {
        if (seen[x]) continue;
        std::set<int> orbit;
        for (int l = 0; l < n; ++l) orbit.insert(L.mult(L.mult(l, x), L.inv(c.theta[l])));
        std::vector<int> cls(orbit.begin(), orbit.end());
        for (int y : cls) seen[y] = true;
        classes.push_back(std::move(cls));
    }
    return classes;
}

// theta -> Ad(l) o theta; twisted class counts are invariant under this.
inline TwistedComponent inner_twist(const TwistedComponent& c, int l) {
    std::vector<int> theta(c.L.order());
    for (int x = 0; x < c.L.order(); ++x)
        theta[x] = c.L.mult(c.L.mult(l, c.theta[x]), c.L.inv(l));
    return TwistedComponent::from(c.L, std::move(theta));
}

} // namespace affweyl
