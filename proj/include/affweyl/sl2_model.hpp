#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "affweyl/bedard.hpp"
#include "affweyl/bitorsor.hpp"
#include "affweyl/checked.hpp"
#include "affweyl/gf.hpp"

// Finite-field model of the rank-one lattice picture: volume-one lattices
// cl' at even tree distance 2n from the base lattice cl, paired with a
// volume-preserving isomorphism g : cl/eps cl -> cl'/eps cl'. Points are
// classified into Y0 (n = 0) and, for n >= 1, Y'_n / Y''_n according to
// whether g matches the two boundary lines of the geodesic.
//
// Lattices are encoded by reduced walk words in the (q+1)-regular tree:
// the first step picks any of the q+1 lines of cl/eps cl, later steps
// avoid the backtracking line, which in the maintained basis is always
// [0:1]. Walking down 2n steps lands on the integral representative
// Lambda = eps^n cl' (colength 2n, cyclic quotient); the accumulated basis
// is volume-normalized so that eps^{-n} (b1, b2) has determinant one.
// A Hermite-form key (unique for each lattice) is provided so tests can
// certify the walk enumeration against an independent matrix oracle.

namespace affweyl {

// ---------------------------------------------------------------------------
// polynomial arithmetic over F_q (coefficient index = power of eps)

using PolyGF = std::vector<uint8_t>;

inline void poly_trim(PolyGF& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool poly_is_zero(const PolyGF& p) {
    for (uint8_t c : p)
        if (c) return false;
    return true;
}

inline int poly_valuation(const PolyGF& p) {
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i]) return static_cast<int>(i);
    return -1;  // zero polynomial
}

inline uint8_t poly_coeff(const PolyGF& p, int i) {
    return (i >= 0 && i < static_cast<int>(p.size())) ? p[i] : 0;
}

inline PolyGF poly_add(const GF& f, const PolyGF& a, const PolyGF& b) {
    PolyGF r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = f.add(poly_coeff(a, static_cast<int>(i)), poly_coeff(b, static_cast<int>(i)));
    poly_trim(r);
    return r;
}

inline PolyGF poly_sub(const GF& f, const PolyGF& a, const PolyGF& b) {
    PolyGF r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = f.sub(poly_coeff(a, static_cast<int>(i)), poly_coeff(b, static_cast<int>(i)));
    poly_trim(r);
    return r;
}

inline PolyGF poly_scale(const GF& f, const PolyGF& a, uint8_t c) {
    PolyGF r(a);
    for (uint8_t& v : r) v = f.mul(v, c);
    poly_trim(r);
    return r;
}

inline PolyGF poly_shift(const PolyGF& a, int k) {
    if (poly_is_zero(a)) return {};
    PolyGF r(a.size() + k, 0);
    for (size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
    return r;
}

inline PolyGF poly_mul(const GF& f, const PolyGF& a, const PolyGF& b) {
    if (poly_is_zero(a) || poly_is_zero(b)) return {};
    PolyGF r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

// a / eps^v; every lower coefficient must vanish.
inline PolyGF poly_divide_eps(const PolyGF& a, int v) {
    for (int i = 0; i < v; ++i)
        if (poly_coeff(a, i))
            throw std::logic_error("poly_divide_eps: not divisible");
    if (static_cast<int>(a.size()) <= v) return {};
    return PolyGF(a.begin() + v, a.end());
}

// Inverse of a unit power series, modulo eps^prec.
inline PolyGF poly_unit_inverse(const GF& f, const PolyGF& a, int prec) {
    if (poly_coeff(a, 0) == 0) throw std::invalid_argument("poly_unit_inverse: not a unit");
    PolyGF r(prec, 0);
    uint8_t c0 = f.inv(a[0]);
    r[0] = c0;
    for (int k = 1; k < prec; ++k) {
        uint8_t acc = 0;
        for (int i = 1; i <= k; ++i) acc = f.add(acc, f.mul(poly_coeff(a, i), r[k - i]));
        r[k] = f.mul(f.neg(acc), c0);
    }
    poly_trim(r);
    return r;
}

inline PolyGF poly_truncate(const PolyGF& a, int prec) {
    PolyGF r(a.begin(), a.begin() + std::min<size_t>(a.size(), prec));
    poly_trim(r);
    return r;
}

struct PolyVec2 {
    PolyGF x, y;
};

struct PolyMat2 {
    // row-major entries
    PolyGF e[2][2];

    static PolyMat2 identity() {
        PolyMat2 m;
        m.e[0][0] = {1};
        m.e[1][1] = {1};
        return m;
    }
    PolyVec2 column(int j) const { return PolyVec2{e[0][j], e[1][j]}; }
};

inline PolyMat2 mat_mul(const GF& f, const PolyMat2& a, const PolyMat2& b) {
    PolyMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.e[i][j] = poly_add(f, poly_mul(f, a.e[i][0], b.e[0][j]),
                                 poly_mul(f, a.e[i][1], b.e[1][j]));
    return r;
}

inline PolyVec2 mat_vec(const GF& f, const PolyMat2& a, const PolyVec2& v) {
    return PolyVec2{poly_add(f, poly_mul(f, a.e[0][0], v.x), poly_mul(f, a.e[0][1], v.y)),
                    poly_add(f, poly_mul(f, a.e[1][0], v.x), poly_mul(f, a.e[1][1], v.y))};
}

inline PolyGF mat_det(const GF& f, const PolyMat2& a) {
    return poly_sub(f, poly_mul(f, a.e[0][0], a.e[1][1]), poly_mul(f, a.e[0][1], a.e[1][0]));
}

// Solve B c = v for a basis matrix with det(B) = u eps^val, u a nonzero
// constant; the solution must be integral (v lies in the column span).
inline PolyVec2 solve_in_basis(const GF& f, const PolyMat2& b, const PolyVec2& v) {
    PolyGF d = mat_det(f, b);
    int val = poly_valuation(d);
    if (val < 0) throw std::logic_error("solve_in_basis: singular basis");
    for (size_t i = val + 1; i < d.size(); ++i)
        if (d[i]) throw std::logic_error("solve_in_basis: determinant is not a monomial");
    uint8_t unit_inv = f.inv(d[val]);
    PolyMat2 adj;
    adj.e[0][0] = b.e[1][1];
    adj.e[0][1] = poly_scale(f, b.e[0][1], f.neg(1));
    adj.e[1][0] = poly_scale(f, b.e[1][0], f.neg(1));
    adj.e[1][1] = b.e[0][0];
    PolyVec2 num = mat_vec(f, adj, v);
    return PolyVec2{poly_scale(f, poly_divide_eps(num.x, val), unit_inv),
                    poly_scale(f, poly_divide_eps(num.y, val), unit_inv)};
}

// ---------------------------------------------------------------------------
// lattices

struct LatticeClass {
    int n = 0;
    std::vector<uint8_t> word;  // length 2n; word[0] in [0,q], later letters in [0,q-1]
    PolyMat2 basis;             // columns span eps^n cl', det = eps^{2n}
};

// Walk the word down the tree, maintaining a basis of the current lattice.
// Letter t < q picks the line through f1 + t f2, letter q the line through
// f2 (only legal as the first step); the new basis is (v, eps * complement).
inline PolyMat2 walk_basis(const GF& f, const std::vector<uint8_t>& word) {
    PolyVec2 f1{{1}, {}}, f2{{}, {1}};
    bool flip = false;
    for (size_t step = 0; step < word.size(); ++step) {
        uint8_t t = word[step];
        if (t > f.q() || (step > 0 && t == f.q()))
            throw std::invalid_argument("walk_basis: letter out of range");
        if (t < f.q()) {
            PolyVec2 v{poly_add(f, f1.x, poly_scale(f, f2.x, t)),
                       poly_add(f, f1.y, poly_scale(f, f2.y, t))};
            f2 = PolyVec2{poly_shift(f2.x, 1), poly_shift(f2.y, 1)};
            f1 = std::move(v);
        } else {
            PolyVec2 v = f2;
            f2 = PolyVec2{poly_shift(f1.x, 1), poly_shift(f1.y, 1)};
            f1 = std::move(v);
            flip = !flip;
        }
    }
    if (flip) {
        f2.x = poly_scale(f, f2.x, f.neg(1));
        f2.y = poly_scale(f, f2.y, f.neg(1));
    }
    PolyMat2 b;
    b.e[0][0] = f1.x;
    b.e[1][0] = f1.y;
    b.e[0][1] = f2.x;
    b.e[1][1] = f2.y;
    return b;
}

inline LatticeClass lattice_from_word(const GF& f, const std::vector<uint8_t>& word) {
    if (word.size() % 2 != 0)
        throw std::invalid_argument("lattice_from_word: words must have even length");
    LatticeClass lat;
    lat.n = static_cast<int>(word.size()) / 2;
    lat.word = word;
    lat.basis = walk_basis(f, word);
    PolyGF d = mat_det(f, lat.basis);
    PolyGF expect = poly_shift({1}, 2 * lat.n);
    if (d != expect)
        throw std::logic_error("lattice_from_word: basis determinant is not eps^{2n}");
    return lat;
}

// All cl' with dim cl/(cl cap cl') = n, each exactly once, in lex word order.
inline std::vector<LatticeClass> enumerate_lattices(const GF& f, int n) {
    if (n < 0) throw std::invalid_argument("enumerate_lattices: negative level");
    std::vector<LatticeClass> out;
    if (n == 0) {
        out.push_back(lattice_from_word(f, {}));
        return out;
    }
    const int q = f.q();
    std::vector<uint8_t> word(2 * n, 0);
    for (;;) {
        out.push_back(lattice_from_word(f, word));
        int pos = 2 * n - 1;
        while (pos >= 0) {
            int limit = (pos == 0) ? q : q - 1;
            if (word[pos] < limit) { ++word[pos]; break; }
            word[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

// Unique Hermite key of the integral lattice spanned by the basis columns:
// the lattice has the unique basis {(eps^a, u), (0, eps^b)} with a + b the
// colength and u reduced mod eps^b.
struct HermiteKey {
    int a = 0;
    int b = 0;
    std::vector<uint8_t> u;  // b coefficients

    bool operator<(const HermiteKey& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return u < o.u;
    }
    bool operator==(const HermiteKey& o) const { return a == o.a && b == o.b && u == o.u; }
};

inline HermiteKey hermite_key(const GF& f, const PolyMat2& basis, int colength) {
    PolyMat2 b = basis;
    const int prec = colength + 1;
    int v0 = poly_valuation(b.e[0][0]), v1 = poly_valuation(b.e[0][1]);
    if (v1 >= 0 && (v0 < 0 || v1 < v0)) {
        std::swap(b.e[0][0], b.e[0][1]);
        std::swap(b.e[1][0], b.e[1][1]);
        std::swap(v0, v1);
    }
    if (v0 < 0) throw std::logic_error("hermite_key: zero first row");
    const int a = v0;
    // scale column 0 so its top entry is exactly eps^a
    PolyGF unit = poly_divide_eps(b.e[0][0], a);
    PolyGF uinv = poly_unit_inverse(f, unit, prec);
    b.e[0][0] = poly_shift({1}, a);
    b.e[1][0] = poly_truncate(poly_mul(f, b.e[1][0], uinv), prec);
    // eliminate the top entry of column 1
    if (!poly_is_zero(b.e[0][1])) {
        PolyGF quot = poly_divide_eps(b.e[0][1], a);
        b.e[0][1] = {};
        b.e[1][1] = poly_sub(f, b.e[1][1], poly_truncate(poly_mul(f, quot, b.e[1][0]), prec));
    }
    const int bval = poly_valuation(b.e[1][1]);
    if (bval != colength - a)
        throw std::logic_error("hermite_key: unexpected second elementary divisor");
    HermiteKey key;
    key.a = a;
    key.b = colength - a;
    key.u.assign(key.b, 0);
    for (int i = 0; i < key.b; ++i) key.u[i] = poly_coeff(b.e[1][0], i);
    return key;
}

// ---------------------------------------------------------------------------
// subspace arithmetic in the window V = eps^{-n} cl / eps^{n+1} cl

class Subspace {
public:
    explicit Subspace(const GF& f, int dim) : f_(&f), dim_(dim) {}

    int dim() const { return static_cast<int>(rows_.size()); }
    int ambient() const { return dim_; }

    bool insert(std::vector<uint8_t> v) {
        reduce(v);
        int p = pivot(v);
        if (p < 0) return false;
        uint8_t c = f_->inv(v[p]);
        for (auto& x : v) x = f_->mul(x, c);
        for (auto& row : rows_) {
            uint8_t r = row[p];
            if (r)
                for (int i = 0; i < dim_; ++i) row[i] = f_->sub(row[i], f_->mul(r, v[i]));
        }
        rows_.push_back(std::move(v));
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return pivot(a) < pivot(b); });
        return true;
    }

    bool contains(std::vector<uint8_t> v) const {
        reduce(v);
        return pivot(v) < 0;
    }

    bool contains_subspace(const Subspace& o) const {
        for (const auto& row : o.rows_)
            if (!contains(row)) return false;
        return true;
    }

    const std::vector<std::vector<uint8_t>>& rows() const { return rows_; }

    // Zassenhaus: row-reduce [A|A; B|0], rows with zero left half carry a
    // basis of the intersection in the right half.
    static Subspace intersect(const Subspace& a, const Subspace& b) {
        const GF& f = *a.f_;
        const int d = a.dim_;
        std::vector<std::vector<uint8_t>> m;
        for (const auto& r : a.rows_) {
            std::vector<uint8_t> row(2 * d, 0);
            for (int i = 0; i < d; ++i) { row[i] = r[i]; row[d + i] = r[i]; }
            m.push_back(std::move(row));
        }
        for (const auto& r : b.rows_) {
            std::vector<uint8_t> row(2 * d, 0);
            for (int i = 0; i < d; ++i) row[i] = r[i];
            m.push_back(std::move(row));
        }
        // gaussian elimination on the combined matrix
        size_t rank_rows = 0;
        for (int col = 0; col < 2 * d && rank_rows < m.size(); ++col) {
            size_t sel = m.size();
            for (size_t r = rank_rows; r < m.size(); ++r)
                if (m[r][col]) { sel = r; break; }
            if (sel == m.size()) continue;
            std::swap(m[rank_rows], m[sel]);
            uint8_t c = f.inv(m[rank_rows][col]);
            for (auto& x : m[rank_rows]) x = f.mul(x, c);
            for (size_t r = 0; r < m.size(); ++r) {
                if (r == rank_rows || !m[r][col]) continue;
                uint8_t factor = m[r][col];
                for (int i = 0; i < 2 * d; ++i)
                    m[r][i] = f.sub(m[r][i], f.mul(factor, m[rank_rows][i]));
            }
            ++rank_rows;
        }
        Subspace out(f, d);
        for (const auto& row : m) {
            bool left_zero = true;
            for (int i = 0; i < d; ++i)
                if (row[i]) { left_zero = false; break; }
            if (!left_zero) continue;
            std::vector<uint8_t> right(row.begin() + d, row.end());
            out.insert(std::move(right));
        }
        return out;
    }

private:
    static int pivot(const std::vector<uint8_t>& v) {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i]) return static_cast<int>(i);
        return -1;
    }
    void reduce(std::vector<uint8_t>& v) const {
        for (const auto& row : rows_) {
            int p = pivot(row);
            if (p < 0 || !v[p]) continue;
            uint8_t c = v[p];
            for (int i = 0; i < dim_; ++i) v[i] = f_->sub(v[i], f_->mul(c, row[i]));
        }
    }

    const GF* f_;
    int dim_;
    std::vector<std::vector<uint8_t>> rows_;
};

// Window for level n: coordinates of eps^j e_i for j = -n .. n, flattened.
struct LatticeWindow {
    const GF* f;
    int n;

    int dim() const { return 2 * (2 * n + 1); }

    // coordinates of eps^{expo} (p, r); powers above eps^n are cut by the
    // quotient, powers below eps^{-n} must not occur.
    std::vector<uint8_t> coords(const PolyVec2& v, int expo) const {
        std::vector<uint8_t> out(dim(), 0);
        auto put = [&](const PolyGF& p, int comp) {
            for (size_t k = 0; k < p.size(); ++k) {
                if (!p[k]) continue;
                int power = static_cast<int>(k) + expo;
                if (power < -n) throw std::logic_error("window coords: power below window");
                if (power > n) continue;
                out[(power + n) * 2 + comp] = p[k];
            }
        };
        put(v.x, 0);
        put(v.y, 1);
        return out;
    }

    // the submodule spanned over the ring by the given scaled generators
    Subspace span(const std::vector<std::pair<PolyVec2, int>>& gens) const {
        Subspace s(*f, dim());
        for (const auto& [v, expo] : gens)
            for (int shift = 0; expo + shift <= n + 1; ++shift) {
                PolyVec2 w{poly_shift(v.x, shift), poly_shift(v.y, shift)};
                s.insert(coords(w, expo));
            }
        return s;
    }
};

// ---------------------------------------------------------------------------
// pieces

struct PieceLabel {
    enum class Kind { Y0, Yprime, Ydoubleprime };
    Kind kind = Kind::Y0;
    int n = 0;

    static PieceLabel y0() { return {Kind::Y0, 0}; }
    static PieceLabel yprime(int n) { return {Kind::Yprime, n}; }
    static PieceLabel ydoubleprime(int n) { return {Kind::Ydoubleprime, n}; }

    // l(w_inf) of the matching affine A1 piece
    int weyl_length() const {
        switch (kind) {
        case Kind::Y0: return 0;
        case Kind::Yprime: return 2 * n - 1;
        default: return 2 * n;
        }
    }

    std::string to_string() const {
        switch (kind) {
        case Kind::Y0: return "Y0";
        case Kind::Yprime: return "Y'" + std::to_string(n);
        default: return "Y''" + std::to_string(n);
        }
    }

    bool operator==(const PieceLabel& o) const { return kind == o.kind && n == o.n; }
    bool operator<(const PieceLabel& o) const {
        if (n != o.n) return n < o.n;
        return static_cast<int>(kind) < static_cast<int>(o.kind);
    }
};

struct PairPoint {
    LatticeClass lat;
    Mat2 g;  // matrix of the iso cl/eps cl -> cl'/eps cl' in the canonical bases
};

// cl_1 = the unique codimension-one sublattice of cl containing cl cap cl',
// cl_2 its mirror inside cl'; returned as the two line indices (P^1 points
// in the e-basis of cl/eps cl and the canonical basis of cl'/eps cl').
// Uniqueness is established by checking all q+1 candidates on each side.
inline std::pair<int, int> boundary_lines(const GF& f, const LatticeClass& lat) {
    if (lat.n == 0)
        throw std::invalid_argument("boundary_lines: undefined for the base lattice");
    LatticeWindow win{&f, lat.n};
    PolyVec2 e1{{1}, {}}, e2{{}, {1}};
    PolyVec2 b1 = lat.basis.column(0), b2 = lat.basis.column(1);

    Subspace sub_cl = win.span({{e1, 0}, {e2, 0}});
    Subspace sub_clp = win.span({{b1, -lat.n}, {b2, -lat.n}});
    Subspace sub_ecl = win.span({{e1, 1}, {e2, 1}});
    Subspace sub_eclp = win.span({{b1, -lat.n + 1}, {b2, -lat.n + 1}});
    Subspace inter = Subspace::intersect(sub_cl, sub_clp);

    auto unique_line = [&](const PolyVec2& g1, const PolyVec2& g2, int expo,
                           const Subspace& eps_side) {
        int found = -1;
        for (int idx = 0; idx <= f.q(); ++idx) {
            Vec2 lv = line_vector(f, idx);
            PolyVec2 v{poly_add(f, poly_scale(f, g1.x, lv.x), poly_scale(f, g2.x, lv.y)),
                       poly_add(f, poly_scale(f, g1.y, lv.x), poly_scale(f, g2.y, lv.y))};
            Subspace cand = eps_side;
            cand.insert(win.coords(v, expo));
            if (cand.contains_subspace(inter)) {
                if (found >= 0)
                    throw std::logic_error("boundary_lines: codimension-one lattice not unique");
                found = idx;
            }
        }
        if (found < 0)
            throw std::logic_error("boundary_lines: no codimension-one lattice found");
        return found;
    };

    int l1 = unique_line(e1, e2, 0, sub_ecl);
    int l2 = unique_line(b1, b2, -lat.n, sub_eclp);
    return {l1, l2};
}

inline PieceLabel classify_pair(const GF& f, const PairPoint& pt) {
    if (det(f, pt.g) != 1)
        throw std::invalid_argument("classify_pair: g does not preserve the volume");
    if (pt.lat.n == 0) return PieceLabel::y0();
    auto [l1, l2] = boundary_lines(f, pt.lat);
    Vec2 image = mul(f, pt.g, line_vector(f, l1));
    return line_index(f, image) == l2 ? PieceLabel::yprime(pt.lat.n)
                                      : PieceLabel::ydoubleprime(pt.lat.n);
}

// ---------------------------------------------------------------------------
// censuses

struct CensusRow {
    int q = 0;
    int n = 0;
    PieceLabel label;
    int64_t count = 0;
    int64_t formula_value = 0;
    bool match = false;
};

inline int64_t piece_cardinality_formula(int64_t q, const PieceLabel& label) {
    int64_t qq1 = checked_sub(checked_mul(q, q), 1);
    switch (label.kind) {
    case PieceLabel::Kind::Y0: return checked_mul(q, qq1);
    case PieceLabel::Kind::Yprime: return checked_mul(checked_pow(q, 2 * label.n), qq1);
    default: return checked_mul(checked_pow(q, 2 * label.n + 1), qq1);
    }
}

inline std::vector<CensusRow> census(const GF& f, int n_max) {
    std::vector<CensusRow> rows;
    std::vector<Mat2> sl2 = enumerate_sl2(f);
    for (int n = 0; n <= n_max; ++n) {
        std::map<PieceLabel, int64_t> counts;
        for (const LatticeClass& lat : enumerate_lattices(f, n)) {
            std::optional<std::pair<int, int>> lines;
            if (n > 0) lines = boundary_lines(f, lat);
            for (const Mat2& g : sl2) {
                PieceLabel label = PieceLabel::y0();
                if (n > 0) {
                    Vec2 image = mul(f, g, line_vector(f, lines->first));
                    label = line_index(f, image) == lines->second ? PieceLabel::yprime(n)
                                                                  : PieceLabel::ydoubleprime(n);
                }
                counts[label] += 1;
            }
        }
        std::vector<PieceLabel> expected;
        if (n == 0) expected = {PieceLabel::y0()};
        else expected = {PieceLabel::yprime(n), PieceLabel::ydoubleprime(n)};
        for (const PieceLabel& label : expected) {
            CensusRow row;
            row.q = f.q();
            row.n = n;
            row.label = label;
            row.count = counts.count(label) ? counts.at(label) : 0;
            row.formula_value = piece_cardinality_formula(f.q(), label);
            row.match = row.count == row.formula_value;
            rows.push_back(row);
        }
        for (const auto& [label, cnt] : counts) {
            bool known = false;
            for (const PieceLabel& e : expected) known = known || e == label;
            if (!known)
                throw std::logic_error("census: unexpected piece label at level " +
                                       std::to_string(n));
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// matching census counts against the affine A1 point-count polynomials

struct MatchRow {
    int w_length = 0;
    std::vector<int> word;
    PieceLabel label;
    Polynomial polynomial;
    int64_t polynomial_at_q = 0;
    int64_t census_count = 0;
    bool match = false;
};

struct MatchReport {
    int q = 0;
    int length_bound = 0;
    std::vector<MatchRow> rows;
    bool pass = false;
};

inline PieceLabel label_for_length(int l) {
    if (l == 0) return PieceLabel::y0();
    if (l % 2 == 1) return PieceLabel::yprime((l + 1) / 2);
    return PieceLabel::ydoubleprime(l / 2);
}

inline MatchReport match_pieces(int q, int L) {
    MatchReport report;
    report.q = q;
    report.length_bound = L;
    GF f(q);

    SpecPtr spec = CartanSpec::affine_shared('A', 1);
    DiagramAut id = DiagramAut::identity(spec);
    NodeSet J = NodeSet::of({0});
    std::vector<BedardSequence> seqs = enumerate_sequences(spec, J, id, L);

    std::vector<CensusRow> rows = census(f, (L + 1) / 2);
    std::map<PieceLabel, int64_t> census_counts;
    for (const CensusRow& r : rows) census_counts[r.label] = r.count;

    report.pass = static_cast<int>(seqs.size()) == L + 1;
    for (const BedardSequence& seq : seqs) {
        MatchRow row;
        row.w_length = seq.w_inf().length();
        row.word = seq.w_inf().reduced_word();
        row.label = label_for_length(row.w_length);
        row.polynomial = point_count(PieceDescriptor::from(seq), spec->node_count() - 1);
        row.polynomial_at_q = row.polynomial.evaluate(q);
        row.census_count =
            census_counts.count(row.label) ? census_counts.at(row.label) : -1;
        row.match = row.polynomial_at_q == row.census_count;
        report.pass = report.pass && row.match;
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// orbit census under the stabilizer of the base lattice

inline Mat2 reduce_mod_eps(const PolyMat2& p) {
    return Mat2{poly_coeff(p.e[0][0], 0), poly_coeff(p.e[0][1], 0), poly_coeff(p.e[1][0], 0),
                poly_coeff(p.e[1][1], 0)};
}

// Recover the reduced walk word of an integral lattice given by an arbitrary
// basis with determinant eps^{2n} (up to a unit): at each vertex the image
// of the target in Lambda_i / eps Lambda_i spans the line to follow.
inline std::vector<uint8_t> recover_word(const GF& f, const PolyMat2& target, int n) {
    std::vector<uint8_t> word;
    PolyMat2 current = PolyMat2::identity();
    for (int step = 0; step < 2 * n; ++step) {
        PolyVec2 c1 = solve_in_basis(f, current, target.column(0));
        PolyVec2 c2 = solve_in_basis(f, current, target.column(1));
        Vec2 v1{poly_coeff(c1.x, 0), poly_coeff(c1.y, 0)};
        Vec2 v2{poly_coeff(c2.x, 0), poly_coeff(c2.y, 0)};
        Vec2 dir = (v1.x || v1.y) ? v1 : v2;
        if (!(dir.x || dir.y))
            throw std::logic_error("recover_word: target image vanishes before full depth");
        if ((v1.x || v1.y) && (v2.x || v2.y)) {
            // both nonzero: must be parallel at depth < 2n
            if (f.sub(f.mul(v1.x, v2.y), f.mul(v1.y, v2.x)) != 0)
                throw std::logic_error("recover_word: image is not a line before full depth");
        }
        int letter = line_index(f, dir);
        if (step > 0 && letter == f.q())
            throw std::logic_error("recover_word: backtracking letter");
        word.push_back(static_cast<uint8_t>(letter));
        // advance the basis along the chosen letter
        PolyVec2 f1 = current.column(0), f2 = current.column(1);
        if (letter < f.q()) {
            PolyVec2 v{poly_add(f, f1.x, poly_scale(f, f2.x, static_cast<uint8_t>(letter))),
                       poly_add(f, f1.y, poly_scale(f, f2.y, static_cast<uint8_t>(letter)))};
            f2 = PolyVec2{poly_shift(f2.x, 1), poly_shift(f2.y, 1)};
            f1 = std::move(v);
        } else {
            PolyVec2 v = f2;
            f2 = PolyVec2{poly_shift(f1.x, 1), poly_shift(f1.y, 1)};
            f1 = std::move(v);
        }
        current.e[0][0] = f1.x;
        current.e[1][0] = f1.y;
        current.e[0][1] = f2.x;
        current.e[1][1] = f2.y;
    }
    return word;
}

// The action p : (cl', g) -> (p cl', pbar o g o pbar^{-1}) for p an exact
// integral matrix of determinant one stabilizing cl.
inline PairPoint apply_action(const GF& f, const PairPoint& pt, const PolyMat2& p) {
    const int n = pt.lat.n;
    PolyMat2 moved = mat_mul(f, p, pt.lat.basis);
    std::vector<uint8_t> word = recover_word(f, moved, n);
    LatticeClass lat = lattice_from_word(f, word);
    // matrix of pbar : cl'/eps cl' -> (p cl')/eps (p cl') in canonical bases
    PolyVec2 c1 = solve_in_basis(f, lat.basis, moved.column(0));
    PolyVec2 c2 = solve_in_basis(f, lat.basis, moved.column(1));
    Mat2 C{poly_coeff(c1.x, 0), poly_coeff(c2.x, 0), poly_coeff(c1.y, 0), poly_coeff(c2.y, 0)};
    if (det(f, C) != 1)
        throw std::logic_error("apply_action: basis change is not volume preserving");
    Mat2 pbar = reduce_mod_eps(p);
    Mat2 g = mul(f, mul(f, C, pt.g), inverse(f, pbar));
    return PairPoint{std::move(lat), g};
}

struct OrbitCensus {
    PieceLabel label;
    int q = 0;
    bool stable = false;
    int stabilized_at = 0;               // first of two agreeing precisions
    int64_t orbit_count = -1;            // valid when stable
    std::vector<int64_t> counts;         // per precision 1, 2, ...
    int64_t predicted = -1;              // twisted-class count of the descriptor
    bool match = false;
};

inline FiniteGroup sl2_finite_group(const GF& f) {
    std::vector<Mat2> els = enumerate_sl2(f);
    std::map<Mat2, int> index;
    for (size_t i = 0; i < els.size(); ++i) index[els[i]] = static_cast<int>(i);
    const int n = static_cast<int>(els.size());
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            table[static_cast<size_t>(a) * n + b] = index.at(mul(f, els[a], els[b]));
    return FiniteGroup(n, std::move(table), "SL2(F" + std::to_string(f.q()) + ")");
}

// Twisted-class prediction for a piece: Y0 carries the full reductive
// quotient SL_2(F_q) with trivial twist; the nonzero-length pieces carry the
// rank-one torus F_q^* twisted by inversion exactly when the finite part of
// w_inf is the nontrivial reflection, i.e. when l(w_inf) is odd.
inline int64_t predicted_orbit_count(const GF& f, const PieceLabel& label) {
    if (label.kind == PieceLabel::Kind::Y0) {
        FiniteGroup sl2 = sl2_finite_group(f);
        std::vector<int> id_theta(sl2.order());
        for (int i = 0; i < sl2.order(); ++i) id_theta[i] = i;
        return static_cast<int64_t>(
            twisted_classes(TwistedComponent::from(std::move(sl2), std::move(id_theta))).size());
    }
    FiniteGroup torus = FiniteGroup::cyclic(f.q() - 1);
    std::vector<int> theta(torus.order());
    const bool invert = label.weyl_length() % 2 == 1;
    for (int i = 0; i < torus.order(); ++i) theta[i] = invert ? torus.inv(i) : i;
    return static_cast<int64_t>(
        twisted_classes(TwistedComponent::from(std::move(torus), std::move(theta))).size());
}

inline std::string point_key(const PairPoint& pt) {
    std::string key(pt.lat.word.begin(), pt.lat.word.end());
    key.push_back(static_cast<char>(-1));
    key.push_back(static_cast<char>(pt.g.a));
    key.push_back(static_cast<char>(pt.g.b));
    key.push_back(static_cast<char>(pt.g.c));
    key.push_back(static_cast<char>(pt.g.d));
    return key;
}

// Orbits of the stabilizer of cl on one piece, at increasing precision. The
// generators at precision r are the elementary matrices E12(c eps^j),
// E21(c eps^j) for j < r; they are exact elements of the stabilizer, so
// orbit counts decrease monotonically and the first repeat is reported as
// stable. Non-stabilization within the window is an explicit inconclusive
// status, never a fabricated count.
inline OrbitCensus orbit_census(const GF& f, const PieceLabel& label, int max_precision = 6) {
    OrbitCensus result;
    result.label = label;
    result.q = f.q();

    std::vector<PairPoint> points;
    for (const LatticeClass& lat : enumerate_lattices(f, label.n)) {
        std::optional<std::pair<int, int>> lines;
        if (label.n > 0) lines = boundary_lines(f, lat);
        for (const Mat2& g : enumerate_sl2(f)) {
            PieceLabel got = PieceLabel::y0();
            if (label.n > 0) {
                Vec2 image = mul(f, g, line_vector(f, lines->first));
                got = line_index(f, image) == lines->second
                          ? PieceLabel::yprime(label.n)
                          : PieceLabel::ydoubleprime(label.n);
            }
            if (got == label) points.push_back(PairPoint{lat, g});
        }
    }
    std::unordered_map<std::string, int> index;
    for (size_t i = 0; i < points.size(); ++i) index[point_key(points[i])] = static_cast<int>(i);

    result.predicted = predicted_orbit_count(f, label);

    for (int r = 1; r <= max_precision; ++r) {
        std::vector<PolyMat2> gens;
        for (int j = 0; j < r; ++j)
            for (int c = 1; c < f.q(); ++c) {
                PolyGF entry = poly_shift({static_cast<uint8_t>(c)}, j);
                PolyMat2 e12 = PolyMat2::identity();
                e12.e[0][1] = entry;
                PolyMat2 e21 = PolyMat2::identity();
                e21.e[1][0] = entry;
                gens.push_back(e12);
                gens.push_back(e21);
            }
        std::vector<bool> seen(points.size(), false);
        int64_t orbits = 0;
        for (size_t start = 0; start < points.size(); ++start) {
            if (seen[start]) continue;
            ++orbits;
            std::vector<int> stack{static_cast<int>(start)};
            seen[start] = true;
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                for (const PolyMat2& gmat : gens) {
                    PairPoint moved = apply_action(f, points[cur], gmat);
                    auto it = index.find(point_key(moved));
                    if (it == index.end())
                        throw std::logic_error("orbit_census: action left the piece");
                    if (!seen[it->second]) {
                        seen[it->second] = true;
                        stack.push_back(it->second);
                    }
                }
            }
        }
        result.counts.push_back(orbits);
        if (result.counts.size() >= 2 &&
            result.counts[result.counts.size() - 1] == result.counts[result.counts.size() - 2]) {
            result.stable = true;
            result.stabilized_at = r - 1;
            result.orbit_count = orbits;
            result.match = result.orbit_count == result.predicted;
            return result;
        }
    }
    return result;
}

} // namespace affweyl
