#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

// Table-driven arithmetic for the small finite fields the lattice model
// runs over: F_q for q in {2,3,4,5,7,8,9}. Prime fields are residues;
// q = 4, 8, 9 are built from an irreducible polynomial over the prime
// field, with elements indexed by their coefficient digits base p.

namespace affweyl {

class GF {
public:
    explicit GF(int q) : q_(q) {
        switch (q) {
        case 2: case 3: case 5: case 7: build_prime(q); break;
        case 4: build_ext(2, 2, {1, 1});    // x^2 + x + 1
            break;
        case 8: build_ext(2, 3, {1, 1, 0}); // x^3 + x + 1
            break;
        case 9: build_ext(3, 2, {1, 0});    // x^2 + 1
            break;
        default:
            throw std::invalid_argument("GF: unsupported field size " + std::to_string(q));
        }
        inv_.assign(q_, 0);
        for (int a = 1; a < q_; ++a)
            for (int b = 1; b < q_; ++b)
                if (mul(a, b) == 1) { inv_[a] = b; break; }
        neg_.assign(q_, 0);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b)
                if (add(a, b) == 0) { neg_[a] = b; break; }
    }

    int q() const { return q_; }
    uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return add(a, neg_[b]); }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
    uint8_t neg(uint8_t a) const { return neg_[a]; }
    uint8_t inv(uint8_t a) const {
        if (a == 0) throw std::invalid_argument("GF: inverse of zero");
        return inv_[a];
    }

private:
    void build_prime(int p) {
        add_.resize(p * p);
        mul_.resize(p * p);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                add_[a * p + b] = static_cast<uint8_t>((a + b) % p);
                mul_[a * p + b] = static_cast<uint8_t>((a * b) % p);
            }
    }

    // Elements are polynomials of degree < k over F_p, indexed by digits
    // base p; `modpoly` lists the low coefficients of the monic irreducible.
    void build_ext(int p, int k, std::vector<int> modpoly) {
        auto digits = [&](int v) {
            std::vector<int> d(k);
            for (int i = 0; i < k; ++i) { d[i] = v % p; v /= p; }
            return d;
        };
        auto undig = [&](const std::vector<int>& d) {
            int v = 0;
            for (int i = k - 1; i >= 0; --i) v = v * p + d[i];
            return v;
        };
        add_.resize(q_ * q_);
        mul_.resize(q_ * q_);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) {
                auto da = digits(a), db = digits(b);
                std::vector<int> s(k);
                for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
                add_[a * q_ + b] = static_cast<uint8_t>(undig(s));
                std::vector<int> prod(2 * k - 1, 0);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                for (int d = 2 * k - 2; d >= k; --d) {
                    int c = prod[d];
                    if (c == 0) continue;
                    prod[d] = 0;
                    // x^k = -modpoly
                    for (int i = 0; i < k; ++i)
                        prod[d - k + i] = ((prod[d - k + i] - c * modpoly[i]) % p + p * p) % p;
                }
                prod.resize(k);
                mul_[a * q_ + b] = static_cast<uint8_t>(undig(prod));
            }
    }

    int q_;
    std::vector<uint8_t> add_, mul_, neg_, inv_;
};

struct Vec2 {
    uint8_t x = 0, y = 0;
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

struct Mat2 {
    // row-major: [[a, b], [c, d]]
    uint8_t a = 1, b = 0, c = 0, d = 1;

    bool operator==(const Mat2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    bool operator<(const Mat2& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        if (c != o.c) return c < o.c;
        return d < o.d;
    }
};

inline Mat2 mul(const GF& f, const Mat2& m, const Mat2& n) {
    return Mat2{f.add(f.mul(m.a, n.a), f.mul(m.b, n.c)),
                f.add(f.mul(m.a, n.b), f.mul(m.b, n.d)),
                f.add(f.mul(m.c, n.a), f.mul(m.d, n.c)),
                f.add(f.mul(m.c, n.b), f.mul(m.d, n.d))};
}

inline Vec2 mul(const GF& f, const Mat2& m, const Vec2& v) {
    return Vec2{f.add(f.mul(m.a, v.x), f.mul(m.b, v.y)),
                f.add(f.mul(m.c, v.x), f.mul(m.d, v.y))};
}

inline uint8_t det(const GF& f, const Mat2& m) {
    return f.sub(f.mul(m.a, m.d), f.mul(m.b, m.c));
}

inline Mat2 inverse(const GF& f, const Mat2& m) {
    uint8_t dt = det(f, m);
    uint8_t di = f.inv(dt);
    return Mat2{f.mul(di, m.d), f.mul(di, f.neg(m.b)), f.mul(di, f.neg(m.c)), f.mul(di, m.a)};
}

// All of SL_2(F_q) in lexicographic entry order; |SL_2(F_q)| = q(q^2 - 1).
inline std::vector<Mat2> enumerate_sl2(const GF& f) {
    std::vector<Mat2> out;
    const int q = f.q();
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d) {
                    Mat2 m{static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                           static_cast<uint8_t>(c), static_cast<uint8_t>(d)};
                    if (det(f, m) == 1) out.push_back(m);
                }
    return out;
}

// Points of P^1(F_q), indexed 0..q: index t < q is the line through (1, t),
// index q is the line through (0, 1).
inline Vec2 line_vector(const GF& f, int index) {
    if (index < 0 || index > f.q()) throw std::invalid_argument("line_vector: bad index");
    if (index == f.q()) return Vec2{0, 1};
    return Vec2{1, static_cast<uint8_t>(index)};
}

inline int line_index(const GF& f, const Vec2& v) {
    if (v.x == 0 && v.y == 0) throw std::invalid_argument("line_index: zero vector");
    if (v.x == 0) return f.q();
    return f.mul(v.y, f.inv(v.x));
}

} // namespace affweyl
