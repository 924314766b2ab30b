#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "affweyl/checked.hpp"

// Square integer matrices with exact (checked) arithmetic, plus the small
// amount of fraction-free linear algebra the library needs: Bareiss
// determinants, rank, and a primitive null vector for corank-1 matrices.

namespace affweyl {

class IntMatrix {
public:
    IntMatrix() : n_(0) {}
    explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0) {}
    IntMatrix(int n, std::vector<int64_t> entries) : n_(n), a_(std::move(entries)) {
        if (a_.size() != static_cast<size_t>(n) * n)
            throw std::invalid_argument("IntMatrix: entry count does not match dimension");
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int dim() const { return n_; }
    int64_t& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    int64_t at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<int64_t>& entries() const { return a_; }

    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_identity() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    IntMatrix mul(const IntMatrix& o) const {
        if (n_ != o.n_) throw std::invalid_argument("IntMatrix: dimension mismatch");
        IntMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                int64_t aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < n_; ++j)
                    r.at(i, j) = checked_add(r.at(i, j), checked_mul(aik, o.at(k, j)));
            }
        return r;
    }

    std::vector<int64_t> apply(const std::vector<int64_t>& v) const {
        if (static_cast<int>(v.size()) != n_)
            throw std::invalid_argument("IntMatrix: vector dimension mismatch");
        std::vector<int64_t> r(n_, 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (at(i, j) != 0)
                    r[i] = checked_add(r[i], checked_mul(at(i, j), v[j]));
        return r;
    }

    // Column j as a vector; for Weyl matrices this is the image of alpha_j.
    std::vector<int64_t> column(int j) const {
        std::vector<int64_t> c(n_);
        for (int i = 0; i < n_; ++i) c[i] = at(i, j);
        return c;
    }

    IntMatrix principal_submatrix(const std::vector<int>& idx) const {
        IntMatrix r(static_cast<int>(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j)
                r.at(static_cast<int>(i), static_cast<int>(j)) = at(idx[i], idx[j]);
        return r;
    }

private:
    int n_;
    std::vector<int64_t> a_;
};

// Bareiss fraction-free elimination; exact for integer matrices.
inline int64_t determinant(IntMatrix m) {
    const int n = m.dim();
    if (n == 0) return 1;
    int64_t sign = 1;
    int64_t prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                int64_t num = checked_sub(checked_mul(m.at(i, j), m.at(k, k)),
                                          checked_mul(m.at(i, k), m.at(k, j)));
                if (num % prev != 0)
                    throw std::logic_error("Bareiss: exact division failed");
                m.at(i, j) = num / prev;
            }
        prev = m.at(k, k);
    }
    return checked_mul(sign, m.at(n - 1, n - 1));
}

inline int rank(IntMatrix m) {
    const int n = m.dim();
    int r = 0;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int p = -1;
        for (int i = row; i < n; ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(m.at(row, j), m.at(p, j));
        for (int i = row + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            int64_t a = m.at(row, col), b = m.at(i, col);
            int64_t g = std::gcd(a, b);
            int64_t fa = b / g, fb = a / g;
            for (int j = 0; j < n; ++j)
                m.at(i, j) = checked_sub(checked_mul(fb, m.at(i, j)),
                                         checked_mul(fa, m.at(row, j)));
        }
        ++row;
        ++r;
    }
    return r;
}

inline IntMatrix adjugate(const IntMatrix& m) {
    const int n = m.dim();
    IntMatrix adj(n);
    if (n == 1) { adj.at(0, 0) = 1; return adj; }
    std::vector<int> rows, cols;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rows.clear(); cols.clear();
            for (int k = 0; k < n; ++k) {
                if (k != i) rows.push_back(k);
                if (k != j) cols.push_back(k);
            }
            IntMatrix minor(n - 1);
            for (int a = 0; a < n - 1; ++a)
                for (int b = 0; b < n - 1; ++b)
                    minor.at(a, b) = m.at(rows[a], cols[b]);
            int64_t c = determinant(minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? c : checked_neg(c);
        }
    return adj;
}

// Primitive integer null vector of a corank-1 matrix, normalized so the
// entries have no common factor and their sum is positive.
inline std::vector<int64_t> corank_one_null_vector(const IntMatrix& m) {
    const int n = m.dim();
    IntMatrix adj = adjugate(m);
    for (int j = 0; j < n; ++j) {
        std::vector<int64_t> col = adj.column(j);
        int64_t g = 0, sum = 0;
        for (int64_t x : col) { g = std::gcd(g, x); sum = checked_add(sum, x); }
        if (g == 0) continue;
        if (sum < 0) g = -g;
        for (int64_t& x : col) x /= g;
        if (m.apply(col) != std::vector<int64_t>(n, 0))
            throw std::logic_error("corank_one_null_vector: adjugate column is not in the kernel");
        return col;
    }
    throw std::invalid_argument("corank_one_null_vector: matrix has corank != 1");
}

struct IntMatrixHash {
    size_t operator()(const IntMatrix& m) const {
        uint64_t h = 1469598103934665603ull;
        for (int64_t x : m.entries()) {
            h ^= static_cast<uint64_t>(x);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

} // namespace affweyl
