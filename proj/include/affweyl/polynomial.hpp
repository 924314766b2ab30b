#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "affweyl/checked.hpp"

// Polynomials in q with exact integer coefficients, stored ascending.

namespace affweyl {

class Polynomial {
public:
    Polynomial() {}
    explicit Polynomial(std::vector<int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial one() { return constant(1); }
    static Polynomial constant(int64_t v) { return Polynomial({v}); }
    static Polynomial monomial(int degree, int64_t coeff = 1) {
        std::vector<int64_t> c(degree + 1, 0);
        c[degree] = coeff;
        return Polynomial(std::move(c));
    }
    // q - 1
    static Polynomial q_minus_one() { return Polynomial({-1, 1}); }

    const std::vector<int64_t>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    int64_t coefficient(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0;
    }
    int64_t leading() const { return c_.empty() ? 0 : c_.back(); }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<int64_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = checked_add(coefficient(static_cast<int>(i)), o.coefficient(static_cast<int>(i)));
        return Polynomial(std::move(r));
    }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return zero();
        std::vector<int64_t> r(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = checked_add(r[i + j], checked_mul(c_[i], o.c_[j]));
        return Polynomial(std::move(r));
    }

    Polynomial pow(int e) const {
        Polynomial r = one();
        for (int i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    int64_t evaluate(int64_t q) const {
        int64_t r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = checked_add(checked_mul(r, q), *it);
        return r;
    }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<int64_t> c_;
};

} // namespace affweyl
