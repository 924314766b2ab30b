#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "affweyl/intmatrix.hpp"
#include "affweyl/nodeset.hpp"

// Affine Cartan matrices with the convention A[i][j] = <alpha_j, alpha_i^v>,
// so the simple reflection acts by s_i(alpha_j) = alpha_j - A[i][j] alpha_i.
//
// Validity of a user-supplied matrix means: generalized-Cartan sign pattern,
// symmetrizable, and the symmetrized form is positive semidefinite of corank
// exactly one with every proper principal submatrix positive definite. This
// is exactly the condition that every proper subset of nodes generates a
// finite parabolic while the whole group is infinite affine.

namespace affweyl {

class CartanSpec {
public:
    explicit CartanSpec(IntMatrix cartan, std::string name = "custom")
        : cartan_(std::move(cartan)), name_(std::move(name)) {
        validate();
        marks_ = corank_one_null_vector(cartan_);
    }

    // Untwisted affine type X_rank^(1); node 0 is the affine node,
    // nodes 1..rank carry the finite diagram.
    static CartanSpec affine(char family, int rank);
    static std::shared_ptr<const CartanSpec> affine_shared(char family, int rank) {
        return std::make_shared<const CartanSpec>(affine(family, rank));
    }

    int node_count() const { return cartan_.dim(); }
    const IntMatrix& cartan() const { return cartan_; }
    int64_t entry(int i, int j) const { return cartan_.at(i, j); }
    const std::string& name() const { return name_; }

    // Null direction of the Cartan matrix (the marks a_i); every Weyl
    // element fixes it.
    const std::vector<int64_t>& marks() const { return marks_; }

    // True iff the principal submatrix on J is positive definite, i.e. the
    // standard parabolic W'_J is finite. For a valid affine spec this holds
    // exactly when J is a proper subset.
    bool finite_parabolic(NodeSet J) const {
        if (!J.subset_of(NodeSet::full(node_count())))
            throw std::invalid_argument("finite_parabolic: J is not a subset of the node set");
        return leading_minors_positive(symmetrized_.principal_submatrix(J.to_vector()));
    }

    bool same_as(const CartanSpec& o) const { return cartan_ == o.cartan_; }

private:
    static bool leading_minors_positive(const IntMatrix& m) {
        for (int k = 1; k <= m.dim(); ++k) {
            std::vector<int> idx(k);
            std::iota(idx.begin(), idx.end(), 0);
            if (determinant(m.principal_submatrix(idx)) <= 0) return false;
        }
        return true;
    }

    void validate() {
        const int n = cartan_.dim();
        if (n < 2) throw std::invalid_argument("Cartan matrix must have at least 2 nodes");
        for (int i = 0; i < n; ++i) {
            if (cartan_.at(i, i) != 2)
                throw std::invalid_argument("Cartan matrix diagonal must be 2");
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (cartan_.at(i, j) > 0)
                    throw std::invalid_argument("Cartan matrix off-diagonal entries must be <= 0");
                if ((cartan_.at(i, j) == 0) != (cartan_.at(j, i) == 0))
                    throw std::invalid_argument("Cartan matrix zero pattern must be symmetric");
            }
        }
        symmetrize();
        if (determinant(symmetrized_) != 0)
            throw std::invalid_argument("not affine: symmetrized Cartan matrix is nonsingular");
        if (rank(symmetrized_) != n - 1)
            throw std::invalid_argument("not affine: corank of symmetrized matrix exceeds 1");
        for (int k = 0; k < n; ++k) {
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (i != k) idx.push_back(i);
            if (!leading_minors_positive(symmetrized_.principal_submatrix(idx)))
                throw std::invalid_argument(
                    "not affine: a proper principal submatrix is not positive definite");
        }
    }

    // Find positive integers d_i with d_i A[i][j] = d_j A[j][i]; then
    // B = diag(d) A is the symmetrized matrix.
    void symmetrize() {
        const int n = cartan_.dim();
        std::vector<int64_t> num(n, 0), den(n, 0);
        std::vector<int> stack;
        for (int start = 0; start < n; ++start) {
            if (den[start] != 0) continue;
            num[start] = 1;
            den[start] = 1;
            stack.push_back(start);
            while (!stack.empty()) {
                int i = stack.back();
                stack.pop_back();
                for (int j = 0; j < n; ++j) {
                    if (cartan_.at(i, j) == 0 || i == j) continue;
                    // d_j = d_i * A[i][j] / A[j][i]
                    int64_t nj = checked_mul(num[i], cartan_.at(i, j));
                    int64_t dj = checked_mul(den[i], cartan_.at(j, i));
                    if (dj < 0) { nj = -nj; dj = -dj; }
                    int64_t g = std::gcd(nj, dj);
                    nj /= g; dj /= g;
                    if (den[j] == 0) {
                        num[j] = nj; den[j] = dj;
                        stack.push_back(j);
                    } else if (checked_mul(num[j], dj) != checked_mul(nj, den[j])) {
                        throw std::invalid_argument("Cartan matrix is not symmetrizable");
                    }
                }
            }
        }
        int64_t lcm = 1;
        for (int i = 0; i < n; ++i) lcm = std::lcm(lcm, den[i]);
        std::vector<int64_t> d(n);
        for (int i = 0; i < n; ++i) d[i] = checked_mul(num[i], lcm / den[i]);
        symmetrized_ = IntMatrix(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                symmetrized_.at(i, j) = checked_mul(d[i], cartan_.at(i, j));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (symmetrized_.at(i, j) != symmetrized_.at(j, i))
                    throw std::logic_error("symmetrization produced a non-symmetric matrix");
    }

    IntMatrix cartan_;
    IntMatrix symmetrized_;
    std::vector<int64_t> marks_;
    std::string name_;
};

namespace detail {

struct Bond {
    int from, to;   // arrow from the long root to the short root
    int strength;   // 1: single, 2: double, 3: triple
};

inline IntMatrix cartan_from_bonds(int n, const std::vector<Bond>& bonds) {
    IntMatrix a = IntMatrix::identity(n);
    for (int i = 0; i < n; ++i) a.at(i, i) = 2;
    for (const Bond& b : bonds) {
        a.at(b.from, b.to) = -1;
        a.at(b.to, b.from) = -b.strength;
    }
    return a;
}

} // namespace detail

inline CartanSpec CartanSpec::affine(char family, int rank) {
    using detail::Bond;
    auto bad = [&]() {
        throw std::invalid_argument(std::string("no untwisted affine type ") + family +
                                    std::to_string(rank));
    };
    std::vector<Bond> bonds;
    const int n = rank + 1;
    switch (family) {
    case 'A':
        if (rank < 1) bad();
        if (rank == 1) {
            IntMatrix a(2, {2, -2, -2, 2});
            return CartanSpec(std::move(a), "A1~");
        }
        for (int i = 0; i < rank; ++i) bonds.push_back({i, i + 1, 1});
        bonds.push_back({0, rank, 1});
        break;
    case 'B':
        if (rank < 3) bad();
        for (int i = 1; i < rank - 1; ++i) bonds.push_back({i, i + 1, 1});
        bonds.push_back({rank - 1, rank, 2});
        bonds.push_back({0, 2, 1});
        break;
    case 'C':
        if (rank < 2) bad();
        for (int i = 1; i < rank - 1; ++i) bonds.push_back({i, i + 1, 1});
        bonds.push_back({0, 1, 2});
        bonds.push_back({rank, rank - 1, 2});
        break;
    case 'D':
        if (rank < 4) bad();
        for (int i = 1; i < rank - 1; ++i) bonds.push_back({i, i + 1, 1});
        bonds.push_back({rank - 2, rank, 1});
        bonds.push_back({0, 2, 1});
        break;
    case 'E':
        if (rank < 6 || rank > 8) bad();
        // Bourbaki numbering: chain 1-3-4-5-..., node 2 hangs off node 4.
        bonds.push_back({1, 3, 1});
        bonds.push_back({2, 4, 1});
        for (int i = 3; i < rank; ++i) bonds.push_back({i, i + 1, 1});
        if (rank == 6) bonds.push_back({0, 2, 1});
        if (rank == 7) bonds.push_back({0, 1, 1});
        if (rank == 8) bonds.push_back({0, 8, 1});
        break;
    case 'F':
        if (rank != 4) bad();
        bonds.push_back({1, 2, 1});
        bonds.push_back({2, 3, 2});
        bonds.push_back({3, 4, 1});
        bonds.push_back({0, 1, 1});
        break;
    case 'G':
        if (rank != 2) bad();
        bonds.push_back({1, 2, 3});
        bonds.push_back({0, 1, 1});
        break;
    default:
        bad();
    }
    return CartanSpec(detail::cartan_from_bonds(n, bonds),
                      std::string(1, family) + std::to_string(rank) + "~");
}

} // namespace affweyl
