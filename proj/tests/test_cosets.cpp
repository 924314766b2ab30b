#include <doctest.h>

#include <map>
#include <set>

#include "affweyl/cosets.hpp"

using namespace affweyl;

namespace {

std::vector<WeylElement> all_elements(const Ball& ball) {
    std::vector<WeylElement> out;
    for (const auto& layer : ball.layers)
        for (const WeylElement& w : layer) out.push_back(w);
    return out;
}

// brute-force minimum of w W'_J by scanning the whole coset
WeylElement coset_min_right(const WeylElement& w, const ParabolicTable& table) {
    WeylElement best = w;
    int best_len = w.length();
    for (const WeylElement& y : table.elements) {
        WeylElement wy = multiply(w, y);
        int len = wy.length();
        if (len < best_len) { best = wy; best_len = len; }
    }
    return best;
}

} // namespace

TEST_CASE("finite parabolic detection") {
    SpecPtr a1 = CartanSpec::affine_shared('A', 1);
    CHECK(is_finite_parabolic(a1, NodeSet::of({0})));
    CHECK(is_finite_parabolic(a1, NodeSet::empty()));
    CHECK(!is_finite_parabolic(a1, NodeSet::of({0, 1})));

    SpecPtr a2 = CartanSpec::affine_shared('A', 2);
    CHECK(!is_finite_parabolic(a2, NodeSet::of({0, 1, 2})));
    CHECK(is_finite_parabolic(a2, NodeSet::of({0, 1})));
    CHECK(enumerate_parabolic(a2, NodeSet::of({0, 1})).elements.size() == 6);
}

TEST_CASE("parabolic tables") {
    SpecPtr a1 = CartanSpec::affine_shared('A', 1);
    ParabolicTable t = enumerate_parabolic(a1, NodeSet::of({0}));
    CHECK(t.elements.size() == 2);
    CHECK(t.n_positive == 1);
    CHECK(t.poincare == Polynomial({1, 1}));
    CHECK(t.longest == WeylElement::simple_reflection(a1, 0));

    SpecPtr a2 = CartanSpec::affine_shared('A', 2);
    ParabolicTable t12 = enumerate_parabolic(a2, NodeSet::of({1, 2}));
    CHECK(t12.elements.size() == 6);
    CHECK(t12.n_positive == 3);
    // (1+q)(1+q+q^2) = 1 + 2q + 2q^2 + q^3
    CHECK(t12.poincare == Polynomial({1, 2, 2, 1}));
    CHECK(t12.poincare.evaluate(1) == 6);
    // longest element has every j in J as a descent
    CHECK(NodeSet::of({1, 2}).subset_of(t12.longest.right_descents()));

    ParabolicTable empty = enumerate_parabolic(a2, NodeSet::empty());
    CHECK(empty.elements.size() == 1);
    CHECK(empty.n_positive == 0);
    CHECK(empty.poincare == Polynomial::one());

    CHECK_THROWS_AS(enumerate_parabolic(a2, NodeSet::of({0, 1, 2})), std::invalid_argument);
}

TEST_CASE("min_right on hand examples") {
    SpecPtr a1 = CartanSpec::affine_shared('A', 1);
    WeylElement e = WeylElement::identity(a1);
    WeylElement s1 = WeylElement::simple_reflection(a1, 1);
    WeylElement s1s0 = multiply(s1, WeylElement::simple_reflection(a1, 0));

    CHECK(min_right(e, NodeSet::of({0})) == e);
    CHECK(min_right(s1s0, NodeSet::of({0})) == s1);
}

TEST_CASE("coset minimum uniqueness and factorization over the radius-8 ball") {
    for (auto [fam, rank] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}}) {
        SpecPtr spec = CartanSpec::affine_shared(fam, rank);
        const int n = spec->node_count();
        std::vector<WeylElement> elements = all_elements(ball_enumerate(spec, 8));

        std::vector<NodeSet> proper;
        for (uint32_t bits = 0; bits + 1 < (1u << n); ++bits) proper.push_back(NodeSet(bits));

        std::map<uint32_t, ParabolicTable> tables;
        for (NodeSet J : proper) tables.emplace(J.bits(), enumerate_parabolic(spec, J));

        for (const WeylElement& w : elements)
            for (NodeSet J : proper) {
                const ParabolicTable& table = tables.at(J.bits());
                WeylElement m = min_right(w, J);
                // unique element of the coset without right descents in J
                int without_descents = 0;
                for (const WeylElement& y : table.elements) {
                    WeylElement wy = multiply(w, y);
                    if ((wy.right_descents() & J).is_empty()) {
                        ++without_descents;
                        CHECK(wy == m);
                    }
                }
                CHECK(without_descents == 1);
                CHECK(m == coset_min_right(w, table));
                // l(w) = l(m) + l(m^{-1} w) with the second factor in W'_J
                WeylElement y = multiply(inverse(m), w);
                CHECK(w.length() == m.length() + y.length());
                bool in_parabolic = false;
                for (const WeylElement& z : table.elements) in_parabolic |= z == y;
                CHECK(in_parabolic);
            }
    }
}

TEST_CASE("min_left mirrors min_right") {
    SpecPtr spec = CartanSpec::affine_shared('A', 2);
    for (const WeylElement& w : all_elements(ball_enumerate(spec, 6)))
        for (uint32_t bits = 0; bits < 7; ++bits) {
            NodeSet K(bits);
            CHECK(min_left(w, K) == inverse(min_right(inverse(w), K)));
        }
}

TEST_CASE("min_double against brute force") {
    SpecPtr spec = CartanSpec::affine_shared('A', 2);
    std::map<uint32_t, ParabolicTable> tables;
    for (uint32_t bits = 0; bits < 7; ++bits)
        tables.emplace(bits, enumerate_parabolic(spec, NodeSet(bits)));

    // W'_{1} s1s2s1 W'_{2} = {s1s2s1, s2s1}; the minimum is s2s1
    WeylElement w121 = WeylElement::from_word(spec, {1, 2, 1});
    WeylElement m = min_double(w121, NodeSet::of({1}), NodeSet::of({2}));
    CHECK(m == WeylElement::from_word(spec, {2, 1}));

    for (const WeylElement& w : all_elements(ball_enumerate(spec, 5)))
        for (uint32_t kb = 0; kb < 7; ++kb)
            for (uint32_t jb = 0; jb < 7; ++jb) {
                NodeSet K(kb), J(jb);
                WeylElement md = min_double(w, K, J);
                CHECK(is_min_double_rep(md, K, J));
                // brute-force scan of W'_K w W'_J
                int best = w.length();
                WeylElement best_el = w;
                for (const WeylElement& k : tables.at(kb).elements)
                    for (const WeylElement& j : tables.at(jb).elements) {
                        WeylElement kwj = multiply(multiply(k, w), j);
                        if (kwj.length() < best) { best = kwj.length(); best_el = kwj; }
                    }
                CHECK(md.length() == best);
                CHECK(md == best_el);
            }
}

TEST_CASE("is_min_double_rep examples") {
    SpecPtr a1 = CartanSpec::affine_shared('A', 1);
    CHECK(is_min_double_rep(WeylElement::identity(a1), NodeSet::of({0}), NodeSet::of({1})));
    CHECK(is_min_double_rep(WeylElement::simple_reflection(a1, 1), NodeSet::of({0}),
                            NodeSet::of({0})));
    CHECK(!is_min_double_rep(WeylElement::simple_reflection(a1, 0), NodeSet::of({0}),
                             NodeSet::empty()));

    SpecPtr a2 = CartanSpec::affine_shared('A', 2);
    CHECK(!is_min_double_rep(WeylElement::from_word(a2, {1, 2}), NodeSet::of({2}),
                             NodeSet::of({2})));
}

TEST_CASE("ad_simple examples") {
    SpecPtr a1 = CartanSpec::affine_shared('A', 1);
    CHECK(ad_simple(WeylElement::identity(a1), 0) == 0);
    CHECK(ad_simple(WeylElement::identity(a1), 1) == 1);
    // s1(alpha_0) = alpha_0 + 2 alpha_1 is not +- a simple root
    CHECK(!ad_simple(WeylElement::simple_reflection(a1, 1), 0).has_value());

    SpecPtr a2 = CartanSpec::affine_shared('A', 2);
    WeylElement w121 = WeylElement::from_word(a2, {1, 2, 1});
    // the longest element of the {1,2} subsystem sends alpha_1 to -alpha_2
    CHECK(ad_simple(w121, 1) == 2);
    CHECK(ad_simple(w121, 2) == 1);
}

TEST_CASE("ad_subset examples") {
    SpecPtr a1 = CartanSpec::affine_shared('A', 1);
    CHECK(ad_subset(WeylElement::identity(a1), NodeSet::of({0})) == NodeSet::of({0}));
    CHECK(ad_subset(WeylElement::simple_reflection(a1, 1), NodeSet::of({0})) == NodeSet::empty());

    SpecPtr a2 = CartanSpec::affine_shared('A', 2);
    WeylElement w121 = WeylElement::from_word(a2, {1, 2, 1});
    CHECK(ad_subset(w121, NodeSet::of({1, 2})) == NodeSet::of({1, 2}));
}

TEST_CASE("ad_simple is injective where defined and preserves the Cartan matrix") {
    for (auto [fam, rank] : std::vector<std::pair<char, int>>{{'A', 2}, {'C', 2}}) {
        SpecPtr spec = CartanSpec::affine_shared(fam, rank);
        const int n = spec->node_count();
        for (const WeylElement& w : all_elements(ball_enumerate(spec, 6))) {
            std::map<int, int> images;
            for (int j = 0; j < n; ++j)
                if (auto k = ad_simple(w, j)) images[j] = *k;
            std::set<int> values;
            for (auto [j, k] : images) values.insert(k);
            CHECK(values.size() == images.size());
            for (auto [j1, k1] : images)
                for (auto [j2, k2] : images)
                    CHECK(spec->entry(k1, k2) == spec->entry(j1, j2));
        }
    }
}
