#include <doctest.h>

#include <set>

#include "affweyl/bitorsor.hpp"

using namespace affweyl;

namespace {

FiniteGroup make_s3() { return FiniteGroup::from_permutations({{1, 0, 2}, {0, 2, 1}}, "S3"); }

FiniteGroup make_d4() { return FiniteGroup::from_permutations({{1, 2, 3, 0}, {1, 0, 3, 2}}, "D4"); }

std::vector<int> subgroup_a3(const FiniteGroup& s3) {
    std::vector<int> a3;
    for (int i = 0; i < s3.order(); ++i)
        if (s3.element_order(i) != 2) a3.push_back(i);
    return a3;
}

BiTorsor s3_transposition_torsor() {
    FiniteGroup s3 = make_s3();
    int transposition = -1;
    for (int i = 0; i < s3.order(); ++i)
        if (s3.element_order(i) == 2) { transposition = i; break; }
    return BiTorsor::coset(s3, subgroup_a3(s3), transposition);
}

BiTorsor d4_reflection_torsor() {
    FiniteGroup d4 = make_d4();
    int r = -1;
    for (int i = 0; i < d4.order(); ++i)
        if (d4.element_order(i) == 4) { r = i; break; }
    std::vector<int> z4{d4.identity(), r, d4.mult(r, r), d4.mult(d4.mult(r, r), r)};
    std::sort(z4.begin(), z4.end());
    int reflection = -1;
    for (int i = 0; i < d4.order(); ++i)
        if (std::find(z4.begin(), z4.end(), i) == z4.end()) { reflection = i; break; }
    return BiTorsor::coset(d4, z4, reflection);
}

bool theta_is_inversion(const FiniteGroup& g, const std::vector<int>& theta) {
    for (int i = 0; i < g.order(); ++i)
        if (theta[i] != g.inv(i)) return false;
    return true;
}

} // namespace

TEST_CASE("group table validation") {
    CHECK_NOTHROW(FiniteGroup::cyclic(1));
    CHECK_NOTHROW(FiniteGroup::cyclic(7));
    // broken table: not associative / no identity
    CHECK_THROWS_AS(FiniteGroup(2, {0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteGroup(3, {0, 1, 2, 1, 2, 0, 2, 0, 0}), std::invalid_argument);

    FiniteGroup s3 = make_s3();
    CHECK(s3.order() == 6);
    CHECK(!s3.is_abelian());
    CHECK(s3.conjugacy_classes().size() == 3);

    FiniteGroup d4 = make_d4();
    CHECK(d4.order() == 8);
    CHECK(d4.conjugacy_classes().size() == 5);
}

TEST_CASE("torsor validation catches broken actions") {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    // left action not free: both elements act as the identity on E
    CHECK_THROWS_AS(BiTorsor(z2, 2, {0, 1, 0, 1}, {0, 1, 1, 0}), std::invalid_argument);
    CHECK_NOTHROW(BiTorsor::regular(FiniteGroup::cyclic(2)));
}

TEST_CASE("tau on the regular torsor") {
    FiniteGroup s3 = make_s3();
    BiTorsor t = BiTorsor::regular(s3);
    // at the identity, tau is the identity automorphism
    std::vector<int> tau = tau_of(t, s3.identity());
    for (int l = 0; l < s3.order(); ++l) CHECK(tau[l] == l);
    // at any e, tau_e = Ad(e)
    for (int e = 0; e < t.e_size(); ++e) {
        std::vector<int> te = tau_of(t, e);
        for (int l = 0; l < s3.order(); ++l)
            CHECK(te[l] == s3.mult(s3.mult(e, l), s3.inv(e)));
    }
}

TEST_CASE("S3/A3: tau_e is inversion for every e, with d = 2") {
    BiTorsor t = s3_transposition_torsor();
    CHECK(t.L().order() == 3);
    for (int e = 0; e < t.e_size(); ++e) {
        std::vector<int> tau = tau_of(t, e);
        CHECK(theta_is_inversion(t.L(), tau));
        CHECK(automorphism_order(t.L(), tau) == 2);
    }
    ComponentBuild b = build_component(t, 0);
    CHECK(b.component.d == 2);
    CHECK(b.semidirect.order() == 6);
    // Z3 twisted by inversion is S3
    CHECK(is_isomorphic(b.semidirect, make_s3()));
    // f is a bijection onto the omega-coset
    std::set<int> image(b.f.begin(), b.f.end());
    CHECK(image.size() == 3);
    for (int v : image) CHECK(v >= 3);  // the coset (l, 1) sits at indices 3..5
}

TEST_CASE("D4/Z4: tau_e is inversion, semidirect product has order 8") {
    BiTorsor t = d4_reflection_torsor();
    CHECK(t.L().order() == 4);
    for (int e = 0; e < t.e_size(); ++e) {
        std::vector<int> tau = tau_of(t, e);
        CHECK(theta_is_inversion(t.L(), tau));
        CHECK(automorphism_order(t.L(), tau) == 2);
    }
    ComponentBuild b = build_component(t, 0);
    CHECK(b.component.d == 2);
    CHECK(b.semidirect.order() == 8);
    CHECK(is_isomorphic(b.semidirect, make_d4()));
}

TEST_CASE("trivial torsor builds the group itself") {
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    BiTorsor t = BiTorsor::regular(z4);
    ComponentBuild b = build_component(t, z4.identity());
    CHECK(b.component.d == 1);
    CHECK(b.semidirect.order() == 4);
    CHECK(is_isomorphic(b.semidirect, z4));
    CHECK(b.omega == b.semidirect.identity());
}

TEST_CASE("declared multiple of the order is honored") {
    FiniteGroup z3 = FiniteGroup::cyclic(3);
    BiTorsor t = BiTorsor::regular(z3);
    ComponentBuild b = build_component(t, z3.identity(), 2);
    CHECK(b.component.d == 2);
    CHECK(b.semidirect.order() == 6);
    // theta = id, so this is the direct product Z3 x Z2 = Z6
    CHECK(is_isomorphic(b.semidirect, FiniteGroup::cyclic(6)));
    CHECK_THROWS_AS(
        build_component(s3_transposition_torsor(), 0, 3),  // 3 is not a multiple of 2
        std::invalid_argument);
}

TEST_CASE("equivariance f(l e l^-1) = l f(e) l^-1 holds exhaustively") {
    CHECK(check_equivariance(BiTorsor::regular(FiniteGroup::cyclic(4)), 0));
    CHECK(check_equivariance(BiTorsor::regular(make_s3()), 0));
    for (int e0 = 0; e0 < 3; ++e0) CHECK(check_equivariance(s3_transposition_torsor(), e0));
    for (int e0 = 0; e0 < 4; ++e0) CHECK(check_equivariance(d4_reflection_torsor(), e0));
}

TEST_CASE("tau of a conjugated point is the conjugated tau") {
    // from tau_e(x) e = e x one derives tau_{l e l^-1} = Ad(l) o tau_e o Ad(l)^-1
    for (const BiTorsor& t : {s3_transposition_torsor(), d4_reflection_torsor(),
                              BiTorsor::regular(make_s3())}) {
        const FiniteGroup& L = t.L();
        for (int l = 0; l < L.order(); ++l)
            for (int e = 0; e < t.e_size(); ++e) {
                std::vector<int> lhs = tau_of(t, t.conjugate(l, e));
                std::vector<int> tau = tau_of(t, e);
                for (int x = 0; x < L.order(); ++x) {
                    int conj_in = L.mult(L.mult(L.inv(l), x), l);
                    CHECK(lhs[x] == L.mult(L.mult(l, tau[conj_in]), L.inv(l)));
                }
            }
    }
}

TEST_CASE("twisted classes") {
    SUBCASE("identity twist recovers ordinary conjugacy classes") {
        FiniteGroup s3 = make_s3();
        std::vector<int> id(s3.order());
        for (int i = 0; i < s3.order(); ++i) id[i] = i;
        TwistedComponent c = TwistedComponent::from(s3, id);
        CHECK(twisted_classes(c).size() == 3);
    }

    SUBCASE("cyclic groups twisted by inversion: orbits of x + 2l") {
        // |2 Z_n| = n / gcd(n,2): odd order collapses to one class, even
        // order to two (and Z1 and Z2 stay pointwise fixed).
        auto inversion_classes = [](int n) {
            FiniteGroup z = FiniteGroup::cyclic(n);
            std::vector<int> inv(n);
            for (int i = 0; i < n; ++i) inv[i] = z.inv(i);
            return twisted_classes(TwistedComponent::from(z, inv)).size();
        };
        CHECK(inversion_classes(1) == 1);
        CHECK(inversion_classes(2) == 2);   // F_3^* under inversion
        CHECK(inversion_classes(3) == 1);   // F_4^* under inversion (q even)
        CHECK(inversion_classes(4) == 2);   // F_5^* under inversion (q odd)
        CHECK(inversion_classes(6) == 2);   // F_7^* under inversion (q odd)
    }

    SUBCASE("the S3/A3 component has a single twisted class") {
        // cross-check: A3 acts transitively by conjugation on the three
        // transpositions, so L_tau \ C_tau is a single orbit
        BiTorsor t = s3_transposition_torsor();
        ComponentBuild b = build_component(t, 0);
        CHECK(twisted_classes(b.component).size() == 1);
        std::set<int> orbit;
        for (int l = 0; l < t.L().order(); ++l) orbit.insert(t.conjugate(l, 0));
        CHECK(orbit.size() == 3);
    }
}

TEST_CASE("twisted class count is invariant under inner twists") {
    for (const BiTorsor& t : {s3_transposition_torsor(), d4_reflection_torsor()}) {
        ComponentBuild b = build_component(t, 0);
        size_t count = twisted_classes(b.component).size();
        for (int l = 0; l < t.L().order(); ++l)
            CHECK(twisted_classes(inner_twist(b.component, l)).size() == count);
    }
    FiniteGroup s3 = make_s3();
    std::vector<int> id(s3.order());
    for (int i = 0; i < s3.order(); ++i) id[i] = i;
    TwistedComponent c = TwistedComponent::from(s3, id);
    size_t count = twisted_classes(c).size();
    for (int l = 0; l < s3.order(); ++l)
        CHECK(twisted_classes(inner_twist(c, l)).size() == count);
}

TEST_CASE("conjugation on E transported by f matches conjugation in the semidirect product") {
    for (const BiTorsor& t : {s3_transposition_torsor(), d4_reflection_torsor()}) {
        ComponentBuild b = build_component(t, 0);
        const FiniteGroup& sd = b.semidirect;
        // orbits of conjugation on E correspond one-to-one to twisted classes
        std::vector<std::vector<int>> classes = twisted_classes(b.component);
        std::set<int> reached;
        std::vector<std::set<int>> orbits;
        for (int e = 0; e < t.e_size(); ++e) {
            if (reached.count(e)) continue;
            std::set<int> orbit;
            for (int l = 0; l < t.L().order(); ++l) orbit.insert(t.conjugate(l, e));
            for (int x : orbit) reached.insert(x);
            orbits.push_back(std::move(orbit));
        }
        CHECK(orbits.size() == classes.size());
        // f maps each orbit onto a conjugation orbit inside L omega
        for (const auto& orbit : orbits) {
            std::set<int> image;
            for (int e : orbit) image.insert(b.f[e]);
            std::set<int> closure;
            int seed = *image.begin();
            for (int l = 0; l < t.L().order(); ++l)
                closure.insert(sd.mult(sd.mult(l, seed), sd.inv(l)));
            CHECK(image == closure);
        }
    }
}
