#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace torsidl;
using namespace testutil;

TEST_CASE("A2 window hom table") {
    auto w = a2_window();
    REQUIRE(w->size() == 3);
    std::size_t s1 = w->index_of("S1"), s2 = w->index_of("S2"), p1 = w->index_of("P1");
    std::size_t nonzero = 0;
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y) nonzero += w->hom_dim(x, y);
    CHECK(nonzero == 5);
    CHECK(w->hom_dim(p1, s1) == 1);
    CHECK(w->hom_dim(s2, p1) == 1);
    CHECK(w->hom_dim(s1, s2) == 0);
    CHECK(w->projective_object(0) == p1);
    CHECK(w->projective_object(1) == s2);
}

TEST_CASE("window validation") {
    auto a = a2();
    auto s1 = simple_module(a, 0);
    CHECK_THROWS_WITH_AS(Window::build(a, {s1, rename(s1, "again"), projective(a, 0), projective(a, 1)}, true),
                         doctest::Contains("duplicate isomorphism class"), Error);
    CHECK_THROWS_WITH_AS(Window::build(a, {s1, projective(a, 0)}, true), doctest::Contains("missing projective"), Error);
    CHECK_THROWS_WITH_AS(Window::build(a, {direct_sum({s1, s1}).mod, projective(a, 0), projective(a, 1)}, true),
                         doctest::Contains("decomposable"), Error);
    CHECK(dual_window()->size() == 2);
}

TEST_CASE("radical ideal examples") {
    auto w = a2_window();
    auto r = radical_ideal(w);
    std::size_t s1 = w->index_of("S1"), p1 = w->index_of("P1");
    CHECK(r.at(p1, s1).dim() == 1);
    CHECK(r.at(p1, p1).dim() == 0);
    for (std::size_t x = 0; x < w->size(); ++x)
        CHECK_FALSE(r.at(x, x).contains(w->coords(x, x, identity_morphism(w->object(x)))));
    CHECK(is_two_sided(r));
    auto d = dual_window();
    auto rd = radical_ideal(d);
    CHECK(rd.at(1, 1).dim() == 1);
    CHECK(ideal_power(r, 2) == zero_ideal(w));
}

TEST_CASE("subcategory ideals and lattice operations") {
    auto w = a2_window();
    std::size_t s1 = w->index_of("S1"), s2 = w->index_of("S2"), p1 = w->index_of("P1");
    auto c2 = ideal_of_subcategory(w, {s2});
    CHECK(c2.at(p1, s1).dim() == 0);
    CHECK(c2.at(s2, p1).dim() == 1);
    CHECK(c2.at(s2, s2).dim() == 1);
    CHECK(ideal_of_subcategory(w, {}) == zero_ideal(w));
    CHECK(ideal_of_subcategory(w, {s1, s2, p1}) == unit_ideal(w));
    auto c1 = ideal_of_subcategory(w, {s1});
    CHECK(ideal_meet(c1, c2) == zero_ideal(w));
    CHECK(ideal_meet(c1, unit_ideal(w)) == c1);
    CHECK(ideal_join(zero_ideal(w), c1) == c1);
    CHECK(ideal_product(c1, unit_ideal(w)) == c1);
    CHECK(ideal_product(unit_ideal(w), c1) == c1);
}

TEST_CASE("property: generated ideals are two-sided; products associative (200 cases)") {
    std::mt19937 rng(17);
    std::vector<WinPtr> ws = {a2_window(), dual_window(), a3_window()};
    for (int t = 0; t < 200; ++t) {
        auto w = ws[t % ws.size()];
        auto random_ideal = [&]() {
            std::vector<IdealGenerator> gens;
            std::size_t count = rng() % 3;
            for (std::size_t k = 0; k < count; ++k) {
                std::size_t x = rng() % w->size(), y = rng() % w->size();
                if (w->hom_dim(x, y) == 0) continue;
                Matrix c(w->field(), 1, w->hom_dim(x, y));
                for (std::size_t i = 0; i < c.cols(); ++i) c.set_int(0, i, rng() % 2);
                gens.push_back({x, y, c});
            }
            return ideal_from_generators(w, gens);
        };
        Ideal a = random_ideal(), b = random_ideal(), c = random_ideal();
        CHECK(is_two_sided(a));
        CHECK(ideal_product(ideal_product(a, b), c) == ideal_product(a, ideal_product(b, c)));
        CHECK(is_two_sided(ideal_meet(a, b)));
        CHECK(is_two_sided(ideal_join(a, b)));
        CHECK(ideal_leq(ideal_product(a, b), ideal_meet(a, b)));
    }
}

TEST_CASE("Kronecker window radical tower") {
    auto w = kron_window();
    REQUIRE(w->size() == 20);
    RadicalTower t = make_radical_tower(w);
    CHECK(t.cert.applicable);
    CHECK(t.cert.tau_periodic.size() == 12);
    CHECK(ideal_leq(ideal_product(t.omega, t.omega), t.omega));
    for (std::size_t v = 0; v < 2; ++v) {
        std::size_t p = w->projective_object(v);
        for (std::size_t j = 4; j < 16; ++j) CHECK(t.omega.at(p, j).is_full());
    }
    for (std::size_t n = 1; n < t.powers.size(); ++n) CHECK(ideal_leq(t.powers[n], t.powers[n - 1]));
}

TEST_CASE("A2 tower has no omega part") {
    auto w = a2_window();
    RadicalTower t = make_radical_tower(w);
    CHECK(t.cert.tau_periodic.empty());
    CHECK(t.omega == zero_ideal(w));
    auto d = make_radical_tower(dual_window());
    CHECK_FALSE(d.cert.applicable);
}
