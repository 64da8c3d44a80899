#include <chrono>

#include "doctest.h"
#include "helpers.hpp"
#include "torsidl/lattice.hpp"

using namespace torsidl;
using namespace testutil;

TEST_CASE("rad chains on A2") {
    auto w = a2_window();
    auto tower = make_radical_tower(w);
    std::size_t s1 = w->index_of("S1"), s2 = w->index_of("S2"), p1 = w->index_of("P1");
    auto r = rad_chain(tower, s1);
    CHECK(r.tag == OrdinalTag::finite(1));
    CHECK(r.chain == std::vector<std::size_t>{1, 1, 0});
    CHECK(r.preprojective);
    CHECK(rad_chain(tower, p1).tag == OrdinalTag::finite(0));
    CHECK(rad_chain(tower, s2).tag == OrdinalTag::finite(0));
    CHECK(projective_rank(tower, std::vector<std::size_t>{p1, s1}, 2) == OrdinalTag::finite(0));
    CHECK(projective_rank(tower, std::vector<std::size_t>{}, 2) == OrdinalTag::finite(0));
    CHECK(OrdinalTag::finite(5) < OrdinalTag::omega_plus(0, true));
    CHECK(OrdinalTag::omega_plus(3, true) < OrdinalTag::exceeds(true));
    CHECK(OrdinalTag::omega_plus(1, true).str() == "OmegaPlus(1)");
}

TEST_CASE("Kronecker ranks") {
    auto w = kron_window();
    auto tower = make_radical_tower(w);
    for (std::size_t k = 1; k <= 4; ++k) {
        auto r = rad_chain(tower, w->index_of("P" + std::to_string(k)));
        CHECK(r.tag == OrdinalTag::finite(k >= 3 ? k - 2 : 0));
        CHECK(r.exactness == Exactness::WindowRelative);
    }
    for (std::size_t j = 1; j <= 4; ++j)
        for (std::string l : {"0", "1", "inf"}) {
            auto x = w->index_of("R" + std::to_string(j) + "_" + l);
            CHECK(rad_chain(tower, x).tag == OrdinalTag::omega_plus(0, true));
            CHECK(projective_rank(tower, x, 2) == OrdinalTag::omega_plus(0, true));
        }
    for (std::size_t j = 1; j <= 4; ++j) {
        auto x = w->index_of("I" + std::to_string(j));
        CHECK(rad_chain(tower, x).tag.kind == OrdinalTag::Kind::OmegaPlus);
        CHECK(projective_rank(tower, x, 2) == OrdinalTag::omega_plus(1, true));
        CHECK(projective_rank(tower, x, 0) == OrdinalTag::exceeds(true));
    }
}

TEST_CASE("rad^n approximations") {
    auto w = a2_window();
    auto tower = make_radical_tower(w);
    std::size_t s1 = w->index_of("S1"), s2 = w->index_of("S2"), p1 = w->index_of("P1");
    auto a = left_radn_approximation(tower, {p1}, 2);
    CHECK(a.others.empty());
    auto a1 = left_radn_approximation(tower, {p1}, 1);
    CHECK(a1.others == std::vector<std::size_t>{s1});
    auto reg = left_radn_approximation(tower, regular_objects(*w), 1);
    CHECK(target_multiplicities(reg)[s1] == 1);
    CHECK(target_multiplicities(reg)[p1] == 1);
    CHECK(verify_approximation(tower.window_powers[1], reg));
    CHECK(summand_occurrences(tower, s1, 4) == std::vector<std::size_t>{1});
    CHECK(summand_occurrences(tower, p1, 4) == std::vector<std::size_t>{0, 1});
    CHECK(summand_occurrences(tower, s2, 4) == std::vector<std::size_t>{0});
    for (std::size_t n = 0; n <= 3; ++n)
        CHECK(target_multiplicities(composed_radn_approximation(tower, regular_objects(*w), n)) ==
              target_multiplicities(left_radn_approximation(tower, regular_objects(*w), n)));
}

TEST_CASE("rad^n approximations compose on A3 and Kronecker") {
    for (auto w : {a3_window(), kron_window()}) {
        auto tower = make_radical_tower(w);
        for (std::size_t x = 0; x < std::min<std::size_t>(w->size(), 6); ++x)
            for (std::size_t n = 1; n <= 3; ++n)
                CHECK(target_multiplicities(composed_radn_approximation(tower, {x}, n)) ==
                      target_multiplicities(left_radn_approximation(tower, {x}, n)));
    }
}

TEST_CASE("bar construction") {
    auto w = a2_window();
    auto s1 = w->object(w->index_of("S1"));
    auto b = bar_morphism(s1, mat(w->field(), {{1}}, 1));
    CHECK(b.power->total_dim() == 3);
    CHECK(b.witnesses.size() == 3);
    CHECK(b.image_of_one.rank() == 1);
    auto z = bar_morphism(s1, mat(w->field(), {{0}}, 1));
    CHECK(z.morphism.is_zero());
    auto p = w->object(w->index_of("P1"));
    auto bp = bar_morphism(p, mat(w->field(), {{1, 0}}, 2));
    CHECK(bp.morphism.total().rank() == 3);
}

TEST_CASE("subfunctor enumeration") {
    auto w = a2_window();
    auto l = enumerate_subfunctors(w);
    CHECK(l.elements.size() == 8);
    CHECK(l.lattice.is_modular());
    CHECK(mdim(l.lattice) == 0);
    auto d = enumerate_subfunctors(dual_window());
    CHECK(d.elements.size() == 4);
    CHECK(d.lattice.is_chain());
    auto q = dual_window(Field::rationals());
    CHECK_THROWS_WITH_AS(enumerate_subfunctors(q), doctest::Contains("finite prime field"), Error);
    CHECK_THROWS_WITH_AS(enumerate_subfunctors(kron_window()), doctest::Contains("complete window"), Error);
    // A single simple module: the window of the one-vertex algebra.
    auto k = build_algebra(quiver(Field::prime(2), {"1"}, {}));
    auto kw = Window::build(k, {projective(k, 0)}, true);
    auto kl = enumerate_subfunctors(kw);
    CHECK(kl.elements.size() == 2);
    CHECK(mdim(kl.lattice) == 0);
    CHECK(mdim(make_lattice({"x"}, [](std::size_t, std::size_t) { return true; })) == -1);
    // Reordering the window objects does not change the count.
    auto a = a2();
    auto w2 = Window::build(a, {rename(projective(a, 0), "P1"), rename(simple_module(a, 1), "S2"), rename(simple_module(a, 0), "S1")}, true);
    CHECK(enumerate_subfunctors(w2).elements.size() == 8);
    // A3 over F_2 and F_3 agree.
    CHECK(enumerate_subfunctors(a3_window()).elements.size() == enumerate_subfunctors(a3_window(Field::prime(3))).elements.size());
}

TEST_CASE("principal subfunctors") {
    auto w = a2_window();
    std::size_t s1 = w->index_of("S1"), s2 = w->index_of("S2"), p1 = w->index_of("P1");
    auto f = w->field();
    CHECK(principal_subfunctor(w, p1, mat(f, {{0, 0}}, 2)) == zero_subfunctor(w));
    auto soc = principal_subfunctor(w, p1, mat(f, {{0, 1}}, 2));
    CHECK(soc.at(p1).dim() == 1);
    CHECK(soc.at(s1).dim() == 0);
    // Hom(P1, S2) = 0, so the closure stays zero at S2.
    CHECK(soc.at(s2).dim() == 0);
    auto top = principal_subfunctor(w, p1, mat(f, {{1, 1}}, 2));
    CHECK(top.at(p1).dim() == 2);
    CHECK(top.at(s1).dim() == 1);
    CHECK(top.at(s2).dim() == 0);
    CHECK(subfunctor_from_morphism(w, w->object(p1), mat(f, {{1, 1}}, 2)) == top);
    CHECK(subfunctor_from_morphism(w, w->object(p1), mat(f, {{0, 1}}, 2)) == soc);
}

TEST_CASE("extensions and torsion classes") {
    auto w = a2_window();
    std::size_t s1 = w->index_of("S1"), s2 = w->index_of("S2");
    auto e = extension_middle_terms(w->object(s1), w->object(s2));
    CHECK(e.size() == 2);
    auto back = extension_middle_terms(w->object(s2), w->object(s1));
    CHECK(back.size() == 1);
    auto c = torsion_classes(w);
    CHECK(c.classes.size() == 5);
    CHECK(c.classes == c.orthogonal);
    auto d = torsion_classes(dual_window());
    CHECK(d.classes.size() == 2);
    CHECK(d.classes == d.orthogonal);
    auto a3 = torsion_classes(a3_window(), 4);
    CHECK(a3.classes.size() == 14);
    CHECK(a3.classes == a3.orthogonal);
    // Dual numbers: k by k has the split and the non-split extension.
    auto dw = dual_window();
    CHECK(extension_middle_terms(dw->object(0), dw->object(0)).size() == 2);
}

TEST_CASE("torsion dimension reports") {
    for (auto w : {a2_window(), a3_window(), dual_window()}) {
        auto r = torsion_dimension_report(w);
        CHECK(r.exact);
        REQUIRE(r.value);
        CHECK(*r.value == 0);
    }
    auto k = torsion_dimension_report(kron_window());
    CHECK_FALSE(k.exact);
    CHECK_FALSE(k.value);
    CHECK_FALSE(k.certificates.empty());
}

TEST_CASE("Kronecker tube chains") {
    auto w = kron_window();
    for (std::string l : {"0", "1", "inf"}) {
        auto r1 = w->index_of("R1_" + l);
        auto p = torsion_closure(ideal_of_subcategory(w, {r1}));
        auto q = torsionfree_closure(ideal_of_subcategory(w, {r1}));
        for (std::size_t j = 1; j <= 4; ++j) {
            auto rj = w->index_of("R" + std::to_string(j) + "_" + l);
            SubRep t = sub_rep(w->object(rj), p.t.at(rj));
            CHECK(t.mod->dims == std::vector<std::size_t>{1, 1});
            CHECK(w->locate(t.mod)->first == r1);
            SubRep r = sub_rep(w->object(rj), q.t.at(rj));
            CHECK(r.mod->dims == std::vector<std::size_t>{j - 1, j - 1});
            if (j > 1) CHECK(w->locate(r.mod)->first == w->index_of("R" + std::to_string(j - 1) + "_" + l));
        }
        auto dc = diamond_power_chain(w, {r1}, 4);
        for (std::size_t i = 1; i <= 4; ++i)
            for (std::size_t kk = 1; kk <= 4; ++kk) {
                auto rk = w->index_of("R" + std::to_string(kk) + "_" + l);
                std::size_t m = std::min(i, kk);
                CHECK(dc.pairs[i - 1].t.at(rk).dim() == 2 * m);
            }
        for (std::size_t i = 0; i < 3; ++i) CHECK(dc.strict[i]);
    }
}

TEST_CASE("descending chain certificates") {
    auto w = kron_window();
    auto tower = make_radical_tower(w);
    std::size_t p2 = w->index_of("P2"), r1 = w->index_of("R1_0");
    tower.power(4);
    const Subspace s4 = tower.window_powers[4].at(p2, r1);
    REQUIRE(s4.dim() > 0);
    auto c = descending_chain_certificate(tower, p2, r1, s4.vector(0), 4);
    CHECK(c.chain.size() == 5);
    CHECK(c.strict);
    CHECK(c.witnesses.size() == 4);
    auto c0 = descending_chain_certificate(tower, p2, r1, s4.vector(0), 0);
    CHECK(c0.chain.size() == 1);
    CHECK(c0.strict);
    auto a = a2_window();
    auto at = make_radical_tower(a);
    std::size_t ap1 = a->index_of("P1"), as1 = a->index_of("S1");
    CHECK_THROWS_WITH_AS(descending_chain_certificate(at, ap1, as1, mat(a->field(), {{1}}, 1), 1),
                         doctest::Contains("precondition"), Error);
}

TEST_CASE("diamond chains on A2") {
    auto w = a2_window();
    std::size_t s2 = w->index_of("S2");
    auto d = diamond_power_chain(w, {s2}, 3);
    CHECK(d.pairs[0].t == d.pairs[1].t);
    CHECK_FALSE(d.strict[0]);
    std::vector<std::size_t> all{0, 1, 2};
    auto u = diamond_power_chain(w, all, 3);
    CHECK(u.pairs[0].t == identity_subfunctor(w));
    CHECK_FALSE(u.strict[1]);
}
