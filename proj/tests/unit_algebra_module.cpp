#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace torsidl;
using namespace testutil;

TEST_CASE("algebra dimensions") {
    CHECK(a2()->dim() == 3);
    CHECK(dual_numbers()->dim() == 2);
    CHECK(kronecker()->dim() == 4);
    CHECK(a3()->dim() == 6);
    auto q = quiver(Field::prime(2), {"1"}, {{"1", "1", "x"}});
    CHECK_THROWS_AS(build_algebra(q), Error);
    q.relations.push_back({RelationTerm{1, {"x"}}});
    CHECK_THROWS_AS(build_algebra(q), Error);
}

TEST_CASE("algebra is associative with orthogonal idempotents") {
    for (AlgPtr a : {a2(), kronecker(), dual_numbers(), a3(Field::rationals())}) {
        const std::size_t n = a->dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Matrix x = Matrix::unit_row(a->field(), n, i), y = Matrix::unit_row(a->field(), n, j),
                           z = Matrix::unit_row(a->field(), n, k);
                    CHECK(a->multiply(a->multiply(x, y), z) == a->multiply(x, a->multiply(y, z)));
                }
        Matrix one = a->unit();
        for (std::size_t i = 0; i < n; ++i) {
            Matrix x = Matrix::unit_row(a->field(), n, i);
            CHECK(a->multiply(one, x) == x);
            CHECK(a->multiply(x, one) == x);
        }
    }
}

TEST_CASE("commutative-square relation gives the expected dimension") {
    // 1 -a-> 2 -b-> 4, 1 -c-> 3 -d-> 4 with ba = dc: paths e1..e4, a, b, c, d, one length-2 class.
    auto q = quiver(Field::rationals(), {"1", "2", "3", "4"}, {{"1", "2", "a"}, {"2", "4", "b"}, {"1", "3", "c"}, {"3", "4", "d"}});
    q.relations.push_back({RelationTerm{1, {"a", "b"}}, RelationTerm{-1, {"c", "d"}}});
    CHECK(build_algebra(q)->dim() == 9);
}

TEST_CASE("regular module summands") {
    auto a = a2();
    Regular r = regular_module(a);
    REQUIRE(r.summands.size() == 2);
    CHECK(r.summands[0]->dims == std::vector<std::size_t>{1, 1});
    CHECK(r.summands[1]->dims == std::vector<std::size_t>{0, 1});
    CHECK(regular_module(dual_numbers()).summands[0]->dims == std::vector<std::size_t>{2});
    auto k = regular_module(kronecker());
    CHECK(k.summands[0]->dims == std::vector<std::size_t>{1, 2});
    CHECK(k.summands[1]->dims == std::vector<std::size_t>{0, 1});
}

TEST_CASE("hom space examples") {
    auto a = a2();
    auto p1 = projective(a, 0), s1 = simple_module(a, 0), s2 = simple_module(a, 1);
    CHECK(hom_space(p1, s1).dim() == 1);
    CHECK(hom_space(s1, s2).dim() == 0);
    for (auto m : {p1, s1, s2}) CHECK(hom_space(m, m).contains(identity_morphism(m)));
    auto k = kronecker();
    auto r = kron_regular(k, 2, 0);
    CHECK(hom_space(regular_module(k).mod, r).dim() == r->total_dim());
    CHECK_THROWS_AS(hom_space(p1, simple_module(k, 0)), Error);
}

TEST_CASE("kernel, cokernel, image") {
    auto a = a2();
    auto p1 = projective(a, 0), s1 = simple_module(a, 0);
    Morphism pi = hom_space(p1, s1).basis.at(0);
    auto kc = kernel_cokernel_image(pi);
    CHECK(kc.kernel->dims == std::vector<std::size_t>{0, 1});
    CHECK(kc.cokernel->total_dim() == 0);
    auto kid = kernel_cokernel_image(identity_morphism(p1));
    CHECK(kid.kernel->total_dim() == 0);
    auto kz = kernel_cokernel_image(zero_morphism(zero_module(a), p1));
    CHECK(kz.cokernel->dims == p1->dims);
    CHECK(find_iso_indecomposable(kc.kernel, simple_module(a, 1)).has_value());
}

TEST_CASE("decomposition examples") {
    auto a = a2();
    auto s1 = simple_module(a, 0);
    auto d = decompose(direct_sum({s1, s1}).mod);
    REQUIRE(d.size() == 1);
    CHECK(d[0].multiplicity == 2);
    CHECK(d[0].mod->dims == s1->dims);
    auto reg = decompose(regular_module(a).mod);
    REQUIRE(reg.size() == 2);
    std::size_t found = 0;
    for (auto& s : reg) {
        CHECK(s.multiplicity == 1);
        if (find_iso_indecomposable(s.mod, projective(a, 0))) ++found;
        if (find_iso_indecomposable(s.mod, projective(a, 1))) ++found;
    }
    CHECK(found == 2);
    auto p = decompose(projective(a, 0));
    REQUIRE(p.size() == 1);
    CHECK(p[0].multiplicity == 1);
    HomSpace e = hom_space(p[0].mod, p[0].mod);
    CHECK(e.dim() - end_radical(e).dim() == 1);
}

TEST_CASE("decomposition of Kronecker sums") {
    auto k = kronecker();
    auto r0 = kron_regular(k, 2, 0), r1 = kron_regular(k, 1, 1), p3 = kron_preprojective(k, 3);
    auto m = direct_sum({r0, r1, p3, r1}).mod;
    auto d = decompose(m);
    std::size_t total = 0;
    for (auto& s : d) {
        total += s.multiplicity;
        for (auto& inc : s.inclusions) inc.validate();
    }
    CHECK(total == 4);
    CHECK(d.size() == 3);
    CHECK(is_indecomposable(kron_regular(k, 3, -1)));
    CHECK(is_indecomposable(kron_preinjective(k, 4)));
}

TEST_CASE("duality") {
    auto a = a2();
    auto ds = dualize(simple_module(a, 0));
    CHECK(ds->alg.get() == a->opposite().get());
    CHECK(find_iso_indecomposable(ds, simple_module(a->opposite(), 0)).has_value());
    auto dp = dualize(projective(a, 0));
    CHECK(dp->dims == std::vector<std::size_t>{1, 1});
    CHECK(find_iso_indecomposable(dp, injective(a->opposite(), 0)).has_value());
    std::mt19937 rng(3);
    auto k = kronecker();
    for (int t = 0; t < 20; ++t) {
        Matrix x(k->field(), 2, 2), y(k->field(), 2, 2);
        for (int i = 0; i < 4; ++i) {
            x.set_int(i / 2, i % 2, rng() % 2);
            y.set_int(i / 2, i % 2, rng() % 2);
        }
        auto m = make_module(k, "M", {2, 2}, {x, y});
        auto dd = dualize(dualize(m));
        double_dual_iso(m, dd).validate();
    }
}

TEST_CASE("injectives are dual to opposite projectives") {
    for (AlgPtr a : {a2(), a3(), kronecker(), dual_numbers()}) {
        for (std::size_t v = 0; v < a->num_vertices(); ++v) {
            auto i = injective(a, v);
            auto dp = dualize(projective(a->opposite(), v));
            CHECK(i->dims == dp->dims);
            CHECK(find_iso_indecomposable(i, dp).has_value());
        }
    }
}

TEST_CASE("auslander-reiten translate") {
    auto a = a2();
    auto t = tau(simple_module(a, 0));
    CHECK(find_iso_indecomposable(t.module, simple_module(a, 1)).has_value());
    CHECK(tau(projective(a, 0)).module->total_dim() == 0);
    CHECK(tau(projective(a, 0)).dropped_projective_summands == 1);
    auto k = kronecker();
    for (long lam : {0L, 1L, -1L}) {
        auto r = kron_regular(k, 1, lam);
        auto tr = tau(r).module;
        CHECK(tr->dims == std::vector<std::size_t>{1, 1});
        CHECK(find_iso_indecomposable(tr, r).has_value());
    }
    // tau P_{n+2} = P_n, tau^{-1} P_n = P_{n+2}
    for (std::size_t n = 1; n <= 3; ++n) {
        auto tp = tau(kron_preprojective(k, n + 2)).module;
        CHECK(find_iso_indecomposable(tp, kron_preprojective(k, n)).has_value());
        auto ti = tau_inverse(kron_preprojective(k, n)).module;
        CHECK(find_iso_indecomposable(ti, kron_preprojective(k, n + 2)).has_value());
    }
}

TEST_CASE("tau on morphisms is functorial") {
    auto k = kronecker();
    auto r = kron_regular(k, 2, 0), r1 = kron_regular(k, 1, 0);
    HomSpace h = hom_space(r, r1);
    REQUIRE(h.dim() > 0);
    auto tr = tau(r).module, tr1 = tau(r1).module;
    for (auto& f : h.basis) {
        Morphism tf = tau_morphism(f, tr, tr1);
        tf.validate();
        CHECK_FALSE(tf.is_zero());
    }
    HomSpace e = hom_space(r, r);
    for (auto& f : e.basis)
        for (auto& g : e.basis) {
            Morphism lhs = tau_morphism(compose(g, f), tr, tr);
            Morphism rhs = compose(tau_morphism(g, tr, tr), tau_morphism(f, tr, tr));
            CHECK(lhs.total() == rhs.total());
        }
    CHECK(tau_morphism(identity_morphism(r), tr, tr).total() == Matrix::identity(k->field(), 4));
}

namespace {
// x in rad iff x*y nilpotent for all y in the algebra (F_2 enumeration oracle).
Subspace brute_radical_f2(const std::vector<Matrix>& basis) {
    const std::size_t d = basis.size(), n = basis[0].rows();
    Field f = basis[0].field();
    std::vector<Matrix> elems;
    for (std::uint64_t m = 0; m < (1ull << d); ++m) {
        Matrix x(f, n, n);
        for (std::size_t i = 0; i < d; ++i)
            if (m >> i & 1) x = x + basis[i];
        elems.push_back(x);
    }
    std::vector<Matrix> rows;
    for (std::uint64_t m = 0; m < (1ull << d); ++m) {
        bool ok = true;
        for (const auto& y : elems)
            if (!(elems[m] * y).pow(n).is_zero()) { ok = false; break; }
        if (ok) {
            Matrix c(f, 1, d);
            for (std::size_t i = 0; i < d; ++i) c.set_int(0, i, m >> i & 1);
            rows.push_back(c);
        }
    }
    return Subspace::span(Matrix::vstack(f, d, rows));
}
}  // namespace

TEST_CASE("property: endomorphism radical matches nilpotency oracle over F2 (200 cases)") {
    std::mt19937 rng(5);
    auto k = kronecker();
    std::vector<ModPtr> pool = {kron_regular(k, 1, 0), kron_regular(k, 1, 1), kron_regular(k, 2, 0), kron_regular(k, 1, -1),
                                kron_preprojective(k, 2), kron_preinjective(k, 2), simple_module(k, 0), simple_module(k, 1)};
    int cases = 0;
    while (cases < 200) {
        std::size_t parts = 1 + rng() % 3;
        std::vector<ModPtr> ms;
        for (std::size_t i = 0; i < parts; ++i) ms.push_back(pool[rng() % pool.size()]);
        auto m = direct_sum(ms).mod;
        HomSpace e = hom_space(m, m);
        if (e.dim() > 12) continue;
        std::vector<Matrix> mats;
        for (auto& b : e.basis) mats.push_back(b.total());
        CHECK(matrix_algebra_radical(mats) == brute_radical_f2(mats));
        ++cases;
    }
}

TEST_CASE("radical over Q uses the trace form") {
    auto d = dual_numbers(Field::rationals());
    auto reg = regular_module(d).mod;
    HomSpace e = hom_space(reg, reg);
    CHECK(e.dim() == 2);
    CHECK(end_radical(e).dim() == 1);
}

TEST_CASE("property: Hom(A, M) has dimension dim M (200 cases)") {
    std::mt19937 rng(9);
    auto k = kronecker();
    auto reg = regular_module(k).mod;
    for (int t = 0; t < 200; ++t) {
        std::size_t d1 = rng() % 3, d2 = rng() % 3;
        Matrix x(k->field(), d2, d1), y(k->field(), d2, d1);
        for (std::size_t i = 0; i < d1 * d2; ++i) {
            x.set_int(i / d1, i % d1, rng() % 2);
            y.set_int(i / d1, i % d1, rng() % 2);
        }
        auto m = make_module(k, "M", {d1, d2}, {x, y});
        CHECK(hom_space(reg, m).dim() == m->total_dim());
        std::size_t total = 0;
        for (auto& s : decompose(m)) {
            total += s.mod->total_dim() * s.multiplicity;
            HomSpace e = hom_space(s.mod, s.mod);
            CHECK(e.dim() - end_radical(e).dim() == 1);
        }
        CHECK(total == m->total_dim());
    }
}

TEST_CASE("minimal presentation is exact and minimal") {
    auto k = kronecker();
    for (auto m : {kron_regular(k, 2, 1), kron_preinjective(k, 3), simple_module(k, 0)}) {
        Presentation p = minimal_presentation(m);
        CHECK(image_subspace(p.pi).dim() == m->total_dim());
        CHECK(image_subspace(p.d) == kernel_subspace(p.pi));
        std::size_t top = m->total_dim() - radical_submodule(m).dim();
        CHECK(p.p0.verts.size() == top);
    }
}
