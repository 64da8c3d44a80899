#pragma once

#include "torsidl/module.hpp"

namespace testutil {

using namespace torsidl;

inline QuiverPresentation quiver(Field f, std::vector<std::string> verts,
                                 std::vector<std::tuple<std::string, std::string, std::string>> arrows) {
    QuiverPresentation q;
    q.field = f;
    q.vertices = verts;
    for (auto& [s, t, l] : arrows) q.arrows.push_back(Arrow{q.vertex_index(s), q.vertex_index(t), l});
    return q;
}

inline AlgPtr a2(Field f = Field::prime(2)) { return build_algebra(quiver(f, {"1", "2"}, {{"1", "2", "a"}})); }

inline AlgPtr a3(Field f = Field::prime(2)) {
    return build_algebra(quiver(f, {"1", "2", "3"}, {{"1", "2", "a"}, {"2", "3", "b"}}));
}

inline AlgPtr kronecker(Field f = Field::prime(2)) {
    return build_algebra(quiver(f, {"1", "2"}, {{"1", "2", "a"}, {"1", "2", "b"}}));
}

inline AlgPtr dual_numbers(Field f = Field::prime(2)) {
    auto q = quiver(f, {"1"}, {{"1", "1", "x"}});
    q.relations.push_back({RelationTerm{1, {"x", "x"}}});
    return build_algebra(q);
}

inline Matrix mat(Field f, std::vector<std::vector<long>> rows, std::size_t cols) {
    return Matrix::from_rows(f, rows, cols);
}

// Kronecker modules: P_n dims (n-1, n), I_n dims (n, n-1), R_n^lambda dims (n, n); lambda < 0 means infinity.
inline ModPtr kron_preprojective(const AlgPtr& k, std::size_t n) {
    Field f = k->field();
    Matrix a(f, n, n - 1), b(f, n, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a.set_int(i, i, 1);
        b.set_int(i + 1, i, 1);
    }
    return make_module(k, "P" + std::to_string(n), {n - 1, n}, {a, b});
}

inline ModPtr kron_preinjective(const AlgPtr& k, std::size_t n) {
    Field f = k->field();
    Matrix a(f, n - 1, n), b(f, n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a.set_int(i, i, 1);
        b.set_int(i, i + 1, 1);
    }
    return make_module(k, "I" + std::to_string(n), {n, n - 1}, {a, b});
}

inline ModPtr kron_regular(const AlgPtr& k, std::size_t n, long lambda) {
    Field f = k->field();
    Matrix id = Matrix::identity(f, n), j(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (lambda >= 0) j.set_int(i, i, lambda);
        if (i + 1 < n) j.set_int(i, i + 1, 1);
    }
    std::string nm = "R" + std::to_string(n) + "_" + (lambda < 0 ? std::string("inf") : std::to_string(lambda));
    if (lambda < 0) return make_module(k, nm, {n, n}, {j, id});
    return make_module(k, nm, {n, n}, {id, j});
}

}  // namespace testutil

#include "torsidl/window.hpp"

namespace testutil {

inline WinPtr a2_window(Field f = Field::prime(2)) {
    auto a = a2(f);
    return Window::build(a, {rename(simple_module(a, 0), "S1"), rename(simple_module(a, 1), "S2"), rename(projective(a, 0), "P1")}, true);
}

inline WinPtr a3_window(Field f = Field::prime(2)) {
    auto a = a3(f);
    std::vector<ModPtr> objs;
    // Interval modules [i, j] for 1 <= i <= j <= 3.
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
            std::vector<std::size_t> dims(3, 0);
            for (std::size_t k = i; k <= j; ++k) dims[k] = 1;
            std::vector<Matrix> maps;
            for (std::size_t k = 0; k < 2; ++k) {
                Matrix m(f, dims[k + 1], dims[k]);
                if (dims[k] && dims[k + 1]) m.set_int(0, 0, 1);
                maps.push_back(m);
            }
            objs.push_back(make_module(a, "M" + std::to_string(i + 1) + std::to_string(j + 1), dims, maps));
        }
    return Window::build(a, objs, true);
}

inline WinPtr dual_window(Field f = Field::prime(2)) {
    auto d = dual_numbers(f);
    return Window::build(d, {rename(simple_module(d, 0), "k"), rename(projective(d, 0), "A")}, true);
}

inline WinPtr kron_window(Field f = Field::prime(2)) {
    auto k = kronecker(f);
    std::vector<ModPtr> objs;
    for (std::size_t n = 1; n <= 4; ++n) objs.push_back(kron_preprojective(k, n));
    for (std::size_t n = 1; n <= 4; ++n)
        for (long lam : {0L, 1L, -1L}) objs.push_back(kron_regular(k, n, lam));
    for (std::size_t n = 1; n <= 4; ++n) objs.push_back(kron_preinjective(k, n));
    return Window::build(k, objs, false);
}

}  // namespace testutil
