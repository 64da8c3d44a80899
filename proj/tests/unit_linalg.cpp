#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace torsidl;
using testutil::mat;

TEST_CASE("rref basic cases") {
    Field q = Field::rationals();
    auto r = rref(Matrix::identity(q, 2));
    CHECK(r.r == Matrix::identity(q, 2));
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r.rank == 2);
    auto z = rref(Matrix(q, 3, 3));
    CHECK(z.rank == 0);
    CHECK(z.pivots.empty());
    CHECK(z.r.is_zero());
    auto h = rref(mat(q, {{1, 2}, {2, 4}}, 2));
    CHECK(h.r == mat(q, {{1, 2}, {0, 0}}, 2));
    CHECK(h.rank == 1);
}

TEST_CASE("kernel examples") {
    Field f2 = Field::prime(2);
    CHECK(kernel(Matrix::identity(f2, 3)).dim() == 0);
    CHECK(kernel(Matrix(f2, 3, 3)).dim() == 3);
    Subspace k = kernel(mat(f2, {{1, 1}}, 2));
    // Brute-force oracle over all four vectors.
    std::size_t count = 0;
    for (long a = 0; a < 2; ++a)
        for (long b = 0; b < 2; ++b) {
            Matrix v = mat(f2, {{a, b}}, 2);
            bool in = (a + b) % 2 == 0;
            CHECK(k.contains(v) == in);
            count += in;
        }
    CHECK(count == 2);
    CHECK(k == Subspace::span(mat(f2, {{1, 1}}, 2)));
}

TEST_CASE("sum and intersect examples") {
    Field q = Field::rationals();
    Subspace v = Subspace::full(q, 2), z = Subspace::zero(q, 2);
    auto [s1, i1] = sum_and_intersect(v, z);
    CHECK(s1 == v);
    CHECK(i1 == z);
    auto [s2, i2] = sum_and_intersect(v, v);
    CHECK(s2 == v);
    CHECK(i2 == v);
    auto [s3, i3] = sum_and_intersect(Subspace::span(mat(q, {{1, 0}}, 2)), Subspace::span(mat(q, {{1, 1}}, 2)));
    CHECK(s3 == v);
    CHECK(i3 == z);
    CHECK_THROWS_AS(sum_and_intersect(v, Subspace::full(q, 3)), Error);
}

TEST_CASE("containment examples") {
    Field q = Field::rationals();
    CHECK(Subspace::zero(q, 2).contains(Matrix(q, 1, 2)));
    Subspace u = Subspace::span(mat(q, {{1, 2}}, 2));
    CHECK(subspace_leq(u, u));
    CHECK(u.contains(mat(q, {{2, 4}}, 2)));
    CHECK_FALSE(u.contains(mat(q, {{2, 3}}, 2)));
}

namespace {
Matrix random_matrix(Field f, std::size_t r, std::size_t c, std::mt19937& rng) {
    std::uniform_int_distribution<long> d(-2, 2);
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set_int(i, j, d(rng));
    return m;
}

// Brute-force dimension of a span over F_p by enumerating all combinations.
std::size_t brute_dim_f2(const Matrix& rows) {
    std::set<std::vector<std::uint32_t>> seen;
    const std::size_t r = rows.rows(), c = rows.cols();
    for (std::uint64_t mask = 0; mask < (1ull << r); ++mask) {
        std::vector<std::uint32_t> v(c, 0);
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1)
                for (std::size_t j = 0; j < c; ++j) v[j] ^= rows.fp_data()[i * c + j];
        seen.insert(v);
    }
    std::size_t d = 0;
    while ((1ull << d) < seen.size()) ++d;
    return d;
}
}  // namespace

TEST_CASE("property: dimension formula and canonicality (200 cases per field)") {
    std::mt19937 rng(7);
    for (Field f : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
        for (int t = 0; t < 200; ++t) {
            std::size_t n = 1 + rng() % 6;
            Subspace u = Subspace::span(random_matrix(f, rng() % 5, n, rng));
            Subspace w = Subspace::span(random_matrix(f, rng() % 5, n, rng));
            auto [s, i] = sum_and_intersect(u, w);
            CHECK(s.dim() + i.dim() == u.dim() + w.dim());
            CHECK(subspace_leq(i, u));
            CHECK(subspace_leq(i, w));
            CHECK(subspace_leq(u, s));
            CHECK(subspace_leq(w, s));
            Matrix m = random_matrix(f, 1 + rng() % 4, n, rng);
            auto r1 = rref(m);
            CHECK(rref(r1.r).r == r1.r);
            // The same span from a shuffled generating set has the same stored basis.
            Matrix shuffled = Matrix::vstack(m.row(m.rows() - 1), m);
            CHECK(Subspace::span(shuffled).basis() == Subspace::span(m).basis());
            Subspace k = kernel(m);
            CHECK(k.dim() == n - r1.rank);
            for (std::size_t j = 0; j < k.dim(); ++j) CHECK((m * k.vector(j).transpose()).is_zero());
        }
    }
}

TEST_CASE("property: F2 span dimension matches enumeration oracle (200 cases)") {
    std::mt19937 rng(11);
    Field f = Field::prime(2);
    for (int t = 0; t < 200; ++t) {
        Matrix m = random_matrix(f, 1 + rng() % 5, 1 + rng() % 5, rng);
        CHECK(Subspace::span(m).dim() == brute_dim_f2(m));
    }
}

TEST_CASE("solve and inverse") {
    Field q = Field::rationals();
    Matrix a = mat(q, {{2, 1}, {1, 1}}, 2);
    auto inv = a.inverse();
    REQUIRE(inv);
    CHECK(a * *inv == Matrix::identity(q, 2));
    auto x = solve(a, mat(q, {{3}, {2}}, 1));
    REQUIRE(x);
    CHECK(a * *x == mat(q, {{3}, {2}}, 1));
    CHECK_FALSE(solve(mat(q, {{1, 1}, {1, 1}}, 2), mat(q, {{1}, {0}}, 1)));
}
