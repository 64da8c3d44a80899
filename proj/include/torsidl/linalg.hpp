#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace torsidl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Scalar = mpq_class;

struct Field {
    enum class Kind { Rationals, Prime };
    Kind kind = Kind::Prime;
    std::uint32_t p = 2;

    static Field rationals() { return Field{Kind::Rationals, 0}; }
    static Field prime(std::uint32_t p);

    bool is_prime() const { return kind == Kind::Prime; }
    std::string str() const;
    bool operator==(const Field& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    // Canonical representative of s; for F_p an integer in [0, p).
    Scalar reduce(const Scalar& s) const;
    std::uint32_t to_fp(const Scalar& s) const;
};

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p);
bool is_prime_u32(std::uint32_t n);

// Dense row-major matrix over a runtime field.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols);

    static Matrix identity(Field f, std::size_t n);
    static Matrix from_rows(Field f, const std::vector<std::vector<long>>& rows, std::size_t cols);
    static Matrix row_vector(Field f, const std::vector<Scalar>& v);
    static Matrix unit_row(Field f, std::size_t n, std::size_t i);

    const Field& field() const { return f_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Scalar get(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Scalar& v);
    void set_int(std::size_t i, std::size_t j, long v);
    bool is_zero_at(std::size_t i, std::size_t j) const;
    bool is_one_at(std::size_t i, std::size_t j) const;

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;
    Matrix transpose() const;
    Matrix pow(std::size_t e) const;

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix row(std::size_t i) const { return block(i, 0, 1, c_); }
    Matrix col(std::size_t j) const { return block(0, j, r_, 1); }
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;

    static Matrix vstack(const Matrix& a, const Matrix& b);
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(Field f, std::size_t cols, const std::vector<Matrix>& parts);
    static Matrix kron(const Matrix& a, const Matrix& b);
    // Row-major flattening to a 1 x (rows*cols) matrix, and back.
    Matrix flatten() const;
    Matrix reshaped(std::size_t rows, std::size_t cols) const;
    static Matrix unflatten(const Matrix& v, std::size_t rows, std::size_t cols, std::size_t offset = 0);

    std::size_t rank() const;
    bool is_invertible() const;
    std::optional<Matrix> inverse() const;
    Scalar trace() const;

    // Raw storage for the field-specific kernels.
    const std::vector<std::uint32_t>& fp_data() const { return fp_; }
    std::vector<std::uint32_t>& fp_data() { return fp_; }
    const std::vector<Scalar>& q_data() const { return q_; }
    std::vector<Scalar>& q_data() { return q_; }

    std::string str() const;

private:
    Field f_{};
    std::size_t r_ = 0, c_ = 0;
    std::vector<std::uint32_t> fp_;
    std::vector<Scalar> q_;
};

struct RrefResult {
    Matrix r;                          // full reduced form, same shape as input
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
    std::size_t rank = 0;
};

RrefResult rref(const Matrix& m);

// Row space of a matrix, stored as canonical RREF rows.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(Field f, std::size_t n);
    static Subspace full(Field f, std::size_t n);
    static Subspace span(const Matrix& rows);

    const Field& field() const { return basis_.field(); }
    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }
    Matrix vector(std::size_t i) const { return basis_.row(i); }

    bool contains(const Matrix& v) const;
    bool leq(const Subspace& o) const;
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == n_; }
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const;

    // Coordinates (1 x dim) of a member vector; read off at the pivot columns.
    Matrix coords(const Matrix& v) const;
    // Residue of v after clearing pivot columns; zero iff v is a member.
    Matrix reduce(const Matrix& v) const;
    // Non-pivot columns: a basis of the quotient ambient/this.
    std::vector<std::size_t> free_columns() const;

    std::string key() const;

private:
    std::size_t n_ = 0;
    Matrix basis_;
    std::vector<std::size_t> piv_;
};

// {v : m v^T = 0}, vectors as rows.
Subspace kernel(const Matrix& m);
// Left kernel {v : v m = 0}.
Subspace left_kernel(const Matrix& m);
// Column space of m, as row vectors.
Subspace column_space(const Matrix& m);
std::pair<Subspace, Subspace> sum_and_intersect(const Subspace& u, const Subspace& w);
Subspace sum(const Subspace& u, const Subspace& w);
Subspace intersect(const Subspace& u, const Subspace& w);
bool contains(const Subspace& u, const Matrix& v);
bool subspace_leq(const Subspace& u, const Subspace& w);
// Image {m v : v in u} for a column-acting matrix m.
Subspace image_of(const Matrix& m, const Subspace& u);
// Preimage {v : m v in u}.
Subspace preimage_of(const Matrix& m, const Subspace& u);
// A particular solution x of a x = b (b a column or matrix of columns).
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
// A particular solution x of x a = b (row form).
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

}  // namespace torsidl
