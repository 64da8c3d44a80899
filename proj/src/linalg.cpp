#include "torsidl/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace torsidl {

namespace {

struct FpOps {
    std::uint32_t p;
    using T = std::uint32_t;
    T zero() const { return 0; }
    T one() const { return 1; }
    bool is_zero(T a) const { return a == 0; }
    T add(T a, T b) const { std::uint64_t s = std::uint64_t(a) + b; return T(s >= p ? s - p : s); }
    T sub(T a, T b) const { return a >= b ? a - b : T(std::uint64_t(a) + p - b); }
    T mul(T a, T b) const { return T(std::uint64_t(a) * b % p); }
    T neg(T a) const { return a == 0 ? 0 : p - a; }
    T inv(T a) const { return fp_inv(a, p); }
};

struct QOps {
    using T = Scalar;
    T zero() const { return 0; }
    T one() const { return 1; }
    bool is_zero(const T& a) const { return sgn(a) == 0; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    T inv(const T& a) const { return 1 / a; }
};

template <class Ops, class T>
void rref_impl(const Ops& ops, std::vector<T>& a, std::size_t r, std::size_t c,
               std::vector<std::size_t>& piv) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t sel = r;
        for (std::size_t i = row; i < r; ++i)
            if (!ops.is_zero(a[i * c + col])) { sel = i; break; }
        if (sel == r) continue;
        if (sel != row)
            for (std::size_t j = 0; j < c; ++j) std::swap(a[sel * c + j], a[row * c + j]);
        T iv = ops.inv(a[row * c + col]);
        for (std::size_t j = col; j < c; ++j) a[row * c + j] = ops.mul(a[row * c + j], iv);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || ops.is_zero(a[i * c + col])) continue;
            T fac = a[i * c + col];
            for (std::size_t j = col; j < c; ++j) {
                if (ops.is_zero(a[row * c + j])) continue;
                a[i * c + j] = ops.sub(a[i * c + j], ops.mul(fac, a[row * c + j]));
            }
        }
        piv.push_back(col);
        ++row;
    }
}

void check_same(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw Error("field mismatch");
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
    if (a == 0) throw Error("division by zero in F_p");
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += p;
    return std::uint32_t(t);
}

Field Field::prime(std::uint32_t p) {
    if (!is_prime_u32(p) || p >= (1u << 31)) throw Error("field characteristic must be a prime below 2^31");
    return Field{Kind::Prime, p};
}

std::string Field::str() const {
    return kind == Kind::Rationals ? std::string("Q") : "F" + std::to_string(p);
}

std::uint32_t Field::to_fp(const Scalar& s) const {
    mpz_class num = s.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = s.get_den() % p;
    if (den == 0) throw Error("denominator divisible by the characteristic");
    std::uint32_t n = std::uint32_t(num.get_ui()), d = std::uint32_t(den.get_ui());
    return std::uint32_t(std::uint64_t(n) * fp_inv(d, p) % p);
}

Scalar Field::reduce(const Scalar& s) const {
    if (kind == Kind::Rationals) return s;
    return Scalar(to_fp(s));
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols) : f_(f), r_(rows), c_(cols) {
    if (f.is_prime()) fp_.assign(rows * cols, 0);
    else q_.assign(rows * cols, Scalar(0));
}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set_int(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<long>>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error("ragged matrix literal");
        for (std::size_t j = 0; j < cols; ++j) m.set_int(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::row_vector(Field f, const std::vector<Scalar>& v) {
    Matrix m(f, 1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) m.set(0, j, v[j]);
    return m;
}

Matrix Matrix::unit_row(Field f, std::size_t n, std::size_t i) {
    Matrix m(f, 1, n);
    m.set_int(0, i, 1);
    return m;
}

Scalar Matrix::get(std::size_t i, std::size_t j) const {
    if (f_.is_prime()) return Scalar(fp_[i * c_ + j]);
    return q_[i * c_ + j];
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
    if (f_.is_prime()) fp_[i * c_ + j] = f_.to_fp(v);
    else q_[i * c_ + j] = v;
}

void Matrix::set_int(std::size_t i, std::size_t j, long v) {
    if (f_.is_prime()) {
        long m = v % long(f_.p);
        if (m < 0) m += f_.p;
        fp_[i * c_ + j] = std::uint32_t(m);
    } else {
        q_[i * c_ + j] = v;
    }
}

bool Matrix::is_zero_at(std::size_t i, std::size_t j) const {
    return f_.is_prime() ? fp_[i * c_ + j] == 0 : sgn(q_[i * c_ + j]) == 0;
}

bool Matrix::is_one_at(std::size_t i, std::size_t j) const {
    return f_.is_prime() ? fp_[i * c_ + j] == 1 : q_[i * c_ + j] == 1;
}

bool Matrix::is_zero() const {
    if (f_.is_prime()) return std::all_of(fp_.begin(), fp_.end(), [](std::uint32_t x) { return x == 0; });
    return std::all_of(q_.begin(), q_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

bool Matrix::operator==(const Matrix& o) const {
    return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && fp_ == o.fp_ && q_ == o.q_;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_same(*this, o);
    if (c_ != o.r_) throw Error("matrix product shape mismatch");
    Matrix out(f_, r_, o.c_);
    if (f_.is_prime()) {
        const std::uint64_t p = f_.p;
        std::vector<std::uint64_t> acc(o.c_);
        for (std::size_t i = 0; i < r_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < c_; ++k) {
                std::uint64_t a = fp_[i * c_ + k];
                if (!a) continue;
                const std::uint32_t* orow = &o.fp_[k * o.c_];
                for (std::size_t j = 0; j < o.c_; ++j) acc[j] = (acc[j] + a * orow[j]) % p;
            }
            for (std::size_t j = 0; j < o.c_; ++j) out.fp_[i * o.c_ + j] = std::uint32_t(acc[j]);
        }
    } else {
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const Scalar& a = q_[i * c_ + k];
                if (sgn(a) == 0) continue;
                for (std::size_t j = 0; j < o.c_; ++j) out.q_[i * o.c_ + j] += a * o.q_[k * o.c_ + j];
            }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same(*this, o);
    if (r_ != o.r_ || c_ != o.c_) throw Error("matrix sum shape mismatch");
    Matrix out = *this;
    if (f_.is_prime()) {
        FpOps ops{f_.p};
        for (std::size_t k = 0; k < fp_.size(); ++k) out.fp_[k] = ops.add(fp_[k], o.fp_[k]);
    } else {
        for (std::size_t k = 0; k < q_.size(); ++k) out.q_[k] += o.q_[k];
    }
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same(*this, o);
    if (r_ != o.r_ || c_ != o.c_) throw Error("matrix difference shape mismatch");
    Matrix out = *this;
    if (f_.is_prime()) {
        FpOps ops{f_.p};
        for (std::size_t k = 0; k < fp_.size(); ++k) out.fp_[k] = ops.sub(fp_[k], o.fp_[k]);
    } else {
        for (std::size_t k = 0; k < q_.size(); ++k) out.q_[k] -= o.q_[k];
    }
    return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix out = *this;
    if (f_.is_prime()) {
        std::uint64_t v = f_.to_fp(s);
        for (auto& x : out.fp_) x = std::uint32_t(x * v % f_.p);
    } else {
        for (auto& x : out.q_) x *= s;
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) {
            if (f_.is_prime()) out.fp_[j * r_ + i] = fp_[i * c_ + j];
            else out.q_[j * r_ + i] = q_[i * c_ + j];
        }
    return out;
}

Matrix Matrix::pow(std::size_t e) const {
    if (r_ != c_) throw Error("power of a non-square matrix");
    Matrix result = identity(f_, r_), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > r_ || c0 + nc > c_) throw Error("block out of range");
    Matrix out(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            if (f_.is_prime()) out.fp_[i * nc + j] = fp_[(r0 + i) * c_ + c0 + j];
            else out.q_[i * nc + j] = q_[(r0 + i) * c_ + c0 + j];
        }
    return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    check_same(*this, b);
    if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw Error("set_block out of range");
    for (std::size_t i = 0; i < b.r_; ++i)
        for (std::size_t j = 0; j < b.c_; ++j) {
            if (f_.is_prime()) fp_[(r0 + i) * c_ + c0 + j] = b.fp_[i * b.c_ + j];
            else q_[(r0 + i) * c_ + c0 + j] = b.q_[i * b.c_ + j];
        }
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix out(f_, idx.size(), c_);
    for (std::size_t i = 0; i < idx.size(); ++i) out.set_block(i, 0, row(idx[i]));
    return out;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    return transpose().select_rows(idx).transpose();
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    if (a.c_ != b.c_) throw Error("vstack column mismatch");
    Matrix out(a.f_, a.r_ + b.r_, a.c_);
    out.set_block(0, 0, a);
    out.set_block(a.r_, 0, b);
    return out;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    if (a.r_ != b.r_) throw Error("hstack row mismatch");
    Matrix out(a.f_, a.r_, a.c_ + b.c_);
    out.set_block(0, 0, a);
    out.set_block(0, a.c_, b);
    return out;
}

Matrix Matrix::vstack(Field f, std::size_t cols, const std::vector<Matrix>& parts) {
    std::size_t total = 0;
    for (const auto& p : parts) {
        if (p.c_ != cols) throw Error("vstack column mismatch");
        total += p.r_;
    }
    Matrix out(f, total, cols);
    std::size_t at = 0;
    for (const auto& p : parts) {
        out.set_block(at, 0, p);
        at += p.r_;
    }
    return out;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix out(a.f_, a.r_ * b.r_, a.c_ * b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t j = 0; j < a.c_; ++j) {
            if (a.is_zero_at(i, j)) continue;
            out.set_block(i * b.r_, j * b.c_, b.scaled(a.get(i, j)));
        }
    return out;
}

Matrix Matrix::flatten() const {
    Matrix out(f_, 1, r_ * c_);
    out.fp_ = fp_;
    out.q_ = q_;
    return out;
}

Matrix Matrix::reshaped(std::size_t rows, std::size_t cols) const {
    if (rows * cols != r_ * c_) throw Error("reshape size mismatch");
    Matrix out(f_, rows, cols);
    out.fp_ = fp_;
    out.q_ = q_;
    return out;
}

Matrix Matrix::unflatten(const Matrix& v, std::size_t rows, std::size_t cols, std::size_t offset) {
    if (v.rows() != 1 || offset + rows * cols > v.cols()) throw Error("unflatten size mismatch");
    return v.block(0, offset, 1, rows * cols).reshaped(rows, cols);
}

std::size_t Matrix::rank() const { return rref(*this).rank; }

bool Matrix::is_invertible() const { return r_ == c_ && rank() == r_; }

std::optional<Matrix> Matrix::inverse() const {
    if (r_ != c_) return std::nullopt;
    Matrix aug = hstack(*this, identity(f_, r_));
    RrefResult rr = rref(aug);
    if (rr.rank < r_ || (r_ > 0 && rr.pivots[r_ - 1] >= r_)) return std::nullopt;
    return rr.r.block(0, r_, r_, r_);
}

Scalar Matrix::trace() const {
    Scalar t = 0;
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += get(i, i);
    return f_.reduce(t);
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? "," : "") << get(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

RrefResult rref(const Matrix& m) {
    RrefResult out;
    out.r = m;
    if (m.field().is_prime()) rref_impl(FpOps{m.field().p}, out.r.fp_data(), m.rows(), m.cols(), out.pivots);
    else rref_impl(QOps{}, out.r.q_data(), m.rows(), m.cols(), out.pivots);
    out.rank = out.pivots.size();
    return out;
}

Subspace Subspace::zero(Field f, std::size_t n) {
    Subspace s;
    s.n_ = n;
    s.basis_ = Matrix(f, 0, n);
    return s;
}

Subspace Subspace::full(Field f, std::size_t n) { return span(Matrix::identity(f, n)); }

Subspace Subspace::span(const Matrix& rows) {
    RrefResult rr = rref(rows);
    Subspace s;
    s.n_ = rows.cols();
    s.basis_ = rr.r.block(0, 0, rr.rank, rows.cols());
    s.piv_ = rr.pivots;
    return s;
}

Matrix Subspace::reduce(const Matrix& v) const {
    if (v.rows() != 1 || v.cols() != n_) throw Error("vector dimension mismatch");
    Matrix r = v;
    for (std::size_t k = 0; k < piv_.size(); ++k) {
        if (r.is_zero_at(0, piv_[k])) continue;
        r = r - basis_.row(k).scaled(r.get(0, piv_[k]));
    }
    return r;
}

bool Subspace::contains(const Matrix& v) const { return reduce(v).is_zero(); }

bool Subspace::leq(const Subspace& o) const {
    if (n_ != o.n_) throw Error("ambient dimension mismatch");
    if (dim() > o.dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!o.contains(basis_.row(i))) return false;
    return true;
}

bool Subspace::operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

bool Subspace::operator<(const Subspace& o) const { return key() < o.key(); }

Matrix Subspace::coords(const Matrix& v) const {
    Matrix c(field(), 1, dim());
    for (std::size_t k = 0; k < piv_.size(); ++k) c.set(0, k, v.get(0, piv_[k]));
    return c;
}

std::vector<std::size_t> Subspace::free_columns() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_; ++j) {
        if (k < piv_.size() && piv_[k] == j) { ++k; continue; }
        out.push_back(j);
    }
    return out;
}

std::string Subspace::key() const {
    std::ostringstream os;
    os << n_ << ":" << basis_.str();
    return os.str();
}

Subspace kernel(const Matrix& m) {
    RrefResult rr = rref(m);
    const Field f = m.field();
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : rr.pivots) is_piv[p] = true;
    std::vector<Matrix> vecs;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_piv[j]) continue;
        Matrix v(f, 1, m.cols());
        v.set_int(0, j, 1);
        for (std::size_t k = 0; k < rr.rank; ++k) {
            if (rr.r.is_zero_at(k, j)) continue;
            v.set(0, rr.pivots[k], -rr.r.get(k, j));
        }
        vecs.push_back(v);
    }
    return Subspace::span(Matrix::vstack(f, m.cols(), vecs));
}

Subspace left_kernel(const Matrix& m) { return kernel(m.transpose()); }

Subspace column_space(const Matrix& m) { return Subspace::span(m.transpose()); }

std::pair<Subspace, Subspace> sum_and_intersect(const Subspace& u, const Subspace& w) {
    if (u.ambient() != w.ambient()) throw Error("ambient dimension mismatch");
    const Field f = u.field();
    const std::size_t n = u.ambient();
    // Zassenhaus: rows [u | u] over [w | 0]; the left half spans u+w, rows with zero left half give u∩w.
    Matrix z(f, u.dim() + w.dim(), 2 * n);
    z.set_block(0, 0, u.basis());
    z.set_block(0, n, u.basis());
    z.set_block(u.dim(), 0, w.basis());
    RrefResult rr = rref(z);
    std::vector<std::size_t> sum_rows, int_rows;
    for (std::size_t k = 0; k < rr.rank; ++k) {
        if (rr.pivots[k] < n) sum_rows.push_back(k);
        else int_rows.push_back(k);
    }
    Matrix s = rr.r.select_rows(sum_rows).block(0, 0, sum_rows.size(), n);
    Matrix i = rr.r.select_rows(int_rows).block(0, n, int_rows.size(), n);
    return {Subspace::span(s), Subspace::span(i)};
}

Subspace sum(const Subspace& u, const Subspace& w) {
    if (u.ambient() != w.ambient()) throw Error("ambient dimension mismatch");
    return Subspace::span(Matrix::vstack(u.basis(), w.basis()));
}

Subspace intersect(const Subspace& u, const Subspace& w) { return sum_and_intersect(u, w).second; }

bool contains(const Subspace& u, const Matrix& v) {
    if (v.cols() != u.ambient()) throw Error("vector dimension mismatch");
    return u.contains(v);
}

bool subspace_leq(const Subspace& u, const Subspace& w) { return u.leq(w); }

Subspace image_of(const Matrix& m, const Subspace& u) {
    if (m.cols() != u.ambient()) throw Error("image dimension mismatch");
    return Subspace::span((m * u.basis().transpose()).transpose());
}

Subspace preimage_of(const Matrix& m, const Subspace& u) {
    if (m.rows() != u.ambient()) throw Error("preimage dimension mismatch");
    // v with m v in u  <=>  Q m v = 0 where Q projects onto the free coordinates after reduction.
    const Field f = m.field();
    std::vector<std::size_t> freec = u.free_columns();
    Matrix reduced(f, m.cols(), m.rows());
    Matrix mt = m.transpose();
    for (std::size_t i = 0; i < m.cols(); ++i) reduced.set_block(i, 0, u.reduce(mt.row(i)));
    return kernel(reduced.select_cols(freec).transpose());
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw Error("solve shape mismatch");
    const Field f = a.field();
    Matrix aug = Matrix::hstack(a, b);
    RrefResult rr = rref(aug);
    Matrix x(f, a.cols(), b.cols());
    for (std::size_t k = 0; k < rr.rank; ++k) {
        if (rr.pivots[k] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x.set(rr.pivots[k], j, rr.r.get(k, a.cols() + j));
    }
    return x;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
    auto x = solve(a.transpose(), b.transpose());
    if (!x) return std::nullopt;
    return x->transpose();
}

}  // namespace torsidl
