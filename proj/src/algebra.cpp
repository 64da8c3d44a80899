#include "torsidl/algebra.hpp"

#include <algorithm>
#include <set>

namespace torsidl {

namespace {

constexpr std::size_t kMaxPaths = 20000;

std::vector<std::size_t> path_key(const Path& p) {
    std::vector<std::size_t> k{p.start};
    k.insert(k.end(), p.arrows.begin(), p.arrows.end());
    return k;
}

Path concat(const Path& first, const Path& second) {
    Path out;
    out.start = first.start;
    out.end = second.end;
    out.arrows = first.arrows;
    out.arrows.insert(out.arrows.end(), second.arrows.begin(), second.arrows.end());
    return out;
}

struct ParsedRelation {
    std::size_t start = 0, end = 0;
    std::vector<std::pair<Scalar, Path>> terms;
};

}  // namespace

bool Path::operator<(const Path& o) const {
    if (length() != o.length()) return length() < o.length();
    if (start != o.start) return start < o.start;
    if (arrows != o.arrows) return arrows < o.arrows;
    return end < o.end;
}

std::size_t QuiverPresentation::vertex_index(const std::string& v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == v) return i;
    throw Error("unknown vertex '" + v + "'");
}

std::size_t QuiverPresentation::arrow_index(const std::string& label) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return i;
    throw Error("unknown arrow '" + label + "'");
}

QuiverPresentation QuiverPresentation::opposite() const {
    QuiverPresentation q = *this;
    for (auto& a : q.arrows) std::swap(a.src, a.dst);
    for (auto& rel : q.relations)
        for (auto& t : rel) std::reverse(t.path.begin(), t.path.end());
    return q;
}

void Algebra::build(const QuiverPresentation& q) {
    pres_ = q;
    const Field f = q.field;
    const std::size_t nv = q.vertices.size();
    {
        std::set<std::string> seen(q.vertices.begin(), q.vertices.end());
        if (seen.size() != nv) throw Error("duplicate vertex label");
        std::set<std::string> labels;
        for (const auto& a : q.arrows) {
            if (a.src >= nv || a.dst >= nv) throw Error("arrow '" + a.label + "' has an unknown endpoint");
            if (!labels.insert(a.label).second) throw Error("duplicate arrow label '" + a.label + "'");
        }
    }
    std::vector<ParsedRelation> rels;
    for (const auto& rel : q.relations) {
        ParsedRelation pr;
        bool first = true;
        for (const auto& t : rel) {
            if (t.path.size() < 2) throw Error("non-admissible relation: path of length < 2");
            Path p;
            for (std::size_t k = 0; k < t.path.size(); ++k) {
                std::size_t a = q.arrow_index(t.path[k]);
                if (k > 0 && q.arrows[p.arrows.back()].dst != q.arrows[a].src)
                    throw Error("non-admissible relation: path is not composable");
                p.arrows.push_back(a);
            }
            p.start = q.arrows[p.arrows.front()].src;
            p.end = q.arrows[p.arrows.back()].dst;
            if (first) { pr.start = p.start; pr.end = p.end; first = false; }
            else if (p.start != pr.start || p.end != pr.end)
                throw Error("non-admissible relation: terms with different endpoints");
            Scalar c = f.reduce(t.coeff);
            if (sgn(c) != 0) pr.terms.emplace_back(c, p);
        }
        if (!pr.terms.empty()) rels.push_back(pr);
    }

    // Grow paths level by level until every path of the current length lies in the truncated ideal.
    std::vector<std::vector<Path>> levels(1);
    for (std::size_t v = 0; v < nv; ++v) levels[0].push_back(Path{v, v, {}});
    std::size_t total = nv;
    std::size_t L = 0;
    Subspace ideal;
    std::vector<Path> ordered;
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (L = 1;; ++L) {
        if (L > q.path_bound) throw Error("path closure exceeds bound " + std::to_string(q.path_bound) + " (infinite-dimensional algebra?)");
        std::vector<Path> next;
        for (const auto& p : levels[L - 1])
            for (std::size_t a = 0; a < q.arrows.size(); ++a)
                if (q.arrows[a].src == p.end) {
                    Path e = p;
                    e.arrows.push_back(a);
                    e.end = q.arrows[a].dst;
                    next.push_back(e);
                }
        total += next.size();
        if (total > kMaxPaths) throw Error("path closure exceeds bound (too many paths)");
        levels.push_back(next);
        // Columns: longer paths first so that they become pivots.
        ordered.clear();
        index.clear();
        for (std::size_t l = L + 1; l-- > 0;) {
            std::vector<Path> lv = levels[l];
            std::sort(lv.begin(), lv.end());
            for (const auto& p : lv) {
                index[path_key(p)] = ordered.size();
                ordered.push_back(p);
            }
        }
        std::vector<Matrix> gens;
        for (const auto& r : rels) {
            std::size_t minlen = SIZE_MAX;
            for (const auto& t : r.terms) minlen = std::min(minlen, t.second.length());
            for (std::size_t lv = 0; lv <= L; ++lv)
                for (const auto& v : levels[lv]) {
                    if (v.end != r.start) continue;
                    for (std::size_t lu = 0; lv + lu + minlen <= L; ++lu)
                        for (const auto& u : levels[lu]) {
                            if (u.start != r.end) continue;
                            Matrix g(f, 1, ordered.size());
                            for (const auto& t : r.terms) {
                                Path full = concat(concat(v, t.second), u);
                                if (full.length() > L) continue;
                                std::size_t c = index.at(path_key(full));
                                g.set(0, c, g.get(0, c) + t.first);
                            }
                            if (!g.is_zero()) gens.push_back(g);
                        }
                }
        }
        ideal = Subspace::span(Matrix::vstack(f, ordered.size(), gens));
        bool all_in = true;
        for (const auto& p : levels[L]) {
            if (!ideal.contains(Matrix::unit_row(f, ordered.size(), index.at(path_key(p))))) { all_in = false; break; }
        }
        if (all_in) break;
    }
    l0_ = L;

    // Working space: paths of length < L0; the ideal restricted by dropping the top level.
    all_paths_.clear();
    all_index_.clear();
    for (std::size_t l = L; l-- > 0;) {
        std::vector<Path> lv = levels[l];
        std::sort(lv.begin(), lv.end());
        for (const auto& p : lv) {
            all_index_[path_key(p)] = all_paths_.size();
            all_paths_.push_back(p);
        }
    }
    const std::size_t top = levels[L].size();
    Matrix ib = ideal.basis();
    ideal_ = Subspace::span(ib.block(0, top, ib.rows(), all_paths_.size()));

    std::vector<std::size_t> freec = ideal_.free_columns();
    std::vector<std::pair<Path, std::size_t>> bp;
    for (auto c : freec) bp.emplace_back(all_paths_[c], c);
    std::sort(bp.begin(), bp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis_.clear();
    basis_cols_.clear();
    path_index_.clear();
    for (const auto& [p, c] : bp) {
        path_index_[path_key(p)] = basis_.size();
        basis_.push_back(p);
        basis_cols_.push_back(c);
    }
    const std::size_t n = basis_.size();
    idem_.assign(nv, 0);
    for (std::size_t v = 0; v < nv; ++v) idem_[v] = path_index_.at(path_key(Path{v, v, {}}));
    arrow_elt_.assign(q.arrows.size(), SIZE_MAX);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        auto it = path_index_.find(path_key(Path{q.arrows[a].src, q.arrows[a].dst, {a}}));
        if (it != path_index_.end()) arrow_elt_[a] = it->second;
    }
    mult_.assign(n * n, Matrix(f, 1, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (basis_[j].end != basis_[i].start) continue;
            mult_[i * n + j] = normal_form(concat(basis_[j], basis_[i]));
        }
}

Matrix Algebra::reduce_all(const Matrix& v) const {
    Matrix r = ideal_.reduce(v);
    Matrix out(field(), 1, basis_.size());
    for (std::size_t k = 0; k < basis_cols_.size(); ++k) out.set(0, k, r.get(0, basis_cols_[k]));
    return out;
}

Matrix Algebra::normal_form(const Path& p) const {
    if (p.length() >= l0_) return Matrix(field(), 1, dim());
    auto it = all_index_.find(path_key(p));
    if (it == all_index_.end()) throw Error("path not in the quiver");
    return reduce_all(Matrix::unit_row(field(), all_paths_.size(), it->second));
}

Matrix Algebra::multiply(const Matrix& x, const Matrix& y) const {
    const std::size_t n = dim();
    Matrix out(field(), 1, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x.is_zero_at(0, i)) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y.is_zero_at(0, j)) continue;
            out = out + product(i, j).scaled(x.get(0, i) * y.get(0, j));
        }
    }
    return out;
}

Matrix Algebra::left_mult(std::size_t i) const {
    const std::size_t n = dim();
    Matrix m(field(), n, n);
    for (std::size_t j = 0; j < n; ++j) m.set_block(0, j, product(i, j).transpose());
    return m;
}

Matrix Algebra::unit() const {
    Matrix u(field(), 1, dim());
    for (auto e : idem_) u.set_int(0, e, 1);
    return u;
}

std::vector<std::size_t> Algebra::paths_between(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < basis_.size(); ++k)
        if (basis_[k].start == i && basis_[k].end == j) out.push_back(k);
    return out;
}

AlgPtr Algebra::opposite() const {
    auto owner = owner_.lock();
    if (!owner || !op_) throw Error("opposite algebra unavailable");
    return AlgPtr(owner, op_);
}

Matrix Algebra::to_opposite(const Matrix& x) const {
    const Algebra& op = *opposite();
    Matrix out(field(), 1, op.dim());
    for (std::size_t k = 0; k < dim(); ++k) {
        if (x.is_zero_at(0, k)) continue;
        Path p = basis_[k];
        Path r{p.end, p.start, std::vector<std::size_t>(p.arrows.rbegin(), p.arrows.rend())};
        out = out + op.normal_form(r).scaled(x.get(0, k));
    }
    return out;
}

namespace {
struct AlgebraPairHolder {
    Algebra a, b;
};
}  // namespace

std::pair<AlgPtr, AlgPtr> build_algebra_pair(const QuiverPresentation& q) {
    auto holder = std::make_shared<AlgebraPairHolder>();
    holder->a.build(q);
    holder->b.build(q.opposite());
    holder->a.op_ = &holder->b;
    holder->b.op_ = &holder->a;
    std::shared_ptr<const void> owner = holder;
    holder->a.owner_ = owner;
    holder->b.owner_ = owner;
    return {AlgPtr(holder, &holder->a), AlgPtr(holder, &holder->b)};
}

AlgPtr build_algebra(const QuiverPresentation& q) { return build_algebra_pair(q).first; }

}  // namespace torsidl
