#include "torsidl/torsion.hpp"

#include <algorithm>
#include <set>

namespace torsidl {

namespace {

// Horizontal concatenation of matrices with a common row count.
Matrix hcat(const Field& f, std::size_t rows, const std::vector<Matrix>& parts) {
    std::vector<Matrix> ts;
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.cols() == 0) continue;
        ts.push_back(p.transpose());
        cols += p.cols();
    }
    if (cols == 0) return Matrix(f, rows, 0);
    return Matrix::vstack(f, rows, ts).transpose();
}

// Coefficient vectors c with sum_k c_k rows_k = 0; full space when the constraints are empty.
Subspace solution_space(const Field& f, std::size_t n, const Matrix& constraints) {
    if (constraints.cols() == 0) return Subspace::full(f, n);
    return left_kernel(constraints);
}

// Rows u with u . v = 0 for all v in s.
Matrix annihilator(const Subspace& s) { return kernel(s.basis()).basis(); }

Matrix flatten_rows(const Field& f, const std::vector<Matrix>& ms) {
    std::vector<Matrix> rows;
    std::size_t cols = ms.empty() ? 0 : ms.front().rows() * ms.front().cols();
    for (const auto& m : ms) rows.push_back(cols ? m.flatten() : Matrix(f, 1, 0));
    return Matrix::vstack(f, cols, rows);
}

}  // namespace

// ---------- Subfunctors ----------

std::vector<std::size_t> Subfunctor::dims() const {
    std::vector<std::size_t> d;
    for (const auto& v : values) d.push_back(v.dim());
    return d;
}

std::string Subfunctor::key() const {
    std::string k;
    for (const auto& v : values) k += v.key() + "|";
    return k;
}

Subfunctor zero_subfunctor(const WinPtr& w) {
    Subfunctor t{w, {}};
    for (const auto& o : w->objects()) t.values.push_back(Subspace::zero(w->field(), o->total_dim()));
    return t;
}

Subfunctor identity_subfunctor(const WinPtr& w) {
    Subfunctor t{w, {}};
    for (const auto& o : w->objects()) t.values.push_back(Subspace::full(w->field(), o->total_dim()));
    return t;
}

std::optional<std::string> subfunctor_violation(const Subfunctor& t) {
    const Window& w = *t.w;
    if (t.values.size() != w.size()) return std::string("wrong number of values");
    for (std::size_t x = 0; x < w.size(); ++x) {
        if (t.at(x).ambient() != w.object(x)->total_dim()) return "value at '" + w.object(x)->name + "' has the wrong ambient dimension";
        if (!is_submodule(w.object(x), t.at(x))) return "value at '" + w.object(x)->name + "' is not a submodule";
    }
    for (std::size_t x = 0; x < w.size(); ++x)
        for (std::size_t y = 0; y < w.size(); ++y) {
            const HomSpace& h = w.hom(x, y);
            for (std::size_t k = 0; k < h.dim(); ++k)
                if (!subspace_leq(image_of(h.basis[k].total(), t.at(x)), t.at(y)))
                    return "basis morphism " + std::to_string(k) + " of Hom(" + w.object(x)->name + ", " + w.object(y)->name +
                           ") does not preserve the assignment";
        }
    return std::nullopt;
}

void validate_subfunctor(const Subfunctor& t) {
    if (auto v = subfunctor_violation(t)) throw Error("non-functorial assignment: " + *v);
}

bool subfunctor_leq(const Subfunctor& a, const Subfunctor& b) {
    for (std::size_t x = 0; x < a.values.size(); ++x)
        if (!subspace_leq(a.at(x), b.at(x))) return false;
    return true;
}

Subfunctor subfunctor_meet(const Subfunctor& a, const Subfunctor& b) {
    Subfunctor t{a.w, {}};
    for (std::size_t x = 0; x < a.values.size(); ++x) t.values.push_back(intersect(a.at(x), b.at(x)));
    return t;
}

Subfunctor subfunctor_join(const Subfunctor& a, const Subfunctor& b) {
    Subfunctor t{a.w, {}};
    for (std::size_t x = 0; x < a.values.size(); ++x) t.values.push_back(sum(a.at(x), b.at(x)));
    return t;
}

Subfunctor functorial_closure(const WinPtr& w, const std::vector<Matrix>& seeds) {
    Subfunctor t{w, {}};
    for (std::size_t x = 0; x < w->size(); ++x) t.values.push_back(submodule_generated(w->object(x), seeds[x]));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t x = 0; x < w->size(); ++x)
            for (std::size_t y = 0; y < w->size(); ++y) {
                if (t.at(x).dim() == 0) continue;
                for (const auto& f : w->hom(x, y).basis) {
                    Subspace img = image_of(f.total(), t.at(x));
                    if (subspace_leq(img, t.at(y))) continue;
                    t.values[y] = sum(t.at(y), img);
                    changed = true;
                }
            }
    }
    return t;
}

Subspace evaluate(const Subfunctor& t, const ModPtr& n) {
    for (std::size_t x = 0; x < t.w->size(); ++x)
        if (t.w->object(x).get() == n.get()) return t.at(x);
    Subspace acc = Subspace::zero(n->field(), n->total_dim());
    if (n->total_dim() == 0) return acc;
    for (std::size_t x = 0; x < t.w->size(); ++x) {
        if (t.at(x).dim() == 0) continue;
        HomSpace h = hom_space(t.w->object(x), n);
        for (const auto& g : h.basis) acc = sum(acc, image_of(g.total(), t.at(x)));
    }
    return acc;
}

// ---------- Pairs ----------

Ideal torsion_ideal_of(const Subfunctor& t) {
    const WinPtr& w = t.w;
    Ideal out{w, {}};
    for (std::size_t x = 0; x < w->size(); ++x)
        for (std::size_t y = 0; y < w->size(); ++y) {
            const HomSpace& h = w->hom(x, y);
            Matrix ann = annihilator(t.at(y));
            std::vector<Matrix> ms;
            for (const auto& f : h.basis) ms.push_back(ann * f.total());
            out.pieces.push_back(solution_space(w->field(), h.dim(), flatten_rows(w->field(), ms)));
        }
    return out;
}

Ideal torsionfree_ideal_of(const Subfunctor& t) {
    const WinPtr& w = t.w;
    Ideal out{w, {}};
    for (std::size_t x = 0; x < w->size(); ++x)
        for (std::size_t y = 0; y < w->size(); ++y) {
            const HomSpace& h = w->hom(x, y);
            Matrix bt = t.at(x).basis().transpose();
            std::vector<Matrix> ms;
            for (const auto& f : h.basis) ms.push_back(f.total() * bt);
            out.pieces.push_back(solution_space(w->field(), h.dim(), flatten_rows(w->field(), ms)));
        }
    return out;
}

Ideal perp_right(const Ideal& i) {
    const WinPtr& w = i.w;
    const std::size_t n = w->size();
    Ideal out{w, {}};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<Matrix> blocks;
            for (std::size_t v = 0; v < n; ++v) {
                if (w->hom_dim(v, y) == 0) continue;
                const Subspace& s = i.at(v, x);
                for (std::size_t k = 0; k < s.dim(); ++k) blocks.push_back(w->pre_matrix(v, x, y, s.vector(k)));
            }
            out.pieces.push_back(solution_space(w->field(), w->hom_dim(x, y), hcat(w->field(), w->hom_dim(x, y), blocks)));
        }
    return out;
}

Ideal perp_left(const Ideal& j) {
    const WinPtr& w = j.w;
    const std::size_t n = w->size();
    Ideal out{w, {}};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::vector<Matrix> blocks;
            for (std::size_t z = 0; z < n; ++z) {
                if (w->hom_dim(x, z) == 0) continue;
                const Subspace& s = j.at(y, z);
                for (std::size_t k = 0; k < s.dim(); ++k) blocks.push_back(w->post_matrix(x, y, z, s.vector(k)));
            }
            out.pieces.push_back(solution_space(w->field(), w->hom_dim(x, y), hcat(w->field(), w->hom_dim(x, y), blocks)));
        }
    return out;
}

IdealTorsionPair pair_from_subfunctor(const Subfunctor& t) {
    validate_subfunctor(t);
    return {torsion_ideal_of(t), torsionfree_ideal_of(t), t};
}

Subfunctor subfunctor_from_torsion_ideal(const Ideal& i) {
    const WinPtr& w = i.w;
    std::vector<Matrix> seeds;
    for (std::size_t x = 0; x < w->size(); ++x) {
        std::vector<Matrix> rows;
        for (std::size_t v = 0; v < w->algebra()->num_vertices(); ++v) {
            const std::size_t p = w->projective_object(v);
            const Subspace& s = i.at(p, x);
            const Matrix gen = w->projective_generator(v).transpose();
            for (std::size_t k = 0; k < s.dim(); ++k) rows.push_back((w->morphism(p, x, s.vector(k)).total() * gen).transpose());
        }
        seeds.push_back(Matrix::vstack(w->field(), w->object(x)->total_dim(), rows));
    }
    return functorial_closure(w, seeds);
}

Subfunctor subfunctor_from_pair(const IdealTorsionPair& p) { return subfunctor_from_torsion_ideal(p.torsion); }

IdealTorsionPair torsion_closure(const Ideal& i) { return pair_from_subfunctor(subfunctor_from_torsion_ideal(i)); }

namespace {
Subfunctor kernel_intersection(const Ideal& i, const std::vector<std::size_t>& targets) {
    const WinPtr& w = i.w;
    Subfunctor r{w, {}};
    for (std::size_t x = 0; x < w->size(); ++x) {
        Subspace acc = Subspace::full(w->field(), w->object(x)->total_dim());
        for (auto y : targets) {
            const Subspace& s = i.at(x, y);
            for (std::size_t k = 0; k < s.dim(); ++k) acc = intersect(acc, kernel(w->morphism(x, y, s.vector(k)).total()));
        }
        r.values.push_back(acc);
    }
    return r;
}
}  // namespace

IdealTorsionPair torsionfree_closure(const Ideal& i) {
    std::vector<std::size_t> all;
    for (std::size_t y = 0; y < i.w->size(); ++y) all.push_back(y);
    return pair_from_subfunctor(kernel_intersection(i, all));
}

Subfunctor torsionfree_part_via_injectives(const Ideal& i) {
    const WinPtr& w = i.w;
    std::vector<std::size_t> inj;
    for (std::size_t v = 0; v < w->algebra()->num_vertices(); ++v) {
        auto loc = w->locate(injective(w->algebra(), v));
        if (!loc) throw Error("injective I(" + w->algebra()->presentation().vertices[v] + ") is not in the window");
        inj.push_back(loc->first);
    }
    return kernel_intersection(i, inj);
}

bool is_pair_consistent(const IdealTorsionPair& p) {
    if (subfunctor_violation(p.t)) return false;
    if (torsion_ideal_of(p.t) != p.torsion || torsionfree_ideal_of(p.t) != p.torsionfree) return false;
    if (ideal_product(p.torsionfree, p.torsion) != zero_ideal(p.t.w)) return false;
    return perp_right(p.torsion) == p.torsionfree && perp_left(p.torsionfree) == p.torsion;
}

// ---------- Approximations ----------

std::vector<std::size_t> regular_objects(const Window& w) { return w.projective_objects(); }

namespace {

ModPtr sum_module(const Window& w, const std::vector<std::size_t>& objs, DirectSum* ds) {
    if (objs.empty()) {
        if (ds) *ds = DirectSum{zero_module(w.algebra()), {}, {}};
        return zero_module(w.algebra());
    }
    std::vector<ModPtr> parts;
    for (auto o : objs) parts.push_back(w.object(o));
    DirectSum d = direct_sum(parts);
    if (ds) *ds = d;
    return d.mod;
}

// Offsets of the blocks of a tuple of coordinates over a list of Hom spaces.
std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> off(dims.size() + 1, 0);
    for (std::size_t k = 0; k < dims.size(); ++k) off[k + 1] = off[k] + dims[k];
    return off;
}

Matrix pad(const Field& f, std::size_t total, std::size_t at, const Matrix& row) {
    Matrix out(f, 1, total);
    if (row.cols()) out.set_block(0, at, row);
    return out;
}

// i(fixed, X) or i(X, fixed) as a direct sum over the summands of fixed.
Subspace tuple_space(const Ideal& i, const std::vector<std::size_t>& fixed, std::size_t x, bool left) {
    const Window& w = *i.w;
    std::vector<std::size_t> dims;
    for (auto k : fixed) dims.push_back(left ? w.hom_dim(k, x) : w.hom_dim(x, k));
    auto off = block_offsets(dims);
    std::vector<Matrix> rows;
    for (std::size_t k = 0; k < fixed.size(); ++k) {
        const Subspace& s = left ? i.at(fixed[k], x) : i.at(x, fixed[k]);
        for (std::size_t r = 0; r < s.dim(); ++r) rows.push_back(pad(w.field(), off.back(), off[k], s.vector(r)));
    }
    return Subspace::span(Matrix::vstack(w.field(), off.back(), rows));
}

// Span of all morphisms factoring through the approximation, at window object x.
Subspace factoring_space(const ApproxResult& a, std::size_t x) {
    const Window& w = *a.w;
    const bool left = a.kind == ApproxResult::Kind::Left;
    std::vector<std::size_t> dims;
    for (auto k : a.fixed) dims.push_back(left ? w.hom_dim(k, x) : w.hom_dim(x, k));
    auto off = block_offsets(dims);
    std::vector<Matrix> rows;
    for (std::size_t j = 0; j < a.others.size(); ++j) {
        const std::size_t o = a.others[j];
        const HomSpace& h = left ? w.hom(o, x) : w.hom(x, o);
        for (std::size_t b = 0; b < h.dim(); ++b) {
            Matrix hb = Matrix::unit_row(w.field(), h.dim(), b);
            Matrix row(w.field(), 1, off.back());
            for (std::size_t k = 0; k < a.fixed.size(); ++k) {
                Matrix c = left ? w.compose_coords(a.fixed[k], o, x, hb, a.components[j][k])
                                : w.compose_coords(x, o, a.fixed[k], a.components[j][k], hb);
                if (c.cols()) row.set_block(0, off[k], c);
            }
            rows.push_back(row);
        }
    }
    return Subspace::span(Matrix::vstack(w.field(), off.back(), rows));
}

ApproxResult approximate(const Ideal& i, const std::vector<std::size_t>& fixed, bool minimize, bool left,
                         const std::vector<Subspace>* spans = nullptr) {
    const WinPtr& w = i.w;
    const std::size_t n = w->size();
    ApproxResult a;
    a.w = w;
    a.kind = left ? ApproxResult::Kind::Left : ApproxResult::Kind::Right;
    a.fixed = fixed;
    Ideal rad = minimize ? radical_ideal(w) : zero_ideal(w);
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<std::size_t> dims;
        for (auto k : fixed) dims.push_back(left ? w->hom_dim(k, x) : w->hom_dim(x, k));
        auto off = block_offsets(dims);
        Subspace v = spans ? (*spans)[x] : tuple_space(i, fixed, x, left);
        if (v.dim() == 0) continue;
        // Part of i(fixed, x) reachable through radical maps from other i-images.
        Subspace reach = Subspace::zero(w->field(), off.back());
        if (minimize) {
            std::vector<Matrix> rows;
            for (std::size_t y = 0; y < n; ++y) {
                const Subspace& r = left ? rad.at(y, x) : rad.at(x, y);
                for (std::size_t b = 0; b < r.dim(); ++b)
                    for (std::size_t k = 0; k < fixed.size(); ++k) {
                        const Subspace& s = left ? i.at(fixed[k], y) : i.at(y, fixed[k]);
                        for (std::size_t e = 0; e < s.dim(); ++e) {
                            Matrix c = left ? w->compose_coords(fixed[k], y, x, r.vector(b), s.vector(e))
                                            : w->compose_coords(x, y, fixed[k], s.vector(e), r.vector(b));
                            rows.push_back(pad(w->field(), off.back(), off[k], c));
                        }
                    }
            }
            reach = Subspace::span(Matrix::vstack(w->field(), off.back(), rows));
        }
        Subspace chosen = reach;
        for (std::size_t r = 0; r < v.dim(); ++r) {
            Matrix vec = v.vector(r);
            if (chosen.contains(vec)) continue;
            chosen = sum(chosen, Subspace::span(vec));
            a.others.push_back(x);
            std::vector<Matrix> comps;
            for (std::size_t k = 0; k < fixed.size(); ++k) comps.push_back(vec.block(0, off[k], 1, dims[k]));
            a.components.push_back(comps);
        }
    }
    if (!verify_approximation(i, a)) throw Error("approximation failed verification");
    if (minimize) {
        for (std::size_t j = a.others.size(); j-- > 0;) {
            ApproxResult trial = a;
            trial.others.erase(trial.others.begin() + j);
            trial.components.erase(trial.components.begin() + j);
            if (verify_approximation(i, trial)) a = trial;
        }
        a.minimal = true;
    }
    return a;
}

}  // namespace

ApproxResult left_approximation(const Ideal& i, const std::vector<std::size_t>& source, bool minimize) {
    return approximate(i, source, minimize, true);
}

ApproxResult right_approximation(const Ideal& i, const std::vector<std::size_t>& target, bool minimize) {
    return approximate(i, target, minimize, false);
}

ApproxResult left_approximation_from_spans(const Ideal& i, const std::vector<std::size_t>& source,
                                           const std::vector<Subspace>& spans) {
    return approximate(i, source, true, true, &spans);
}

bool verify_approximation(const Ideal& i, const ApproxResult& a) {
    const Window& w = *i.w;
    const bool left = a.kind == ApproxResult::Kind::Left;
    for (std::size_t j = 0; j < a.others.size(); ++j)
        for (std::size_t k = 0; k < a.fixed.size(); ++k) {
            const Subspace& s = left ? i.at(a.fixed[k], a.others[j]) : i.at(a.others[j], a.fixed[k]);
            if (!s.contains(a.components[j][k])) return false;
        }
    for (std::size_t x = 0; x < w.size(); ++x)
        if (!subspace_leq(tuple_space(i, a.fixed, x, left), factoring_space(a, x))) return false;
    return true;
}

ModPtr ApproxResult::fixed_module() const { return sum_module(*w, fixed, nullptr); }

ModPtr ApproxResult::other_module() const { return sum_module(*w, others, nullptr); }

Morphism ApproxResult::morphism() const {
    DirectSum fs, os;
    ModPtr fm = sum_module(*w, fixed, &fs), om = sum_module(*w, others, &os);
    const bool left = kind == Kind::Left;
    Morphism out = left ? zero_morphism(fm, om) : zero_morphism(om, fm);
    for (std::size_t j = 0; j < others.size(); ++j)
        for (std::size_t k = 0; k < fixed.size(); ++k) {
            if (left) {
                Morphism m = w->morphism(fixed[k], others[j], components[j][k]);
                out = add(out, compose(os.inclusions[j], compose(m, fs.projections[k])));
            } else {
                Morphism m = w->morphism(others[j], fixed[k], components[j][k]);
                out = add(out, compose(fs.inclusions[k], compose(m, os.projections[j])));
            }
        }
    out.src = left ? fm : om;
    out.tgt = left ? om : fm;
    out.validate();
    return out;
}

Morphism torsion_inclusion(const IdealTorsionPair& p, std::size_t n) {
    return sub_rep(p.t.w->object(n), p.t.at(n), "t(" + p.t.w->object(n)->name + ")").inclusion;
}

FFResult is_functorially_finite(const IdealTorsionPair& p) {
    const WinPtr& w = p.t.w;
    ApproxResult a = left_approximation(p.torsion, regular_objects(*w), true);
    FFResult r{w->exactness(), verify_approximation(p.torsion, a), ""};
    if (!w->complete())
        r.caveat = "finite windows always admit approximations; the value is window-relative and does not decide global functorial finiteness";
    return r;
}

// ---------- Product and diamond ----------

IdealTorsionPair pair_product(const IdealTorsionPair& p, const IdealTorsionPair& q) {
    const WinPtr& w = p.t.w;
    if (q.t.w.get() != w.get()) throw Error("window mismatch");
    Subfunctor t{w, {}};
    for (std::size_t x = 0; x < w->size(); ++x) {
        SubRep s = sub_rep(w->object(x), q.t.at(x), "t'");
        t.values.push_back(image_of(s.inclusion.total(), evaluate(p.t, s.mod)));
    }
    IdealTorsionPair out = pair_from_subfunctor(t);
    if (w->complete() && out.torsion != ideal_product(q.torsion, p.torsion))
        throw Error("product pair disagrees with the ideal product");
    return out;
}

IdealTorsionPair pair_diamond(const IdealTorsionPair& p, const IdealTorsionPair& q) {
    const WinPtr& w = p.t.w;
    if (q.t.w.get() != w.get()) throw Error("window mismatch");
    Subfunctor t{w, {}};
    for (std::size_t x = 0; x < w->size(); ++x) {
        QuotRep qr = quot_rep(w->object(x), p.t.at(x), "M/tM");
        t.values.push_back(preimage_of(qr.projection.total(), evaluate(q.t, qr.mod)));
    }
    return pair_from_subfunctor(t);
}

// ---------- Objects and idempotency ----------

std::vector<std::size_t> ob(const Ideal& i) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < i.w->size(); ++x)
        if (i.at(x, x).contains(i.w->coords(x, x, identity_morphism(i.w->object(x))))) out.push_back(x);
    return out;
}

bool is_idempotent(const IdealTorsionPair& p) {
    const WinPtr& w = p.t.w;
    for (std::size_t x = 0; x < w->size(); ++x) {
        SubRep s = sub_rep(w->object(x), p.t.at(x), "tM");
        if (image_of(s.inclusion.total(), evaluate(p.t, s.mod)) != p.t.at(x)) return false;
    }
    return true;
}

// ---------- Determination ----------

namespace {

DeterminationResult determined(const Ideal& i, const std::vector<std::size_t>& c, bool left) {
    const WinPtr& w = i.w;
    const std::size_t n = w->size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t d = w->hom_dim(x, y);
            if (d == 0) continue;
            std::vector<Matrix> blocks;
            for (auto ck : c) {
                if (left) {
                    Matrix annt = annihilator(i.at(x, ck)).transpose();
                    if (annt.cols() == 0) continue;
                    for (std::size_t b = 0; b < w->hom_dim(y, ck); ++b)
                        blocks.push_back(w->post_matrix(x, y, ck, Matrix::unit_row(w->field(), w->hom_dim(y, ck), b)) * annt);
                } else {
                    Matrix annt = annihilator(i.at(ck, y)).transpose();
                    if (annt.cols() == 0) continue;
                    for (std::size_t b = 0; b < w->hom_dim(ck, x); ++b)
                        blocks.push_back(w->pre_matrix(ck, x, y, Matrix::unit_row(w->field(), w->hom_dim(ck, x), b)) * annt);
                }
            }
            Subspace dsp = solution_space(w->field(), d, hcat(w->field(), d, blocks));
            for (std::size_t k = 0; k < dsp.dim(); ++k)
                if (!i.at(x, y).contains(dsp.vector(k))) return {false, IdealGenerator{x, y, dsp.vector(k)}};
        }
    return {};
}

}  // namespace

DeterminationResult is_left_determined(const Ideal& i, const std::vector<std::size_t>& c) { return determined(i, c, true); }

DeterminationResult is_right_determined(const Ideal& i, const std::vector<std::size_t>& c) { return determined(i, c, false); }

// ---------- Bi-submodules ----------

bool is_bisubmodule(const ModPtr& c, const Subspace& x) {
    if (!is_submodule(c, x)) return false;
    HomSpace e = hom_space(c, c);
    for (const auto& g : e.basis)
        if (!subspace_leq(image_of(g.total(), x), x)) return false;
    return true;
}

std::vector<Subspace> bisubmodules(const ModPtr& c) {
    const Field f = c->field();
    if (!f.is_prime()) throw Error("bi-submodule enumeration requires a finite prime field");
    const std::size_t n = c->total_dim();
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < n; ++k) {
        count *= f.p;
        if (count > 1000000) throw Error("bi-submodule enumeration budget exceeded");
    }
    HomSpace e = hom_space(c, c);
    std::map<std::string, Subspace> found;
    Subspace zero = Subspace::zero(f, n);
    found.emplace(zero.key(), zero);
    for (std::uint64_t code = 1; code < count; ++code) {
        Matrix v(f, 1, n);
        std::uint64_t r = code;
        std::size_t lead = n;
        for (std::size_t k = 0; k < n; ++k) {
            v.set_int(0, k, long(r % f.p));
            if (r % f.p && lead == n) lead = k;
            r /= f.p;
        }
        if (!v.is_one_at(0, lead)) continue;  // one representative per line
        std::vector<Matrix> imgs;
        for (const auto& g : e.basis) imgs.push_back(g.apply_row(v));
        Subspace b = submodule_generated(c, Matrix::vstack(f, n, imgs));
        found.emplace(b.key(), b);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Subspace> cur;
        for (auto& kv : found) cur.push_back(kv.second);
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = a + 1; b < cur.size(); ++b) {
                Subspace s = sum(cur[a], cur[b]);
                if (found.emplace(s.key(), s).second) changed = true;
            }
    }
    std::vector<Subspace> out;
    for (auto& kv : found) out.push_back(kv.second);
    std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a.key() < b.key();
    });
    return out;
}

FiniteLattice bisubmodule_lattice(const ModPtr& c) {
    auto subs = bisubmodules(c);
    std::vector<std::string> labels;
    for (const auto& s : subs) labels.push_back(s.key());
    return make_lattice(labels, [&](std::size_t a, std::size_t b) { return subspace_leq(subs[a], subs[b]); });
}

IdealTorsionPair determined_ideal_from_bisubmodule(const WinPtr& w, std::size_t c, const Subspace& x) {
    const ModPtr& cm = w->object(c);
    if (!is_bisubmodule(cm, x)) throw Error("subspace is not a bi-submodule of '" + cm->name + "'");
    Subfunctor t{w, {}};
    for (std::size_t n = 0; n < w->size(); ++n) {
        Subspace acc = Subspace::full(w->field(), w->object(n)->total_dim());
        for (const auto& g : w->hom(n, c).basis) acc = intersect(acc, preimage_of(g.total(), x));
        t.values.push_back(acc);
    }
    IdealTorsionPair p = pair_from_subfunctor(t);
    if (p.t.at(c) != x) throw Error("determined ideal does not restrict to the bi-submodule");
    if (!is_left_determined(p.torsion, {c}).value) throw Error("constructed ideal is not left determined");
    return p;
}

// ---------- Duality ----------

WinPtr opposite_window(const WinPtr& w) {
    std::vector<ModPtr> duals;
    for (const auto& o : w->objects()) duals.push_back(rename(dualize(o), "D" + o->name));
    try {
        return Window::build(w->algebra()->opposite(), duals, w->complete());
    } catch (const Error& e) {
        throw Error(std::string("opposite window missing: ") + e.what());
    }
}

Matrix dual_coords(const WinPtr& w, const WinPtr& wop, std::size_t x, std::size_t y, const Matrix& coords) {
    Morphism f = w->morphism(x, y, coords);
    Morphism df = dualize_morphism(f, wop->object(x), wop->object(y));
    return wop->coords(y, x, df);
}

IdealTorsionPair dualize_pair(const IdealTorsionPair& p, const WinPtr& wop) {
    const WinPtr& w = p.t.w;
    if (wop->size() != w->size()) throw Error("opposite window missing");
    Subfunctor t{wop, {}};
    for (std::size_t x = 0; x < w->size(); ++x) t.values.push_back(Subspace::span(annihilator(p.t.at(x))));
    IdealTorsionPair out = pair_from_subfunctor(t);
    auto dual_ideal = [&](const Ideal& i) {
        Ideal d = zero_ideal(wop);
        for (std::size_t x = 0; x < w->size(); ++x)
            for (std::size_t y = 0; y < w->size(); ++y) {
                const Subspace& s = i.at(x, y);
                std::vector<Matrix> rows;
                for (std::size_t k = 0; k < s.dim(); ++k) rows.push_back(dual_coords(w, wop, x, y, s.vector(k)));
                d.at(y, x) = Subspace::span(Matrix::vstack(w->field(), wop->hom_dim(y, x), rows));
            }
        return d;
    };
    if (out.torsion != dual_ideal(p.torsionfree) || out.torsionfree != dual_ideal(p.torsion))
        throw Error("dual pair does not match the dual ideals");
    return out;
}

// ---------- Canonical determiner ----------

Determiner canonical_determiner(const IdealTorsionPair& p) {
    const WinPtr& w = p.t.w;
    const AlgPtr& alg = w->algebra();
    Determiner d;
    d.approximation = left_approximation(p.torsion, regular_objects(*w), true);
    KerCoker kc = kernel_cokernel_image(d.approximation.morphism());
    d.cokernel = kc.cokernel;
    d.kernel = kc.kernel;
    std::vector<ModPtr> parts;
    if (kc.cokernel->total_dim() > 0) {
        ModPtr tq = tau(kc.cokernel).module;
        if (tq->total_dim() > 0) parts.push_back(tq);
    }
    if (kc.kernel->total_dim() > 0) {
        Subspace rad = radical_submodule(kc.kernel);
        for (std::size_t v = 0; v < alg->num_vertices(); ++v) {
            std::size_t top = kc.kernel->dims[v] - vertex_part(kc.kernel, rad, v).dim();
            for (std::size_t k = 0; k < top; ++k) parts.push_back(injective(alg, v));
        }
    }
    d.module = parts.empty() ? zero_module(alg) : direct_sum(parts, "determiner").mod;
    std::set<std::size_t> objs;
    for (const auto& part : parts)
        for (const auto& s : decompose(part)) {
            auto loc = w->locate(s.mod);
            if (!loc) throw Error("determiner summand '" + s.mod->name + "' is not in the window");
            objs.insert(loc->first);
        }
    d.objects.assign(objs.begin(), objs.end());
    if (!is_left_determined(p.torsion, d.objects).value) throw Error("torsion ideal is not determined by the canonical determiner");
    return d;
}

}  // namespace torsidl
