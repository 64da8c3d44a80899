#include "torsidl/module.hpp"

#include <algorithm>
#include <random>

namespace torsidl {

// ---------- ModuleRep ----------

std::size_t ModuleRep::total_dim() const {
    std::size_t s = 0;
    for (auto d : dims) s += d;
    return s;
}

std::size_t ModuleRep::offset(std::size_t v) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < v; ++i) s += dims[i];
    return s;
}

std::size_t ModuleRep::vertex_of(std::size_t coord) const {
    std::size_t s = 0;
    for (std::size_t v = 0; v < dims.size(); ++v) {
        s += dims[v];
        if (coord < s) return v;
    }
    throw Error("coordinate out of range");
}

Matrix ModuleRep::arrow_total(std::size_t a) const {
    const auto& ar = alg->arrows()[a];
    Matrix m(field(), total_dim(), total_dim());
    m.set_block(offset(ar.dst), offset(ar.src), maps[a]);
    return m;
}

Matrix ModuleRep::act_path(const Path& p) const {
    const std::size_t n = total_dim();
    if (p.arrows.empty()) {
        Matrix m(field(), n, n);
        m.set_block(offset(p.start), offset(p.start), Matrix::identity(field(), dims[p.start]));
        return m;
    }
    Matrix m = arrow_total(p.arrows.front());
    for (std::size_t k = 1; k < p.arrows.size(); ++k) m = arrow_total(p.arrows[k]) * m;
    return m;
}

Matrix ModuleRep::act_basis(std::size_t i) const { return act_path(alg->basis()[i]); }

Matrix ModuleRep::act(const Matrix& element) const {
    const std::size_t n = total_dim();
    Matrix m(field(), n, n);
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        if (element.is_zero_at(0, i)) continue;
        m = m + act_basis(i).scaled(element.get(0, i));
    }
    return m;
}

void ModuleRep::validate() const {
    const auto& q = alg->presentation();
    if (dims.size() != q.vertices.size()) throw Error("module '" + name + "': wrong number of vertex dimensions");
    if (maps.size() != q.arrows.size()) throw Error("module '" + name + "': wrong number of arrow maps");
    for (std::size_t a = 0; a < maps.size(); ++a) {
        const auto& ar = q.arrows[a];
        if (maps[a].rows() != dims[ar.dst] || maps[a].cols() != dims[ar.src] || maps[a].field() != field())
            throw Error("module '" + name + "': map for arrow '" + ar.label + "' has the wrong shape");
    }
    for (std::size_t r = 0; r < q.relations.size(); ++r) {
        const std::size_t n = total_dim();
        Matrix acc(field(), n, n);
        for (const auto& t : q.relations[r]) {
            Path p;
            for (const auto& l : t.path) p.arrows.push_back(q.arrow_index(l));
            p.start = q.arrows[p.arrows.front()].src;
            p.end = q.arrows[p.arrows.back()].dst;
            acc = acc + act_path(p).scaled(t.coeff);
        }
        if (!acc.is_zero()) throw Error("module '" + name + "' violates relation " + std::to_string(r));
    }
}

ModPtr make_module(AlgPtr alg, std::string name, std::vector<std::size_t> dims, std::vector<Matrix> maps) {
    auto m = std::make_shared<ModuleRep>();
    m->alg = std::move(alg);
    m->name = std::move(name);
    m->dims = std::move(dims);
    m->maps = std::move(maps);
    m->validate();
    return m;
}

ModPtr zero_module(AlgPtr alg) {
    std::vector<std::size_t> dims(alg->num_vertices(), 0);
    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < alg->arrows().size(); ++a) maps.emplace_back(alg->field(), 0, 0);
    return make_module(alg, "0", dims, maps);
}

ModPtr simple_module(AlgPtr alg, std::size_t v) {
    std::vector<std::size_t> dims(alg->num_vertices(), 0);
    dims[v] = 1;
    std::vector<Matrix> maps;
    for (const auto& a : alg->arrows()) maps.emplace_back(alg->field(), dims[a.dst], dims[a.src]);
    return make_module(alg, "S(" + alg->presentation().vertices[v] + ")", dims, maps);
}

ModPtr rename(const ModPtr& m, const std::string& name) {
    auto c = std::make_shared<ModuleRep>(*m);
    c->name = name;
    return c;
}

// ---------- Morphism ----------

namespace {

void check_compatible(const ModPtr& a, const ModPtr& b) {
    if (a->alg.get() != b->alg.get()) throw Error("algebra mismatch");
}

}  // namespace

Matrix Morphism::total() const {
    Matrix m(src->field(), tgt->total_dim(), src->total_dim());
    for (std::size_t v = 0; v < blocks.size(); ++v) m.set_block(tgt->offset(v), src->offset(v), blocks[v]);
    return m;
}

bool Morphism::is_zero() const {
    for (const auto& b : blocks)
        if (!b.is_zero()) return false;
    return true;
}

std::size_t flat_size(const ModPtr& src, const ModPtr& tgt) {
    std::size_t s = 0;
    for (std::size_t v = 0; v < src->dims.size(); ++v) s += src->dims[v] * tgt->dims[v];
    return s;
}

Matrix Morphism::flat() const {
    Matrix out(src->field(), 1, flat_size(src, tgt));
    std::size_t at = 0;
    for (const auto& b : blocks) {
        if (b.rows() * b.cols() == 0) continue;
        out.set_block(0, at, b.flatten());
        at += b.rows() * b.cols();
    }
    return out;
}

void Morphism::validate() const {
    check_compatible(src, tgt);
    for (std::size_t a = 0; a < src->alg->arrows().size(); ++a) {
        const auto& ar = src->alg->arrows()[a];
        if (tgt->maps[a] * blocks[ar.src] != blocks[ar.dst] * src->maps[a])
            throw Error("morphism does not intertwine arrow '" + ar.label + "'");
    }
}

Matrix Morphism::apply_row(const Matrix& v) const { return (total() * v.transpose()).transpose(); }

Morphism morphism_from_total(const ModPtr& src, const ModPtr& tgt, const Matrix& total) {
    Morphism f{src, tgt, {}};
    for (std::size_t v = 0; v < src->dims.size(); ++v)
        f.blocks.push_back(total.block(tgt->offset(v), src->offset(v), tgt->dims[v], src->dims[v]));
    if (f.total() != total) throw Error("matrix is not vertex-diagonal");
    return f;
}

Morphism morphism_from_flat(const ModPtr& src, const ModPtr& tgt, const Matrix& flat, std::size_t offset) {
    Morphism f{src, tgt, {}};
    std::size_t at = offset;
    for (std::size_t v = 0; v < src->dims.size(); ++v) {
        std::size_t r = tgt->dims[v], c = src->dims[v];
        if (r * c == 0) f.blocks.emplace_back(src->field(), r, c);
        else f.blocks.push_back(Matrix::unflatten(flat, r, c, at));
        at += r * c;
    }
    return f;
}

Morphism zero_morphism(const ModPtr& src, const ModPtr& tgt) {
    Morphism f{src, tgt, {}};
    for (std::size_t v = 0; v < src->dims.size(); ++v) f.blocks.emplace_back(src->field(), tgt->dims[v], src->dims[v]);
    return f;
}

Morphism identity_morphism(const ModPtr& m) {
    Morphism f{m, m, {}};
    for (auto d : m->dims) f.blocks.push_back(Matrix::identity(m->field(), d));
    return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (g.src->dims != f.tgt->dims) throw Error("composition of incompatible morphisms");
    Morphism h{f.src, g.tgt, {}};
    for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(g.blocks[v] * f.blocks[v]);
    return h;
}

Morphism add(const Morphism& a, const Morphism& b) {
    Morphism h{a.src, a.tgt, {}};
    for (std::size_t v = 0; v < a.blocks.size(); ++v) h.blocks.push_back(a.blocks[v] + b.blocks[v]);
    return h;
}

Morphism scale(const Morphism& a, const Scalar& s) {
    Morphism h{a.src, a.tgt, {}};
    for (const auto& b : a.blocks) h.blocks.push_back(b.scaled(s));
    return h;
}

// ---------- Hom ----------

Matrix HomSpace::coords(const Morphism& f) const { return space.coords(f.flat()); }

bool HomSpace::contains(const Morphism& f) const { return space.contains(f.flat()); }

Morphism HomSpace::element(const Matrix& c) const {
    if (dim() == 0) return zero_morphism(src, tgt);
    return morphism_from_flat(src, tgt, c * space.basis());
}

HomSpace hom_space(const ModPtr& m, const ModPtr& n) {
    check_compatible(m, n);
    const Field f = m->field();
    const auto& arrows = m->alg->arrows();
    std::vector<std::size_t> off(m->dims.size() + 1, 0);
    for (std::size_t v = 0; v < m->dims.size(); ++v) off[v + 1] = off[v] + m->dims[v] * n->dims[v];
    const std::size_t unknowns = off.back();
    std::size_t eqs = 0;
    for (const auto& a : arrows) eqs += n->dims[a.dst] * m->dims[a.src];
    Matrix sys(f, eqs, unknowns);
    std::size_t row = 0;
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        const auto& a = arrows[k];
        const std::size_t s = a.src, t = a.dst;
        const std::size_t nr = n->dims[t] * m->dims[s];
        if (nr == 0) continue;
        // N_a X_s - X_t M_a = 0, row-major vectorization.
        if (n->dims[s] * m->dims[s] > 0) {
            Matrix left = Matrix::kron(n->maps[k], Matrix::identity(f, m->dims[s]));
            sys.set_block(row, off[s], sys.block(row, off[s], nr, left.cols()) + left);
        }
        if (n->dims[t] * m->dims[t] > 0) {
            Matrix right = Matrix::kron(Matrix::identity(f, n->dims[t]), m->maps[k].transpose());
            sys.set_block(row, off[t], sys.block(row, off[t], nr, right.cols()) - right);
        }
        row += nr;
    }
    HomSpace h;
    h.src = m;
    h.tgt = n;
    h.space = kernel(sys);
    for (std::size_t i = 0; i < h.space.dim(); ++i) h.basis.push_back(morphism_from_flat(m, n, h.space.vector(i)));
    return h;
}

// ---------- Submodules ----------

Subspace vertex_part(const ModPtr& m, const Subspace& s, std::size_t v) {
    const std::size_t o = m->offset(v), d = m->dims[v];
    if (s.dim() == 0 || d == 0) return Subspace::zero(m->field(), d);
    return Subspace::span(s.basis().block(0, o, s.dim(), d));
}

Subspace submodule_generated(const ModPtr& m, const Matrix& vectors) {
    const Field f = m->field();
    const std::size_t n = m->total_dim();
    std::vector<Matrix> parts;
    for (std::size_t v = 0; v < m->dims.size(); ++v) {
        if (m->dims[v] == 0 || vectors.rows() == 0) continue;
        Matrix proj(f, vectors.rows(), n);
        proj.set_block(0, m->offset(v), vectors.block(0, m->offset(v), vectors.rows(), m->dims[v]));
        parts.push_back(proj);
    }
    Subspace s = Subspace::span(Matrix::vstack(f, n, parts));
    std::vector<Matrix> arrows;
    for (std::size_t a = 0; a < m->alg->arrows().size(); ++a) arrows.push_back(m->arrow_total(a));
    while (true) {
        std::vector<Matrix> more{s.basis()};
        for (const auto& a : arrows) more.push_back((a * s.basis().transpose()).transpose());
        Subspace t = Subspace::span(Matrix::vstack(f, n, more));
        if (t.dim() == s.dim()) return t;
        s = t;
    }
}

bool is_submodule(const ModPtr& m, const Subspace& s) {
    return submodule_generated(m, s.basis()) == s;
}

SubRep sub_rep(const ModPtr& m, const Subspace& s, const std::string& name) {
    const Field f = m->field();
    std::vector<Subspace> parts;
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < m->dims.size(); ++v) {
        parts.push_back(vertex_part(m, s, v));
        dims.push_back(parts.back().dim());
    }
    std::vector<Matrix> maps;
    const auto& arrows = m->alg->arrows();
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        const auto& ar = arrows[a];
        Matrix mp(f, dims[ar.dst], dims[ar.src]);
        for (std::size_t k = 0; k < dims[ar.src]; ++k) {
            Matrix img = (m->maps[a] * parts[ar.src].vector(k).transpose()).transpose();
            if (!parts[ar.dst].contains(img)) throw Error("subspace is not a submodule");
            if (dims[ar.dst] > 0) mp.set_block(0, k, parts[ar.dst].coords(img).transpose());
        }
        maps.push_back(mp);
    }
    ModPtr sub = make_module(m->alg, name.empty() ? "sub(" + m->name + ")" : name, dims, maps);
    Morphism inc{sub, m, {}};
    for (std::size_t v = 0; v < dims.size(); ++v) {
        if (dims[v] == 0) inc.blocks.emplace_back(f, m->dims[v], 0);
        else inc.blocks.push_back(parts[v].basis().transpose());
    }
    return {sub, inc};
}

QuotRep quot_rep(const ModPtr& m, const Subspace& s, const std::string& name) {
    const Field f = m->field();
    std::vector<Matrix> proj, sect;
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < m->dims.size(); ++v) {
        Subspace u = vertex_part(m, s, v);
        std::vector<std::size_t> freec = u.free_columns();
        const std::size_t d = m->dims[v];
        Matrix p(f, freec.size(), d), se(f, d, freec.size());
        for (std::size_t c = 0; c < d; ++c) {
            Matrix r = u.reduce(Matrix::unit_row(f, d, c));
            for (std::size_t k = 0; k < freec.size(); ++k) p.set(k, c, r.get(0, freec[k]));
        }
        for (std::size_t k = 0; k < freec.size(); ++k) se.set_int(freec[k], k, 1);
        proj.push_back(p);
        sect.push_back(se);
        dims.push_back(freec.size());
    }
    std::vector<Matrix> maps;
    const auto& arrows = m->alg->arrows();
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        const auto& ar = arrows[a];
        maps.push_back(proj[ar.dst] * m->maps[a] * sect[ar.src]);
    }
    ModPtr q = make_module(m->alg, name.empty() ? "quot(" + m->name + ")" : name, dims, maps);
    Morphism pr{m, q, proj};
    Matrix section(f, m->total_dim(), q->total_dim());
    for (std::size_t v = 0; v < dims.size(); ++v) section.set_block(m->offset(v), q->offset(v), sect[v]);
    return {q, pr, section};
}

Subspace image_subspace(const Morphism& f) { return column_space(f.total()); }

Subspace kernel_subspace(const Morphism& f) { return kernel(f.total()); }

KerCoker kernel_cokernel_image(const Morphism& f) {
    KerCoker out;
    SubRep k = sub_rep(f.src, kernel_subspace(f), "ker");
    out.kernel = k.mod;
    out.kernel_inclusion = k.inclusion;
    Subspace im = image_subspace(f);
    QuotRep q = quot_rep(f.tgt, im, "coker");
    out.cokernel = q.mod;
    out.cokernel_projection = q.projection;
    out.image = sub_rep(f.tgt, im, "im").mod;
    return out;
}

// ---------- Direct sums ----------

DirectSum direct_sum(const std::vector<ModPtr>& parts, const std::string& name) {
    if (parts.empty()) throw Error("empty direct sum");
    AlgPtr alg = parts.front()->alg;
    const Field f = alg->field();
    const std::size_t nv = alg->num_vertices();
    std::vector<std::size_t> dims(nv, 0);
    std::vector<std::vector<std::size_t>> off(parts.size(), std::vector<std::size_t>(nv, 0));
    for (std::size_t k = 0; k < parts.size(); ++k) {
        check_compatible(parts[k], parts.front());
        for (std::size_t v = 0; v < nv; ++v) {
            off[k][v] = dims[v];
            dims[v] += parts[k]->dims[v];
        }
    }
    std::vector<Matrix> maps;
    const auto& arrows = alg->arrows();
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        Matrix m(f, dims[arrows[a].dst], dims[arrows[a].src]);
        for (std::size_t k = 0; k < parts.size(); ++k)
            m.set_block(off[k][arrows[a].dst], off[k][arrows[a].src], parts[k]->maps[a]);
        maps.push_back(m);
    }
    std::string nm = name;
    if (nm.empty())
        for (std::size_t k = 0; k < parts.size(); ++k) nm += (k ? "+" : "") + parts[k]->name;
    DirectSum ds;
    ds.mod = make_module(alg, nm, dims, maps);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        Morphism inc{parts[k], ds.mod, {}}, pr{ds.mod, parts[k], {}};
        for (std::size_t v = 0; v < nv; ++v) {
            Matrix i(f, dims[v], parts[k]->dims[v]);
            i.set_block(off[k][v], 0, Matrix::identity(f, parts[k]->dims[v]));
            inc.blocks.push_back(i);
            pr.blocks.push_back(i.transpose());
        }
        ds.inclusions.push_back(inc);
        ds.projections.push_back(pr);
    }
    return ds;
}

Morphism column_morphism(const ModPtr& src, const DirectSum& tgt, const std::vector<Morphism>& parts) {
    Morphism out = zero_morphism(src, tgt.mod);
    for (std::size_t k = 0; k < parts.size(); ++k) out = add(out, compose(tgt.inclusions[k], parts[k]));
    out.src = src;
    out.tgt = tgt.mod;
    return out;
}

Morphism row_morphism(const DirectSum& src, const ModPtr& tgt, const std::vector<Morphism>& parts) {
    Morphism out = zero_morphism(src.mod, tgt);
    for (std::size_t k = 0; k < parts.size(); ++k) out = add(out, compose(parts[k], src.projections[k]));
    out.src = src.mod;
    out.tgt = tgt;
    return out;
}

// ---------- Projectives and injectives ----------

namespace {

// Position of basis path b (starting at v) inside P(v).
std::size_t proj_position(const Algebra& alg, const ModPtr& pv, std::size_t v, std::size_t b) {
    const Path& p = alg.basis()[b];
    if (p.start != v) throw Error("element does not lie in A e_v");
    auto list = alg.paths_between(v, p.end);
    std::size_t idx = std::find(list.begin(), list.end(), b) - list.begin();
    return pv->offset(p.end) + idx;
}

// Element x of A e_v as total coordinates of P(v).
Matrix proj_coords(const Algebra& alg, const ModPtr& pv, std::size_t v, const Matrix& x) {
    Matrix out(alg.field(), 1, pv->total_dim());
    for (std::size_t b = 0; b < alg.dim(); ++b) {
        if (x.is_zero_at(0, b)) continue;
        out.set(0, proj_position(alg, pv, v, b), x.get(0, b));
    }
    return out;
}

// Total coordinates of P(v) back to an algebra element.
Matrix proj_element(const Algebra& alg, const ModPtr& pv, std::size_t v, const Matrix& c) {
    Matrix out(alg.field(), 1, alg.dim());
    for (std::size_t j = 0; j < alg.num_vertices(); ++j) {
        auto list = alg.paths_between(v, j);
        for (std::size_t k = 0; k < list.size(); ++k) out.set(0, list[k], c.get(0, pv->offset(j) + k));
    }
    return out;
}

}  // namespace

ModPtr projective(AlgPtr alg, std::size_t v) {
    const Field f = alg->field();
    const std::size_t nv = alg->num_vertices();
    std::vector<std::size_t> dims(nv);
    for (std::size_t j = 0; j < nv; ++j) dims[j] = alg->paths_between(v, j).size();
    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < alg->arrows().size(); ++a) {
        const auto& ar = alg->arrows()[a];
        auto from = alg->paths_between(v, ar.src), to = alg->paths_between(v, ar.dst);
        Matrix m(f, to.size(), from.size());
        for (std::size_t c = 0; c < from.size(); ++c) {
            Path p = alg->basis()[from[c]];
            p.arrows.push_back(a);
            p.end = ar.dst;
            Matrix nf = alg->normal_form(p);
            for (std::size_t r = 0; r < to.size(); ++r) m.set(r, c, nf.get(0, to[r]));
        }
        maps.push_back(m);
    }
    return make_module(alg, "P(" + alg->presentation().vertices[v] + ")", dims, maps);
}

ModPtr injective(AlgPtr alg, std::size_t v) {
    const Field f = alg->field();
    const std::size_t nv = alg->num_vertices();
    std::vector<std::size_t> dims(nv);
    for (std::size_t j = 0; j < nv; ++j) dims[j] = alg->paths_between(j, v).size();
    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < alg->arrows().size(); ++a) {
        const auto& ar = alg->arrows()[a];
        // R: e_v A e_dst -> e_v A e_src, m -> m a; the injective map is its transpose.
        auto from = alg->paths_between(ar.dst, v), to = alg->paths_between(ar.src, v);
        Matrix r(f, to.size(), from.size());
        for (std::size_t c = 0; c < from.size(); ++c) {
            const Path& m = alg->basis()[from[c]];
            Path p{ar.src, m.end, {a}};
            p.arrows.insert(p.arrows.end(), m.arrows.begin(), m.arrows.end());
            Matrix nf = alg->normal_form(p);
            for (std::size_t k = 0; k < to.size(); ++k) r.set(k, c, nf.get(0, to[k]));
        }
        maps.push_back(r.transpose());
    }
    return make_module(alg, "I(" + alg->presentation().vertices[v] + ")", dims, maps);
}

Matrix ProjectiveSum::generator(std::size_t k) const {
    const ModPtr& pk = sum.inclusions[k].src;
    const Algebra& alg = *pk->alg;
    Matrix e = proj_coords(alg, pk, verts[k], Matrix::unit_row(alg.field(), alg.dim(), alg.idempotent(verts[k])));
    return sum.inclusions[k].apply_row(e);
}

ProjectiveSum projective_sum(AlgPtr alg, const std::vector<std::size_t>& verts) {
    ProjectiveSum ps;
    ps.verts = verts;
    std::vector<ModPtr> parts;
    for (auto v : verts) parts.push_back(projective(alg, v));
    if (parts.empty()) {
        ps.sum.mod = zero_module(alg);
    } else {
        ps.sum = direct_sum(parts);
    }
    return ps;
}

Morphism morphism_from_generators(const ProjectiveSum& p, const ModPtr& tgt, const std::vector<Matrix>& images) {
    const ModPtr& src = p.sum.mod;
    const Field f = src->field();
    if (images.size() != p.verts.size()) throw Error("wrong number of generator images");
    Matrix total(f, tgt->total_dim(), src->total_dim());
    for (std::size_t k = 0; k < p.verts.size(); ++k) {
        const ModPtr& pk = p.sum.inclusions[k].src;
        const Algebra& alg = *pk->alg;
        const std::size_t v = p.verts[k];
        Matrix img = images[k];
        // The image of e_v must lie in the vertex-v part.
        Matrix ev = tgt->act_basis(alg.idempotent(v));
        if ((ev * img.transpose()).transpose() != img) throw Error("generator image not in the right vertex");
        for (std::size_t j = 0; j < alg.num_vertices(); ++j) {
            auto list = alg.paths_between(v, j);
            for (std::size_t idx = 0; idx < list.size(); ++idx) {
                Matrix col = tgt->act_basis(list[idx]) * img.transpose();
                std::size_t local = pk->offset(j) + idx;
                Matrix unit = p.sum.inclusions[k].apply_row(Matrix::unit_row(f, pk->total_dim(), local));
                std::size_t c = 0;
                while (unit.is_zero_at(0, c)) ++c;
                total.set_block(0, c, col);
            }
        }
    }
    Morphism m = morphism_from_total(src, tgt, total);
    m.validate();
    return m;
}

Regular regular_module(AlgPtr alg) {
    Regular r;
    std::vector<std::size_t> verts;
    for (std::size_t v = 0; v < alg->num_vertices(); ++v) verts.push_back(v);
    ProjectiveSum ps = projective_sum(alg, verts);
    r.mod = rename(ps.sum.mod, "A");
    r.as_sum = ps.sum;
    r.as_sum.mod = r.mod;
    for (auto& i : r.as_sum.inclusions) i.tgt = r.mod;
    for (auto& p : r.as_sum.projections) p.src = r.mod;
    for (const auto& i : ps.sum.inclusions) r.summands.push_back(i.src);
    return r;
}

Morphism morphism_from_regular(const Regular& a, const ModPtr& tgt, const Matrix& image_of_one) {
    std::vector<Morphism> parts;
    for (std::size_t v = 0; v < a.summands.size(); ++v) {
        Matrix ev = tgt->act_basis(a.mod->alg->idempotent(v));
        Matrix img = (ev * image_of_one.transpose()).transpose();
        ProjectiveSum single;
        single.verts = {v};
        single.sum = direct_sum({a.summands[v]});
        Morphism g = morphism_from_generators(single, tgt, {img});
        g.src = a.summands[v];
        parts.push_back(g);
    }
    return row_morphism(a.as_sum, tgt, parts);
}

// ---------- Presentations ----------

Subspace radical_submodule(const ModPtr& m) {
    const Field f = m->field();
    const std::size_t n = m->total_dim();
    std::vector<Matrix> parts;
    for (std::size_t a = 0; a < m->alg->arrows().size(); ++a) parts.push_back(m->arrow_total(a).transpose());
    return Subspace::span(Matrix::vstack(f, n, parts));
}

namespace {

struct TopData {
    std::vector<std::size_t> verts;
    std::vector<Matrix> gens;
};

TopData top_generators(const ModPtr& m) {
    TopData t;
    Subspace rad = radical_submodule(m);
    const Field f = m->field();
    for (std::size_t v = 0; v < m->dims.size(); ++v) {
        Subspace rv = vertex_part(m, rad, v);
        for (auto c : rv.free_columns()) {
            t.verts.push_back(v);
            t.gens.push_back(Matrix::unit_row(f, m->total_dim(), m->offset(v) + c));
        }
    }
    return t;
}

}  // namespace

Presentation minimal_presentation(const ModPtr& m) {
    Presentation pr;
    TopData t0 = top_generators(m);
    pr.p0 = projective_sum(m->alg, t0.verts);
    pr.pi = morphism_from_generators(pr.p0, m, t0.gens);
    SubRep k = sub_rep(pr.p0.sum.mod, kernel_subspace(pr.pi), "K");
    TopData t1 = top_generators(k.mod);
    pr.p1 = projective_sum(m->alg, t1.verts);
    std::vector<Matrix> imgs;
    for (const auto& g : t1.gens) imgs.push_back(k.inclusion.apply_row(g));
    pr.d = morphism_from_generators(pr.p1, pr.p0.sum.mod, imgs);
    if (image_subspace(pr.pi).dim() != m->total_dim()) throw Error("presentation is not surjective");
    if (image_subspace(pr.d) != kernel_subspace(pr.pi)) throw Error("presentation is not exact");
    return pr;
}

bool is_projective_module(const ModPtr& m) {
    TopData t = top_generators(m);
    std::size_t d = 0;
    for (auto v : t.verts) d += projective(m->alg, v)->total_dim();
    return d == m->total_dim();
}

// ---------- Duality ----------

ModPtr dualize(const ModPtr& m) {
    AlgPtr op = m->alg->opposite();
    std::vector<Matrix> maps;
    for (const auto& a : m->maps) maps.push_back(a.transpose());
    return make_module(op, "D(" + m->name + ")", m->dims, maps);
}

Morphism dualize_morphism(const Morphism& f, const ModPtr& dsrc, const ModPtr& dtgt) {
    Morphism d{dtgt ? dtgt : dualize(f.tgt), dsrc ? dsrc : dualize(f.src), {}};
    for (const auto& b : f.blocks) d.blocks.push_back(b.transpose());
    return d;
}

Morphism double_dual_iso(const ModPtr& m, const ModPtr& ddm) {
    if (ddm->alg.get() != m->alg.get() || ddm->dims != m->dims) throw Error("not a double dual");
    Morphism iso{ddm, m, {}};
    for (auto d : m->dims) iso.blocks.push_back(Matrix::identity(m->field(), d));
    iso.validate();
    return iso;
}

// ---------- Transpose and tau ----------

namespace {

// For a morphism g: P -> Q between projective sums, the induced map Hom(Q,A) -> Hom(P,A)
// as a morphism between sums of opposite projectives.
Morphism dual_projective_map(const ProjectiveSum& p, const ProjectiveSum& q, const Morphism& g,
                             const ProjectiveSum& hom_q, const ProjectiveSum& hom_p) {
    const Algebra& alg = *p.sum.mod->alg;
    const Algebra& op = *alg.opposite();
    std::vector<Matrix> images;
    for (std::size_t k = 0; k < q.verts.size(); ++k) {
        Matrix img(alg.field(), 1, hom_p.sum.mod->total_dim());
        for (std::size_t l = 0; l < p.verts.size(); ++l) {
            Matrix gl = g.apply_row(p.generator(l));
            Matrix comp = q.sum.projections[k].apply_row(gl);
            Matrix b = proj_element(alg, q.sum.inclusions[k].src, q.verts[k], comp);
            if (b.is_zero()) continue;
            Matrix bop = alg.to_opposite(b);
            const ModPtr& popl = hom_p.sum.inclusions[l].src;
            Matrix local = proj_coords(op, popl, p.verts[l], bop);
            img = img + hom_p.sum.inclusions[l].apply_row(local);
        }
        images.push_back(img);
    }
    return morphism_from_generators(hom_q, hom_p.sum.mod, images);
}

}  // namespace

TransposeData transpose_module(const ModPtr& m) {
    TransposeData td;
    td.pres = minimal_presentation(m);
    AlgPtr op = m->alg->opposite();
    ProjectiveSum hom_p0 = projective_sum(op, td.pres.p0.verts);
    td.hom_p1 = projective_sum(op, td.pres.p1.verts);
    Morphism dstar = dual_projective_map(td.pres.p1, td.pres.p0, td.pres.d, hom_p0, td.hom_p1);
    td.coker = quot_rep(td.hom_p1.sum.mod, image_subspace(dstar), "Tr(" + m->name + ")");
    td.tr = td.coker.mod;
    return td;
}

namespace {
std::size_t count_projective_summands(const ModPtr& m) {
    if (m->total_dim() == 0) return 0;
    std::size_t c = 0;
    for (const auto& s : decompose(m))
        if (is_projective_module(s.mod)) c += s.multiplicity;
    return c;
}
}  // namespace

TauResult tau(const ModPtr& m) {
    TauResult r;
    if (m->total_dim() == 0) {
        r.module = zero_module(m->alg);
        return r;
    }
    r.dropped_projective_summands = count_projective_summands(m);
    TransposeData td = transpose_module(m);
    r.module = rename(dualize(td.tr), "tau(" + m->name + ")");
    return r;
}

TauResult tau_inverse(const ModPtr& m) {
    TauResult r;
    if (m->total_dim() == 0) {
        r.module = zero_module(m->alg);
        return r;
    }
    ModPtr dm = dualize(m);
    r.dropped_projective_summands = count_projective_summands(dm);
    TransposeData td = transpose_module(dm);
    r.module = rename(td.tr, "tauinv(" + m->name + ")");
    return r;
}

Morphism tau_morphism(const Morphism& f, const ModPtr& tau_src, const ModPtr& tau_tgt) {
    return tau_morphism(f, transpose_module(f.src), transpose_module(f.tgt), tau_src, tau_tgt);
}

Morphism tau_morphism(const Morphism& f, const TransposeData& tm, const TransposeData& tn, const ModPtr& tau_src,
                      const ModPtr& tau_tgt) {
    const Presentation& pm = tm.pres;
    const Presentation& pn = tn.pres;
    // Lift f to f0: P0(M) -> P0(N).
    std::vector<Matrix> lifts0;
    Matrix piN = pn.pi.total();
    for (std::size_t k = 0; k < pm.p0.verts.size(); ++k) {
        Matrix target = f.apply_row(pm.pi.apply_row(pm.p0.generator(k)));
        auto x = solve(piN, target.transpose());
        if (!x) throw Error("lifting to projective cover failed");
        Matrix y = x->transpose();
        Matrix ev = pn.p0.sum.mod->act_basis(f.src->alg->idempotent(pm.p0.verts[k]));
        lifts0.push_back((ev * y.transpose()).transpose());
    }
    Morphism f0 = morphism_from_generators(pm.p0, pn.p0.sum.mod, lifts0);
    std::vector<Matrix> lifts1;
    Matrix dN = pn.d.total();
    for (std::size_t l = 0; l < pm.p1.verts.size(); ++l) {
        Matrix z = f0.apply_row(pm.d.apply_row(pm.p1.generator(l)));
        auto x = solve(dN, z.transpose());
        if (!x) throw Error("lifting to first syzygy failed");
        Matrix y = x->transpose();
        Matrix ev = pn.p1.sum.mod->act_basis(f.src->alg->idempotent(pm.p1.verts[l]));
        lifts1.push_back((ev * y.transpose()).transpose());
    }
    Morphism f1 = morphism_from_generators(pm.p1, pn.p1.sum.mod, lifts1);
    Morphism f1star = dual_projective_map(pm.p1, pn.p1, f1, tn.hom_p1, tm.hom_p1);
    Matrix trf = tm.coker.projection.total() * f1star.total() * tn.coker.section;
    Morphism tr = morphism_from_total(tn.tr, tm.tr, trf);
    tr.validate();
    ModPtr ts = tau_src ? tau_src : rename(dualize(tm.tr), "tau(" + f.src->name + ")");
    ModPtr tt = tau_tgt ? tau_tgt : rename(dualize(tn.tr), "tau(" + f.tgt->name + ")");
    Morphism out = dualize_morphism(tr, tt, ts);
    out.src = ts;
    out.tgt = tt;
    out.validate();
    return out;
}

// ---------- Radicals of endomorphism algebras ----------

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return std::uint64_t(u128(a) * b % m); }

std::vector<std::uint64_t> matmul_mod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                      std::size_t n, std::uint64_t m) {
    std::vector<std::uint64_t> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t x = a[i * n + k];
            if (!x) continue;
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + mulmod(x, b[k * n + j], m)) % m;
        }
    return c;
}

// (Tr(lift(z)^(p^i)) mod p^(i+1)) / p^i, reduced mod p.
std::uint32_t trace_functional(const Matrix& z, std::uint32_t p, std::size_t i) {
    const std::size_t n = z.rows();
    std::uint64_t pi = 1;
    for (std::size_t k = 0; k < i; ++k) pi *= p;
    const std::uint64_t mod = pi * p;
    std::vector<std::uint64_t> base(n * n), acc(n * n, 0);
    for (std::size_t k = 0; k < n * n; ++k) base[k] = z.fp_data()[k] % mod;
    for (std::size_t k = 0; k < n; ++k) acc[k * n + k] = 1 % mod;
    std::uint64_t e = pi;
    while (e) {
        if (e & 1) acc = matmul_mod(acc, base, n, mod);
        e >>= 1;
        if (e) base = matmul_mod(base, base, n, mod);
    }
    std::uint64_t tr = 0;
    for (std::size_t k = 0; k < n; ++k) tr = (tr + acc[k * n + k]) % mod;
    if (tr % pi != 0) throw Error("trace functional not divisible; internal radical error");
    return std::uint32_t((tr / pi) % p);
}

Matrix combine(const std::vector<Matrix>& basis, const Matrix& coeffs) {
    Matrix out(basis.front().field(), basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (coeffs.is_zero_at(0, k)) continue;
        out = out + basis[k].scaled(coeffs.get(0, k));
    }
    return out;
}

}  // namespace

Subspace matrix_algebra_radical(const std::vector<Matrix>& basis) {
    if (basis.empty()) return Subspace::zero(Field::prime(2), 0);
    const Field f = basis.front().field();
    const std::size_t d = basis.size();
    if (!f.is_prime()) {
        Matrix g(f, d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) g.set(i, j, (basis[i] * basis[j]).trace());
        return left_kernel(g);
    }
    const std::uint32_t p = f.p;
    const std::size_t n = basis.front().rows();
    std::size_t l = 0;
    for (std::uint64_t pw = p; pw <= n; pw *= p) ++l;
    Subspace cur = Subspace::full(f, d);
    for (std::size_t i = 0; i <= l && cur.dim() > 0; ++i) {
        Matrix g(f, cur.dim(), d);
        for (std::size_t k = 0; k < cur.dim(); ++k) {
            Matrix u = combine(basis, cur.vector(k));
            for (std::size_t j = 0; j < d; ++j) g.set_int(k, j, trace_functional(u * basis[j], p, i));
        }
        Subspace y = left_kernel(g);
        if (y.dim() == 0) return Subspace::zero(f, d);
        cur = Subspace::span(y.basis() * cur.basis());
    }
    return cur;
}

Subspace end_radical(const HomSpace& end) {
    std::vector<Matrix> mats;
    for (const auto& b : end.basis) mats.push_back(b.total());
    if (mats.empty()) return Subspace::zero(end.src->field(), 0);
    return matrix_algebra_radical(mats);
}

// ---------- Decomposition ----------

namespace {

constexpr std::size_t kRandomTries = 64;
constexpr std::uint64_t kQuotientEnumerationLimit = 4096;

bool certify_local(const HomSpace& end, const Subspace& rad) {
    const std::size_t d = end.dim(), r = rad.dim();
    if (d - r == 1) return true;
    const Field f = end.src->field();
    if (!f.is_prime()) return false;
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < d - r; ++k) {
        count *= f.p;
        if (count > kQuotientEnumerationLimit) return false;
    }
    std::vector<std::size_t> freec = rad.free_columns();
    std::vector<Matrix> mats;
    for (const auto& b : end.basis) mats.push_back(b.total());
    for (std::uint64_t code = 1; code < count; ++code) {
        Matrix c(f, 1, d);
        std::uint64_t x = code;
        for (auto col : freec) {
            c.set_int(0, col, long(x % f.p));
            x /= f.p;
        }
        if (!combine(mats, c).is_invertible()) return false;
    }
    return true;
}

struct Leaf {
    ModPtr mod;
    Morphism inclusion;  // into the original module
};

void decompose_rec(const ModPtr& m, const Morphism& inc, std::vector<Leaf>& out, std::mt19937& rng) {
    const std::size_t n = m->total_dim();
    if (n == 0) return;
    HomSpace end = hom_space(m, m);
    if (end.dim() == 1) {
        out.push_back({m, inc});
        return;
    }
    Subspace rad = end_radical(end);
    if (end.dim() - rad.dim() == 1) {
        out.push_back({m, inc});
        return;
    }
    const Field f = m->field();
    std::vector<Matrix> mats;
    for (const auto& b : end.basis) mats.push_back(b.total());
    const Matrix id = Matrix::identity(f, n);
    auto try_split = [&](const Matrix& phi) -> bool {
        Matrix psi = phi.pow(n);
        Subspace im = column_space(psi);
        if (im.dim() == 0 || im.dim() == n) return false;
        Subspace ker = kernel(psi);
        SubRep a = sub_rep(m, im, m->name);
        SubRep b = sub_rep(m, ker, m->name);
        decompose_rec(a.mod, compose(inc, a.inclusion), out, rng);
        decompose_rec(b.mod, compose(inc, b.inclusion), out, rng);
        return true;
    };
    for (const auto& x : mats)
        if (try_split(x)) return;
    std::vector<long> shifts;
    if (f.is_prime()) {
        for (std::uint32_t l = 1; l < f.p && l <= 16; ++l) shifts.push_back(l);
    } else {
        shifts = {1, -1, 2, -2, 3, -3};
    }
    for (const auto& x : mats)
        for (long l : shifts)
            if (try_split(x - id.scaled(Scalar(l)))) return;
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = i + 1; j < mats.size(); ++j)
            if (try_split(mats[i] + mats[j])) return;
    std::uniform_int_distribution<long> coef(0, f.is_prime() ? long(std::min<std::uint32_t>(f.p - 1, 1000)) : 3);
    for (std::size_t t = 0; t < kRandomTries; ++t) {
        Matrix c(f, 1, mats.size());
        for (std::size_t k = 0; k < mats.size(); ++k) c.set_int(0, k, coef(rng));
        if (try_split(combine(mats, c))) return;
    }
    if (certify_local(end, rad)) {
        out.push_back({m, inc});
        return;
    }
    throw Error("decomposition not found within iteration budget for module '" + m->name + "'");
}

}  // namespace

std::vector<Summand> decompose(const ModPtr& m) {
    std::vector<Leaf> leaves;
    std::mt19937 rng(20240601u);
    decompose_rec(m, identity_morphism(m), leaves, rng);
    std::vector<Summand> out;
    for (const auto& lf : leaves) {
        bool placed = false;
        for (auto& s : out) {
            if (s.mod->dims != lf.mod->dims) continue;
            auto iso = find_iso_indecomposable(s.mod, lf.mod);
            if (!iso) continue;
            s.multiplicity += 1;
            Morphism incl = compose(lf.inclusion, *iso);
            incl.src = s.mod;
            s.inclusions.push_back(incl);
            placed = true;
            break;
        }
        if (!placed) {
            Summand s;
            s.mod = rename(lf.mod, m->name + "#" + std::to_string(out.size()));
            Morphism incl = lf.inclusion;
            incl.src = s.mod;
            s.inclusions.push_back(incl);
            out.push_back(s);
        }
    }
    std::size_t total = 0;
    for (const auto& s : out) total += s.mod->total_dim() * s.multiplicity;
    if (total != m->total_dim()) throw Error("decomposition dimension check failed");
    return out;
}

bool is_indecomposable(const ModPtr& m) {
    if (m->total_dim() == 0) return false;
    auto d = decompose(m);
    return d.size() == 1 && d.front().multiplicity == 1;
}

std::optional<Morphism> find_iso_indecomposable(const ModPtr& x, const ModPtr& y) {
    if (x->dims != y->dims) return std::nullopt;
    if (x->total_dim() == 0) return zero_morphism(x, y);
    HomSpace fwd = hom_space(x, y), back = hom_space(y, x);
    for (const auto& f : fwd.basis) {
        if (f.total().is_invertible()) return f;
        for (const auto& g : back.basis)
            if (compose(g, f).total().is_invertible()) return f;
    }
    return std::nullopt;
}

}  // namespace torsidl
