#include "torsidl/window.hpp"

namespace torsidl {

std::string exactness_str(Exactness e) { return e == Exactness::Exact ? "exact" : "window_relative"; }

// ---------- Window ----------

WinPtr Window::build(AlgPtr alg, std::vector<ModPtr> objects, bool complete) {
    std::shared_ptr<Window> w(new Window());
    w->alg_ = alg;
    w->complete_ = complete;
    for (const auto& m : objects) {
        if (m->alg.get() != alg.get()) throw Error("module '" + m->name + "' is over a different algebra");
        m->validate();
        if (!is_indecomposable(m)) throw Error("decomposable object '" + m->name + "'");
    }
    for (std::size_t i = 0; i < objects.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (objects[i]->dims == objects[j]->dims && find_iso_indecomposable(objects[j], objects[i]))
                throw Error("duplicate isomorphism class: '" + objects[j]->name + "' and '" + objects[i]->name + "'");
    w->objects_ = std::move(objects);
    const std::size_t n = w->objects_.size();
    w->homs_.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) w->homs_.push_back(hom_space(w->objects_[x], w->objects_[y]));
    for (std::size_t v = 0; v < alg->num_vertices(); ++v) {
        ProjectiveSum ps = projective_sum(alg, {v});
        auto loc = w->locate(ps.sum.mod);
        if (!loc) throw Error("missing projective P(" + alg->presentation().vertices[v] + ")");
        w->proj_.push_back(loc->first);
        w->proj_gen_.push_back(loc->second.apply_row(ps.generator(0)));
    }
    // Spot check associativity on basis triples.
    std::size_t checked = 0;
    for (std::size_t x = 0; x < n && checked < 64; ++x)
        for (std::size_t y = 0; y < n && checked < 64; ++y)
            for (std::size_t z = 0; z < n && checked < 64; ++z) {
                const std::size_t u = (x + y + z) % n;
                if (!w->hom_dim(x, y) || !w->hom_dim(y, z) || !w->hom_dim(z, u)) continue;
                const Matrix f = Matrix::unit_row(alg->field(), w->hom_dim(x, y), 0);
                const Matrix g = Matrix::unit_row(alg->field(), w->hom_dim(y, z), 0);
                const Matrix h = Matrix::unit_row(alg->field(), w->hom_dim(z, u), 0);
                Matrix lhs = w->compose_coords(x, z, u, h, w->compose_coords(x, y, z, g, f));
                Matrix rhs = w->compose_coords(x, y, u, w->compose_coords(y, z, u, h, g), f);
                if (lhs != rhs) throw Error("composition tensor is not associative");
                ++checked;
            }
    return w;
}

std::size_t Window::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i]->name == name) return i;
    throw Error("unknown object '" + name + "'");
}

std::optional<std::pair<std::size_t, Morphism>> Window::locate(const ModPtr& m) const {
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        if (objects_[i]->dims != m->dims) continue;
        auto iso = find_iso_indecomposable(m, objects_[i]);
        if (iso) return std::make_pair(i, *iso);
    }
    return std::nullopt;
}

const std::vector<Matrix>& Window::tensor(std::size_t x, std::size_t y, std::size_t z) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(x, y, z);
    auto it = tensors_.find(key);
    if (it != tensors_.end()) return it->second;
    const HomSpace& hxy = hom(x, y);
    const HomSpace& hyz = hom(y, z);
    const HomSpace& hxz = hom(x, z);
    std::vector<Matrix> t;
    for (const auto& b : hyz.basis) {
        Matrix m(field(), hxy.dim(), hxz.dim());
        for (std::size_t k = 0; k < hxy.dim(); ++k) {
            Morphism c = compose(b, hxy.basis[k]);
            if (hxz.dim() > 0) m.set_block(k, 0, hxz.coords(c));
        }
        t.push_back(std::move(m));
    }
    return tensors_.emplace(key, std::move(t)).first->second;
}

Matrix Window::post_matrix(std::size_t x, std::size_t y, std::size_t z, const Matrix& g) const {
    const auto& t = tensor(x, y, z);
    Matrix m(field(), hom_dim(x, y), hom_dim(x, z));
    for (std::size_t b = 0; b < t.size(); ++b) {
        if (g.is_zero_at(0, b)) continue;
        m = m + t[b].scaled(g.get(0, b));
    }
    return m;
}

Matrix Window::pre_matrix(std::size_t x, std::size_t y, std::size_t z, const Matrix& f) const {
    const auto& t = tensor(x, y, z);
    Matrix m(field(), hom_dim(y, z), hom_dim(x, z));
    for (std::size_t b = 0; b < t.size(); ++b)
        if (hom_dim(x, z) > 0) m.set_block(b, 0, f * t[b]);
    return m;
}

Matrix Window::compose_coords(std::size_t x, std::size_t y, std::size_t z, const Matrix& g, const Matrix& f) const {
    if (hom_dim(x, z) == 0) return Matrix(field(), 1, 0);
    return f * post_matrix(x, y, z, g);
}

Morphism Window::morphism(std::size_t x, std::size_t y, const Matrix& c) const { return hom(x, y).element(c); }

Matrix Window::coords(std::size_t x, std::size_t y, const Morphism& f) const {
    if (hom_dim(x, y) == 0) {
        if (!f.is_zero()) throw Error("morphism is not in the Hom space");
        return Matrix(field(), 1, 0);
    }
    if (!hom(x, y).contains(f)) throw Error("morphism is not in the Hom space");
    return hom(x, y).coords(f);
}

std::optional<std::size_t> object_index(const Window& w, const ModPtr& m) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w.object(i).get() == m.get()) return i;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& o = w.object(i);
        if (o->alg.get() == m->alg.get() && o->dims == m->dims && o->maps == m->maps) return i;
    }
    return std::nullopt;
}

// ---------- Ideals ----------

std::size_t Ideal::total_dim() const {
    std::size_t s = 0;
    for (const auto& p : pieces) s += p.dim();
    return s;
}

Ideal zero_ideal(const WinPtr& w) {
    Ideal i{w, {}};
    for (std::size_t x = 0; x < w->size(); ++x)
        for (std::size_t y = 0; y < w->size(); ++y) i.pieces.push_back(Subspace::zero(w->field(), w->hom_dim(x, y)));
    return i;
}

Ideal unit_ideal(const WinPtr& w) {
    Ideal i{w, {}};
    for (std::size_t x = 0; x < w->size(); ++x)
        for (std::size_t y = 0; y < w->size(); ++y) i.pieces.push_back(Subspace::full(w->field(), w->hom_dim(x, y)));
    return i;
}

Ideal ideal_closure(const Ideal& seed) {
    const WinPtr& w = seed.w;
    const std::size_t n = w->size();
    const Field f = w->field();
    // Left pass: post-compose with all morphisms.
    std::vector<std::vector<Matrix>> rows(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Subspace& s = seed.at(x, y);
            if (s.dim() == 0) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (w->hom_dim(x, z) == 0) continue;
                for (const auto& t : w->tensor(x, y, z)) rows[x * n + z].push_back(s.basis() * t);
            }
        }
    std::vector<Subspace> left(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
        const std::size_t x = k / n, z = k % n;
        left[k] = Subspace::span(Matrix::vstack(f, w->hom_dim(x, z), rows[k]));
    }
    // Right pass: pre-compose with all morphisms.
    std::vector<std::vector<Matrix>> rows2(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            const Subspace& s = left[x * n + z];
            for (std::size_t i = 0; i < s.dim(); ++i)
                for (std::size_t v = 0; v < n; ++v) {
                    if (w->hom_dim(v, x) == 0 || w->hom_dim(v, z) == 0) continue;
                    rows2[v * n + z].push_back(w->post_matrix(v, x, z, s.vector(i)));
                }
        }
    Ideal out{w, {}};
    for (std::size_t k = 0; k < n * n; ++k) {
        const std::size_t v = k / n, z = k % n;
        out.pieces.push_back(Subspace::span(Matrix::vstack(f, w->hom_dim(v, z), rows2[k])));
    }
    return out;
}

Ideal ideal_from_generators(const WinPtr& w, const std::vector<IdealGenerator>& gens) {
    Ideal seed = zero_ideal(w);
    for (const auto& g : gens) {
        if (g.src >= w->size() || g.tgt >= w->size()) throw Error("generator outside the window");
        seed.at(g.src, g.tgt) = sum(seed.at(g.src, g.tgt), Subspace::span(g.coords));
    }
    return ideal_closure(seed);
}

Ideal ideal_from_morphisms(const WinPtr& w, const std::vector<Morphism>& gens) {
    std::vector<IdealGenerator> g;
    for (const auto& m : gens) {
        auto x = object_index(*w, m.src), y = object_index(*w, m.tgt);
        if (!x || !y) throw Error("foreign morphism: endpoints are not window objects");
        g.push_back({*x, *y, w->coords(*x, *y, m)});
    }
    return ideal_from_generators(w, g);
}

Ideal ideal_of_subcategory(const WinPtr& w, const std::vector<std::size_t>& objs) {
    std::vector<IdealGenerator> g;
    for (auto c : objs) {
        if (c >= w->size()) throw Error("object outside the window");
        g.push_back({c, c, w->coords(c, c, identity_morphism(w->object(c)))});
    }
    return ideal_from_generators(w, g);
}

namespace {
void same_window(const Ideal& a, const Ideal& b) {
    if (a.w.get() != b.w.get()) throw Error("window mismatch");
}
}  // namespace

Ideal ideal_meet(const Ideal& a, const Ideal& b) {
    same_window(a, b);
    Ideal out{a.w, {}};
    for (std::size_t k = 0; k < a.pieces.size(); ++k) out.pieces.push_back(intersect(a.pieces[k], b.pieces[k]));
    return out;
}

Ideal ideal_join(const Ideal& a, const Ideal& b) {
    same_window(a, b);
    Ideal out{a.w, {}};
    for (std::size_t k = 0; k < a.pieces.size(); ++k) out.pieces.push_back(sum(a.pieces[k], b.pieces[k]));
    return out;
}

bool ideal_leq(const Ideal& a, const Ideal& b) {
    same_window(a, b);
    for (std::size_t k = 0; k < a.pieces.size(); ++k)
        if (!subspace_leq(a.pieces[k], b.pieces[k])) return false;
    return true;
}

bool ideal_contains(const Ideal& i, std::size_t x, std::size_t y, const Matrix& coords) {
    return i.at(x, y).contains(coords);
}

bool is_two_sided(const Ideal& i) {
    const WinPtr& w = i.w;
    const std::size_t n = w->size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Subspace& s = i.at(x, y);
            if (s.dim() == 0) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (w->hom_dim(x, z) == 0) continue;
                for (const auto& t : w->tensor(x, y, z))
                    if (!subspace_leq(Subspace::span(s.basis() * t), i.at(x, z))) return false;
            }
            for (std::size_t v = 0; v < n; ++v) {
                if (w->hom_dim(v, y) == 0 || w->hom_dim(v, x) == 0) continue;
                for (std::size_t k = 0; k < s.dim(); ++k)
                    if (!subspace_leq(Subspace::span(w->post_matrix(v, x, y, s.vector(k))), i.at(v, y))) return false;
            }
        }
    return true;
}

Ideal radical_ideal(const WinPtr& w) {
    Ideal r = unit_ideal(w);
    for (std::size_t x = 0; x < w->size(); ++x) r.at(x, x) = end_radical(w->hom(x, x));
    return r;
}

Ideal ideal_product(const Ideal& i2, const Ideal& i1) {
    same_window(i2, i1);
    const WinPtr& w = i1.w;
    const std::size_t n = w->size();
    Ideal out{w, {}};
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            std::vector<Matrix> rows;
            if (w->hom_dim(x, z) > 0)
                for (std::size_t y = 0; y < n; ++y) {
                    const Subspace& a = i1.at(x, y);
                    const Subspace& b = i2.at(y, z);
                    if (a.dim() == 0 || b.dim() == 0) continue;
                    for (std::size_t k = 0; k < b.dim(); ++k) rows.push_back(a.basis() * w->post_matrix(x, y, z, b.vector(k)));
                }
            out.pieces.push_back(Subspace::span(Matrix::vstack(w->field(), w->hom_dim(x, z), rows)));
        }
    return out;
}

Ideal ideal_power(const Ideal& i, std::size_t n) {
    Ideal p = unit_ideal(i.w);
    for (std::size_t k = 0; k < n; ++k) p = ideal_product(i, p);
    return p;
}

namespace {
std::size_t default_budget(const Window& w) {
    std::size_t s = 0;
    for (std::size_t x = 0; x < w.size(); ++x)
        for (std::size_t y = 0; y < w.size(); ++y) s += w.hom_dim(x, y);
    return std::max<std::size_t>(64, s + 2);
}
}  // namespace

OmegaResult omega_power(const Ideal& i, const Ideal* floor, std::size_t budget) {
    if (budget == 0) budget = default_budget(*i.w);
    Ideal plain = i;
    Ideal cur = floor ? ideal_join(i, *floor) : i;
    for (std::size_t step = 1; step <= budget; ++step) {
        plain = ideal_product(i, plain);
        Ideal next = floor ? ideal_join(plain, *floor) : plain;
        if (!ideal_leq(next, cur)) throw Error("radical power chain is not descending");
        if (next == cur) return {cur, step};
        cur = next;
    }
    throw Error("omega power did not stabilize within budget");
}

// ---------- Omega certificates ----------

namespace {

struct TauStep {
    bool defined = false;
    std::size_t target = 0;
    ModPtr module;     // computed translate
    Morphism theta;    // module -> window object
};

std::vector<std::size_t> periodic_objects(const std::vector<TauStep>& steps) {
    std::vector<std::size_t> out;
    const std::size_t n = steps.size();
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<bool> seen(n, false);
        std::size_t cur = x;
        bool periodic = false;
        while (true) {
            if (seen[cur]) { periodic = true; break; }
            seen[cur] = true;
            if (!steps[cur].defined) break;
            cur = steps[cur].target;
        }
        if (periodic) out.push_back(x);
    }
    return out;
}

Morphism inverse_iso(const Morphism& theta) {
    auto inv = theta.total().inverse();
    if (!inv) throw Error("expected an isomorphism");
    return morphism_from_total(theta.tgt, theta.src, *inv);
}

}  // namespace

OmegaCertificate omega_certificate(const WinPtr& w) {
    OmegaCertificate c;
    c.ideal = zero_ideal(w);
    const AlgPtr& alg = w->algebra();
    if (!alg->is_hereditary()) return c;
    c.applicable = true;
    const std::size_t n = w->size();
    std::vector<TauStep> fwd(n), bwd(n);
    std::vector<std::optional<TransposeData>> tds(n);
    for (std::size_t x = 0; x < n; ++x) {
        const ModPtr& m = w->object(x);
        if (!is_projective_module(m)) {
            tds[x] = transpose_module(m);
            ModPtr t = rename(dualize(tds[x]->tr), "tau(" + m->name + ")");
            if (t->total_dim() > 0) {
                auto loc = w->locate(t);
                if (loc) fwd[x] = {true, loc->first, t, loc->second};
            }
        }
        ModPtr ti = tau_inverse(m).module;
        if (ti->total_dim() > 0) {
            auto loc = w->locate(ti);
            if (loc) bwd[x] = {true, loc->first, ti, loc->second};
        }
    }
    c.tau_periodic = periodic_objects(fwd);
    c.tau_inv_periodic = periodic_objects(bwd);
    Ideal seed = zero_ideal(w);
    for (auto y : c.tau_periodic)
        for (auto p : w->projective_objects()) seed.at(p, y) = Subspace::full(w->field(), w->hom_dim(p, y));
    std::vector<std::size_t> injectives;
    for (std::size_t v = 0; v < alg->num_vertices(); ++v) {
        auto loc = w->locate(injective(alg, v));
        if (loc) injectives.push_back(loc->first);
    }
    for (auto y : c.tau_inv_periodic)
        for (auto q : injectives) seed.at(y, q) = Subspace::full(w->field(), w->hom_dim(y, q));
    Ideal omega = ideal_closure(seed);
    // Transport along tau: a bijection Hom(x,y) -> Hom(tau x, tau y) for non-projective x, y.
    struct Transport {
        std::size_t x, y, tx, ty;
        Matrix map;  // rows: coords in Hom(x,y) -> coords in Hom(tx,ty)
        Matrix inv;
    };
    std::vector<Transport> transports;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!fwd[x].defined || !fwd[y].defined) continue;
            const std::size_t tx = fwd[x].target, ty = fwd[y].target;
            const std::size_t d = w->hom_dim(x, y);
            if (d == 0 || d != w->hom_dim(tx, ty)) continue;
            Morphism tinv = inverse_iso(fwd[x].theta);
            Matrix map(w->field(), d, d);
            for (std::size_t k = 0; k < d; ++k) {
                Morphism tf = tau_morphism(w->hom(x, y).basis[k], *tds[x], *tds[y], fwd[x].module, fwd[y].module);
                Morphism moved = compose(fwd[y].theta, compose(tf, tinv));
                moved.src = w->object(tx);
                moved.tgt = w->object(ty);
                map.set_block(k, 0, w->coords(tx, ty, moved));
            }
            auto inv = map.inverse();
            if (!inv) continue;
            transports.push_back({x, y, tx, ty, map, *inv});
        }
    while (true) {
        Ideal next = omega;
        for (const auto& t : transports) {
            const Subspace& src = omega.at(t.x, t.y);
            if (src.dim() > 0) next.at(t.tx, t.ty) = sum(next.at(t.tx, t.ty), Subspace::span(src.basis() * t.map));
            const Subspace& dst = omega.at(t.tx, t.ty);
            if (dst.dim() > 0) next.at(t.x, t.y) = sum(next.at(t.x, t.y), Subspace::span(dst.basis() * t.inv));
        }
        next = ideal_closure(next);
        if (next == omega) break;
        omega = next;
    }
    c.ideal = omega;
    return c;
}

// ---------- Radical tower ----------

RadicalTower make_radical_tower(const WinPtr& w) {
    RadicalTower t;
    t.w = w;
    t.rad = radical_ideal(w);
    t.cert = omega_certificate(w);
    t.window_powers.push_back(unit_ideal(w));
    t.powers.push_back(unit_ideal(w));
    std::size_t budget = default_budget(*w);
    for (std::size_t n = 1;; ++n) {
        if (n > budget) throw Error("radical powers did not stabilize within budget");
        t.power(n);
        if (n >= 2 && t.powers[n] == t.powers[n - 1]) {
            t.omega = t.powers[n];
            t.omega_step = n - 1;
            break;
        }
    }
    if (!ideal_leq(t.cert.ideal, t.omega)) throw Error("omega certificate not contained in the stabilized power");
    return t;
}

const Ideal& RadicalTower::power(std::size_t n) {
    while (powers.size() <= n) {
        const std::size_t k = powers.size();
        window_powers.push_back(k == 1 ? rad : ideal_product(rad, window_powers.back()));
        powers.push_back(ideal_join(window_powers.back(), cert.ideal));
        if (!ideal_leq(powers[k], powers[k - 1])) throw Error("radical power chain is not descending");
    }
    return powers[n];
}

const Ideal& RadicalTower::omega_power_k(std::size_t k) {
    if (k == 0) throw Error("omega power index must be positive");
    if (omega_powers.empty()) omega_powers.push_back(omega);
    while (omega_powers.size() < k) omega_powers.push_back(ideal_product(omega, omega_powers.back()));
    return omega_powers[k - 1];
}

}  // namespace torsidl
