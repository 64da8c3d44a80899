#include "torsidl/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace torsidl {

namespace {

// Nonzero vectors of F_p^n with leading coefficient 1.
std::vector<Matrix> projective_points(const Field& f, std::size_t n, std::uint64_t budget) {
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < n; ++k) {
        count *= f.p;
        if (count > budget) throw Error("enumeration budget exceeded");
    }
    std::vector<Matrix> out;
    for (std::uint64_t code = 1; code < count; ++code) {
        Matrix v(f, 1, n);
        std::uint64_t r = code;
        std::size_t lead = n;
        for (std::size_t k = 0; k < n; ++k) {
            v.set_int(0, k, long(r % f.p));
            if (r % f.p && lead == n) lead = k;
            r /= f.p;
        }
        if (v.is_one_at(0, lead)) out.push_back(v);
    }
    return out;
}

std::vector<Subspace> all_submodules(const ModPtr& m, std::uint64_t budget) {
    const Field f = m->field();
    const std::size_t n = m->total_dim();
    std::map<std::string, Subspace> found;
    Subspace zero = Subspace::zero(f, n);
    found.emplace(zero.key(), zero);
    std::vector<Subspace> principal;
    for (const auto& v : projective_points(f, n, budget)) {
        Subspace s = submodule_generated(m, v);
        if (found.emplace(s.key(), s).second) principal.push_back(s);
    }
    std::vector<Subspace> queue;
    for (auto& kv : found) queue.push_back(kv.second);
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (const auto& p : principal) {
            Subspace s = sum(queue[q], p);
            if (found.emplace(s.key(), s).second) queue.push_back(s);
        }
    std::vector<Subspace> out;
    for (auto& kv : found) out.push_back(kv.second);
    return out;
}

bool subfunctor_less(const Subfunctor& a, const Subfunctor& b) {
    std::size_t da = 0, db = 0;
    for (const auto& v : a.values) da += v.dim();
    for (const auto& v : b.values) db += v.dim();
    if (da != db) return da < db;
    return a.key() < b.key();
}

std::string dims_label(const Subfunctor& t) {
    std::string s = "(";
    for (std::size_t x = 0; x < t.values.size(); ++x) s += (x ? "," : "") + std::to_string(t.at(x).dim());
    return s + ")";
}

std::optional<std::pair<std::size_t, Matrix>> drop_witness(const Subfunctor& big, const Subfunctor& small) {
    for (std::size_t x = 0; x < big.values.size(); ++x)
        for (std::size_t k = 0; k < big.at(x).dim(); ++k)
            if (!small.at(x).contains(big.at(x).vector(k))) return std::make_pair(x, big.at(x).vector(k));
    return std::nullopt;
}

void fill_witnesses(ChainCertificate& c) {
    c.strict = true;
    c.witnesses.clear();
    for (std::size_t i = 0; i + 1 < c.chain.size(); ++i) {
        if (!subfunctor_leq(c.chain[i + 1], c.chain[i])) throw Error("certificate chain is not descending");
        auto wit = drop_witness(c.chain[i], c.chain[i + 1]);
        if (!wit) {
            c.strict = false;
            continue;
        }
        c.witnesses.push_back(*wit);
    }
}

}  // namespace

// ---------- Subfunctor lattice ----------

std::size_t SubfunctorLattice::index_of(const Subfunctor& t) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == t) return i;
    throw Error("subfunctor not in the lattice");
}

Subfunctor principal_subfunctor(const WinPtr& w, std::size_t x, const Matrix& v) {
    std::vector<Matrix> seeds;
    for (std::size_t y = 0; y < w->size(); ++y)
        seeds.push_back(y == x ? v : Matrix(w->field(), 0, w->object(y)->total_dim()));
    return functorial_closure(w, seeds);
}

Subfunctor subfunctor_from_morphism(const WinPtr& w, const ModPtr& m, const Matrix& image_of_one) {
    BarResult b = bar_morphism(m, image_of_one);
    Subfunctor t{w, {}};
    for (std::size_t y = 0; y < w->size(); ++y) {
        HomSpace h = hom_space(b.power, w->object(y));
        std::vector<Matrix> rows;
        for (const auto& g : h.basis) rows.push_back(g.apply_row(b.image_of_one));
        t.values.push_back(Subspace::span(Matrix::vstack(w->field(), w->object(y)->total_dim(), rows)));
    }
    validate_subfunctor(t);
    return t;
}

SubfunctorLattice enumerate_subfunctors(const WinPtr& w, std::uint64_t budget) {
    if (!w->field().is_prime()) throw Error("subfunctor enumeration requires a finite prime field");
    if (!w->complete()) throw Error("subfunctor enumeration requires a complete window");
    if (w->size() > 20) throw Error("enumeration budget exceeded: more than 20 window objects");
    SubfunctorLattice out;
    out.w = w;
    std::map<std::string, Subfunctor> found;
    Subfunctor zero = zero_subfunctor(w);
    found.emplace(zero.key(), zero);
    std::vector<Subfunctor> principal;
    for (std::size_t x = 0; x < w->size(); ++x)
        for (const auto& v : projective_points(w->field(), w->object(x)->total_dim(), budget)) {
            Subfunctor t = principal_subfunctor(w, x, v);
            if (found.emplace(t.key(), t).second) principal.push_back(t);
        }
    out.principal_count = principal.size();
    std::vector<Subfunctor> queue;
    for (auto& kv : found) queue.push_back(kv.second);
    for (std::size_t q = 0; q < queue.size(); ++q) {
        if (queue.size() > budget) throw Error("enumeration budget exceeded");
        for (const auto& p : principal) {
            Subfunctor s = subfunctor_join(queue[q], p);
            if (found.emplace(s.key(), s).second) queue.push_back(s);
        }
    }
    for (auto& kv : found) {
        validate_subfunctor(kv.second);
        out.elements.push_back(kv.second);
    }
    std::sort(out.elements.begin(), out.elements.end(), subfunctor_less);
    std::vector<std::string> labels;
    for (const auto& t : out.elements) labels.push_back(dims_label(t) + "#" + std::to_string(labels.size()));
    out.lattice = make_lattice(labels, [&](std::size_t a, std::size_t b) { return subfunctor_leq(out.elements[a], out.elements[b]); });
    // Lattice tables agree with objectwise intersection and sum.
    for (std::size_t a = 0; a < out.elements.size(); ++a)
        for (std::size_t b = 0; b < out.elements.size(); ++b) {
            if (out.elements[out.lattice.meet[a][b]] != subfunctor_meet(out.elements[a], out.elements[b]))
                throw Error("lattice meet differs from the objectwise intersection");
            if (out.elements[out.lattice.join[a][b]] != subfunctor_join(out.elements[a], out.elements[b]))
                throw Error("lattice join differs from the objectwise sum");
        }
    if (out.lattice.size() <= 200 && !out.lattice.is_modular()) throw Error("subfunctor lattice is not modular");
    return out;
}

// ---------- m-dimension ----------

std::size_t interval_length(const FiniteLattice& l, std::size_t a, std::size_t b) {
    if (!l.leq[a][b]) throw Error("not an interval");
    // Longest chain from a to b, by dynamic programming over elements in the interval.
    std::vector<std::size_t> inside;
    for (std::size_t x = 0; x < l.size(); ++x)
        if (l.leq[a][x] && l.leq[x][b]) inside.push_back(x);
    std::vector<std::size_t> below(l.size(), 0);
    for (auto x : inside)
        for (auto z : inside) below[x] += l.leq[z][x];
    std::stable_sort(inside.begin(), inside.end(), [&](std::size_t x, std::size_t y) { return below[x] < below[y]; });
    std::map<std::size_t, std::size_t> best;
    for (auto x : inside) {
        std::size_t v = 0;
        for (auto& [y, len] : best)
            if (y != x && l.leq[y][x]) v = std::max(v, len + 1);
        best[x] = v;
    }
    return best[b];
}

long mdim(const FiniteLattice& l) {
    if (l.size() == 1) return -1;
    FiniteLattice cur = l;
    for (long alpha = 0;; ++alpha) {
        std::vector<std::size_t> parent(cur.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        // Every interval of a finite lattice has finite length, so x ~ y for all pairs.
        for (std::size_t x = 0; x < cur.size(); ++x)
            for (std::size_t y = x + 1; y < cur.size(); ++y) {
                interval_length(cur, cur.meet[x][y], cur.join[x][y]);
                parent[find(x)] = find(y);
            }
        std::vector<std::size_t> reps;
        for (std::size_t x = 0; x < cur.size(); ++x)
            if (find(x) == x) reps.push_back(x);
        if (reps.size() == 1) return alpha;
        if (reps.size() == cur.size()) throw Error("m-dimension collapse stalled");
        std::vector<std::string> labels;
        for (auto r : reps) labels.push_back(cur.labels[r]);
        const FiniteLattice prev = cur;
        cur = make_lattice(labels, [&](std::size_t a, std::size_t b) {
            for (std::size_t x = 0; x < prev.size(); ++x)
                for (std::size_t y = 0; y < prev.size(); ++y)
                    if (find(x) == reps[a] && find(y) == reps[b] && prev.leq[x][y]) return true;
            return false;
        });
    }
}

// ---------- Extensions and torsion classes ----------

std::vector<ModPtr> extension_middle_terms(const ModPtr& x, const ModPtr& y, std::uint64_t budget) {
    const AlgPtr& alg = x->alg;
    const Field f = alg->field();
    if (!f.is_prime()) throw Error("extension enumeration requires a finite prime field");
    const auto& arrows = alg->arrows();
    const std::size_t nv = alg->num_vertices();
    // Parameter layout: one block dimY_t x dimX_s per arrow.
    std::vector<std::size_t> off(arrows.size() + 1, 0);
    for (std::size_t a = 0; a < arrows.size(); ++a)
        off[a + 1] = off[a] + y->dims[arrows[a].dst] * x->dims[arrows[a].src];
    const std::size_t np = off.back();
    auto build = [&](const Matrix& delta) {
        auto e = std::make_shared<ModuleRep>();
        e->alg = alg;
        e->name = "E";
        for (std::size_t v = 0; v < nv; ++v) e->dims.push_back(y->dims[v] + x->dims[v]);
        for (std::size_t a = 0; a < arrows.size(); ++a) {
            const std::size_t s = arrows[a].src, t = arrows[a].dst;
            Matrix m(f, e->dims[t], e->dims[s]);
            if (y->maps[a].rows() && y->maps[a].cols()) m.set_block(0, 0, y->maps[a]);
            if (x->maps[a].rows() && x->maps[a].cols()) m.set_block(y->dims[t], y->dims[s], x->maps[a]);
            const std::size_t r = y->dims[t], c = x->dims[s];
            if (r && c) m.set_block(0, y->dims[s], Matrix::unflatten(delta, r, c, off[a]));
            e->maps.push_back(m);
        }
        return std::shared_ptr<const ModuleRep>(e);
    };
    // Cocycles: the relations are linear in delta.
    const auto& pres = alg->presentation();
    std::vector<Matrix> rows;
    for (std::size_t k = 0; k < np; ++k) {
        auto e = build(Matrix::unit_row(f, np, k));
        std::vector<Matrix> vals;
        for (const auto& rel : pres.relations) {
            Matrix acc(f, e->total_dim(), e->total_dim());
            for (const auto& term : rel) {
                Path p;
                for (const auto& lbl : term.path) p.arrows.push_back(pres.arrow_index(lbl));
                p.start = arrows[p.arrows.front()].src;
                p.end = arrows[p.arrows.back()].dst;
                acc = acc + e->act_path(p).scaled(term.coeff);
            }
            vals.push_back(acc.flatten());
        }
        std::size_t w = 0;
        for (const auto& v : vals) w += v.cols();
        Matrix row(f, 1, w);
        std::size_t at = 0;
        for (const auto& v : vals) {
            if (v.cols()) row.set_block(0, at, v);
            at += v.cols();
        }
        rows.push_back(row);
    }
    Subspace z = Subspace::full(f, np);
    if (!rows.empty() && rows.front().cols() > 0) z = left_kernel(Matrix::vstack(f, rows.front().cols(), rows));
    // Coboundaries delta_a = N_a h_s - h_t M_a.
    std::vector<Matrix> cob;
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = 0; i < y->dims[v]; ++i)
            for (std::size_t j = 0; j < x->dims[v]; ++j) {
                Matrix h(f, y->dims[v], x->dims[v]);
                h.set_int(i, j, 1);
                Matrix d(f, 1, np);
                for (std::size_t a = 0; a < arrows.size(); ++a) {
                    const std::size_t s = arrows[a].src, t = arrows[a].dst;
                    if (!y->dims[t] || !x->dims[s]) continue;
                    Matrix blk(f, y->dims[t], x->dims[s]);
                    if (s == v && y->maps[a].cols()) blk = blk + y->maps[a] * h;
                    if (t == v && x->maps[a].rows()) blk = blk - h * x->maps[a];
                    d.set_block(0, off[a], blk.flatten());
                }
                cob.push_back(d);
            }
    Subspace b = Subspace::span(Matrix::vstack(f, np, cob));
    if (!subspace_leq(b, z)) throw Error("coboundaries are not cocycles");
    std::vector<Matrix> comp;
    Subspace acc = b;
    for (std::size_t k = 0; k < z.dim(); ++k)
        if (!acc.contains(z.vector(k))) {
            comp.push_back(z.vector(k));
            acc = sum(acc, Subspace::span(z.vector(k)));
        }
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < comp.size(); ++k) {
        count *= f.p;
        if (count > budget) throw Error("extension enumeration budget exceeded");
    }
    std::vector<ModPtr> out;
    for (std::uint64_t code = 0; code < count; ++code) {
        Matrix delta(f, 1, np);
        std::uint64_t r = code;
        for (const auto& c : comp) {
            if (r % f.p) delta = delta + c.scaled(Scalar(long(r % f.p)));
            r /= f.p;
        }
        auto e = build(delta);
        e->validate();
        out.push_back(e);
    }
    return out;
}

TorsionClassCensus torsion_classes(const WinPtr& w, std::size_t ext_dim_bound) {
    if (!w->complete()) throw Error("torsion class census requires a complete window");
    if (!w->field().is_prime()) throw Error("torsion class census requires a finite prime field");
    const std::size_t n = w->size();
    if (n > 20) throw Error("enumeration budget exceeded: more than 20 window objects");
    TorsionClassCensus census;
    census.ext_dim_bound = ext_dim_bound;
    // On a complete window the Hom dimensions from all indecomposables determine a module up to isomorphism,
    // so they key a cache of decompositions.
    std::map<std::vector<std::size_t>, std::uint32_t> summand_cache;
    auto summand_set = [&](const ModPtr& m) {
        std::uint32_t mask = 0;
        if (m->total_dim() == 0) return mask;
        std::vector<std::size_t> key;
        for (std::size_t x = 0; x < n; ++x) key.push_back(hom_space(w->object(x), m).dim());
        auto it = summand_cache.find(key);
        if (it != summand_cache.end()) return it->second;
        for (const auto& s : decompose(m)) {
            auto loc = w->locate(s.mod);
            if (!loc) throw Error("module outside a complete window");
            mask |= 1u << loc->first;
        }
        summand_cache.emplace(key, mask);
        return mask;
    };
    // Quotient closure data: for each object, the summand sets of its quotients.
    std::vector<std::vector<std::uint32_t>> quotients(n);
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& u : all_submodules(w->object(x), 1000000))
            quotients[x].push_back(summand_set(quot_rep(w->object(x), u).mod));
    // Multisets of objects with bounded total dimension, as count vectors.
    std::vector<std::vector<std::size_t>> multisets;
    std::vector<std::size_t> cur(n, 0);
    std::function<void(std::size_t, std::size_t)> gen = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            if (used > 0) multisets.push_back(cur);
            return;
        }
        const std::size_t d = w->object(i)->total_dim();
        for (std::size_t c = 0; used + c * d <= ext_dim_bound; ++c) {
            cur[i] = c;
            gen(i + 1, used + c * d);
        }
        cur[i] = 0;
    };
    gen(0, 0);
    auto ms_dim = [&](const std::vector<std::size_t>& c) {
        std::size_t d = 0;
        for (std::size_t i = 0; i < n; ++i) d += c[i] * w->object(i)->total_dim();
        return d;
    };
    auto ms_mask = [&](const std::vector<std::size_t>& c) {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (c[i]) m |= 1u << i;
        return m;
    };
    auto ms_module = [&](const std::vector<std::size_t>& c) {
        std::vector<ModPtr> parts;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < c[i]; ++k) parts.push_back(w->object(i));
        return parts.size() == 1 ? parts[0] : direct_sum(parts).mod;
    };
    // Extension data: (support of X, support of Y, summand set of a middle term).
    struct Ext {
        std::uint32_t xs, ys, middle;
    };
    std::vector<Ext> exts;
    for (const auto& cx : multisets)
        for (const auto& cy : multisets) {
            if (ms_dim(cx) + ms_dim(cy) > ext_dim_bound) continue;
            ModPtr mx = ms_module(cx), my = ms_module(cy);
            std::set<std::uint32_t> seen;
            for (const auto& e : extension_middle_terms(mx, my)) seen.insert(summand_set(e));
            for (auto m : seen) exts.push_back({ms_mask(cx), ms_mask(cy), m});
        }
    std::vector<std::vector<bool>> hom_zero(n, std::vector<bool>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) hom_zero[x][y] = w->hom_dim(x, y) == 0;
    auto to_list = [&](std::uint32_t m) {
        std::vector<std::size_t> l;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1u) l.push_back(i);
        return l;
    };
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            if (s >> x & 1u)
                for (auto q : quotients[x])
                    if ((q & ~s) != 0) ok = false;
        for (std::size_t e = 0; e < exts.size() && ok; ++e)
            if ((exts[e].xs & ~s) == 0 && (exts[e].ys & ~s) == 0 && (exts[e].middle & ~s) != 0) ok = false;
        if (ok) census.classes.push_back(to_list(s));
        // Orthogonality oracle.
        std::uint32_t right = 0, left = 0;
        for (std::size_t y = 0; y < n; ++y) {
            bool z = true;
            for (std::size_t x = 0; x < n; ++x)
                if ((s >> x & 1u) && !hom_zero[x][y]) z = false;
            if (z) right |= 1u << y;
        }
        for (std::size_t x = 0; x < n; ++x) {
            bool z = true;
            for (std::size_t y = 0; y < n; ++y)
                if ((right >> y & 1u) && !hom_zero[x][y]) z = false;
            if (z) left |= 1u << x;
        }
        if (left == s) census.orthogonal.push_back(to_list(s));
    }
    return census;
}

// ---------- Chains ----------

ChainCertificate descending_chain_certificate(RadicalTower& tower, std::size_t x, std::size_t y, const Matrix& psi,
                                              std::size_t depth, std::optional<Matrix> element) {
    const WinPtr& w = tower.w;
    if (psi.is_zero()) throw Error("precondition: morphism is zero");
    if (!tower.omega.at(x, y).contains(psi)) throw Error("precondition: morphism is not in the certified rad^omega");
    tower.power(depth);
    if (!tower.window_powers[depth].at(x, y).contains(psi))
        throw Error("no factorization of depth " + std::to_string(depth) + " found in window");
    const Matrix f = w->morphism(x, y, psi).total();
    if (!element) {
        for (std::size_t k = 0; k < w->object(x)->total_dim() && !element; ++k) {
            Matrix e = Matrix::unit_row(w->field(), w->object(x)->total_dim(), k);
            if (!(f * e.transpose()).is_zero()) element = e;
        }
    }
    const Matrix m = element->transpose();
    if ((f * m).is_zero()) throw Error("precondition: psi kills the chosen element");
    ChainCertificate c;
    c.depth = depth;
    for (std::size_t k = 0; k <= depth; ++k) {
        std::vector<Matrix> seeds;
        for (std::size_t z = 0; z < w->size(); ++z) {
            std::vector<Matrix> rows;
            if (k == depth) {
                if (z == y) rows.push_back((f * m).transpose());
            } else {
                const Subspace& s = tower.window_powers[k].at(x, z);
                for (std::size_t b = 0; b < s.dim(); ++b) rows.push_back((w->morphism(x, z, s.vector(b)).total() * m).transpose());
            }
            seeds.push_back(Matrix::vstack(w->field(), w->object(z)->total_dim(), rows));
        }
        c.chain.push_back(functorial_closure(w, seeds));
    }
    fill_witnesses(c);
    c.description = "radical factorization of depth " + std::to_string(depth) + " from " + w->object(x)->name + " to " +
                    w->object(y)->name;
    return c;
}

DiamondChain diamond_power_chain(const WinPtr& w, const std::vector<std::size_t>& objs, std::size_t n_max) {
    DiamondChain d;
    if (n_max == 0) return d;
    IdealTorsionPair p = torsion_closure(ideal_of_subcategory(w, objs));
    d.pairs.push_back(p);
    for (std::size_t k = 1; k < n_max; ++k) d.pairs.push_back(pair_diamond(d.pairs.back(), p));
    for (std::size_t k = 0; k + 1 < d.pairs.size(); ++k) {
        const Subfunctor &a = d.pairs[k].t, &b = d.pairs[k + 1].t;
        if (!subfunctor_leq(a, b)) throw Error("diamond powers are not increasing");
        auto wit = drop_witness(b, a);
        d.strict.push_back(bool(wit));
        d.witness.push_back(wit ? std::optional<std::size_t>(wit->first) : std::nullopt);
    }
    return d;
}

ChainCertificate interval_chain_certificate(const WinPtr& w, const std::vector<std::size_t>& objs, std::size_t i,
                                            std::size_t depth) {
    if (i == 0) throw Error("interval index must be positive");
    DiamondChain dc = diamond_power_chain(w, objs, i + depth + 1);
    auto t = [&](std::size_t n) -> const Subfunctor& { return dc.pairs[n - 1].t; };
    const Subfunctor r = torsionfree_closure(ideal_of_subcategory(w, objs)).t;
    ChainCertificate c;
    c.depth = depth;
    Subfunctor running = t(i + 1);
    for (std::size_t j = 0; j <= depth; ++j) {
        Subfunctor rij{w, {}};
        for (std::size_t x = 0; x < w->size(); ++x) {
            const ModPtr& mx = w->object(x);
            SubRep s = sub_rep(mx, t(i + j + 1).at(x), "s");
            QuotRep q = quot_rep(s.mod, preimage_of(s.inclusion.total(), t(i).at(x)), "q");
            Subspace u = Subspace::full(w->field(), q.mod->total_dim());
            for (std::size_t l = 0; l < j; ++l) {
                SubRep su = sub_rep(q.mod, u, "u");
                u = image_of(su.inclusion.total(), evaluate(r, su.mod));
            }
            rij.values.push_back(image_of(s.inclusion.total(), preimage_of(q.projection.total(), u)));
        }
        if (auto v = subfunctor_violation(rij)) throw Error("interval chain term is not a subfunctor: " + *v);
        running = subfunctor_meet(running, rij);
        c.chain.push_back(running);
    }
    if (!subfunctor_leq(t(i), c.chain.back())) throw Error("interval chain leaves the interval");
    fill_witnesses(c);
    c.description = "chain inside [t_" + std::to_string(i) + ", t_" + std::to_string(i + 1) + "]";
    return c;
}

TDReport torsion_dimension_report(const WinPtr& w) {
    TDReport r;
    if (w->complete()) {
        SubfunctorLattice l = enumerate_subfunctors(w);
        r.lattice_size = l.elements.size();
        r.value = mdim(l.lattice);
        r.exact = true;
        r.lower_bound = *r.value;
        return r;
    }
    // Incomplete windows: lower-bound evidence only.
    RadicalTower tower = make_radical_tower(w);
    std::size_t least = SIZE_MAX;
    for (auto y : tower.cert.tau_periodic) least = std::min(least, w->object(y)->total_dim());
    for (auto y : tower.cert.tau_periodic) {
        if (w->object(y)->total_dim() != least) continue;
        try {
            ChainCertificate c = interval_chain_certificate(w, {y}, 1, 1);
            c.description += " for " + w->object(y)->name;
            r.certificates.push_back(c);
        } catch (const Error&) {
        }
    }
    for (const auto& c : r.certificates)
        if (c.strict && c.depth > 0) r.lower_bound = std::max(r.lower_bound, 0L);
    return r;
}

}  // namespace torsidl
