#include "torsidl/rank.hpp"

#include <algorithm>

namespace torsidl {

bool OrdinalTag::operator<(const OrdinalTag& o) const {
    if (kind != o.kind) return int(kind) < int(o.kind);
    return n < o.n;
}

std::string OrdinalTag::str() const {
    switch (kind) {
        case Kind::Finite: return "Finite(" + std::to_string(n) + ")";
        case Kind::OmegaPlus: return "OmegaPlus(" + std::to_string(n) + ")";
        case Kind::ExceedsBudget: return "ExceedsBudget";
    }
    return "";
}

namespace {

std::size_t dim_from_regular(const Window& w, const Ideal& i, const std::vector<std::size_t>& m) {
    std::size_t d = 0;
    for (auto x : m)
        for (auto p : w.projective_objects()) d += i.at(p, x).dim();
    return d;
}

std::size_t full_from_regular(const Window& w, const std::vector<std::size_t>& m) {
    std::size_t d = 0;
    for (auto x : m)
        for (auto p : w.projective_objects()) d += w.hom_dim(p, x);
    return d;
}

std::string sum_name(const Window& w, const std::vector<std::size_t>& m) {
    if (m.empty()) return "0";
    std::string s;
    for (auto x : m) s += (s.empty() ? "" : "+") + w.object(x)->name;
    return s;
}

}  // namespace

RankReport rad_chain(RadicalTower& tower, const std::vector<std::size_t>& m) {
    const Window& w = *tower.w;
    RankReport r;
    r.module = sum_name(w, m);
    r.exactness = w.exactness();
    const bool rel = !w.complete();
    const std::size_t full = full_from_regular(w, m);
    for (std::size_t n = 0; n <= tower.omega_step; ++n) r.chain.push_back(dim_from_regular(w, tower.power(n), m));
    for (std::size_t n = 0; n + 1 < r.chain.size(); ++n)
        if (r.chain[n + 1] > r.chain[n]) throw Error("radical chain is not monotone");
    r.tag = OrdinalTag::omega_plus(0, rel);
    if (full == 0) {
        r.tag = OrdinalTag::finite(0, rel);
    } else {
        for (std::size_t n = 0; n + 1 < r.chain.size(); ++n)
            if (r.chain[n + 1] < full) {
                r.tag = OrdinalTag::finite(n, rel);
                break;
            }
        if (r.tag.kind == OrdinalTag::Kind::OmegaPlus && r.chain.back() != full)
            throw Error("radical chain stabilized below full without a drop");
    }
    r.preprojective = r.tag.kind == OrdinalTag::Kind::Finite;
    return r;
}

RankReport rad_chain(RadicalTower& tower, std::size_t m) { return rad_chain(tower, std::vector<std::size_t>{m}); }

OrdinalTag projective_rank(RadicalTower& tower, const std::vector<std::size_t>& m, std::size_t omega_budget) {
    OrdinalTag t = rad_chain(tower, m).tag;
    if (t.kind != OrdinalTag::Kind::OmegaPlus) return t;
    const Window& w = *tower.w;
    const std::size_t full = full_from_regular(w, m);
    std::size_t k = 0;
    while (k < omega_budget && dim_from_regular(w, tower.omega_power_k(k + 2), m) == full) ++k;
    if (k == omega_budget && dim_from_regular(w, tower.omega_power_k(k + 2), m) == full) return OrdinalTag::exceeds(t.window_relative);
    return OrdinalTag::omega_plus(k, t.window_relative);
}

OrdinalTag projective_rank(RadicalTower& tower, std::size_t m, std::size_t omega_budget) {
    return projective_rank(tower, std::vector<std::size_t>{m}, omega_budget);
}

ApproxResult left_radn_approximation(RadicalTower& tower, const std::vector<std::size_t>& m, std::size_t n) {
    tower.power(n);
    return left_approximation(tower.window_powers[n], m, true);
}

ApproxResult composed_radn_approximation(RadicalTower& tower, const std::vector<std::size_t>& m, std::size_t n) {
    const WinPtr& w = tower.w;
    tower.power(n);
    const Ideal& target = tower.window_powers[n];
    // Running composite m -> current targets.
    std::vector<std::size_t> cur = m;
    std::vector<std::vector<Matrix>> comp;  // comp[j][k]: m[k] -> cur[j]
    for (std::size_t j = 0; j < m.size(); ++j) {
        comp.emplace_back();
        for (std::size_t k = 0; k < m.size(); ++k)
            comp[j].push_back(j == k ? w->coords(m[k], m[k], identity_morphism(w->object(m[k])))
                                     : Matrix(w->field(), 1, w->hom_dim(m[k], m[j])));
    }
    for (std::size_t step = 0; step < n; ++step) {
        ApproxResult a = left_approximation(tower.rad, cur, true);
        std::vector<std::vector<Matrix>> next;
        for (std::size_t l = 0; l < a.others.size(); ++l) {
            next.emplace_back();
            for (std::size_t k = 0; k < m.size(); ++k) {
                Matrix acc(w->field(), 1, w->hom_dim(m[k], a.others[l]));
                for (std::size_t j = 0; j < cur.size(); ++j)
                    acc = acc + w->compose_coords(m[k], cur[j], a.others[l], a.components[l][j], comp[j][k]);
                next[l].push_back(acc);
            }
        }
        cur = a.others;
        comp = next;
    }
    std::vector<Subspace> spans;
    for (std::size_t x = 0; x < w->size(); ++x) {
        std::size_t total = 0;
        std::vector<std::size_t> off;
        for (auto k : m) {
            off.push_back(total);
            total += w->hom_dim(k, x);
        }
        std::vector<Matrix> rows;
        for (std::size_t j = 0; j < cur.size(); ++j) {
            if (cur[j] != x) continue;
            Matrix row(w->field(), 1, total);
            for (std::size_t k = 0; k < m.size(); ++k)
                if (comp[j][k].cols()) row.set_block(0, off[k], comp[j][k]);
            rows.push_back(row);
        }
        spans.push_back(Subspace::span(Matrix::vstack(w->field(), total, rows)));
    }
    return left_approximation_from_spans(target, m, spans);
}

std::vector<std::size_t> target_multiplicities(const ApproxResult& a) {
    std::vector<std::size_t> mult(a.w->size(), 0);
    for (auto o : a.others) ++mult[o];
    return mult;
}

std::vector<std::size_t> summand_occurrences(RadicalTower& tower, std::size_t x, std::size_t n_max) {
    const Window& w = *tower.w;
    const auto reg = regular_objects(w);
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= n_max; ++n) {
        auto a = left_radn_approximation(tower, reg, n);
        const bool occurs = std::find(a.others.begin(), a.others.end(), x) != a.others.end();
        tower.power(n + 1);
        const bool drop = dim_from_regular(w, tower.window_powers[n], {x}) > dim_from_regular(w, tower.window_powers[n + 1], {x});
        if (occurs != drop) throw Error("summand occurrence disagrees with the radical layer criterion");
        if (occurs) out.push_back(n);
    }
    return out;
}

BarResult bar_morphism(const ModPtr& m, const Matrix& image_of_one) {
    const AlgPtr& alg = m->alg;
    const Field f = m->field();
    const std::size_t n = alg->dim();
    BarResult b;
    DirectSum ds = direct_sum(std::vector<ModPtr>(n, m), m->name + "^" + std::to_string(n));
    b.power = ds.mod;
    Matrix col(f, ds.mod->total_dim(), 1);
    const Matrix x = image_of_one.transpose();
    for (std::size_t i = 0; i < n; ++i) col = col + ds.inclusions[i].total() * (m->act_basis(i) * x);
    b.image_of_one = col.transpose();
    b.morphism = morphism_from_regular(regular_module(alg), ds.mod, b.image_of_one);
    for (std::size_t k = 0; k < n; ++k) {
        Morphism alpha = zero_morphism(ds.mod, ds.mod);
        for (std::size_t i = 0; i < n; ++i) {
            const Matrix& c = alg->product(k, i);  // a_k a_i = sum_j c_j a_j
            for (std::size_t j = 0; j < n; ++j)
                if (!c.is_zero_at(0, j)) alpha = add(alpha, scale(compose(ds.inclusions[i], ds.projections[j]), c.get(0, j)));
        }
        alpha.src = alpha.tgt = ds.mod;
        if (ds.mod->act_basis(k) * col != alpha.total() * col) throw Error("bar construction witness failed");
        b.witnesses.push_back(alpha);
    }
    return b;
}

}  // namespace torsidl
