#include "torsidl/finite_lattice.hpp"

#include "torsidl/linalg.hpp"

namespace torsidl {

FiniteLattice make_lattice(std::vector<std::string> labels, const std::function<bool(std::size_t, std::size_t)>& leq) {
    FiniteLattice l;
    const std::size_t n = labels.size();
    if (n == 0) throw Error("empty lattice");
    l.labels = std::move(labels);
    l.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) l.leq[i][j] = leq(i, j);
    l.meet.assign(n, std::vector<std::size_t>(n, 0));
    l.join.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t glb = n, lub = n;
            for (std::size_t k = 0; k < n; ++k) {
                if (l.leq[k][i] && l.leq[k][j] && (glb == n || l.leq[glb][k])) glb = k;
                if (l.leq[i][k] && l.leq[j][k] && (lub == n || l.leq[k][lub])) lub = k;
            }
            if (glb == n || lub == n) throw Error("not a lattice: missing bound");
            l.meet[i][j] = glb;
            l.join[i][j] = lub;
        }
    for (std::size_t i = 0; i < n; ++i) {
        bool is_bottom = true, is_top = true;
        for (std::size_t j = 0; j < n; ++j) {
            is_bottom = is_bottom && l.leq[i][j];
            is_top = is_top && l.leq[j][i];
        }
        if (is_bottom) l.bottom = i;
        if (is_top) l.top = i;
    }
    l.validate();
    return l;
}

void FiniteLattice::validate() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!leq[i][i]) throw Error("lattice order is not reflexive");
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && leq[i][j] && leq[j][i]) throw Error("lattice order is not antisymmetric");
            for (std::size_t k = 0; k < n; ++k)
                if (leq[i][j] && leq[j][k] && !leq[i][k]) throw Error("lattice order is not transitive");
            const std::size_t m = meet[i][j], J = join[i][j];
            if (!leq[m][i] || !leq[m][j] || !leq[i][J] || !leq[j][J]) throw Error("meet/join table inconsistent");
            for (std::size_t k = 0; k < n; ++k) {
                if (leq[k][i] && leq[k][j] && !leq[k][m]) throw Error("meet is not the greatest lower bound");
                if (leq[i][k] && leq[j][k] && !leq[J][k]) throw Error("join is not the least upper bound");
            }
        }
    }
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteLattice::hasse() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !leq[i][j]) continue;
            bool cover = true;
            for (std::size_t k = 0; k < n && cover; ++k)
                if (k != i && k != j && leq[i][k] && leq[k][j]) cover = false;
            if (cover) out.emplace_back(i, j);
        }
    return out;
}

bool FiniteLattice::is_chain() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (!leq[i][j] && !leq[j][i]) return false;
    return true;
}

bool FiniteLattice::is_modular() const {
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                if (!leq[a][c]) continue;
                if (join[a][meet[b][c]] != meet[join[a][b]][c]) return false;
            }
    return true;
}

}  // namespace torsidl
