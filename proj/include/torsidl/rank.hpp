#pragma once

#include "torsidl/torsion.hpp"

namespace torsidl {

struct OrdinalTag {
    enum class Kind { Finite, OmegaPlus, ExceedsBudget };
    Kind kind = Kind::Finite;
    std::size_t n = 0;  // Finite(n) or OmegaPlus(n)
    bool window_relative = false;

    static OrdinalTag finite(std::size_t n, bool rel = false) { return {Kind::Finite, n, rel}; }
    static OrdinalTag omega_plus(std::size_t k, bool rel) { return {Kind::OmegaPlus, k, rel}; }
    static OrdinalTag exceeds(bool rel) { return {Kind::ExceedsBudget, 0, rel}; }
    bool operator==(const OrdinalTag& o) const { return kind == o.kind && n == o.n; }
    bool operator!=(const OrdinalTag& o) const { return !(*this == o); }
    // Ordinal order; ExceedsBudget sits above every OmegaPlus.
    bool operator<(const OrdinalTag& o) const;
    std::string str() const;
};

struct RankReport {
    std::string module;
    std::vector<std::size_t> chain;  // dim rad^n(A, M) for n = 0 .. stabilization
    OrdinalTag tag;
    bool preprojective = false;
    Exactness exactness = Exactness::Exact;
};

// Chain of Hom(A, M) through the radical tower; M is a direct sum of the listed window objects.
RankReport rad_chain(RadicalTower& tower, const std::vector<std::size_t>& m);
RankReport rad_chain(RadicalTower& tower, std::size_t m);
// Refines OmegaPlus(0) by the omega-power depth, up to omega_budget.
OrdinalTag projective_rank(RadicalTower& tower, const std::vector<std::size_t>& m, std::size_t omega_budget);
OrdinalTag projective_rank(RadicalTower& tower, std::size_t m, std::size_t omega_budget);

// Minimal left rad_w^n-approximation of a sum of window objects, computed directly from the n-th power.
ApproxResult left_radn_approximation(RadicalTower& tower, const std::vector<std::size_t>& m, std::size_t n);
// The same, obtained by composing n minimal left rad-approximations and minimizing the composite.
ApproxResult composed_radn_approximation(RadicalTower& tower, const std::vector<std::size_t>& m, std::size_t n);
// Multiplicity of each window object in the target of an approximation.
std::vector<std::size_t> target_multiplicities(const ApproxResult& a);

// All n <= n_max with x a summand of the minimal rad^n-approximation target of A.
// Cross-checked against the existence of A -> x in rad^n minus rad^(n+1).
std::vector<std::size_t> summand_occurrences(RadicalTower& tower, std::size_t x, std::size_t n_max);

struct BarResult {
    ModPtr power;                 // M^n, n = dim A
    Matrix image_of_one;          // (a_1 m, ..., a_n m) in total coordinates of M^n
    Morphism morphism;            // A -> M^n
    std::vector<Morphism> witnesses;  // alpha_k with bar(a_k) = alpha_k bar(1), one per algebra basis element
};
// Bar construction for the map A -> M sending 1 to m; witnesses are verified.
BarResult bar_morphism(const ModPtr& m, const Matrix& image_of_one);

}  // namespace torsidl
