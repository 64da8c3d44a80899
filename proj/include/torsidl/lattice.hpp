#pragma once

#include "torsidl/rank.hpp"

namespace torsidl {

struct SubfunctorLattice {
    WinPtr w;
    std::vector<Subfunctor> elements;  // sorted by total dimension, then key
    FiniteLattice lattice;
    std::size_t principal_count = 0;
    std::size_t index_of(const Subfunctor& t) const;
};

// All subfunctors of the identity on a complete window over F_p.
SubfunctorLattice enumerate_subfunctors(const WinPtr& w, std::uint64_t budget = 1000000);
// Smallest subfunctor containing v at window object x.
Subfunctor principal_subfunctor(const WinPtr& w, std::size_t x, const Matrix& v);
// Subfunctor N -> {beta(bar(1)) : beta in Hom(M^n, N)} of the map A -> M sending 1 to m.
Subfunctor subfunctor_from_morphism(const WinPtr& w, const ModPtr& m, const Matrix& image_of_one);

// m-dimension of a finite lattice by iterated collapse: -1 for a singleton.
long mdim(const FiniteLattice& l);
// Length of a longest chain in the interval [a, b].
std::size_t interval_length(const FiniteLattice& l, std::size_t a, std::size_t b);

// One representative middle term E of each extension class 0 -> y -> E -> x -> 0 (F_p only).
std::vector<ModPtr> extension_middle_terms(const ModPtr& x, const ModPtr& y, std::uint64_t budget = 4096);

struct TorsionClassCensus {
    std::vector<std::vector<std::size_t>> classes;         // quotient- and extension-closed object sets
    std::vector<std::vector<std::size_t>> orthogonal;      // sets S with S = perp-left(perp-right(S))
    std::size_t ext_dim_bound = 0;
};
// Torsion classes of a complete window; extensions are checked for all pairs of add-objects with total dim <= bound.
TorsionClassCensus torsion_classes(const WinPtr& w, std::size_t ext_dim_bound = 6);

struct ChainCertificate {
    std::size_t depth = 0;
    std::vector<Subfunctor> chain;  // chain[0] >= chain[1] >= ...
    bool strict = true;
    // For each step i: an object and a vector in chain[i] but not in chain[i+1].
    std::vector<std::pair<std::size_t, Matrix>> witnesses;
    std::string description;
};

// Chain t_0 >= ... >= t_depth from psi in Hom(x, y), psi in the certified rad^omega and in window rad^depth.
// t_k is generated by the images of m under rad^k(x, -); t_depth by psi(m).
ChainCertificate descending_chain_certificate(RadicalTower& tower, std::size_t x, std::size_t y, const Matrix& psi,
                                              std::size_t depth, std::optional<Matrix> element = std::nullopt);

struct DiamondChain {
    std::vector<IdealTorsionPair> pairs;  // pairs[n-1] has subfunctor t_n
    std::vector<bool> strict;             // strict[n-1]: t_n < t_(n+1)
    std::vector<std::optional<std::size_t>> witness;
};
// t_n with 1/t_n = (1/t)^n for t the torsion closure of the given objects.
DiamondChain diamond_power_chain(const WinPtr& w, const std::vector<std::size_t>& objs, std::size_t n_max);

// Chain t_(i+1) = c_0 >= c_1 >= ... >= t_i inside [t_i, t_(i+1)], c_j = r_(i,0) meet ... meet r_(i,j),
// where r_(i,j)/t_i = r^j(t_(i+j+1)/t_i) and r is the torsion-free side closure of the same objects.
ChainCertificate interval_chain_certificate(const WinPtr& w, const std::vector<std::size_t>& objs, std::size_t i,
                                            std::size_t depth);

struct TDReport {
    std::optional<long> value;
    bool exact = false;
    long lower_bound = -1;
    std::size_t lattice_size = 0;
    std::vector<ChainCertificate> certificates;
};
TDReport torsion_dimension_report(const WinPtr& w);

}  // namespace torsidl
