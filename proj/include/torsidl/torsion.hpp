#pragma once

#include "torsidl/finite_lattice.hpp"
#include "torsidl/window.hpp"

namespace torsidl {

// A submodule tX of every window object, functorial under all window morphisms.
struct Subfunctor {
    WinPtr w;
    std::vector<Subspace> values;

    const Subspace& at(std::size_t x) const { return values[x]; }
    bool operator==(const Subfunctor& o) const { return values == o.values; }
    bool operator!=(const Subfunctor& o) const { return !(*this == o); }
    std::vector<std::size_t> dims() const;
    std::string key() const;
};

Subfunctor zero_subfunctor(const WinPtr& w);
Subfunctor identity_subfunctor(const WinPtr& w);
// Describes the first violation (non-submodule value or non-functorial basis morphism), if any.
std::optional<std::string> subfunctor_violation(const Subfunctor& t);
void validate_subfunctor(const Subfunctor& t);
bool subfunctor_leq(const Subfunctor& a, const Subfunctor& b);
Subfunctor subfunctor_meet(const Subfunctor& a, const Subfunctor& b);
Subfunctor subfunctor_join(const Subfunctor& a, const Subfunctor& b);
// Smallest subfunctor containing the given per-object seeds (rows in total coordinates).
Subfunctor functorial_closure(const WinPtr& w, const std::vector<Matrix>& seeds);
// Value of t on an arbitrary module: sum over window X and g: X -> N of g(tX).
Subspace evaluate(const Subfunctor& t, const ModPtr& n);

struct IdealTorsionPair {
    Ideal torsion, torsionfree;
    Subfunctor t;
    bool operator==(const IdealTorsionPair& o) const { return torsion == o.torsion && torsionfree == o.torsionfree && t == o.t; }
};

// {phi : Im phi in t(cod)} and {psi : t(dom) in ker psi}.
Ideal torsion_ideal_of(const Subfunctor& t);
Ideal torsionfree_ideal_of(const Subfunctor& t);
Ideal perp_right(const Ideal& i);
Ideal perp_left(const Ideal& j);

IdealTorsionPair pair_from_subfunctor(const Subfunctor& t);
// Recomputes t from the torsion ideal through I(A, -).
Subfunctor subfunctor_from_pair(const IdealTorsionPair& p);
Subfunctor subfunctor_from_torsion_ideal(const Ideal& i);
IdealTorsionPair torsion_closure(const Ideal& i);
IdealTorsionPair torsionfree_closure(const Ideal& i);
// Cross-check of torsionfree_closure using only test maps into injective window objects.
Subfunctor torsionfree_part_via_injectives(const Ideal& i);
bool is_pair_consistent(const IdealTorsionPair& p);

// Approximations with source or target a direct sum of window objects.
struct ApproxResult {
    enum class Kind { Left, Right };
    WinPtr w;
    Kind kind = Kind::Left;
    std::vector<std::size_t> fixed;   // the approximated module as a sum of window objects
    std::vector<std::size_t> others;  // targets (left) or sources (right)
    // components[j][k]: coords of the map fixed[k] -> others[j] (left) or others[j] -> fixed[k] (right)
    std::vector<std::vector<Matrix>> components;
    bool minimal = false;

    ModPtr fixed_module() const;
    ModPtr other_module() const;
    Morphism morphism() const;
};

ApproxResult left_approximation(const Ideal& i, const std::vector<std::size_t>& source, bool minimize);
ApproxResult right_approximation(const Ideal& i, const std::vector<std::size_t>& target, bool minimize);
// Minimal left approximation whose components at each X are drawn from spans[X] (tuple coordinates).
ApproxResult left_approximation_from_spans(const Ideal& i, const std::vector<std::size_t>& source,
                                           const std::vector<Subspace>& spans);
bool verify_approximation(const Ideal& i, const ApproxResult& a);
// The inclusion tN -> N of a torsion pair.
Morphism torsion_inclusion(const IdealTorsionPair& p, std::size_t n);
// The regular module as a list of window objects.
std::vector<std::size_t> regular_objects(const Window& w);

struct FFResult {
    Exactness exactness;
    bool value;
    std::string caveat;
};
FFResult is_functorially_finite(const IdealTorsionPair& p);

IdealTorsionPair pair_product(const IdealTorsionPair& p, const IdealTorsionPair& q);
IdealTorsionPair pair_diamond(const IdealTorsionPair& p, const IdealTorsionPair& q);

std::vector<std::size_t> ob(const Ideal& i);
bool is_idempotent(const IdealTorsionPair& p);

struct DeterminationResult {
    bool value = true;
    std::optional<IdealGenerator> witness;  // phi not in i but determined by the test objects
};
DeterminationResult is_left_determined(const Ideal& i, const std::vector<std::size_t>& c);
DeterminationResult is_right_determined(const Ideal& i, const std::vector<std::size_t>& c);

// Subspaces of c stable under the algebra action and End(c).
bool is_bisubmodule(const ModPtr& c, const Subspace& x);
std::vector<Subspace> bisubmodules(const ModPtr& c);
FiniteLattice bisubmodule_lattice(const ModPtr& c);
IdealTorsionPair determined_ideal_from_bisubmodule(const WinPtr& w, std::size_t c, const Subspace& x);

// Window of dual objects over the opposite algebra, in the same order.
WinPtr opposite_window(const WinPtr& w);
// Coordinates of D f in the opposite window for f in Hom(x, y).
Matrix dual_coords(const WinPtr& w, const WinPtr& wop, std::size_t x, std::size_t y, const Matrix& coords);
IdealTorsionPair dualize_pair(const IdealTorsionPair& p, const WinPtr& wop);

struct Determiner {
    ModPtr module;                   // tau Q + I(top K)
    std::vector<std::size_t> objects;  // its indecomposable summands located in the window
    ApproxResult approximation;
    ModPtr cokernel, kernel;
};
Determiner canonical_determiner(const IdealTorsionPair& p);

}  // namespace torsidl
