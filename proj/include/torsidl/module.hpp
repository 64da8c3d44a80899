#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torsidl/algebra.hpp"

namespace torsidl {

struct ModuleRep;
using ModPtr = std::shared_ptr<const ModuleRep>;

// A representation: one vector space per vertex, one matrix per arrow (dims[dst] x dims[src]).
// Elements are column vectors in the concatenation of the vertex spaces.
struct ModuleRep {
    AlgPtr alg;
    std::string name;
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;

    std::size_t total_dim() const;
    std::size_t offset(std::size_t v) const;
    std::size_t vertex_of(std::size_t coord) const;
    const Field& field() const { return alg->field(); }
    // Action of a path / algebra element as a total-dimension square matrix.
    Matrix act_path(const Path& p) const;
    Matrix act(const Matrix& element) const;
    Matrix act_basis(std::size_t i) const;
    // Arrow map embedded in total coordinates.
    Matrix arrow_total(std::size_t a) const;
    void validate() const;
};

ModPtr make_module(AlgPtr alg, std::string name, std::vector<std::size_t> dims, std::vector<Matrix> maps);
ModPtr zero_module(AlgPtr alg);
ModPtr simple_module(AlgPtr alg, std::size_t v);
ModPtr rename(const ModPtr& m, const std::string& name);

struct Morphism {
    ModPtr src, tgt;
    std::vector<Matrix> blocks;  // per vertex, tgt.dims[v] x src.dims[v]

    Matrix total() const;
    bool is_zero() const;
    Matrix flat() const;  // concatenated row-major blocks
    void validate() const;
    // Morphism applied to a total column vector given as a row.
    Matrix apply_row(const Matrix& v) const;
};

Morphism morphism_from_total(const ModPtr& src, const ModPtr& tgt, const Matrix& total);
Morphism morphism_from_flat(const ModPtr& src, const ModPtr& tgt, const Matrix& flat, std::size_t offset = 0);
Morphism zero_morphism(const ModPtr& src, const ModPtr& tgt);
Morphism identity_morphism(const ModPtr& m);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism add(const Morphism& a, const Morphism& b);
Morphism scale(const Morphism& a, const Scalar& s);
std::size_t flat_size(const ModPtr& src, const ModPtr& tgt);

// Hom space with canonical basis: RREF of the flattened solution space.
struct HomSpace {
    ModPtr src, tgt;
    Subspace space;  // in flat coordinates
    std::vector<Morphism> basis;
    std::size_t dim() const { return basis.size(); }
    Matrix coords(const Morphism& f) const;
    bool contains(const Morphism& f) const;
    Morphism element(const Matrix& coords) const;
};

HomSpace hom_space(const ModPtr& m, const ModPtr& n);

// Submodules are stored as subspaces of the total coordinate space.
Subspace submodule_generated(const ModPtr& m, const Matrix& vectors);
bool is_submodule(const ModPtr& m, const Subspace& s);
Subspace vertex_part(const ModPtr& m, const Subspace& s, std::size_t v);

struct SubRep {
    ModPtr mod;
    Morphism inclusion;
};
struct QuotRep {
    ModPtr mod;
    Morphism projection;
    Matrix section;  // total-coordinate right inverse of the projection
};
SubRep sub_rep(const ModPtr& m, const Subspace& s, const std::string& name = "");
QuotRep quot_rep(const ModPtr& m, const Subspace& s, const std::string& name = "");

struct KerCoker {
    ModPtr kernel;
    Morphism kernel_inclusion;
    ModPtr cokernel;
    Morphism cokernel_projection;
    ModPtr image;
};
KerCoker kernel_cokernel_image(const Morphism& f);
Subspace image_subspace(const Morphism& f);
Subspace kernel_subspace(const Morphism& f);

struct DirectSum {
    ModPtr mod;
    std::vector<Morphism> inclusions, projections;
};
DirectSum direct_sum(const std::vector<ModPtr>& parts, const std::string& name = "");
Morphism column_morphism(const ModPtr& src, const DirectSum& tgt, const std::vector<Morphism>& parts);
Morphism row_morphism(const DirectSum& src, const ModPtr& tgt, const std::vector<Morphism>& parts);

// Projectives, injectives and the regular module.
ModPtr projective(AlgPtr alg, std::size_t v);
ModPtr injective(AlgPtr alg, std::size_t v);
struct Regular {
    ModPtr mod;                          // A under left multiplication, coordinates = algebra basis
    std::vector<ModPtr> summands;        // P(i)
    DirectSum as_sum;                    // A = P(0) + ... + P(n-1)
};
Regular regular_module(AlgPtr alg);

// Sum of projectives P(v_1) + ... with generators e_{v_k}; morphisms out of it are given by generator images.
struct ProjectiveSum {
    std::vector<std::size_t> verts;
    DirectSum sum;
    Matrix generator(std::size_t k) const;  // total coordinates (row)
};
ProjectiveSum projective_sum(AlgPtr alg, const std::vector<std::size_t>& verts);
Morphism morphism_from_generators(const ProjectiveSum& p, const ModPtr& tgt, const std::vector<Matrix>& images);
// Map A -> M sending 1 to m.
Morphism morphism_from_regular(const Regular& a, const ModPtr& tgt, const Matrix& image_of_one);

// Top and radical.
Subspace radical_submodule(const ModPtr& m);

struct Presentation {
    ProjectiveSum p0, p1;
    Morphism pi;  // p0 -> M
    Morphism d;   // p1 -> p0
};
Presentation minimal_presentation(const ModPtr& m);

// Duality and the opposite side.
ModPtr dualize(const ModPtr& m);
Morphism dualize_morphism(const Morphism& f, const ModPtr& dsrc = nullptr, const ModPtr& dtgt = nullptr);
// Explicit natural iso D(D M) -> M.
Morphism double_dual_iso(const ModPtr& m, const ModPtr& ddm);

struct TransposeData {
    ModPtr tr;               // module over the opposite algebra
    Presentation pres;
    QuotRep coker;           // Hom(P1,A) -> Tr M
    ProjectiveSum hom_p1;    // Hom(P1, A) as a sum of opposite projectives
};
TransposeData transpose_module(const ModPtr& m);

struct TauResult {
    ModPtr module;
    std::size_t dropped_projective_summands = 0;
};
TauResult tau(const ModPtr& m);
TauResult tau_inverse(const ModPtr& m);
// tau on a morphism between modules without projective summands.
Morphism tau_morphism(const Morphism& f, const ModPtr& tau_src, const ModPtr& tau_tgt);
// Same, reusing transpose data of the source and target.
Morphism tau_morphism(const Morphism& f, const TransposeData& tm, const TransposeData& tn, const ModPtr& tau_src,
                      const ModPtr& tau_tgt);

// Endomorphism algebra utilities.
Subspace end_radical(const HomSpace& end);
// Radical of a matrix algebra given by a linearly independent basis closed under products.
Subspace matrix_algebra_radical(const std::vector<Matrix>& basis);

struct Summand {
    ModPtr mod;
    std::size_t multiplicity = 1;
    std::vector<Morphism> inclusions;  // one per copy
};
std::vector<Summand> decompose(const ModPtr& m);
bool is_indecomposable(const ModPtr& m);
// Iso test for modules with local endomorphism rings; returns an iso when one exists.
std::optional<Morphism> find_iso_indecomposable(const ModPtr& x, const ModPtr& y);
bool is_projective_module(const ModPtr& m);

}  // namespace torsidl
