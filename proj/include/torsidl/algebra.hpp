#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "torsidl/linalg.hpp"

namespace torsidl {

struct Arrow {
    std::size_t src = 0, dst = 0;
    std::string label;
};

// A path as arrow indices in traversal order; length-zero paths carry their vertex.
struct Path {
    std::size_t start = 0, end = 0;
    std::vector<std::size_t> arrows;
    std::size_t length() const { return arrows.size(); }
    bool operator==(const Path& o) const { return start == o.start && end == o.end && arrows == o.arrows; }
    bool operator<(const Path& o) const;
};

struct RelationTerm {
    Scalar coeff;
    std::vector<std::string> path;  // arrow labels, traversal order
};

struct QuiverPresentation {
    Field field;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<std::vector<RelationTerm>> relations;
    std::size_t path_bound = 32;

    QuiverPresentation opposite() const;
    std::size_t vertex_index(const std::string& v) const;
    std::size_t arrow_index(const std::string& label) const;
};

class Algebra;
using AlgPtr = std::shared_ptr<const Algebra>;

class Algebra {
public:
    const QuiverPresentation& presentation() const { return pres_; }
    const Field& field() const { return pres_.field; }
    std::size_t num_vertices() const { return pres_.vertices.size(); }
    const std::vector<Arrow>& arrows() const { return pres_.arrows; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Path>& basis() const { return basis_; }
    bool is_hereditary() const { return pres_.relations.empty(); }
    std::size_t loewy_bound() const { return l0_; }

    // Normal form (1 x dim) of a path, zero if it vanishes.
    Matrix normal_form(const Path& p) const;
    // Coordinates of the product basis[i] * basis[j] (basis[j] first).
    const Matrix& product(std::size_t i, std::size_t j) const { return mult_[i * dim() + j]; }
    Matrix multiply(const Matrix& x, const Matrix& y) const;
    // Left multiplication by basis[i] as a dim x dim matrix acting on columns.
    Matrix left_mult(std::size_t i) const;
    std::size_t idempotent(std::size_t v) const { return idem_[v]; }
    std::size_t arrow_element(std::size_t a) const { return arrow_elt_[a]; }
    Matrix unit() const;

    // Basis indices of paths from vertex i to vertex j.
    std::vector<std::size_t> paths_between(std::size_t i, std::size_t j) const;

    // Opposite algebra built from the reversed presentation; lifetime shared with this one.
    AlgPtr opposite() const;
    // Element of the opposite algebra corresponding to x.
    Matrix to_opposite(const Matrix& x) const;

    friend std::pair<AlgPtr, AlgPtr> build_algebra_pair(const QuiverPresentation& q);

private:
    QuiverPresentation pres_;
    std::vector<Path> basis_;
    std::map<std::vector<std::size_t>, std::size_t> path_index_;  // keyed by (start, arrows...)
    std::vector<Matrix> mult_;
    std::vector<std::size_t> idem_, arrow_elt_;
    std::size_t l0_ = 0;
    // Truncated reduction data.
    std::vector<Path> all_paths_;
    std::map<std::vector<std::size_t>, std::size_t> all_index_;
    Subspace ideal_;
    std::vector<std::size_t> basis_cols_;
    const Algebra* op_ = nullptr;
    std::weak_ptr<const void> owner_;

    void build(const QuiverPresentation& q);
    Matrix reduce_all(const Matrix& v) const;
};

AlgPtr build_algebra(const QuiverPresentation& q);
std::pair<AlgPtr, AlgPtr> build_algebra_pair(const QuiverPresentation& q);

}  // namespace torsidl
