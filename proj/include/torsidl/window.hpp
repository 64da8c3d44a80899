#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>

#include "torsidl/module.hpp"

namespace torsidl {

class Window;
using WinPtr = std::shared_ptr<const Window>;

enum class Exactness { Exact, WindowRelative };
std::string exactness_str(Exactness e);

// A finite full subcategory of pairwise non-isomorphic indecomposables containing every P(i).
class Window {
public:
    static WinPtr build(AlgPtr alg, std::vector<ModPtr> objects, bool complete);

    const AlgPtr& algebra() const { return alg_; }
    const Field& field() const { return alg_->field(); }
    std::size_t size() const { return objects_.size(); }
    const ModPtr& object(std::size_t i) const { return objects_[i]; }
    const std::vector<ModPtr>& objects() const { return objects_; }
    bool complete() const { return complete_; }
    Exactness exactness() const { return complete_ ? Exactness::Exact : Exactness::WindowRelative; }
    std::size_t index_of(const std::string& name) const;

    const HomSpace& hom(std::size_t x, std::size_t y) const { return homs_[x * size() + y]; }
    std::size_t hom_dim(std::size_t x, std::size_t y) const { return hom(x, y).dim(); }
    // Window object isomorphic to P(v).
    std::size_t projective_object(std::size_t v) const { return proj_[v]; }
    const std::vector<std::size_t>& projective_objects() const { return proj_; }
    // Image of e_v in the window object isomorphic to P(v), total coordinates (row).
    const Matrix& projective_generator(std::size_t v) const { return proj_gen_[v]; }
    // Window object isomorphic to an indecomposable m, with an iso m -> object.
    std::optional<std::pair<std::size_t, Morphism>> locate(const ModPtr& m) const;

    // For each basis element b of Hom(y,z): the matrix sending coords of f in Hom(x,y) to coords of b f in Hom(x,z).
    const std::vector<Matrix>& tensor(std::size_t x, std::size_t y, std::size_t z) const;
    // Matrix of f -> g f for fixed g in Hom(y,z), acting on row coordinates.
    Matrix post_matrix(std::size_t x, std::size_t y, std::size_t z, const Matrix& g) const;
    // Matrix of g -> g f for fixed f in Hom(x,y), acting on row coordinates.
    Matrix pre_matrix(std::size_t x, std::size_t y, std::size_t z, const Matrix& f) const;
    Matrix compose_coords(std::size_t x, std::size_t y, std::size_t z, const Matrix& g, const Matrix& f) const;

    Morphism morphism(std::size_t x, std::size_t y, const Matrix& coords) const;
    Matrix coords(std::size_t x, std::size_t y, const Morphism& f) const;

private:
    Window() = default;
    AlgPtr alg_;
    std::vector<ModPtr> objects_;
    bool complete_ = false;
    std::vector<HomSpace> homs_;
    std::vector<std::size_t> proj_;
    std::vector<Matrix> proj_gen_;
    mutable std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<Matrix>> tensors_;
    mutable std::mutex mu_;
};

// Per ordered pair (x, y) a subspace of the coordinate space of Hom(x, y).
struct Ideal {
    WinPtr w;
    std::vector<Subspace> pieces;

    const Subspace& at(std::size_t x, std::size_t y) const { return pieces[x * w->size() + y]; }
    Subspace& at(std::size_t x, std::size_t y) { return pieces[x * w->size() + y]; }
    bool operator==(const Ideal& o) const { return pieces == o.pieces; }
    bool operator!=(const Ideal& o) const { return !(*this == o); }
    std::size_t total_dim() const;
};

struct IdealGenerator {
    std::size_t src, tgt;
    Matrix coords;
};

Ideal zero_ideal(const WinPtr& w);
Ideal unit_ideal(const WinPtr& w);
Ideal ideal_from_generators(const WinPtr& w, const std::vector<IdealGenerator>& gens);
// Two-sided closure of per-pair subspaces.
Ideal ideal_closure(const Ideal& seed);
// Generators must be morphisms between window objects (pointer-identical or structurally equal).
Ideal ideal_from_morphisms(const WinPtr& w, const std::vector<Morphism>& gens);
Ideal ideal_of_subcategory(const WinPtr& w, const std::vector<std::size_t>& objs);
Ideal ideal_meet(const Ideal& a, const Ideal& b);
Ideal ideal_join(const Ideal& a, const Ideal& b);
bool ideal_leq(const Ideal& a, const Ideal& b);
bool ideal_contains(const Ideal& i, std::size_t x, std::size_t y, const Matrix& coords);
// Two-sided closure check on basis elements.
bool is_two_sided(const Ideal& i);
Ideal radical_ideal(const WinPtr& w);
// (i2 i1)(x,z) = sum_y i2(y,z) i1(x,y)
Ideal ideal_product(const Ideal& i2, const Ideal& i1);
Ideal ideal_power(const Ideal& i, std::size_t n);
struct OmegaResult {
    Ideal ideal;
    std::size_t step = 0;
};
// Stabilized descending chain i^n + floor (floor may be null).
OmegaResult omega_power(const Ideal& i, const Ideal* floor = nullptr, std::size_t budget = 0);

// Window locating an object by pointer or structural equality.
std::optional<std::size_t> object_index(const Window& w, const ModPtr& m);

// Sound sub-ideal of rad^omega from tau-orbit certificates (hereditary algebras only).
struct OmegaCertificate {
    Ideal ideal;
    std::vector<std::size_t> tau_periodic;      // objects with a revisiting tau-orbit
    std::vector<std::size_t> tau_inv_periodic;  // objects with a revisiting tau^-1-orbit
    bool applicable = false;
};
OmegaCertificate omega_certificate(const WinPtr& w);

// Radical powers as reported: window power plus the omega certificate.
struct RadicalTower {
    WinPtr w;
    Ideal rad;
    OmegaCertificate cert;
    std::vector<Ideal> window_powers;  // rad_w^n
    std::vector<Ideal> powers;         // powers[n] = rad_w^n + cert
    Ideal omega;
    std::size_t omega_step = 0;
    std::vector<Ideal> omega_powers;  // omega_powers[k] = omega^(k+1)

    const Ideal& power(std::size_t n);
    const Ideal& omega_power_k(std::size_t k);  // (rad^omega)^k for k >= 1
};
RadicalTower make_radical_tower(const WinPtr& w);

}  // namespace torsidl
