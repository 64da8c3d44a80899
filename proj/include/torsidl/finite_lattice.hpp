#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace torsidl {

// Explicit finite lattice with order relation and meet/join tables.
struct FiniteLattice {
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq;
    std::vector<std::vector<std::size_t>> meet, join;
    std::size_t bottom = 0, top = 0;

    std::size_t size() const { return labels.size(); }
    std::vector<std::pair<std::size_t, std::size_t>> hasse() const;
    bool is_chain() const;
    bool is_modular() const;
    // Throws unless the tables define a lattice consistent with leq.
    void validate() const;
};

// Builds tables from an order predicate; meet and join are computed as greatest lower / least upper bounds.
FiniteLattice make_lattice(std::vector<std::string> labels, const std::function<bool(std::size_t, std::size_t)>& leq);

}  // namespace torsidl
