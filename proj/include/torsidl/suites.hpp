#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "torsidl/lattice.hpp"

namespace torsidl {

struct SuiteResult {
    std::string name;
    std::string title;
    std::size_t assertions = 0;
    std::vector<std::string> failures;
    std::vector<std::pair<std::string, std::size_t>> case_counts;  // property suites: cases run per property
    double seconds = 0;
    double time_limit = 0;
    bool passed() const { return failures.empty() && seconds < time_limit; }
};

std::vector<std::string> suite_names();
// Canonical suite name for a name or alias; empty if unknown.
std::string resolve_suite(const std::string& name);
SuiteResult run_suite(const std::string& name, const std::filesystem::path& corpus_root);

// Window of a bundled corpus, e.g. corpus_root / "a2".
WinPtr corpus_window(const std::filesystem::path& corpus_root, const std::string& name);

// All submodules of a module over a finite prime field, by brute force.
std::vector<Subspace> all_submodules(const ModPtr& m);
// Number of subfunctors by exhaustive search over per-object submodule assignments.
std::size_t brute_force_subfunctor_count(const WinPtr& w);

}  // namespace torsidl
