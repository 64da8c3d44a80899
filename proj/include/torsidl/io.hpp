#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "torsidl/window.hpp"

namespace torsidl {

using json = nlohmann::json;

// Thrown for malformed or inconsistent input files.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Exact scalar from an integer or a string "a" / "a/b".
Scalar parse_scalar(const json& v);
std::string scalar_str(const Scalar& s);

Field parse_field(const json& v);
json field_json(const Field& f);

QuiverPresentation parse_algebra_spec(const json& spec);
// Validated module; errors name the offending arrow or relation.
ModPtr parse_module_spec(const AlgPtr& alg, const json& spec);
json module_json(const ModPtr& m);
json matrix_json(const Matrix& m);

json read_json_file(const std::filesystem::path& p);

struct WindowInputs {
    json algebra;
    std::vector<json> modules;
    bool complete = false;
    std::vector<std::string> preprojective;
};
// Bundled corpus directory: manifest.json listing algebra, module files, completeness and preprojective objects.
WindowInputs load_corpus_inputs(const std::filesystem::path& dir);
// Builds the window; duplicate or decomposable objects are reported as validation errors.
WinPtr build_window(const WindowInputs& in);
// Canonical form of the inputs, used as the cache key source.
json canonical_inputs(const WindowInputs& in);
WindowInputs inputs_from_canonical(const json& j);

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t h);

json hom_dim_matrix(const Window& w);

}  // namespace torsidl
