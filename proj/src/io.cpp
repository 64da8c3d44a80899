#include "torsidl/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace torsidl {

Scalar parse_scalar(const json& v) {
    if (v.is_number_integer()) return Scalar(v.get<long>());
    if (!v.is_string()) throw ValidationError("scalar must be an integer or a string \"a/b\": " + v.dump());
    const std::string s = v.get<std::string>();
    Scalar out;
    if (s.empty() || out.set_str(s, 10) != 0) throw ValidationError("cannot parse scalar '" + s + "'");
    if (out.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
    out.canonicalize();
    return out;
}

std::string scalar_str(const Scalar& s) {
    Scalar c = s;
    c.canonicalize();
    return c.get_str();
}

Field parse_field(const json& v) {
    if (v.is_string() && v.get<std::string>() == "Q") return Field::rationals();
    if (v.is_object() && v.size() == 1 && v.contains("Fp") && v["Fp"].is_number_unsigned()) {
        const auto p = v["Fp"].get<std::uint64_t>();
        if (p >= (1ull << 31) || !is_prime_u32(std::uint32_t(p))) throw ValidationError("Fp characteristic must be a prime below 2^31");
        return Field::prime(std::uint32_t(p));
    }
    throw ValidationError("field must be \"Q\" or {\"Fp\": p}");
}

json field_json(const Field& f) {
    if (!f.is_prime()) return "Q";
    return json{{"Fp", f.p}};
}

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
    return j[key];
}

}  // namespace

QuiverPresentation parse_algebra_spec(const json& spec) {
    QuiverPresentation q;
    q.field = parse_field(require(spec, "field", "algebra"));
    std::set<std::string> seen;
    for (const auto& v : require(spec, "vertices", "algebra")) {
        const auto name = v.get<std::string>();
        if (!seen.insert(name).second) throw ValidationError("duplicate vertex '" + name + "'");
        q.vertices.push_back(name);
    }
    std::set<std::string> labels;
    for (const auto& a : require(spec, "arrows", "algebra")) {
        Arrow ar;
        ar.label = require(a, "label", "arrow").get<std::string>();
        if (!labels.insert(ar.label).second) throw ValidationError("duplicate arrow label '" + ar.label + "'");
        try {
            ar.src = q.vertex_index(require(a, "src", "arrow " + ar.label).get<std::string>());
            ar.dst = q.vertex_index(require(a, "dst", "arrow " + ar.label).get<std::string>());
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            throw ValidationError("arrow '" + ar.label + "': " + e.what());
        }
        q.arrows.push_back(ar);
    }
    if (spec.contains("relations")) {
        std::size_t r = 0;
        for (const auto& rel : spec["relations"]) {
            const std::string where = "relation " + std::to_string(r++);
            std::vector<RelationTerm> terms;
            std::optional<std::pair<std::size_t, std::size_t>> ends;
            for (const auto& t : rel) {
                RelationTerm term;
                term.coeff = parse_scalar(require(t, "coeff", where));
                for (const auto& l : require(t, "path", where)) term.path.push_back(l.get<std::string>());
                if (term.path.size() < 2) throw ValidationError(where + ": paths must have length at least 2");
                std::size_t prev = 0;
                for (std::size_t k = 0; k < term.path.size(); ++k) {
                    if (!labels.count(term.path[k])) throw ValidationError(where + ": unknown arrow '" + term.path[k] + "'");
                    const Arrow& ar = q.arrows[q.arrow_index(term.path[k])];
                    if (k && ar.src != prev) throw ValidationError(where + ": path is not composable");
                    prev = ar.dst;
                }
                const std::pair<std::size_t, std::size_t> e{q.arrows[q.arrow_index(term.path.front())].src, prev};
                if (ends && *ends != e) throw ValidationError(where + ": terms have different endpoints");
                ends = e;
                terms.push_back(term);
            }
            if (terms.empty()) throw ValidationError(where + ": empty relation");
            q.relations.push_back(terms);
        }
    }
    if (spec.contains("path_bound")) q.path_bound = spec["path_bound"].get<std::size_t>();
    return q;
}

namespace {

Matrix parse_matrix(const Field& f, const json& v, std::size_t rows, std::size_t cols, const std::string& where) {
    Matrix m(f, rows, cols);
    if (!v.is_array()) throw ValidationError(where + ": matrix must be an array");
    const bool nested = !v.empty() && v[0].is_array();
    if (nested) {
        if (v.size() != rows) throw ValidationError(where + ": expected " + std::to_string(rows) + " rows");
        for (std::size_t i = 0; i < rows; ++i) {
            if (!v[i].is_array() || v[i].size() != cols)
                throw ValidationError(where + ": row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
            for (std::size_t j = 0; j < cols; ++j) m.set(i, j, parse_scalar(v[i][j]));
        }
    } else {
        if (v.size() != rows * cols)
            throw ValidationError(where + ": expected " + std::to_string(rows * cols) + " row-major entries");
        for (std::size_t k = 0; k < v.size(); ++k) m.set(k / cols, k % cols, parse_scalar(v[k]));
    }
    return m;
}

}  // namespace

ModPtr parse_module_spec(const AlgPtr& alg, const json& spec) {
    const auto& q = alg->presentation();
    auto m = std::make_shared<ModuleRep>();
    m->alg = alg;
    m->name = require(spec, "name", "module").get<std::string>();
    const std::string where = "module '" + m->name + "'";
    m->dims.assign(q.vertices.size(), 0);
    const json& dims = require(spec, "dims", where);
    if (!dims.is_object()) throw ValidationError(where + ": dims must map vertices to dimensions");
    for (auto it = dims.begin(); it != dims.end(); ++it) {
        std::size_t v = 0;
        try {
            v = q.vertex_index(it.key());
        } catch (const Error&) {
            throw ValidationError(where + ": unknown vertex '" + it.key() + "'");
        }
        m->dims[v] = it.value().get<std::size_t>();
    }
    const json maps = spec.contains("maps") ? spec["maps"] : json::object();
    for (auto it = maps.begin(); it != maps.end(); ++it) {
        bool known = false;
        for (const auto& a : q.arrows) known |= a.label == it.key();
        if (!known) throw ValidationError(where + ": unknown arrow '" + it.key() + "'");
    }
    for (const auto& a : q.arrows) {
        const std::size_t r = m->dims[a.dst], c = m->dims[a.src];
        if (maps.contains(a.label)) {
            m->maps.push_back(parse_matrix(alg->field(), maps[a.label], r, c, where + ", arrow '" + a.label + "'"));
        } else {
            if (r && c) throw ValidationError(where + ": missing map for arrow '" + a.label + "'");
            m->maps.emplace_back(alg->field(), r, c);
        }
    }
    try {
        m->validate();
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
    return m;
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_str(m.get(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json module_json(const ModPtr& m) {
    const auto& q = m->alg->presentation();
    json dims = json::object(), maps = json::object();
    for (std::size_t v = 0; v < q.vertices.size(); ++v) dims[q.vertices[v]] = m->dims[v];
    for (std::size_t a = 0; a < q.arrows.size(); ++a) maps[q.arrows[a].label] = matrix_json(m->maps[a]);
    return json{{"name", m->name}, {"dims", dims}, {"maps", maps}};
}

json read_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ValidationError("cannot read '" + p.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + p.string() + "': " + e.what());
    }
}

WindowInputs load_corpus_inputs(const std::filesystem::path& dir) {
    const json man = read_json_file(dir / "manifest.json");
    WindowInputs in;
    in.algebra = read_json_file(dir / require(man, "algebra", "manifest").get<std::string>());
    for (const auto& f : require(man, "modules", "manifest")) in.modules.push_back(read_json_file(dir / f.get<std::string>()));
    in.complete = man.value("complete", false);
    if (man.contains("preprojective"))
        for (const auto& p : man["preprojective"]) in.preprojective.push_back(p.get<std::string>());
    return in;
}

namespace {

json algebra_json(const QuiverPresentation& q) {
    json arrows = json::array(), rels = json::array();
    for (const auto& a : q.arrows) arrows.push_back({{"src", q.vertices[a.src]}, {"dst", q.vertices[a.dst]}, {"label", a.label}});
    for (const auto& r : q.relations) {
        json terms = json::array();
        for (const auto& t : r) terms.push_back({{"coeff", scalar_str(t.coeff)}, {"path", t.path}});
        rels.push_back(terms);
    }
    return json{{"field", field_json(q.field)}, {"vertices", q.vertices}, {"arrows", arrows}, {"relations", rels},
                {"path_bound", q.path_bound}};
}

}  // namespace

WinPtr build_window(const WindowInputs& in) {
    const AlgPtr alg = [&] {
        try {
            return build_algebra(parse_algebra_spec(in.algebra));
        } catch (const ValidationError&) {
            throw;
        } catch (const Error& e) {
            throw ValidationError(std::string("algebra: ") + e.what());
        }
    }();
    std::vector<ModPtr> objs;
    for (const auto& j : in.modules) objs.push_back(parse_module_spec(alg, j));
    WinPtr w;
    try {
        w = Window::build(alg, objs, in.complete);
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
    std::set<std::string> names;
    for (const auto& m : objs)
        if (!names.insert(m->name).second) throw ValidationError("duplicate module name '" + m->name + "'");
    for (const auto& p : in.preprojective) {
        bool found = false;
        for (const auto& m : objs) found |= m->name == p;
        if (!found) throw ValidationError("preprojective list names unknown object '" + p + "'");
    }
    return w;
}

json canonical_inputs(const WindowInputs& in) {
    const QuiverPresentation q = parse_algebra_spec(in.algebra);
    const AlgPtr alg = build_algebra(q);
    json mods = json::array();
    for (const auto& j : in.modules) mods.push_back(module_json(parse_module_spec(alg, j)));
    return json{{"algebra", algebra_json(q)}, {"modules", mods}, {"complete", in.complete}, {"preprojective", in.preprojective}};
}

WindowInputs inputs_from_canonical(const json& j) {
    WindowInputs in;
    in.algebra = j.at("algebra");
    for (const auto& m : j.at("modules")) in.modules.push_back(m);
    in.complete = j.at("complete").get<bool>();
    for (const auto& p : j.at("preprojective")) in.preprojective.push_back(p.get<std::string>());
    return in;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json hom_dim_matrix(const Window& w) {
    json m = json::array();
    for (std::size_t x = 0; x < w.size(); ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < w.size(); ++y) row.push_back(w.hom_dim(x, y));
        m.push_back(row);
    }
    return m;
}

}  // namespace torsidl
