#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "torsidl/io.hpp"
#include "torsidl/suites.hpp"

using namespace torsidl;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "torsidl 1.0.0";

enum Exit { Ok = 0, VerifyFailed = 1, Invalid = 2, Usage = 3 };

class UsageError : public Error {
public:
    using Error::Error;
};

struct WindowArgs {
    std::string window_hash;
    std::string corpus;
    std::string algebra;
    std::vector<std::string> modules;
    bool complete = false;
};

struct Global {
    std::string cache_dir;
    std::string out;
    std::string corpora = TORSIDL_SOURCE_DIR "/corpora";
};

fs::path cache_dir(const Global& g) {
    if (!g.cache_dir.empty()) return g.cache_dir;
    if (const char* env = std::getenv("TORSIDL_CACHE"); env && *env) return env;
    return ".torsidl";
}

struct LoadedWindow {
    WinPtr w;
    std::string hash;
};

// Builds the window from the given inputs or the cache and stores the cache entry.
LoadedWindow load_window(const WindowArgs& a, const Global& g) {
    const fs::path dir = cache_dir(g);
    WindowInputs in;
    if (!a.window_hash.empty()) {
        const fs::path p = dir / (a.window_hash + ".json");
        if (!fs::exists(p)) throw ValidationError("no cached window '" + a.window_hash + "' in " + dir.string());
        const json entry = read_json_file(p);
        in = inputs_from_canonical(entry.at("inputs"));
        WinPtr w = build_window(in);
        if (hom_dim_matrix(*w) != entry.at("hom_dims")) throw ValidationError("cache entry '" + a.window_hash + "' is inconsistent");
        return {w, a.window_hash};
    }
    if (!a.corpus.empty()) {
        in = load_corpus_inputs(a.corpus);
    } else if (!a.algebra.empty()) {
        in.algebra = read_json_file(a.algebra);
        for (const auto& m : a.modules) in.modules.push_back(read_json_file(m));
        in.complete = a.complete;
    } else {
        throw UsageError("a window is required: --window HASH, --corpus DIR or --algebra F --modules F...");
    }
    const json canon = canonical_inputs(in);
    WinPtr w = build_window(inputs_from_canonical(canon));
    const std::string hash = hex64(fnv1a64(canon.dump()));
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!ec) {
        std::ofstream f(dir / (hash + ".json"));
        f << json{{"inputs", canon}, {"hom_dims", hom_dim_matrix(*w)}}.dump(2) << "\n";
    }
    return {w, hash};
}

std::size_t object(const Window& w, const std::string& name) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w.object(i)->name == name) return i;
    throw UsageError("unknown object '" + name + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

json names(const Window& w, const std::vector<std::size_t>& objs) {
    json a = json::array();
    for (auto o : objs) a.push_back(w.object(o)->name);
    return a;
}

json ideal_dims(const Ideal& i) {
    json m = json::array();
    for (std::size_t x = 0; x < i.w->size(); ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < i.w->size(); ++y) row.push_back(i.at(x, y).dim());
        m.push_back(row);
    }
    return m;
}

json subfunctor_json(const Subfunctor& t) {
    json dims = json::object(), vecs = json::object();
    for (std::size_t x = 0; x < t.w->size(); ++x) {
        const ModPtr& m = t.w->object(x);
        dims[m->name] = t.at(x).dim();
        json v = json::array();
        for (std::size_t k = 0; k < m->dims.size(); ++k) v.push_back(vertex_part(m, t.at(x), k).dim());
        vecs[m->name] = v;
    }
    return json{{"t_dims", dims}, {"t_dimension_vectors", vecs}};
}

json report(const std::string& command, const json& inputs, Exactness e, const json& payload) {
    return json{{"command", command}, {"inputs", inputs}, {"exactness", exactness_str(e)}, {"payload", payload}, {"version", kVersion}};
}

void emit(const json& r, const Global& g) {
    const std::string text = r.dump(2) + "\n";
    std::cout << text;
    if (!g.out.empty()) {
        std::ofstream f(g.out);
        if (!f) throw UsageError("cannot write '" + g.out + "'");
        f << text;
    }
}

Ideal named_ideal(RadicalTower& tower, const std::string& spec) {
    const WinPtr& w = tower.w;
    if (spec == "zero") return zero_ideal(w);
    if (spec == "unit") return unit_ideal(w);
    if (spec == "rad") return tower.rad;
    if (spec == "omega") return tower.omega;
    if (spec.rfind("rad^", 0) == 0) {
        std::size_t n = 0;
        try {
            n = std::stoul(spec.substr(4));
        } catch (const std::exception&) {
            throw UsageError("bad ideal '" + spec + "'");
        }
        return tower.power(n);
    }
    throw UsageError("unknown ideal '" + spec + "' (zero, unit, rad, rad^N, omega)");
}

// ---------- Commands ----------

json cmd_window_build(const WindowArgs& a, const Global& g) {
    auto lw = load_window(a, g);
    const Window& w = *lw.w;
    json objs = json::array();
    for (const auto& m : w.objects()) objs.push_back(json{{"name", m->name}, {"dims", m->dims}});
    json payload{{"window", lw.hash}, {"objects", objs}, {"hom_dims", hom_dim_matrix(w)}, {"complete", w.complete()},
                 {"cache_dir", cache_dir(g).string()}};
    return report("window build", json{{"window", lw.hash}}, w.exactness(), payload);
}

struct PairArgs {
    std::string closure, subfunctor, ideal = "rad";
    std::vector<std::string> objects;
};

json cmd_pair(const WindowArgs& a, const PairArgs& p, const Global& g) {
    auto lw = load_window(a, g);
    const WinPtr& w = lw.w;
    IdealTorsionPair pair;
    json inputs{{"window", lw.hash}};
    if (!p.closure.empty() == !p.subfunctor.empty()) throw UsageError("exactly one of --closure and --subfunctor is required");
    if (!p.closure.empty()) {
        inputs["closure"] = p.closure;
        if (p.closure == "ideal") {
            auto tower = make_radical_tower(w);
            inputs["ideal"] = p.ideal;
            pair = torsion_closure(named_ideal(tower, p.ideal));
        } else {
            if (p.closure != "gen" && p.closure != "cogen") throw UsageError("--closure must be gen, cogen or ideal");
            std::vector<std::size_t> objs;
            for (const auto& o : p.objects) objs.push_back(object(*w, o));
            inputs["objects"] = p.objects;
            const Ideal i = ideal_of_subcategory(w, objs);
            pair = p.closure == "gen" ? torsion_closure(i) : torsionfree_closure(i);
        }
    } else {
        inputs["subfunctor"] = p.subfunctor;
        if (p.subfunctor == "zero") pair = pair_from_subfunctor(zero_subfunctor(w));
        else if (p.subfunctor == "identity") pair = pair_from_subfunctor(identity_subfunctor(w));
        else {
            // principal:OBJ:v1,v2,...
            auto parts = split(p.subfunctor, ':');
            if (parts.size() != 3 || parts[0] != "principal") throw UsageError("--subfunctor must be zero, identity or principal:OBJ:v1,v2,...");
            const std::size_t x = object(*w, parts[1]);
            std::vector<Scalar> v;
            for (const auto& e : split(parts[2], ',')) v.push_back(parse_scalar(json(e)));
            if (v.size() != w->object(x)->total_dim()) throw UsageError("principal vector has the wrong length");
            pair = pair_from_subfunctor(principal_subfunctor(w, x, Matrix::row_vector(w->field(), v)));
        }
    }
    json payload = subfunctor_json(pair.t);
    json objs = json::array();
    for (const auto& m : w->objects()) objs.push_back(m->name);
    payload["objects"] = objs;
    payload["ideal_dims"] = json{{"torsion", ideal_dims(pair.torsion)}, {"torsionfree", ideal_dims(pair.torsionfree)}};
    payload["ob_torsion"] = names(*w, ob(pair.torsion));
    payload["ob_torsionfree"] = names(*w, ob(pair.torsionfree));
    payload["idempotent"] = is_idempotent(pair);
    auto ff = is_functorially_finite(pair);
    payload["functorially_finite"] = json{{"value", ff.value}, {"exactness", exactness_str(ff.exactness)}, {"caveat", ff.caveat}};
    json left = json::array(), right = json::array();
    for (std::size_t c = 0; c < w->size(); ++c) {
        if (is_left_determined(pair.torsion, {c}).value) left.push_back(w->object(c)->name);
        if (is_right_determined(pair.torsionfree, {c}).value) right.push_back(w->object(c)->name);
    }
    payload["torsion_left_determined_by"] = left;
    payload["torsionfree_right_determined_by"] = right;
    return report("pair", inputs, w->exactness(), payload);
}

json cmd_rank(const WindowArgs& a, const std::vector<std::string>& module, int budget, const Global& g) {
    auto lw = load_window(a, g);
    const WinPtr& w = lw.w;
    std::vector<std::size_t> objs;
    for (const auto& m : module)
        for (const auto& part : split(m, '+')) objs.push_back(object(*w, part));
    if (objs.empty()) throw UsageError("--module is required");
    auto tower = make_radical_tower(w);
    auto r = rad_chain(tower, objs);
    json payload{{"module", r.module},
                 {"tag", r.tag.str()},
                 {"chain_dims", r.chain},
                 {"preprojective", r.preprojective},
                 {"window_relative", r.tag.window_relative}};
    json inputs{{"window", lw.hash}, {"module", r.module}};
    if (budget >= 0) {
        payload["projective_rank"] = projective_rank(tower, objs, std::size_t(budget)).str();
        inputs["omega_budget"] = budget;
    }
    return report("rank", inputs, w->exactness(), payload);
}

struct LatticeArgs {
    bool enumerate = false, mdim = false, certify = false, census = false;
};

json cmd_lattice(const WindowArgs& a, const LatticeArgs& l, const Global& g) {
    if (!l.enumerate && !l.mdim && !l.certify && !l.census) throw UsageError("one of --enumerate, --mdim, --certify, --census is required");
    auto lw = load_window(a, g);
    const WinPtr& w = lw.w;
    json payload = json::object();
    json inputs{{"window", lw.hash}};
    std::optional<SubfunctorLattice> lat;
    if (l.enumerate || l.mdim) lat = enumerate_subfunctors(w);
    if (l.enumerate) {
        inputs["enumerate"] = true;
        json elems = json::array();
        for (const auto& t : lat->elements) elems.push_back(t.dims());
        json hasse = json::array();
        for (auto [x, y] : lat->lattice.hasse()) hasse.push_back({x, y});
        payload["enumerate"] = json{{"count", lat->elements.size()}, {"principal_count", lat->principal_count},
                                    {"modular", lat->lattice.is_modular()}, {"chain", lat->lattice.is_chain()},
                                    {"elements", elems}, {"hasse", hasse}};
        payload["count"] = lat->elements.size();
    }
    if (l.mdim) {
        inputs["mdim"] = true;
        payload["mdim"] = mdim(lat->lattice);
    }
    if (l.census) {
        inputs["census"] = true;
        auto c = torsion_classes(w);
        json cls = json::array();
        for (const auto& s : c.classes) cls.push_back(names(*w, s));
        payload["census"] = json{{"count", c.classes.size()}, {"torsion_classes", cls}, {"ext_dim_bound", c.ext_dim_bound},
                                 {"orthogonal_count", c.orthogonal.size()}};
    }
    if (l.certify) {
        inputs["certify"] = true;
        auto td = torsion_dimension_report(w);
        json certs = json::array();
        for (const auto& c : td.certificates) {
            json chain = json::array();
            for (const auto& t : c.chain) chain.push_back(t.dims());
            certs.push_back(json{{"depth", c.depth}, {"strict", c.strict}, {"chain_dims", chain}, {"description", c.description}});
        }
        payload["certify"] = json{{"value", td.value ? json(*td.value) : json(nullptr)}, {"exact", td.exact},
                                  {"lower_bound", td.lower_bound}, {"lattice_size", td.lattice_size}, {"certificates", certs}};
    }
    return report("lattice", inputs, w->exactness(), payload);
}

int cmd_verify(const std::vector<std::string>& suites, const Global& g) {
    std::vector<std::string> todo;
    for (const auto& s : suites) {
        if (s == "all") {
            for (const auto& n : suite_names()) todo.push_back(n);
            continue;
        }
        if (resolve_suite(s).empty()) throw UsageError("unknown suite '" + s + "'");
        todo.push_back(s);
    }
    if (todo.empty()) throw UsageError("--suite is required");
    json results = json::array();
    bool ok = true;
    std::string first;
    for (const auto& s : todo) {
        auto r = run_suite(s, g.corpora);
        ok &= r.passed();
        if (first.empty() && !r.passed())
            first = r.name + ": " + (r.failures.empty() ? std::string("runtime limit exceeded") : r.failures.front());
        json cases = json::object();
        for (const auto& [k, v] : r.case_counts) cases[k] = v;
        // Timings are omitted to keep reports byte-stable.
        results.push_back(json{{"suite", r.name}, {"title", r.title}, {"passed", r.passed()}, {"assertions", r.assertions},
                               {"failures", r.failures}, {"cases", cases}});
    }
    json payload{{"passed", ok}, {"suites", results}};
    if (!ok) payload["first_failure"] = first;
    const bool rel = std::any_of(todo.begin(), todo.end(), [](const std::string& s) { return resolve_suite(s).rfind("kronecker", 0) == 0; });
    emit(report("verify", json{{"suites", todo}}, rel ? Exactness::WindowRelative : Exactness::Exact, payload), g);
    if (!ok) std::cerr << "verification failed: " << first << "\n";
    return ok ? Ok : VerifyFailed;
}

void add_window_opts(CLI::App* c, WindowArgs& a) {
    c->add_option("--window", a.window_hash, "Cached window hash");
    c->add_option("--corpus", a.corpus, "Corpus directory with manifest.json");
    c->add_option("--algebra", a.algebra, "Algebra spec file");
    c->add_option("--modules", a.modules, "Module spec files")->expected(1, -1);
    c->add_flag("--complete", a.complete, "The modules are all indecomposables up to isomorphism");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ideal torsion pairs, radical filtrations and torsion-dimension certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--cache-dir", g.cache_dir, "Window cache directory (default $TORSIDL_CACHE or ./.torsidl)");
    app.add_option("--out", g.out, "Also write the report to this file");
    app.add_option("--corpora", g.corpora, "Root of the bundled corpora");
    app.set_version_flag("--version", kVersion);

    WindowArgs wa;
    auto* window = app.add_subcommand("window", "Window operations");
    window->require_subcommand(1);
    auto* build = window->add_subcommand("build", "Build, validate and cache a window");
    add_window_opts(build, wa);

    PairArgs pa;
    auto* pair = app.add_subcommand("pair", "Ideal torsion pair from a closure or a subfunctor");
    add_window_opts(pair, wa);
    pair->add_option("--closure", pa.closure, "gen, cogen or ideal");
    pair->add_option("--objects", pa.objects, "Window objects for gen/cogen")->expected(1, -1);
    pair->add_option("--ideal", pa.ideal, "Ideal for --closure ideal: zero, unit, rad, rad^N, omega");
    pair->add_option("--subfunctor", pa.subfunctor, "zero, identity or principal:OBJ:v1,v2,...");

    std::vector<std::string> module;
    int budget = -1;
    auto* rank = app.add_subcommand("rank", "Radical chain and projective rank of a window module");
    add_window_opts(rank, wa);
    rank->add_option("--module", module, "Window object, or a sum X+Y")->expected(1, -1)->required();
    rank->add_option("--omega-budget", budget, "Refine omega-level ranks up to this depth");

    LatticeArgs la;
    auto* lattice = app.add_subcommand("lattice", "Subfunctor lattice, m-dimension and certificates");
    add_window_opts(lattice, wa);
    lattice->add_flag("--enumerate", la.enumerate, "Enumerate all ideal torsion pairs");
    lattice->add_flag("--mdim", la.mdim, "m-dimension of the enumerated lattice");
    lattice->add_flag("--certify", la.certify, "Torsion dimension report with chain certificates");
    lattice->add_flag("--census", la.census, "Torsion class census");

    std::vector<std::string> suites;
    auto* verify = app.add_subcommand("verify", "Run bundled verification suites");
    verify->add_option("--suite", suites, "Suite name or 'all'")->expected(1, -1)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Usage;
    }

    try {
        if (*build) emit(cmd_window_build(wa, g), g);
        else if (*pair) emit(cmd_pair(wa, pa, g), g);
        else if (*rank) emit(cmd_rank(wa, module, budget, g), g);
        else if (*lattice) emit(cmd_lattice(wa, la, g), g);
        else if (*verify) return cmd_verify(suites, g);
        return Ok;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return Invalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return Invalid;
    }
}
