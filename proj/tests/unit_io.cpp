#include "doctest.h"
#include "helpers.hpp"
#include "torsidl/io.hpp"
#include "torsidl/suites.hpp"

using namespace torsidl;
using namespace testutil;

namespace {

const std::string kCorpora = TORSIDL_SOURCE_DIR "/corpora";

json a2_spec() {
    return json::parse(R"({"field": {"Fp": 3}, "vertices": ["1", "2"], "arrows": [{"src": "1", "dst": "2", "label": "a"}]})");
}

}  // namespace

TEST_CASE("scalar and field parsing") {
    CHECK(parse_scalar(json("3/6")) == Scalar(1, 2));
    CHECK(parse_scalar(json(-4)) == Scalar(-4));
    CHECK(parse_scalar(json("-7")) == Scalar(-7));
    CHECK_THROWS_AS(parse_scalar(json("1/0")), ValidationError);
    CHECK_THROWS_AS(parse_scalar(json("x")), ValidationError);
    CHECK_THROWS_AS(parse_scalar(json(1.5)), ValidationError);
    CHECK(parse_field(json("Q")) == Field::rationals());
    CHECK(parse_field(json::parse(R"({"Fp": 5})")) == Field::prime(5));
    CHECK_THROWS_AS(parse_field(json::parse(R"({"Fp": 6})")), ValidationError);
    CHECK(scalar_str(Scalar(-2, 4)) == "-1/2");
}

TEST_CASE("algebra spec validation") {
    auto q = parse_algebra_spec(a2_spec());
    CHECK(q.vertices.size() == 2);
    CHECK(q.field == Field::prime(3));
    auto bad = a2_spec();
    bad["arrows"].push_back({{"src", "1"}, {"dst", "2"}, {"label", "a"}});
    CHECK_THROWS_WITH_AS(parse_algebra_spec(bad), doctest::Contains("duplicate arrow"), ValidationError);
    auto rel = a2_spec();
    rel["relations"] = json::parse(R"([[{"coeff": "1", "path": ["a", "a"]}]])");
    CHECK_THROWS_WITH_AS(parse_algebra_spec(rel), doctest::Contains("not composable"), ValidationError);
    auto short_rel = a2_spec();
    short_rel["relations"] = json::parse(R"([[{"coeff": "1", "path": ["a"]}]])");
    CHECK_THROWS_WITH_AS(parse_algebra_spec(short_rel), doctest::Contains("length at least 2"), ValidationError);
}

TEST_CASE("module spec validation") {
    auto alg = build_algebra(parse_algebra_spec(a2_spec()));
    auto m = parse_module_spec(alg, json::parse(R"({"name": "P", "dims": {"1": 1, "2": 1}, "maps": {"a": [["2"]]}})"));
    CHECK(m->maps[0].get(0, 0) == Scalar(2));
    auto flat = parse_module_spec(alg, json::parse(R"({"name": "P", "dims": {"1": 1, "2": 1}, "maps": {"a": ["-1"]}})"));
    CHECK(flat->maps[0].get(0, 0) == Scalar(2));
    CHECK_THROWS_WITH_AS(parse_module_spec(alg, json::parse(R"({"name": "M", "dims": {"1": 1, "2": 1}})")),
                         doctest::Contains("missing map for arrow 'a'"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_module_spec(alg, json::parse(R"({"name": "M", "dims": {"1": 1, "2": 2}, "maps": {"a": [["1"]]}})")),
                         doctest::Contains("arrow 'a'"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_module_spec(alg, json::parse(R"({"name": "M", "dims": {"3": 1}})")),
                         doctest::Contains("unknown vertex"), ValidationError);
    // Relation violations name the relation.
    auto dq = json::parse(R"({"field": "Q", "vertices": ["1"], "arrows": [{"src": "1", "dst": "1", "label": "x"}],
                              "relations": [[{"coeff": 1, "path": ["x", "x"]}]]})");
    auto d = build_algebra(parse_algebra_spec(dq));
    CHECK_THROWS_WITH_AS(parse_module_spec(d, json::parse(R"({"name": "J", "dims": {"1": 1}, "maps": {"x": [["1"]]}})")),
                         doctest::Contains("violates relation 0"), ValidationError);
    auto back = module_json(m);
    CHECK(back["maps"]["a"] == json::parse(R"([["2"]])"));
}

TEST_CASE("corpus loading and canonical inputs") {
    auto in = load_corpus_inputs(kCorpora + "/a2");
    auto w = build_window(in);
    CHECK(w->size() == 3);
    CHECK(w->complete());
    auto c = canonical_inputs(in);
    CHECK(canonical_inputs(inputs_from_canonical(c)) == c);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(hex64(0xabcull) == "0000000000000abc");
    auto dup = in;
    dup.modules.push_back(in.modules[0]);
    CHECK_THROWS_WITH_AS(build_window(dup), doctest::Contains("duplicate isomorphism class"), ValidationError);
    auto k = build_window(load_corpus_inputs(kCorpora + "/kronecker"));
    CHECK(k->size() == 20);
    CHECK_FALSE(k->complete());
    // The corpus reproduces the hand-built test window.
    auto hk = kron_window();
    for (std::size_t x = 0; x < k->size(); ++x)
        for (std::size_t y = 0; y < k->size(); ++y) CHECK(k->hom_dim(x, y) == hk->hom_dim(x, y));
}

TEST_CASE("brute-force oracles") {
    auto w = a2_window();
    CHECK(brute_force_subfunctor_count(w) == 8);
    CHECK(all_submodules(w->object(w->index_of("P1"))).size() == 3);
    CHECK(brute_force_subfunctor_count(dual_window()) == 4);
    CHECK(brute_force_subfunctor_count(a3_window()) == enumerate_subfunctors(a3_window()).elements.size());
}
