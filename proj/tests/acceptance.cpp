#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "torsidl/suites.hpp"

// One line per acceptance criterion: PASS/FAIL, title, runtime and the first failing assertion.
int main(int argc, char** argv) {
    const std::vector<std::string> suites = {"a2-census",       "dualnumbers",  "rep-finite-td", "kronecker-omega",
                                             "kronecker-tubes", "bisubmodules", "properties"};
    std::string root = TORSIDL_SOURCE_DIR "/corpora";
    std::vector<std::size_t> which;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) which.push_back(std::stoul(argv[++i]));
        else if (a == "--corpora" && i + 1 < argc) root = argv[++i];
        else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]... [--corpora DIR]\n");
            return 3;
        }
    }
    if (which.empty())
        for (std::size_t c = 1; c <= suites.size(); ++c) which.push_back(c);
    bool all = true;
    for (auto c : which) {
        if (c < 1 || c > suites.size()) {
            std::fprintf(stderr, "unknown criterion %zu\n", c);
            return 3;
        }
        const auto r = torsidl::run_suite(suites[c - 1], root);
        all &= r.passed();
        std::printf("%s criterion %zu [%s]: %s (%.2f s, limit %.0f s, %zu assertions)\n", r.passed() ? "PASS" : "FAIL", c,
                    r.name.c_str(), r.title.c_str(), r.seconds, r.time_limit, r.assertions);
        for (const auto& [prop, n] : r.case_counts) std::printf("    %-32s %zu cases\n", prop.c_str(), n);
        for (const auto& f : r.failures) std::printf("    failed: %s\n", f.c_str());
        if (r.seconds >= r.time_limit) std::printf("    failed: runtime limit exceeded\n");
    }
    return all ? 0 : 1;
}
