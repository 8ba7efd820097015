// Acceptance runner: executes every registered criterion (or just the ones
// named on the command line) and prints one PASS/FAIL line each.  Exit code
// 0 iff everything that ran passed.
//
// Usage: acceptance [--seed N] [--suite exact|mc|all] [name ...]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "slelab/verification.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = slelab::kDefaultMasterSeed;
    if (const char* env = std::getenv("SLE_LAB_SEED")) seed = std::strtoull(env, nullptr, 0);
    std::string suite = "all";
    std::vector<std::string> names;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 0);
        } else if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc) {
            suite = argv[++i];
        } else {
            names.emplace_back(argv[i]);
        }
    }

    const auto& criteria = slelab::acceptance_criteria();
    for (const std::string& n : names) {
        bool known = false;
        for (const auto& c : criteria) known = known || c.name == n;
        if (!known) {
            std::fprintf(stderr, "unknown criterion: %s\n", n.c_str());
            return 1;
        }
    }

    int ran = 0, failed = 0;
    for (const auto& c : criteria) {
        if (!names.empty()) {
            bool want = false;
            for (const std::string& n : names) want = want || n == c.name;
            if (!want) continue;
        } else if (suite != "all" && c.suite != suite) {
            continue;
        }
        slelab::CriterionResult r;
        try {
            r = c.run(seed);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %-24s %s\n", r.pass ? "PASS" : "FAIL", c.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
        ++ran;
        if (!r.pass) ++failed;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criteria selected\n");
        return 1;
    }
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
