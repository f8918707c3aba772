// Acceptance suite runner: evaluates every acceptance criterion at its
// pinned tolerance and prints one PASS/FAIL line per criterion (with
// per-statistic sub-lines). Exit status is nonzero if any criterion fails.
//
// Usage: acceptance [--scale K] [--workers N] [--seed S] [--criterion I]...

#include "jclab/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    jclab::AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) {
        auto next = [&](const char* flag) {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value for %s\n", flag);
                std::exit(2);
            }
            return argv[++i];
        };
        if (std::strcmp(argv[i], "--scale") == 0)
            options.scale = std::atoi(next("--scale"));
        else if (std::strcmp(argv[i], "--workers") == 0)
            options.workers = std::atoi(next("--workers"));
        else if (std::strcmp(argv[i], "--seed") == 0)
            options.seed = std::strtoull(next("--seed"), nullptr, 10);
        else if (std::strcmp(argv[i], "--criterion") == 0)
            options.only.push_back(std::atoi(next("--criterion")));
        else {
            std::fprintf(stderr, "unknown argument: %s\n", argv[i]);
            return 2;
        }
    }
    if (options.scale < 1) {
        std::fprintf(stderr, "--scale must be >= 1\n");
        return 2;
    }

    std::printf("acceptance suite: scale=%d seed=%llu\n", options.scale,
                static_cast<unsigned long long>(options.seed));
    bool all_pass = true;
    for (const auto& criterion : jclab::run_acceptance(options)) {
        std::printf("[%s] criterion %d: %s\n", criterion.pass ? "PASS" : "FAIL", criterion.index,
                    criterion.name.c_str());
        for (const auto& line : criterion.detail) std::printf("%s\n", line.c_str());
        std::fflush(stdout);
        all_pass = all_pass && criterion.pass;
    }
    std::printf("acceptance suite: %s\n", all_pass ? "ALL PASS" : "FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
