// verify.hpp — runtime verification suites: spectral invariants, oracle
// equivalence of the evolution paths, measure identities, sampler
// distribution tests, grid convergence, and determinism.
//
// `fast` caps Monte-Carlo sizes so the suite finishes in well under a
// minute; `full` uses the larger sizes (the acceptance criteria are a
// separate, heavier suite layered on top by the CLI).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jclab {

enum class VerifyLevel { Fast, Full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured value and bound, or failing seed
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

VerifyReport run_verification(VerifyLevel level, int workers, std::uint64_t seed);

} // namespace jclab
