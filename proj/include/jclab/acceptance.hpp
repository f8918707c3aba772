// acceptance.hpp — the end-to-end acceptance suite: reproduces the
// reference ensemble statistics (fit slope angles, Pearson coefficients,
// fractional entanglement contributions, ensemble-mean gaps) for every
// experiment family at pinned tolerances, plus the property and
// determinism criteria.
//
// `scale` divides ensemble sizes for desk-scale runs and switches the
// Monte-Carlo comparisons to their widened desk tolerances; the property
// and determinism criteria always run at full strength.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jclab {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::vector<std::string> detail;  // one line per sub-check
};

struct AcceptanceOptions {
    int scale = 1;            // divides ensemble sizes; > 1 widens MC tolerances
    int workers = 0;          // 0 = hardware concurrency
    std::uint64_t seed = 20260810;
    std::vector<int> only;    // run only these criterion indices (1-based); empty = all
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

} // namespace jclab
