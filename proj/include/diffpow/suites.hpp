#ifndef DIFFPOW_SUITES_HPP
#define DIFFPOW_SUITES_HPP

#include "diffpow/powers.hpp"

namespace diffpow {

/// Controls for the bundled verification suites.
struct SuiteOptions {
    // Name of a suite whose frozen expected value gets deliberately
    // corrupted, to prove the harness turns red. Empty = run honestly.
    std::string inject_failure;
    bool include_slow = false;  // adds the 3-variable monomial-curve instance
    uint64_t seed = 0;          // corpus seed for the equivalence suites
    std::string only;           // run just this suite (empty = all)
};

std::vector<std::string> suite_names();

/// Runs every bundled suite (in the suite_names() order) and returns one
/// report per suite. Never throws on a failed check; failures are carried
/// in the reports.
std::vector<CheckReport> run_paper_suites(const SuiteOptions& opts);

}  // namespace diffpow

#endif
