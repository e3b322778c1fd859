#ifndef DIFFPOW_CLI_HPP
#define DIFFPOW_CLI_HPP

#include "diffpow/report.hpp"
#include "diffpow/session.hpp"
#include "diffpow/suites.hpp"

namespace diffpow {

struct CommandFlags {
    std::optional<int> n;
    std::optional<int> degree_bound;   // corpus degree for equiv (default 2)
    std::optional<std::string> f;
    std::string format = "text";
    uint64_t seed = 0;
    std::optional<int64_t> budget;     // reduction steps; absent = unlimited
    std::string ideal_name;            // empty = first declared
    std::string lift_name;             // empty = first declared
    std::string inject_failure;        // verify-paper harness self-test
    bool include_slow = false;
};

/// Exit codes: 0 every verdict positive / checks pass; 1 a verified property
/// failed (membership false, disagreement found, suite failure); 2 input
/// error; 3 step budget exceeded.
struct CommandResult {
    int exit_code = 0;
    std::string payload;
};

/// command = {"member", "mixed"}, {"gb"}, {"colon"}, {"equiv", "diff"},
/// {"verify-paper"}, ... Never throws: errors come back as exit codes 2/3
/// with a diagnostic payload.
CommandResult run_command(const SessionFile& session, const std::vector<std::string>& command,
                          const CommandFlags& flags);

}  // namespace diffpow

#endif
