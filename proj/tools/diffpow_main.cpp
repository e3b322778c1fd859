#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "diffpow/cli.hpp"

namespace {

// Exit codes: 0 all verdicts positive, 1 a verified property failed,
// 2 input error, 3 step budget exceeded.

int run(int argc, char** argv) {
    CLI::App app{"exact symbolic / differential / p-derivation power computations"};
    app.require_subcommand(1);

    std::string input, format = "text", f_str, ideal_name, lift_name;
    std::string member_kind, equiv_kind, inject;
    int n = 0, degree_bound = -1;
    uint64_t seed = 0;
    int64_t budget = 0;
    bool include_slow = false;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        auto* in = cmd->add_option("--input", input, "session file path");
        if (needs_input) in->required();
        cmd->add_option("--format", format, "text or json")->capture_default_str();
        cmd->add_option("--budget", budget, "reduction step budget (0 = unlimited)");
        return cmd;
    };

    CLI::App* member = add_common(app.add_subcommand("member", "membership in one power"), true);
    member->add_option("kind", member_kind, "symbolic | diff | pder | mixed")->required();
    member->add_option("--f", f_str, "polynomial to test")->required();
    member->add_option("--n", n, "power level")->required();
    member->add_option("--ideal", ideal_name, "ideal name (default: first declared)");
    member->add_option("--lift", lift_name, "lift name (default: first declared)");

    CLI::App* gb = add_common(app.add_subcommand("gb", "Groebner basis of an ideal"), true);
    gb->add_option("--ideal", ideal_name, "ideal name (default: first declared)");

    CLI::App* col = add_common(app.add_subcommand("colon", "colon ideal (I : f)"), true);
    col->add_option("--f", f_str, "divisor polynomial")->required();
    col->add_option("--ideal", ideal_name, "ideal name (default: first declared)");

    CLI::App* equiv =
        add_common(app.add_subcommand("equiv", "corpus agreement between power notions"), true);
    equiv->add_option("kind", equiv_kind, "diff | mixed | delta-independence")->required();
    equiv->add_option("--n", n, "power level")->required();
    equiv->add_option("--degree-bound", degree_bound, "corpus monomial degree (default 2)");
    equiv->add_option("--seed", seed, "corpus seed")->capture_default_str();
    equiv->add_option("--ideal", ideal_name, "ideal name (default: first declared)");
    equiv->add_option("--lift", lift_name, "lift name (default: first declared)");

    CLI::App* vp =
        add_common(app.add_subcommand("verify-paper", "run the bundled verification suites"),
                   false);
    vp->add_option("--seed", seed, "corpus seed")->capture_default_str();
    vp->add_flag("--include-slow", include_slow, "also run the 3-variable stretch instance");
    vp->add_option("--inject-failure", inject,
                   "corrupt the named suite's frozen expectation (harness self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help / --version print and exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // bad flags are input errors
    }

    diffpow::CommandFlags flags;
    if (member->parsed() || equiv->parsed()) flags.n = n;
    if (degree_bound >= 0) flags.degree_bound = degree_bound;
    if (!f_str.empty()) flags.f = f_str;
    flags.format = format;
    flags.seed = seed;
    if (budget > 0) flags.budget = budget;
    flags.ideal_name = ideal_name;
    flags.lift_name = lift_name;
    flags.inject_failure = inject;
    flags.include_slow = include_slow;

    diffpow::SessionFile session;
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) {
            std::cerr << "error: cannot read session file '" << input << "'\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        try {
            session = diffpow::parse_session(ss.str());
        } catch (const diffpow::InputError& e) {
            std::cerr << "error: " << input << ": " << e.what() << "\n";
            return 2;
        }
    }

    std::vector<std::string> command;
    if (member->parsed()) command = {"member", member_kind};
    else if (gb->parsed()) command = {"gb"};
    else if (col->parsed()) command = {"colon"};
    else if (equiv->parsed()) command = {"equiv", equiv_kind};
    else command = {"verify-paper"};

    diffpow::CommandResult result = diffpow::run_command(session, command, flags);
    std::cout << result.payload;
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
