#include "diffpow/cli.hpp"

#include <chrono>
#include <limits>

#include "diffpow/budget.hpp"
#include "json.hpp"

namespace diffpow {

namespace {

using Clock = std::chrono::steady_clock;

int require_n(const CommandFlags& flags) {
    if (!flags.n) throw InputError("this command needs --n");
    return *flags.n;
}

const Ideal& require_ideal(const SessionFile& s, const CommandFlags& flags) {
    const Ideal* I = s.find_ideal(flags.ideal_name);
    if (!I)
        throw InputError(flags.ideal_name.empty()
                             ? "the session declares no ideal"
                             : "no ideal named '" + flags.ideal_name + "' in the session");
    return *I;
}

const FrobeniusLift& require_lift(const SessionFile& s, const CommandFlags& flags) {
    const FrobeniusLift* L = s.find_lift(flags.lift_name);
    if (!L)
        throw InputError(flags.lift_name.empty()
                             ? "the session declares no lift"
                             : "no lift named '" + flags.lift_name + "' in the session");
    return *L;
}

Poly require_f(const SessionFile& s, const CommandFlags& flags) {
    if (!flags.f) throw InputError("this command needs --f <polynomial>");
    return parse_poly(*flags.f, s.ctx, s.dom);
}

std::string ideal_label(const SessionFile& s, const CommandFlags& flags) {
    const std::string& name = flags.ideal_name;
    for (const auto& [n, ideal] : s.ideals)
        if (name.empty() || n == name) return n + " = " + describe_ideal(ideal);
    return "";
}

PrimeCertificate cert_for(const SessionFile& s, const CommandFlags& flags) {
    if (!flags.ideal_name.empty()) return s.certificate_for(flags.ideal_name);
    return s.ideals.empty() ? PrimeCertificate{} : s.certificate_for(s.ideals.front().first);
}

// First delta-chain escape, for the pder membership witness.
std::optional<MixedWitness> pder_violation(const Ideal& Q, int n, const PDerivation& d,
                                           const Poly& f) {
    if (f.is_zero()) return std::nullopt;
    Poly g = f;
    for (int s = 0; s <= n - 1; ++s) {
        if (!contains(Q, g)) return MixedWitness{s, Monomial::one(Q.context().size()), g};
        if (s < n - 1) g = d.derive(g);
    }
    return std::nullopt;
}

CommandResult member_command(const SessionFile& s, const std::string& kind,
                             const CommandFlags& flags, ReportContext rc) {
    const Ideal& Q = require_ideal(s, flags);
    Poly f = require_f(s, flags);
    int n = require_n(flags);
    rc.ideal = ideal_label(s, flags);
    rc.certificate = cert_for(s, flags).str();
    rc.n = n;
    rc.f = f.str();

    bool verdict;
    std::optional<MixedWitness> witness;
    auto t0 = Clock::now();
    if (kind == "symbolic") {
        verdict = symbolic_membership(Q, n, f);
    } else if (kind == "diff") {
        std::optional<Monomial> viol = diff_power_violation(Q, n, f);
        verdict = !viol;
        if (viol) witness = MixedWitness{0, *viol, apply_D(*viol, f)};
    } else if (kind == "pder") {
        if (!s.prime) throw InputError("member pder needs a prime declaration");
        const FrobeniusLift& lift = require_lift(s, flags);
        rc.p = *s.prime;
        rc.lift = lift.str();
        witness = pder_violation(Q, n, PDerivation(lift), f);
        verdict = !witness;
    } else if (kind == "mixed") {
        if (!s.prime) throw InputError("member mixed needs a prime declaration");
        const FrobeniusLift& lift = require_lift(s, flags);
        rc.p = *s.prime;
        rc.lift = lift.str();
        PowerQuery q{Q,           cert_for(s, flags), n, *s.prime, PDerivation(lift),
                     std::nullopt, std::nullopt};
        witness = mixed_power_violation(q, f);
        verdict = !witness;
    } else {
        throw InputError("unknown member kind '" + kind +
                         "' (expected symbolic, diff, pder, or mixed)");
    }
    rc.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    return {verdict ? 0 : 1, render_member(rc, verdict, witness, parse_format(flags.format))};
}

CommandResult equiv_command(const SessionFile& s, const std::string& kind,
                            const CommandFlags& flags, ReportContext rc) {
    const Ideal& Q = require_ideal(s, flags);
    int n = require_n(flags);
    int degree = flags.degree_bound.value_or(2);
    PrimeCertificate cert = cert_for(s, flags);
    rc.ideal = ideal_label(s, flags);
    rc.certificate = cert.str();
    rc.n = n;
    rc.seed = flags.seed;

    std::vector<Poly> corpus = standard_corpus(Q, degree, 3, flags.seed);
    std::string corpus_desc = "monomials deg <= " + std::to_string(degree) +
                              ", generator products <= 3, 100 seeded sparse (seed " +
                              std::to_string(flags.seed) + ")";

    EquivalenceReport rep;
    auto t0 = Clock::now();
    if (kind == "diff") {
        rep = diff_symbolic_equivalence(Q, cert, n, corpus);
    } else if (kind == "mixed") {
        if (!s.prime) throw InputError("equiv mixed needs a prime declaration");
        const FrobeniusLift& lift = require_lift(s, flags);
        rc.p = *s.prime;
        rc.lift = lift.str();
        PowerQuery q{Q, cert, n, *s.prime, PDerivation(lift), std::nullopt, std::nullopt};
        rep = mixed_symbolic_equivalence(q, corpus);
    } else if (kind == "delta-independence") {
        if (!s.prime) throw InputError("equiv delta-independence needs a prime declaration");
        if (s.lifts.empty()) throw InputError("equiv delta-independence needs declared lifts");
        std::vector<FrobeniusLift> lifts;
        for (const auto& [name, lift] : s.lifts) lifts.push_back(lift);
        rc.p = *s.prime;
        rep = delta_independence(Q, cert, n, *s.prime, lifts, corpus);
    } else {
        throw InputError("unknown equiv kind '" + kind +
                         "' (expected diff, mixed, or delta-independence)");
    }
    rep.corpus_description = corpus_desc;
    rc.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    return {rep.all_agree() ? 0 : 1,
            render_equivalence(rc, rep, parse_format(flags.format))};
}

CommandResult verify_paper_command(const CommandFlags& flags, ReportContext rc) {
    SuiteOptions opts;
    opts.inject_failure = flags.inject_failure;
    opts.include_slow = flags.include_slow;
    opts.seed = flags.seed;
    rc.ring = "bundled instances";
    rc.seed = flags.seed;
    auto t0 = Clock::now();
    std::vector<CheckReport> suites = run_paper_suites(opts);
    rc.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    bool all = true;
    for (const CheckReport& s : suites) all = all && s.ok();
    return {all ? 0 : 1, render_checks(rc, suites, parse_format(flags.format))};
}

std::string render_error(const std::string& msg, const CommandFlags& flags,
                         const std::string& command) {
    if (flags.format == "json") {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["error"] = msg;
        return j.dump(2) + "\n";
    }
    return "error: " + msg + "\n";
}

}  // namespace

CommandResult run_command(const SessionFile& session, const std::vector<std::string>& command,
                          const CommandFlags& flags) {
    std::string joined;
    for (const std::string& c : command) joined += (joined.empty() ? "" : " ") + c;
    try {
        BudgetScope scope(flags.budget.value_or(std::numeric_limits<int64_t>::max()));
        if (command.empty()) throw InputError("no command given");
        (void)parse_format(flags.format);  // reject bad formats before work

        ReportContext rc;
        rc.command = joined;
        rc.ring = describe_ring(session.ctx, session.dom);

        if (command[0] == "verify-paper") return verify_paper_command(flags, rc);

        if (command[0] == "member" && command.size() == 2)
            return member_command(session, command[1], flags, rc);
        if (command[0] == "equiv" && command.size() == 2)
            return equiv_command(session, command[1], flags, rc);

        if (command[0] == "gb" && command.size() == 1) {
            const Ideal& Q = require_ideal(session, flags);
            rc.ideal = ideal_label(session, flags);
            auto t0 = Clock::now();
            auto gb = Q.groebner(Order::grevlex());
            rc.runtime_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
            return {0, render_polys(rc, "basis", gb->elements, gb->strong,
                                    parse_format(flags.format))};
        }
        if (command[0] == "colon" && command.size() == 1) {
            const Ideal& Q = require_ideal(session, flags);
            Poly f = require_f(session, flags);
            rc.ideal = ideal_label(session, flags);
            rc.f = f.str();
            auto t0 = Clock::now();
            Ideal J = colon(Q, f);
            rc.runtime_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
            return {0, render_polys(rc, "generators", J.generators(), false,
                                    parse_format(flags.format))};
        }
        throw InputError("unknown command '" + joined + "'");
    } catch (const ResourceError& e) {
        return {3, render_error(e.what(), flags, joined)};
    } catch (const InputError& e) {
        return {2, render_error(e.what(), flags, joined)};
    }
}

}  // namespace diffpow
