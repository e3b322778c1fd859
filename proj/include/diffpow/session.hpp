#ifndef DIFFPOW_SESSION_HPP
#define DIFFPOW_SESSION_HPP

#include <string>
#include <utility>
#include <vector>

#include "diffpow/pderiv.hpp"
#include "diffpow/powers.hpp"

namespace diffpow {

/// Parsed session file. Line-oriented grammar, one declaration per line:
///
///   ring <Z|Q|F<p>> [x, y, ...]        exactly one, before everything else
///   prime <p>                          at most one; required by lifts
///   ideal <Name> = f1, f2, ...
///   lift <Name> : x -> g1, y -> g2     one image per ring variable
///   certificate <IdealName> : <kind>   kinds as in PrimeCertificate
///   # comment                          blank lines are skipped too
///
/// Every name is declared before it is referenced and declared only once.
struct SessionFile {
    Context ctx{std::vector<std::string>{}};
    Domain dom = Domain::ZZ();
    std::optional<mpz_class> prime;
    std::vector<std::pair<std::string, Ideal>> ideals;
    std::vector<std::pair<std::string, FrobeniusLift>> lifts;
    std::vector<std::pair<std::string, PrimeCertificate>> certificates;  // keyed by ideal name

    // nullptr when absent; empty name means "the first declared one".
    const Ideal* find_ideal(const std::string& name) const;
    const FrobeniusLift* find_lift(const std::string& name) const;
    PrimeCertificate certificate_for(const std::string& ideal_name) const;  // Trusted default
};

/// Throws ParseError (with the offending line) on malformed input.
SessionFile parse_session(const std::string& text);

}  // namespace diffpow

#endif
