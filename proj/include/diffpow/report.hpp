#ifndef DIFFPOW_REPORT_HPP
#define DIFFPOW_REPORT_HPP

#include <string>

#include "diffpow/powers.hpp"
#include "diffpow/session.hpp"

namespace diffpow {

enum class ReportFormat { Text, Json };

ReportFormat parse_format(const std::string& s);  // "text" | "json"

/// Everything the report envelope needs besides the result itself. Optional
/// fields render as JSON null / are omitted from text.
struct ReportContext {
    std::string command;
    std::string ring;  // e.g. "Z[x, y]"
    std::string ideal;
    std::string certificate;
    std::optional<int> n;
    std::optional<mpz_class> p;
    std::optional<std::string> lift;
    std::optional<std::string> f;
    std::optional<uint64_t> seed;
    long long runtime_ms = 0;
};

std::string describe_ring(const Context& ctx, const Domain& dom);
std::string describe_ideal(const Ideal& I);

/// Membership verdict with an optional failing composition.
std::string render_member(const ReportContext& rc, bool verdict,
                          const std::optional<MixedWitness>& witness, ReportFormat fmt);

/// Agreement table between membership notions.
std::string render_equivalence(const ReportContext& rc, const EquivalenceReport& rep,
                               ReportFormat fmt);

/// Flat list of polynomials (Groebner bases, colon generators, ...).
std::string render_polys(const ReportContext& rc, const std::string& key,
                         const std::vector<Poly>& polys, bool strong, ReportFormat fmt);

/// verify-paper and related bundled check runs.
std::string render_checks(const ReportContext& rc, const std::vector<CheckReport>& suites,
                          ReportFormat fmt);

}  // namespace diffpow

#endif
