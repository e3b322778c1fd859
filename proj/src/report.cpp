#include "diffpow/report.hpp"

#include <sstream>

#include "json.hpp"

namespace diffpow {

using nlohmann::ordered_json;

ReportFormat parse_format(const std::string& s) {
    if (s == "text") return ReportFormat::Text;
    if (s == "json") return ReportFormat::Json;
    throw InputError("unknown format '" + s + "' (expected text or json)");
}

std::string describe_ring(const Context& ctx, const Domain& dom) {
    std::string out = dom.str() + "[";
    for (size_t i = 0; i < ctx.size(); ++i) {
        if (i) out += ", ";
        out += ctx.name(i);
    }
    return out + "]";
}

std::string describe_ideal(const Ideal& I) {
    std::string out = "(";
    const std::vector<Poly>& gens = I.generators();
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i) out += ", ";
        out += gens[i].str();
    }
    return out + ")";
}

namespace {

std::string alpha_str(const Monomial& a) {
    std::string out = "(";
    for (size_t i = 0; i < a.nvars(); ++i) {
        if (i) out += ",";
        out += std::to_string(a.exp(i));
    }
    return out + ")";
}

std::string composition_str(const MixedWitness& w) {
    const bool has_delta = w.s > 0;
    const bool has_diff = w.alpha.degree() > 0;
    if (!has_delta && !has_diff) return "identity";
    std::string out;
    if (has_delta) out = "delta^" + std::to_string(w.s);
    if (has_diff) out += (has_delta ? " after D_" : "D_") + alpha_str(w.alpha);
    return out;
}

ordered_json alpha_json(const Monomial& a) {
    ordered_json arr = ordered_json::array();
    for (size_t i = 0; i < a.nvars(); ++i) arr.push_back(a.exp(i));
    return arr;
}

ordered_json envelope(const ReportContext& rc) {
    ordered_json j;
    j["command"] = rc.command;
    j["ring"] = rc.ring;
    if (!rc.ideal.empty()) j["ideal"] = rc.ideal;
    if (!rc.certificate.empty()) j["certificate"] = rc.certificate;
    if (rc.n) j["n"] = *rc.n;
    if (rc.p) j["p"] = rc.p->get_str();
    if (rc.lift) j["lift"] = *rc.lift;
    if (rc.f) j["f"] = *rc.f;
    if (rc.seed) j["seed"] = *rc.seed;
    return j;
}

void envelope_text(std::ostream& os, const ReportContext& rc) {
    os << "command: " << rc.command << "\n";
    os << "ring: " << rc.ring << "\n";
    if (!rc.ideal.empty()) os << "ideal: " << rc.ideal << "\n";
    if (!rc.certificate.empty()) os << "certificate: " << rc.certificate << "\n";
    if (rc.n) os << "n: " << *rc.n << "\n";
    if (rc.p) os << "p: " << rc.p->get_str() << "\n";
    if (rc.lift) os << "lift: " << *rc.lift << "\n";
    if (rc.f) os << "f: " << *rc.f << "\n";
    if (rc.seed) os << "seed: " << *rc.seed << "\n";
}

std::string finish(ordered_json j, const ReportContext& rc) {
    j["runtime_ms"] = rc.runtime_ms;
    return j.dump(2) + "\n";
}

}  // namespace

std::string render_member(const ReportContext& rc, bool verdict,
                          const std::optional<MixedWitness>& witness, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        ordered_json j = envelope(rc);
        j["verdict"] = verdict;
        if (witness) {
            j["witness_composition"] = {{"s", witness->s}, {"alpha", alpha_json(witness->alpha)}};
            j["witness_value"] = witness->value.str();
        }
        return finish(std::move(j), rc);
    }
    std::ostringstream os;
    envelope_text(os, rc);
    os << "verdict: " << (verdict ? "true" : "false") << "\n";
    if (witness)
        os << "witness: " << composition_str(*witness) << " -> " << witness->value.str() << "\n";
    return os.str();
}

std::string render_equivalence(const ReportContext& rc, const EquivalenceReport& rep,
                               ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        ordered_json j = envelope(rc);
        j["corpus_size"] = rep.samples.size();
        j["corpus"] = rep.corpus_description;
        j["columns"] = rep.columns;
        j["agreements"] = rep.agreements();
        ordered_json dis = ordered_json::array();
        for (const SampleVerdict& v : rep.samples) {
            if (v.agree) continue;
            ordered_json d;
            d["poly"] = v.f.str();
            for (size_t c = 0; c < rep.columns.size(); ++c) d[rep.columns[c]] = (bool)v.verdicts[c];
            if (v.witness) {
                d["witness_composition"] = {{"s", v.witness->s},
                                            {"alpha", alpha_json(v.witness->alpha)}};
                d["witness_value"] = v.witness->value.str();
            }
            dis.push_back(std::move(d));
        }
        j["disagreements"] = std::move(dis);
        j["all_agree"] = rep.all_agree();
        return finish(std::move(j), rc);
    }
    std::ostringstream os;
    envelope_text(os, rc);
    os << "corpus: " << rep.corpus_description << "\n";
    os << "columns:";
    for (const std::string& c : rep.columns) os << " " << c;
    os << "\n";
    os << "agreements: " << rep.agreements() << "\n";
    os << "disagreements: " << rep.disagreements() << "\n";
    for (const SampleVerdict& v : rep.samples) {
        if (v.agree) continue;
        os << "  disagree: " << v.f.str() << " |";
        for (size_t c = 0; c < rep.columns.size(); ++c)
            os << " " << rep.columns[c] << "=" << (v.verdicts[c] ? "true" : "false");
        if (v.witness)
            os << " | " << composition_str(*v.witness) << " -> " << v.witness->value.str();
        os << "\n";
    }
    os << (rep.all_agree() ? "ALL AGREE\n" : "DISAGREEMENT FOUND\n");
    return os.str();
}

std::string render_polys(const ReportContext& rc, const std::string& key,
                         const std::vector<Poly>& polys, bool strong, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        ordered_json j = envelope(rc);
        ordered_json arr = ordered_json::array();
        for (const Poly& g : polys) arr.push_back(g.str());
        j[key] = std::move(arr);
        if (key == "basis") j["strong"] = strong;
        return finish(std::move(j), rc);
    }
    std::ostringstream os;
    envelope_text(os, rc);
    os << key << (key == "basis" && strong ? " (strong)" : "") << ":\n";
    for (const Poly& g : polys) os << "  " << g.str() << "\n";
    return os.str();
}

std::string render_checks(const ReportContext& rc, const std::vector<CheckReport>& suites,
                          ReportFormat fmt) {
    bool all = true;
    for (const CheckReport& s : suites) all = all && s.ok();
    if (fmt == ReportFormat::Json) {
        ordered_json j = envelope(rc);
        ordered_json arr = ordered_json::array();
        for (const CheckReport& s : suites) {
            ordered_json sj;
            sj["name"] = s.title;
            sj["pass"] = s.ok();
            ordered_json checks = ordered_json::array();
            for (const CheckLine& c : s.checks)
                checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            sj["checks"] = std::move(checks);
            arr.push_back(std::move(sj));
        }
        j["suites"] = std::move(arr);
        j["all_pass"] = all;
        return finish(std::move(j), rc);
    }
    std::ostringstream os;
    envelope_text(os, rc);
    for (const CheckReport& s : suites) {
        os << "suite " << s.title << ": " << (s.ok() ? "PASS" : "FAIL") << " (" << s.checks.size()
           << " checks)\n";
        if (!s.ok()) {
            for (const CheckLine& c : s.checks)
                if (!c.pass) os << "  [FAIL] " << c.name << ": " << c.detail << "\n";
        }
    }
    os << (all ? "all suites passed\n" : "SUITE FAILURES PRESENT\n");
    return os.str();
}

}  // namespace diffpow
