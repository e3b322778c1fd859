#include "diffpow/session.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace diffpow {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(strip(cur));
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

[[noreturn]] void fail(int line, const std::string& msg) { throw ParseError(msg, line, 1); }

Domain parse_domain(int line, const std::string& tok) {
    if (tok == "Z") return Domain::ZZ();
    if (tok == "Q") return Domain::QQ();
    if (tok.size() > 1 && tok[0] == 'F') {
        try {
            return Domain::Fp(mpz_class(tok.substr(1)));
        } catch (const std::exception& e) {
            fail(line, std::string("bad coefficient domain '") + tok + "': " + e.what());
        }
    }
    fail(line, "unknown coefficient domain '" + tok + "' (expected Z, Q, or F<p>)");
}

}  // namespace

const Ideal* SessionFile::find_ideal(const std::string& name) const {
    if (name.empty()) return ideals.empty() ? nullptr : &ideals.front().second;
    for (const auto& [n, ideal] : ideals)
        if (n == name) return &ideal;
    return nullptr;
}

const FrobeniusLift* SessionFile::find_lift(const std::string& name) const {
    if (name.empty()) return lifts.empty() ? nullptr : &lifts.front().second;
    for (const auto& [n, lift] : lifts)
        if (n == name) return &lift;
    return nullptr;
}

PrimeCertificate SessionFile::certificate_for(const std::string& ideal_name) const {
    for (const auto& [n, cert] : certificates)
        if (n == ideal_name) return cert;
    return PrimeCertificate{};
}

SessionFile parse_session(const std::string& text) {
    SessionFile s;
    bool have_ring = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    auto require_ring = [&](const char* what) {
        if (!have_ring) fail(lineno, std::string("'") + what + "' before the ring declaration");
    };
    auto fresh_name = [&](const std::string& name, const char* kind) {
        if (!valid_name(name)) fail(lineno, std::string("bad ") + kind + " name '" + name + "'");
        for (const auto& [n, i] : s.ideals)
            if (n == name) fail(lineno, "name '" + name + "' already declared");
        for (const auto& [n, l] : s.lifts)
            if (n == name) fail(lineno, "name '" + name + "' already declared");
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;

        size_t sp = line.find_first_of(" \t");
        std::string kw = line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : strip(line.substr(sp));

        if (kw == "ring") {
            if (have_ring) fail(lineno, "duplicate ring declaration");
            size_t lb = rest.find('[');
            size_t rb = rest.find(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                fail(lineno, "expected: ring <domain> [x, y, ...]");
            s.dom = parse_domain(lineno, strip(rest.substr(0, lb)));
            std::vector<std::string> names;
            std::string inner = strip(rest.substr(lb + 1, rb - lb - 1));
            if (!inner.empty()) {
                for (const std::string& v : split(inner, ',')) {
                    if (!valid_name(v)) fail(lineno, "bad variable name '" + v + "'");
                    names.push_back(v);
                }
            }
            if (std::string tail = strip(rest.substr(rb + 1)); !tail.empty())
                fail(lineno, "trailing input after ']': '" + tail + "'");
            try {
                s.ctx = Context(names);
            } catch (const InputError& e) {
                fail(lineno, e.what());
            }
            have_ring = true;
        } else if (kw == "prime") {
            require_ring(kw.c_str());
            if (s.prime) fail(lineno, "duplicate prime declaration");
            try {
                mpz_class p(rest);
                (void)Domain::Fp(p);  // primality gate
                s.prime = p;
            } catch (const std::exception& e) {
                fail(lineno, std::string("bad prime '") + rest + "': " + e.what());
            }
        } else if (kw == "ideal") {
            require_ring(kw.c_str());
            size_t eq = rest.find('=');
            if (eq == std::string::npos) fail(lineno, "expected: ideal <Name> = f1, f2, ...");
            std::string name = strip(rest.substr(0, eq));
            fresh_name(name, "ideal");
            std::vector<Poly> gens;
            try {
                for (const std::string& g : split(rest.substr(eq + 1), ','))
                    gens.push_back(parse_poly(g, s.ctx, s.dom));
            } catch (const InputError& e) {
                fail(lineno, std::string("in ideal '") + name + "': " + e.what());
            }
            s.ideals.emplace_back(name, Ideal(s.ctx, s.dom, std::move(gens)));
        } else if (kw == "lift") {
            require_ring(kw.c_str());
            if (!s.prime) fail(lineno, "lift declared before a prime");
            size_t colon = rest.find(':');
            if (colon == std::string::npos)
                fail(lineno, "expected: lift <Name> : x -> g, y -> h, ...");
            std::string name = strip(rest.substr(0, colon));
            fresh_name(name, "lift");
            std::vector<Poly> images(s.ctx.size(), Poly::zero(s.ctx, s.dom));
            std::vector<bool> seen(s.ctx.size(), false);
            for (const std::string& item : split(rest.substr(colon + 1), ',')) {
                size_t arrow = item.find("->");
                if (arrow == std::string::npos)
                    fail(lineno, "expected 'var -> polynomial' in lift '" + name + "'");
                std::string var = strip(item.substr(0, arrow));
                std::optional<size_t> idx = s.ctx.index_of(var);
                if (!idx) fail(lineno, "unknown variable '" + var + "' in lift '" + name + "'");
                if (seen[*idx]) fail(lineno, "variable '" + var + "' mapped twice");
                seen[*idx] = true;
                try {
                    images[*idx] = parse_poly(strip(item.substr(arrow + 2)), s.ctx, s.dom);
                } catch (const InputError& e) {
                    fail(lineno, std::string("in lift '") + name + "': " + e.what());
                }
            }
            for (size_t i = 0; i < s.ctx.size(); ++i)
                if (!seen[i]) fail(lineno, "lift '" + name + "' misses variable '" + s.ctx.name(i) + "'");
            try {
                s.lifts.emplace_back(name, FrobeniusLift(s.ctx, *s.prime, std::move(images)));
            } catch (const InputError& e) {
                fail(lineno, std::string("lift '") + name + "' is not a lift of Frobenius: " +
                                 e.what());
            }
        } else if (kw == "certificate") {
            require_ring(kw.c_str());
            size_t colon = rest.find(':');
            if (colon == std::string::npos)
                fail(lineno, "expected: certificate <IdealName> : <kind>");
            std::string name = strip(rest.substr(0, colon));
            bool declared = std::any_of(s.ideals.begin(), s.ideals.end(),
                                        [&](const auto& e) { return e.first == name; });
            if (!declared) fail(lineno, "certificate for undeclared ideal '" + name + "'");
            for (const auto& [n, c] : s.certificates)
                if (n == name) fail(lineno, "duplicate certificate for ideal '" + name + "'");
            try {
                s.certificates.emplace_back(
                    name, PrimeCertificate::from_string(strip(rest.substr(colon + 1))));
            } catch (const InputError& e) {
                fail(lineno, e.what());
            }
        } else {
            fail(lineno, "unknown directive '" + kw + "'");
        }
    }
    if (!have_ring) fail(lineno + 1, "missing ring declaration");
    return s;
}

}  // namespace diffpow
