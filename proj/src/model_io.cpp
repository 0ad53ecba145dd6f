#include "segsim/model_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <limits>
#include <vector>

namespace segsim {

namespace {

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

struct Term {
    Count coefficient;
    std::string species;
};

std::string trim(std::string_view sv) {
    std::size_t b = 0, e = sv.size();
    while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
    return std::string(sv.substr(b, e - b));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_int(const std::string& s, Count& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_real(const std::string& s, double& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// `0` or `+`-separated `[<int> ]<species>` terms
std::vector<Term> parse_complex(const std::string& text, int line) {
    const std::string trimmed = trim(text);
    if (trimmed == "0") return {};
    std::vector<Term> terms;
    for (const std::string& raw : split_on(trimmed, '+')) {
        const auto parts = split_ws(raw);
        if (parts.size() == 1 && !parts[0].empty()) {
            terms.push_back({1, parts[0]});
        } else if (parts.size() == 2) {
            Count coeff = 0;
            if (!parse_int(parts[0], coeff) || coeff <= 0) {
                throw ParseError("bad stoichiometric coefficient '" + parts[0] + "'", line, 1);
            }
            terms.push_back({coeff, parts[1]});
        } else {
            throw ParseError("malformed complex term '" + trim(raw) + "'", line, 1);
        }
    }
    return terms;
}

std::vector<Count> complex_vector(const std::vector<Term>& terms, const CrnModel& model, int line) {
    std::vector<Count> v(model.num_species(), 0);
    for (const Term& t : terms) {
        const int idx = model.species_index(t.species);
        if (idx < 0) throw ParseError("unknown species '" + t.species + "'", line, 1);
        v[static_cast<std::size_t>(idx)] += t.coefficient;
    }
    return v;
}

std::string format_complex(const std::vector<Count>& v, const CrnModel& model) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (v[i] != 1) out += std::to_string(v[i]) + " ";
        out += model.species[i];
    }
    return out.empty() ? "0" : out;
}

}  // namespace

CrnModel parse_model(const std::string& text) {
    CrnModel model;
    bool saw_time = false;
    std::vector<std::pair<std::string, Count>> inits;
    std::vector<std::pair<std::string, Count>> bound_entries;
    struct PendingReaction {
        std::string name;
        std::vector<Term> reactants, products;
        double rate;
        int line;
    };
    std::vector<PendingReaction> pending;

    std::istringstream stream(text);
    std::string raw_line;
    int line = 0;
    while (std::getline(stream, raw_line)) {
        ++line;
        if (const auto hash = raw_line.find('#'); hash != std::string::npos) {
            raw_line.erase(hash);
        }
        const std::string content = trim(raw_line);
        if (content.empty()) continue;

        if (content.starts_with("@model")) {
            model.name = trim(content.substr(6));
            if (model.name.empty()) throw ParseError("@model needs a name", line, 1);
        } else if (content.starts_with("@species")) {
            for (const auto& s : split_ws(trim(content.substr(8)))) model.species.push_back(s);
        } else if (content.starts_with("@init")) {
            for (const auto& entry : split_ws(trim(content.substr(5)))) {
                const auto eq = entry.find('=');
                if (eq == std::string::npos) {
                    throw ParseError("@init entry '" + entry + "' is not name=<int>", line, 1);
                }
                Count value = 0;
                if (!parse_int(entry.substr(eq + 1), value) || value < 0) {
                    throw ParseError("bad initial count in '" + entry + "'", line, 1);
                }
                inits.emplace_back(entry.substr(0, eq), value);
            }
        } else if (content.starts_with("@bound")) {
            for (const auto& entry : split_ws(trim(content.substr(6)))) {
                const auto eq = entry.find('=');
                if (eq == std::string::npos) {
                    throw ParseError("@bound entry '" + entry + "' is not name=<int>", line, 1);
                }
                Count value = 0;
                if (!parse_int(entry.substr(eq + 1), value) || value <= 0) {
                    throw ParseError("bad bound in '" + entry + "'", line, 1);
                }
                bound_entries.emplace_back(entry.substr(0, eq), value);
            }
        } else if (content.starts_with("@time")) {
            double t = 0;
            if (!parse_real(trim(content.substr(5)), t) || !(t > 0)) {
                throw ParseError("@time needs a positive real", line, 1);
            }
            model.t_end = t;
            saw_time = true;
        } else if (content.starts_with("@reaction")) {
            const std::string body = trim(content.substr(9));
            const auto colon = body.find(':');
            if (colon == std::string::npos) throw ParseError("@reaction needs '<label>:'", line, 1);
            const auto arrow = body.find("->", colon);
            if (arrow == std::string::npos) throw ParseError("@reaction needs '->'", line, 1);
            const auto at = body.find('@', arrow);
            if (at == std::string::npos) throw ParseError("@reaction needs '@ <rate>'", line, 1);
            PendingReaction r;
            r.name = trim(body.substr(0, colon));
            r.reactants = parse_complex(body.substr(colon + 1, arrow - colon - 1), line);
            r.products = parse_complex(body.substr(arrow + 2, at - arrow - 2), line);
            if (!parse_real(trim(body.substr(at + 1)), r.rate) || !(r.rate > 0)) {
                throw ParseError("rate constant must be a positive real", line, 1);
            }
            r.line = line;
            pending.push_back(std::move(r));
        } else {
            throw ParseError("unknown directive '" + content.substr(0, content.find(' ')) + "'",
                             line, 1);
        }
    }

    if (!saw_time) throw ParseError("missing @time", line + 1, 1);
    if (model.species.empty()) throw ParseError("missing @species", line + 1, 1);

    model.initial_state.counts.assign(model.num_species(), 0);
    for (const auto& [species_name, value] : inits) {
        const int idx = model.species_index(species_name);
        if (idx < 0) throw ModelError("@init mentions unknown species '" + species_name + "'");
        model.initial_state.counts[static_cast<std::size_t>(idx)] = value;
    }
    if (!bound_entries.empty()) {
        model.bounds.assign(model.num_species(), std::numeric_limits<Count>::max());
        for (const auto& [species_name, value] : bound_entries) {
            const int idx = model.species_index(species_name);
            if (idx < 0) throw ModelError("@bound mentions unknown species '" + species_name + "'");
            model.bounds[static_cast<std::size_t>(idx)] = value;
        }
    }
    for (const PendingReaction& pr : pending) {
        Reaction r;
        r.name = pr.name;
        r.rate_constant = pr.rate;
        r.reactants = complex_vector(pr.reactants, model, pr.line);
        r.products = complex_vector(pr.products, model, pr.line);
        model.reactions.push_back(std::move(r));
    }
    model.validate();
    return model;
}

std::string serialize_model(const CrnModel& model) {
    std::ostringstream out;
    out << "@model " << model.name << "\n@species";
    for (const auto& s : model.species) out << " " << s;
    out << "\n@init";
    for (std::size_t i = 0; i < model.num_species(); ++i) {
        if (model.initial_state.counts[i] != 0) {
            out << " " << model.species[i] << "=" << model.initial_state.counts[i];
        }
    }
    if (!model.bounds.empty()) {
        out << "\n@bound";
        for (std::size_t i = 0; i < model.num_species(); ++i) {
            if (model.bounds[i] != std::numeric_limits<Count>::max()) {
                out << " " << model.species[i] << "=" << model.bounds[i];
            }
        }
    }
    out << "\n@time " << format_double(model.t_end) << "\n";
    for (const Reaction& r : model.reactions) {
        out << "@reaction " << r.name << ": " << format_complex(r.reactants, model) << " -> "
            << format_complex(r.products, model) << " @ " << format_double(r.rate_constant)
            << "\n";
    }
    return out.str();
}

CrnModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

const std::map<std::string, CrnModel>& builtin_models() {
    static const std::map<std::string, CrnModel> models = [] {
        std::map<std::string, CrnModel> m;
        m["PP"] = parse_model(R"(
@model PP
@species Pred Prey
@init Pred=200 Prey=200
@bound Pred=4096 Prey=4096
@time 200
@reaction rep: Prey -> 2 Prey @ 1
@reaction eat: Pred + Prey -> 2 Pred @ 0.005
@reaction starve: Pred -> 0 @ 1
)");
        m["VI"] = parse_model(R"(
@model VI
@species DNA RNA P V
@init RNA=1
@time 200
@reaction d0: DNA + P -> V @ 1.125e-5
@reaction t: DNA -> DNA + RNA @ 0.025
@reaction d2: RNA -> 0 @ 0.25
@reaction x: RNA -> RNA + P @ 1000
@reaction p: RNA -> DNA + RNA @ 1
@reaction d5: P -> 0 @ 1.9985
)");
        m["TS"] = parse_model(R"(
@model TS
@species mA mB sA sB pA pB
@time 50000
@reaction r0: 0 -> mA @ 1
@reaction r1: 0 -> mB @ 1
@reaction r2: mA -> 0 @ 0.1
@reaction r3: mB -> 0 @ 0.1
@reaction r4: pA -> 0 @ 0.1
@reaction r5: mA -> sA @ 5
@reaction r6: mB -> sB @ 5
@reaction r7: mB + sA -> sA @ 20
@reaction r8: mA + sB -> sB @ 20
@reaction r9: pB -> 0 @ 0.1
@reaction r10: sA -> 0 @ 0.01
@reaction r11: sB -> 0 @ 0.01
@reaction r12: sA -> sA + pA @ 10
@reaction r13: sB -> sB + pB @ 10
)");
        m["RP"] = parse_model(R"(
@model RP
@species mA mB mC pA pB pC
@init mA=10 pA=500
@time 50000
@reaction spawnA: 0 -> mA @ 0.1
@reaction spawnB: 0 -> mB @ 0.1
@reaction spawnC: 0 -> mC @ 0.1
@reaction prodA: mA -> mA + pA @ 50
@reaction prodB: mB -> mB + pB @ 50
@reaction prodC: mC -> mC + pC @ 50
@reaction despawnA: mA -> 0 @ 0.01
@reaction despawnB: mB -> 0 @ 0.01
@reaction despawnC: mC -> 0 @ 0.01
@reaction degradeA: mA + pB -> pB @ 50
@reaction degradeB: mB + pC -> pC @ 50
@reaction degradeC: mC + pA -> pA @ 50
@reaction dissolveA: pA -> 0 @ 0.01
@reaction dissolveB: pB -> 0 @ 0.01
@reaction dissolveC: pC -> 0 @ 0.01
)");
        m["SWITCH"] = parse_model(R"(
@model SWITCH
@species ON OFF X
@init ON=1 X=50
@time 200
@reaction flip_off: ON -> OFF + X @ 1
@reaction flip_on: OFF -> ON + X @ 1
)");
        return m;
    }();
    return models;
}

}  // namespace segsim
