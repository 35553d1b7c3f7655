#include "omegaloc/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace omegaloc {

ParseError::ParseError(const std::string& source, int line_, const std::string& msg)
    : Error(source + ":" + std::to_string(line_) + ": " + msg), line(line_) {}

BuchiAutomaton AutomatonFile::buchi() const {
    if (type == AutomatonType::Star) throw Error("automaton '" + name + "' has no Buchi layer");
    return {data.core, data.buchi};
}

const RabinBuchiAutomaton& AutomatonFile::rabin_buchi() const {
    if (type != AutomatonType::RabinBuchi) throw Error("automaton '" + name + "' has no Rabin layer");
    return data;
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

// BFS renumbering from the initial state (events in label order); states that
// are not reachable keep their relative order after the reachable ones.
AutomatonFile canonical(const AutomatonFile& f) {
    const StarAutomaton& a = f.data.core;
    const int n = a.num_states;
    std::vector<State> order, pos(n, kNone);
    auto visit = [&](State q) {
        if (pos[q] != kNone) return;
        pos[q] = static_cast<State>(order.size());
        order.push_back(q);
    };
    visit(a.initial);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int e = 0; e < a.alphabet.size(); ++e)
            if (a.delta[order[i]][e] != kNone) visit(a.delta[order[i]][e]);
    for (State q = 0; q < n; ++q) {
        visit(q);
        for (std::size_t i = order.size() - 1; i < order.size(); ++i)
            for (int e = 0; e < a.alphabet.size(); ++e)
                if (a.delta[order[i]][e] != kNone) visit(a.delta[order[i]][e]);
    }
    AutomatonFile out = f;
    out.data.core = StarAutomaton::make(a.alphabet, n, 0);
    auto perm = [&](const StateSet& s) {
        StateSet r(n);
        for (State q = 0; q < n; ++q) r[pos[q]] = s[q];
        return r;
    };
    for (State q = 0; q < n; ++q)
        for (int e = 0; e < a.alphabet.size(); ++e)
            if (a.delta[q][e] != kNone) out.data.core.delta[pos[q]][e] = pos[a.delta[q][e]];
    out.data.buchi = perm(f.data.buchi);
    for (std::size_t i = 0; i < f.data.pairs.size(); ++i)
        out.data.pairs[i] = {perm(f.data.pairs[i].R), perm(f.data.pairs[i].I)};
    return out;
}

}  // namespace

AutomatonFile parse_automaton(const std::string& text, const std::string& source) {
    AutomatonFile f;
    bool have_name = false, have_type = false, have_events = false, have_buchi = false;
    std::string initial_tok;
    std::vector<std::pair<std::string, bool>> events;

    struct Trans {
        std::string from, event, to;
        int line;
    };
    std::vector<Trans> trans;
    std::vector<std::pair<std::string, int>> buchi;
    struct PairToks {
        std::vector<std::string> R, I;
        int line;
    };
    std::vector<PairToks> pairs;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    auto fail = [&](const std::string& msg) { throw ParseError(source, lineno, msg); };
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto tok = tokens(raw);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        if (key == "automaton") {
            if (have_name) fail("duplicate 'automaton' line");
            if (tok.size() != 2) fail("expected 'automaton <name>'");
            f.name = tok[1];
            have_name = true;
        } else if (key == "type") {
            if (have_type) fail("duplicate 'type' line");
            if (tok.size() != 2) fail("expected 'type star|buchi|rabin-buchi'");
            if (tok[1] == "star") f.type = AutomatonType::Star;
            else if (tok[1] == "buchi") f.type = AutomatonType::Buchi;
            else if (tok[1] == "rabin-buchi") f.type = AutomatonType::RabinBuchi;
            else fail("unknown automaton type '" + tok[1] + "'");
            have_type = true;
        } else if (key == "events") {
            if (have_events) fail("duplicate 'events' line");
            have_events = true;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto colon = tok[i].rfind(':');
                if (colon == std::string::npos || colon == 0) fail("event '" + tok[i] + "' needs a :c or :u suffix");
                std::string kind = tok[i].substr(colon + 1);
                if (kind != "c" && kind != "u") fail("event '" + tok[i] + "' needs a :c or :u suffix");
                events.emplace_back(tok[i].substr(0, colon), kind == "c");
            }
        } else if (key == "initial") {
            if (!initial_tok.empty()) fail("duplicate 'initial' line");
            if (tok.size() != 2) fail("expected 'initial <state>'");
            initial_tok = tok[1];
        } else if (key == "trans") {
            if (tok.size() != 4) fail("expected 'trans <state> <event> <state>'");
            trans.push_back({tok[1], tok[2], tok[3], lineno});
        } else if (key == "buchi") {
            have_buchi = true;
            for (std::size_t i = 1; i < tok.size(); ++i) buchi.emplace_back(tok[i], lineno);
        } else if (key == "rabin") {
            PairToks p{{}, {}, lineno};
            if (tok.size() < 2 || tok[1] != "R") fail("expected 'rabin R <states> ; I <states>'");
            std::size_t i = 2;
            for (; i < tok.size() && tok[i] != ";"; ++i) p.R.push_back(tok[i]);
            if (i + 1 >= tok.size() || tok[i] != ";" || tok[i + 1] != "I") fail("expected '; I <states>' in rabin line");
            for (i += 2; i < tok.size(); ++i) p.I.push_back(tok[i]);
            pairs.push_back(std::move(p));
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    lineno = std::max(lineno, 1);
    if (!have_name) fail("missing 'automaton' line");
    if (!have_type) fail("missing 'type' line");
    if (!have_events) fail("missing 'events' line");
    if (initial_tok.empty()) fail("missing 'initial' line");
    if (f.type == AutomatonType::Star && (have_buchi || !pairs.empty())) fail("star automaton cannot carry acceptance sets");
    if (f.type != AutomatonType::Star && !have_buchi) fail("missing 'buchi' line");
    if (f.type == AutomatonType::Buchi && !pairs.empty()) fail("buchi automaton cannot carry rabin pairs");
    if (f.type == AutomatonType::RabinBuchi && pairs.empty()) fail("rabin-buchi automaton needs at least one 'rabin' line");

    Alphabet sigma;
    try {
        sigma = Alphabet(events);
    } catch (const Error& e) {
        fail(e.what());
    }

    std::map<std::string, State> ids;
    std::vector<std::string> names;
    auto id = [&](const std::string& t) {
        auto [it, fresh] = ids.emplace(t, static_cast<State>(names.size()));
        if (fresh) names.push_back(t);
        return it->second;
    };
    id(initial_tok);
    for (const auto& t : trans) {
        id(t.from);
        id(t.to);
    }
    for (const auto& b : buchi) id(b.first);
    for (const auto& p : pairs) {
        for (const auto& s : p.R) id(s);
        for (const auto& s : p.I) id(s);
    }
    const int n = static_cast<int>(names.size());
    f.data.core = StarAutomaton::make(sigma, n, 0);
    for (const auto& t : trans) {
        lineno = t.line;
        auto e = sigma.find(t.event);
        if (!e) fail("unknown event '" + t.event + "'");
        State p = ids[t.from], q = ids[t.to];
        State& slot = f.data.core.delta[p][*e];
        if (slot != kNone) {
            if (slot != q) fail("nondeterministic transition from '" + t.from + "' on '" + t.event + "'");
            fail("duplicate transition from '" + t.from + "' on '" + t.event + "'");
        }
        slot = q;
    }
    f.data.buchi = empty_set(n);
    for (const auto& b : buchi) f.data.buchi[ids[b.first]] = true;
    for (const auto& p : pairs) {
        RabinPair rp{empty_set(n), empty_set(n)};
        for (const auto& s : p.R) rp.R[ids[s]] = true;
        for (const auto& s : p.I) rp.I[ids[s]] = true;
        f.data.pairs.push_back(std::move(rp));
    }
    return canonical(f);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

AutomatonFile load_automaton(const std::string& path) { return parse_automaton(read_file(path), path); }

namespace {

std::string set_line(const std::string& key, const StateSet& s) {
    std::string out = key;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) out += " " + std::to_string(i);
    return out;
}

}  // namespace

std::string serialize(const AutomatonFile& f) {
    const StarAutomaton& a = f.data.core;
    if (a.empty()) throw Error("cannot serialize the empty automaton '" + f.name + "'");
    std::ostringstream out;
    out << "automaton " << f.name << "\n";
    out << "type " << (f.type == AutomatonType::Star ? "star" : f.type == AutomatonType::Buchi ? "buchi" : "rabin-buchi")
        << "\n";
    out << "events";
    for (int e = 0; e < a.alphabet.size(); ++e)
        out << " " << a.alphabet.label(e) << (a.alphabet.controllable(e) ? ":c" : ":u");
    out << "\n";
    out << "initial " << a.initial << "\n";
    for (State q = 0; q < a.num_states; ++q)
        for (int e = 0; e < a.alphabet.size(); ++e)
            if (a.delta[q][e] != kNone) out << "trans " << q << " " << a.alphabet.label(e) << " " << a.delta[q][e] << "\n";
    if (f.type != AutomatonType::Star) out << set_line("buchi", f.data.buchi) << "\n";
    if (f.type == AutomatonType::RabinBuchi)
        for (const auto& p : f.data.pairs) out << set_line("rabin R", p.R) << " ;" << set_line(" I", p.I) << "\n";
    return out.str();
}

std::string serialize(const std::string& name, const StarAutomaton& a) {
    AutomatonFile f{name, AutomatonType::Star, {a, {}, {}}};
    return serialize(f);
}

std::string serialize(const std::string& name, const BuchiAutomaton& a) {
    AutomatonFile f{name, AutomatonType::Buchi, {a.core, a.accepting, {}}};
    return serialize(f);
}

std::string serialize(const std::string& name, const RabinBuchiAutomaton& a) {
    AutomatonFile f{name, AutomatonType::RabinBuchi, a};
    return serialize(f);
}

std::string to_dot(const AutomatonFile& f) {
    const StarAutomaton& a = f.data.core;
    std::ostringstream out;
    out << "digraph \"" << f.name << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
    if (a.empty()) {
        out << "}\n";
        return out.str();
    }
    out << "  __init [shape=point];\n  __init -> " << a.initial << ";\n";
    for (State q = 0; q < a.num_states; ++q) {
        std::string label = std::to_string(q);
        for (std::size_t p = 0; f.type == AutomatonType::RabinBuchi && p < f.data.pairs.size(); ++p) {
            if (f.data.pairs[p].R[q]) label += "\\nR" + std::to_string(p + 1);
            if (!f.data.pairs[p].I[q]) label += "\\n!I" + std::to_string(p + 1);
        }
        bool acc = f.type != AutomatonType::Star && f.data.buchi[q];
        out << "  " << q << " [label=\"" << label << "\"" << (acc ? ", shape=doublecircle" : "") << "];\n";
    }
    // parallel edges share one arrow; uncontrollable events are dashed
    for (State q = 0; q < a.num_states; ++q) {
        std::map<State, std::pair<std::string, bool>> edges;
        for (int e = 0; e < a.alphabet.size(); ++e) {
            State t = a.delta[q][e];
            if (t == kNone) continue;
            auto& [lab, allu] = edges.try_emplace(t, std::string(), true).first->second;
            lab += (lab.empty() ? "" : ",") + a.alphabet.label(e);
            allu = allu && !a.alphabet.controllable(e);
        }
        for (const auto& [t, le] : edges)
            out << "  " << q << " -> " << t << " [label=\"" << le.first << "\"" << (le.second ? ", style=dashed" : "")
                << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace omegaloc
