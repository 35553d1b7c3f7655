#include "omegaloc/pipeline.hpp"

#include <sstream>

#include "omegaloc/omega_lang.hpp"

namespace omegaloc {

namespace fs = std::filesystem;

PipelineConfig parse_config(const std::string& text, const fs::path& base, const std::string& source) {
    PipelineConfig cfg;
    auto resolve = [&](const std::string& p) { return (fs::path(p).is_absolute() ? fs::path(p) : base / p).string(); };
    std::istringstream in(text);
    std::string line;
    int no = 0;
    bool have_legal = false, have_minimal = false;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(source, no, "expected 'key = value'");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        std::istringstream vs(value);
        std::vector<std::string> items;
        for (std::string t; vs >> t;) items.push_back(t);
        if (items.empty()) throw ParseError(source, no, "empty value for '" + key + "'");
        auto single = [&]() {
            if (items.size() != 1) throw ParseError(source, no, "'" + key + "' takes one value");
            return items[0];
        };
        try {
            if (key == "plant") {
                for (auto& i : items) cfg.plant.push_back(resolve(i));
            } else if (key == "spec") {
                for (auto& i : items) cfg.spec.push_back(resolve(i));
            } else if (key == "legal") {
                cfg.legal = resolve(single());
                have_legal = true;
            } else if (key == "minimal") {
                cfg.minimal = resolve(single());
                have_minimal = true;
            } else if (key == "out") {
                cfg.out = resolve(single());
            } else if (key == "dot") {
                std::string v = single();
                if (v != "true" && v != "false") throw ParseError(source, no, "dot must be true or false");
                cfg.dot = v == "true";
            } else if (key == "lassos") {
                cfg.lassos = std::stoi(single());
            } else if (key == "seed") {
                cfg.seed = std::stoull(single());
            } else {
                throw ParseError(source, no, "unknown key '" + key + "'");
            }
        } catch (const std::logic_error&) {
            throw ParseError(source, no, "bad number for '" + key + "'");
        }
    }
    if (cfg.plant.empty()) throw ParseError(source, no, "missing 'plant'");
    if (!have_legal) throw ParseError(source, no, "missing 'legal'");
    if (!have_minimal) throw ParseError(source, no, "missing 'minimal'");
    if (cfg.out.empty()) cfg.out = (base / "out").string();
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    return parse_config(read_file(path), fs::path(path).parent_path(), path);
}

RabinBuchiAutomaton lift(const RabinBuchiAutomaton& a, const Alphabet& global) {
    return {lift(a.core, global), a.buchi, a.pairs};
}

BuchiAutomaton assemble_plant(const std::vector<AutomatonFile>& parts, const Alphabet& global) {
    std::vector<StarAutomaton> stars;
    std::vector<BuchiAutomaton> buchis;
    for (const auto& p : parts) {
        if (p.type == AutomatonType::Star) stars.push_back(p.star());
        else buchis.push_back(lift(p.buchi(), global));
    }
    StarAutomaton base = sync_product(stars, global);
    BuchiAutomaton acc{base, full_set(base.num_states)};
    for (const auto& b : buchis) acc = buchi_intersection(acc, b);
    return acc;
}

StarAutomaton assemble_spec(const std::vector<AutomatonFile>& parts, const Alphabet& global) {
    std::vector<StarAutomaton> stars;
    for (const auto& p : parts) stars.push_back(p.star());
    return sync_product(stars, global);
}

RabinBuchiAutomaton legal_of(const AutomatonFile& f, const Alphabet& global) {
    if (f.type == AutomatonType::RabinBuchi) return lift(f.rabin_buchi(), global);
    if (f.type == AutomatonType::Buchi) return as_rabin(lift(f.buchi(), global));
    throw Error("legal spec '" + f.name + "' must be buchi or rabin-buchi");
}

Models load_models(const PipelineConfig& cfg) {
    std::vector<AutomatonFile> plant, spec;
    for (const auto& p : cfg.plant) plant.push_back(load_automaton(p));
    for (const auto& p : cfg.spec) spec.push_back(load_automaton(p));
    AutomatonFile legal = load_automaton(cfg.legal);
    AutomatonFile minimal = load_automaton(cfg.minimal);
    if (minimal.type == AutomatonType::Star) throw Error("minimal spec '" + minimal.name + "' must have a Buchi layer");

    std::vector<Alphabet> all;
    for (const auto& f : plant) all.push_back(f.data.core.alphabet);
    for (const auto& f : spec) all.push_back(f.data.core.alphabet);
    all.push_back(legal.data.core.alphabet);
    all.push_back(minimal.data.core.alphabet);

    Models m;
    m.alphabet = Alphabet::merge(all);
    m.plant = assemble_plant(plant, m.alphabet);
    m.spec = assemble_spec(spec, m.alphabet);
    m.legal = legal_of(legal, m.alphabet);
    m.minimal = lift(minimal.buchi(), m.alphabet);
    return m;
}

PipelineResult run_pipeline(const Models& m, const PipelineOptions& opt) {
    PipelineResult r;
    r.sup_star = sup_con_star(m.plant, m.spec);
    r.controlled = controlled_plant(m.plant, r.sup_star);
    if (r.sup_star.empty()) {
        r.exit = exit_code::no_supervisor;
        r.message = "supremal controllable sublanguage of the safety spec is empty";
        return r;
    }
    r.product = build_rabin_buchi(r.controlled, m.legal);
    r.control = controllability_subset(r.product.automaton);
    r.asup = restrict_sup(r.product.automaton, r.control);
    r.inf = inf_closure(m.minimal, r.controlled);
    r.existence = existence_check(r.inf, r.asup);
    if (!r.existence.contained) {
        r.exit = exit_code::no_supervisor;
        r.message = "minimal spec is not contained in the supremal controllable legal behaviour; witness " +
                    lasso_to_string(m.alphabet, *r.existence.witness);
        return r;
    }
    r.sup_omega = assemble_fomega(r.asup, r.control, m.minimal, r.controlled);
    r.local = localize_all(m.plant, r.sup_star, r.controlled, r.sup_omega);
    if (!opt.verify) return r;
    auto all = r.local.all();
    r.finite = check_finite_equivalence(m.plant, r.sup_star.automaton, r.sup_omega.automaton, all);
    r.infinite = check_infinite_equivalence(m.plant, r.sup_omega.automaton, all, opt.lassos, opt.seed);
    if (!r.finite.finite_ok || !r.infinite.infinite_ok) {
        r.exit = exit_code::verification_failed;
        r.message = !r.finite.finite_ok ? r.finite.detail : r.infinite.detail;
    }
    return r;
}

namespace {

std::vector<std::string> labels_of(const Alphabet& a, const std::vector<Event>& es) {
    std::vector<std::string> out;
    for (Event e : es) out.push_back(a.label(e));
    return out;
}

std::vector<int> members(const StateSet& s) {
    std::vector<int> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) out.push_back(static_cast<int>(i));
    return out;
}

void emit(const fs::path& dir, const std::string& name, const AutomatonFile& f, bool dot) {
    write_file((dir / (name + ".aut")).string(), serialize(f));
    if (dot) write_file((dir / (name + ".dot")).string(), to_dot(f));
}

AutomatonFile file_of(const std::string& name, const StarAutomaton& a) {
    return {name, AutomatonType::Star, {a, empty_set(a.num_states), {}}};
}
AutomatonFile file_of(const std::string& name, const BuchiAutomaton& a) {
    return {name, AutomatonType::Buchi, {a.core, a.accepting, {}}};
}
AutomatonFile file_of(const std::string& name, const RabinBuchiAutomaton& a) {
    return {name, AutomatonType::RabinBuchi, a};
}

}  // namespace

std::vector<int> disabled_counts(const BuchiAutomaton& plant, const StarAutomaton& sup) {
    std::vector<int> out(sup.alphabet.size(), 0);
    for (Event e : sup.alphabet.controllable_events()) out[e] = count(profile_safety(plant, sup, e).disable);
    return out;
}

nlohmann::ordered_json report_json(const Alphabet& a, const EquivalenceReport& r) {
    nlohmann::ordered_json j;
    j["finite_ok"] = r.finite_ok;
    j["infinite_ok"] = r.infinite_ok;
    j["counterexample"] = r.counterexample ? nlohmann::ordered_json(word_to_string(a, *r.counterexample)) : nullptr;
    j["lasso_counterexample"] =
        r.lasso_counterexample ? nlohmann::ordered_json(lasso_to_string(a, *r.lasso_counterexample)) : nullptr;
    j["checked_lassos"] = r.checked_lassos;
    j["lassos_accepted"] = r.lassos_accepted;
    j["seed"] = r.seed;
    nlohmann::ordered_json subs = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.sub_results) subs[k] = v;
    j["sub_results"] = subs;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

nlohmann::ordered_json manifest_json(const std::vector<LocalController>& cs) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& c : cs) {
        nlohmann::ordered_json e;
        e["controller"] = c.name();
        e["event"] = c.automaton.alphabet.label(c.event);
        e["kind"] = to_string(c.kind);
        e["part"] = to_string(c.part);
        e["states"] = c.automaton.num_states;
        e["transitions"] = c.automaton.num_transitions();
        e["cells"] = c.congruence.cells;
        j.push_back(e);
    }
    return j;
}

nlohmann::ordered_json summary_json(const Models& m, const PipelineResult& r) {
    const Alphabet& a = m.alphabet;
    auto counts = [](const StarAutomaton& x) {
        nlohmann::ordered_json j;
        j["states"] = x.num_states;
        j["transitions"] = x.num_transitions();
        return j;
    };
    nlohmann::ordered_json j;
    j["exit"] = r.exit;
    j["message"] = r.message;
    j["plant"] = counts(m.plant.core);
    j["plant"]["buchi"] = count(m.plant.accepting);
    j["sup_star"] = counts(r.sup_star.automaton);
    j["sup_star"]["buchi"] = members(r.sup_star.buchi_lift);
    if (r.product.automaton.core.num_states > 0) {
        const auto& p = r.product.automaton;
        j["product"] = counts(p.core);
        j["product"]["buchi"] = members(p.buchi);
        j["product"]["R"] = members(p.pairs[0].R);
        j["product"]["I"] = count(p.pairs[0].I);
        j["controllability_subset"] = members(r.control.subset);
        nlohmann::ordered_json drops = nlohmann::ordered_json::object();
        for (State q = 0; q < p.core.num_states; ++q) {
            std::vector<Event> dropped;
            for (Event e : p.core.enabled(q))
                if (!r.control.phi[q][e]) dropped.push_back(e);
            if (!dropped.empty() && r.control.subset[q]) drops[std::to_string(q)] = labels_of(a, dropped);
        }
        j["phi_drops"] = drops;
    }
    j["existence"] = r.existence.contained;
    if (r.existence.witness) j["existence_witness"] = lasso_to_string(a, *r.existence.witness);
    if (r.sup_omega.automaton.num_states > 0) {
        j["sup_omega"] = counts(r.sup_omega.automaton);
        j["sup_omega"]["buchi"] = members(r.sup_omega.buchi_lift);
        j["sup_omega"]["f0_full"] = r.sup_omega.f0_full;
        nlohmann::ordered_json dis;
        auto d = disabled_counts(r.controlled, r.sup_omega.automaton);
        for (Event e : a.controllable_events()) dis[a.label(e)] = d[e];
        j["sup_omega"]["disabled"] = dis;
        j["controllers"] = manifest_json(r.local.all());
        j["finite"] = report_json(a, r.finite);
        j["infinite"] = report_json(a, r.infinite);
    }
    return j;
}

std::string psi_table_csv(const OmegaSupervisor& s) {
    std::ostringstream out;
    out << "product_state,z_state,enabled_events\n";
    const Alphabet& a = s.automaton.alphabet;
    for (std::size_t i = 0; i < s.origin.size(); ++i) {
        out << s.origin[i].first << ',';
        if (s.origin[i].second == s.sink) out << "sink";
        else out << s.origin[i].second;
        out << ',';
        for (std::size_t k = 0; k < s.psi[i].size(); ++k) out << (k ? " " : "") << a.label(s.psi[i][k]);
        out << '\n';
    }
    return out.str();
}

void write_artifacts(const Models& m, const PipelineResult& r, const fs::path& dir, bool dot) {
    fs::create_directories(dir);
    emit(dir, "plant", file_of("plant", m.plant), dot);
    emit(dir, "spec", file_of("spec", m.spec), dot);
    emit(dir, "legal", file_of("legal", m.legal), dot);
    emit(dir, "minimal", file_of("minimal", m.minimal), dot);
    if (!r.sup_star.empty()) emit(dir, "sup_star", file_of("sup_star", r.controlled), dot);
    if (r.product.automaton.core.num_states > 0) {
        emit(dir, "product", file_of("product", r.product.automaton), dot);
        emit(dir, "asup", file_of("asup", r.asup), dot);
        emit(dir, "inf", file_of("inf", r.inf), dot);
    }
    if (r.sup_omega.automaton.num_states > 0) {
        emit(dir, "sup_omega", file_of("sup_omega", BuchiAutomaton{r.sup_omega.automaton, r.sup_omega.buchi_lift}),
             dot);
        emit(dir, "tracker", file_of("tracker", r.sup_omega.tracker), dot);
        write_file((dir / "psi.csv").string(), psi_table_csv(r.sup_omega));
        fs::path cdir = dir / "controllers";
        fs::create_directories(cdir);
        auto all = r.local.all();
        for (const auto& c : all) emit(cdir, c.name(), file_of(c.name(), c.automaton), dot);
        write_file((cdir / "manifest.json").string(), manifest_json(all).dump(2) + "\n");
    }
    write_file((dir / "report.json").string(), summary_json(m, r).dump(2) + "\n");
}

std::optional<Models> random_models(Rng& rng, int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Models m;
        m.alphabet = random_alphabet(rng, 4);
        int np = std::uniform_int_distribution<int>(3, 6)(rng);
        int ns = std::uniform_int_distribution<int>(2, 4)(rng);
        int nl = std::uniform_int_distribution<int>(2, 4)(rng);
        double density = std::uniform_real_distribution<double>(0.4, 0.8)(rng);
        m.plant = random_buchi(rng, m.alphabet, np, density);
        m.spec = random_star(rng, m.alphabet, ns, 0.8);
        m.legal = random_rabin_buchi(rng, m.alphabet, nl, 0.8);
        auto sup = sup_con_star(m.plant, m.spec);
        if (sup.empty()) continue;
        BuchiAutomaton g = controlled_plant(m.plant, sup);
        auto product = build_rabin_buchi(g, m.legal).automaton;
        auto asup = restrict_sup(product, controllability_subset(product));
        // any lasso accepted by both layers: compare against a condition nothing satisfies
        OmegaCondition never{empty_set(asup.core.num_states), std::nullopt};
        auto pick = omega_contained(asup.core, OmegaCondition::both_of(asup), asup.core, never);
        if (pick.contained) continue;
        m.minimal = lasso_automaton(m.alphabet, *pick.witness);
        if (!existence_check(inf_closure(m.minimal, g), asup).contained) continue;
        return m;
    }
    return std::nullopt;
}

}  // namespace omegaloc
