// Command-line driver.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "omegaloc/omega_lang.hpp"
#include "omegaloc/pipeline.hpp"

using namespace omegaloc;
namespace fs = std::filesystem;

namespace {

bool quiet = false;

void say(const std::string& s) {
    if (!quiet) std::cout << s << "\n";
}

std::vector<AutomatonFile> load_all(const std::vector<std::string>& paths) {
    std::vector<AutomatonFile> out;
    for (const auto& p : paths) out.push_back(load_automaton(p));
    return out;
}

Alphabet merged(const std::vector<std::vector<AutomatonFile>>& groups) {
    std::vector<Alphabet> as;
    for (const auto& g : groups)
        for (const auto& f : g) as.push_back(f.data.core.alphabet);
    return Alphabet::merge(as);
}

AutomatonFile as_file(const std::string& name, const BuchiAutomaton& a) {
    return {name, AutomatonType::Buchi, {a.core, a.accepting, {}}};
}

void save(const std::string& path, const AutomatonFile& f, const std::string& dot) {
    write_file(path, serialize(f));
    if (!dot.empty()) write_file(dot, to_dot(f));
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

// loc_<event>_<kind...>: event labels may themselves contain underscores
LocalController controller_from(const AutomatonFile& f, const std::string& name) {
    LocalController c;
    c.automaton = f.star();
    const std::vector<std::pair<std::string, std::pair<Kind, Part>>> suffixes = {
        {"_safety", {Kind::Safety, Part::None}},
        {"_live_c1", {Kind::Liveness, Part::C1}},
        {"_live_c2", {Kind::Liveness, Part::C2}},
        {"_live_all", {Kind::Liveness, Part::None}}};
    for (const auto& [suf, kp] : suffixes) {
        if (name.size() > suf.size() + 4 && name.rfind("loc_", 0) == 0 &&
            name.compare(name.size() - suf.size(), suf.size(), suf) == 0) {
            c.event = c.automaton.alphabet.index(name.substr(4, name.size() - 4 - suf.size()));
            c.kind = kp.first;
            c.part = kp.second;
            return c;
        }
    }
    throw Error("cannot read controller kind from file name '" + name + "'");
}

std::vector<LocalController> load_controllers(const std::string& dir, const Alphabet& global) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".aut" && entry.path().stem().string().rfind("loc_", 0) == 0)
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<LocalController> out;
    for (const auto& p : paths) {
        auto c = controller_from(load_automaton(p), stem_of(p));
        Event e = global.index(c.automaton.alphabet.label(c.event));
        c.automaton = lift(c.automaton, global);
        c.event = e;
        out.push_back(std::move(c));
    }
    if (out.empty()) throw Error("no loc_*.aut files in " + dir);
    return out;
}

std::string counts(const StarAutomaton& a) {
    return std::to_string(a.num_states) + " states, " + std::to_string(a.num_transitions()) + " transitions";
}

int cmd_info(const std::string& path) {
    AutomatonFile f = load_automaton(path);
    const auto& a = f.data.core;
    const char* type = f.type == AutomatonType::Star ? "star" : f.type == AutomatonType::Buchi ? "buchi" : "rabin-buchi";
    std::string line = f.name + " (" + type + "): " + counts(a);
    if (f.type != AutomatonType::Star) line += ", Buchi |B|=" + std::to_string(count(f.data.buchi));
    std::cout << line << "\n";
    std::vector<std::string> c, u;
    for (Event e = 0; e < a.alphabet.size(); ++e) (a.alphabet.controllable(e) ? c : u).push_back(a.alphabet.label(e));
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
        return s.empty() ? std::string("-") : s;
    };
    std::cout << "controllable: " << join(c) << "\nuncontrollable: " << join(u) << "\n";
    if (f.type == AutomatonType::RabinBuchi)
        for (std::size_t i = 0; i < f.data.pairs.size(); ++i)
            std::cout << "rabin pair " << i << ": |R|=" << count(f.data.pairs[i].R)
                      << " |I|=" << count(f.data.pairs[i].I) << "\n";
    return 0;
}

int cmd_product(const std::vector<std::string>& in, const std::string& out, const std::string& dot) {
    auto parts = load_all(in);
    Alphabet g = merged({parts});
    bool any_buchi = false;
    for (const auto& p : parts) any_buchi = any_buchi || p.type != AutomatonType::Star;
    AutomatonFile f;
    if (any_buchi) {
        f = as_file(stem_of(out), assemble_plant(parts, g));
    } else {
        f = {stem_of(out), AutomatonType::Star, {}};
        f.data.core = assemble_spec(parts, g);
        f.data.buchi = empty_set(f.data.core.num_states);
    }
    save(out, f, dot);
    say("product: " + counts(f.data.core));
    return 0;
}

int cmd_synth_safety(const std::vector<std::string>& plant_files, const std::vector<std::string>& spec_files,
                     const std::string& out, const std::string& dot) {
    auto plant = load_all(plant_files), spec = load_all(spec_files);
    Alphabet g = merged({plant, spec});
    auto sup = sup_con_star(assemble_plant(plant, g), assemble_spec(spec, g));
    save(out, as_file(stem_of(out), {sup.automaton, sup.buchi_lift}), dot);
    say("SUP*: " + counts(sup.automaton) + ", |B|=" + std::to_string(count(sup.buchi_lift)));
    return sup.empty() ? exit_code::no_supervisor : 0;
}

int cmd_synth_omega(const std::string& plant_file, const std::string& legal_file, const std::string& minimal_file,
                    const std::string& out, const std::string& psi, const std::string& dot) {
    auto plant = load_automaton(plant_file), legal = load_automaton(legal_file), minimal = load_automaton(minimal_file);
    Alphabet g = merged({{plant, legal, minimal}});
    BuchiAutomaton controlled = lift(plant.buchi(), g);
    auto product = build_rabin_buchi(controlled, legal_of(legal, g));
    auto control = controllability_subset(product.automaton);
    auto asup = restrict_sup(product.automaton, control);
    BuchiAutomaton min = lift(minimal.buchi(), g);
    auto existence = existence_check(inf_closure(min, controlled), asup);
    if (!existence.contained) {
        std::cerr << "no supervisor: minimal spec not contained; witness "
                  << lasso_to_string(g, *existence.witness) << "\n";
        return exit_code::no_supervisor;
    }
    auto sup = assemble_fomega(asup, control, min, controlled);
    save(out, as_file(stem_of(out), {sup.automaton, sup.buchi_lift}), dot);
    if (!psi.empty()) write_file(psi, psi_table_csv(sup));
    say("product: " + counts(product.automaton.core) + ", controllability subset " +
        std::to_string(count(control.subset)));
    say("SUP^w: " + counts(sup.automaton) + ", |B|=" + std::to_string(count(sup.buchi_lift)));
    return 0;
}

int cmd_localize(const std::vector<std::string>& plant_files, const std::string& sup_star_file,
                 const std::string& sup_omega_path, std::string minimal_file, const std::string& out_dir, bool dot) {
    std::string sup_omega_file = sup_omega_path;
    if (fs::is_directory(sup_omega_path)) {
        sup_omega_file = (fs::path(sup_omega_path) / "sup_omega.aut").string();
        if (minimal_file.empty()) minimal_file = (fs::path(sup_omega_path) / "minimal.aut").string();
    }
    if (minimal_file.empty()) throw Error("localize: --minimal is required unless --sup-omega is a directory");
    auto plant = load_all(plant_files);
    auto sstar = load_automaton(sup_star_file), somega = load_automaton(sup_omega_file);
    auto minimal = load_automaton(minimal_file);
    Alphabet g = merged({plant, {sstar, somega, minimal}});

    BuchiAutomaton G = assemble_plant(plant, g);
    BuchiAutomaton controlled = lift(sstar.buchi(), g);
    SafetySupervisor sup_star{controlled.core, controlled.accepting};
    OmegaSupervisor sup_omega;
    sup_omega.automaton = lift(somega.star(), g);
    Totalized z = totalize(pre_automaton(lift(minimal.buchi(), g)));
    sup_omega.tracker = z.automaton;
    sup_omega.sink = z.sink;

    auto loc = localize_all(G, sup_star, controlled, sup_omega);
    fs::create_directories(out_dir);
    auto all = loc.all();
    for (const auto& c : all) {
        AutomatonFile f{c.name(), AutomatonType::Star, {c.automaton, empty_set(c.automaton.num_states), {}}};
        save((fs::path(out_dir) / (c.name() + ".aut")).string(), f,
             dot ? (fs::path(out_dir) / (c.name() + ".dot")).string() : "");
        say(c.name() + ": " + std::to_string(c.automaton.num_states) + " states");
    }
    write_file((fs::path(out_dir) / "manifest.json").string(), manifest_json(all).dump(2) + "\n");
    return 0;
}

int cmd_verify(const std::vector<std::string>& plant_files, const std::string& sup_star_file,
               const std::string& sup_omega_file, const std::string& ctrl_dir, int lassos, std::uint64_t seed,
               const std::string& report) {
    auto plant = load_all(plant_files);
    auto sstar = load_automaton(sup_star_file), somega = load_automaton(sup_omega_file);
    Alphabet g = merged({plant, {sstar, somega}});
    auto controllers = load_controllers(ctrl_dir, g);
    BuchiAutomaton G = assemble_plant(plant, g);
    StarAutomaton s = lift(sstar.star(), g), w = lift(somega.star(), g);
    auto fin = check_finite_equivalence(G, s, w, controllers);
    auto inf = check_infinite_equivalence(G, w, controllers, lassos, seed);
    EquivalenceReport r = inf;
    r.finite_ok = fin.finite_ok;
    if (!fin.finite_ok) {
        r.counterexample = fin.counterexample;
        r.detail = fin.detail;
    }
    r.sub_results.insert(r.sub_results.begin(), fin.sub_results.begin(), fin.sub_results.end());
    auto j = report_json(g, r);
    if (!report.empty()) write_file(report, j.dump(2) + "\n");
    say(j.dump(2));
    return r.finite_ok && r.infinite_ok ? 0 : exit_code::verification_failed;
}

int cmd_pipeline(const std::string& cfg_path, const std::string& out_override, bool dot_flag, int lassos,
                 std::optional<std::uint64_t> seed) {
    PipelineConfig cfg = load_config(cfg_path);
    if (!out_override.empty()) cfg.out = out_override;
    if (lassos >= 0) cfg.lassos = lassos;
    if (seed) cfg.seed = *seed;
    Models m = load_models(cfg);
    auto r = run_pipeline(m, {cfg.lassos, cfg.seed, true});
    write_artifacts(m, r, cfg.out, cfg.dot || dot_flag);
    say("plant: " + counts(m.plant.core));
    say("SUP*: " + counts(r.sup_star.automaton) + ", |B|=" + std::to_string(count(r.sup_star.buchi_lift)));
    if (r.product.automaton.core.num_states > 0)
        say("product: " + counts(r.product.automaton.core) + ", controllability subset " +
            std::to_string(count(r.control.subset)));
    if (r.sup_omega.automaton.num_states > 0) {
        say("SUP^w: " + counts(r.sup_omega.automaton) + ", |B|=" + std::to_string(count(r.sup_omega.buchi_lift)));
        for (const auto& c : r.local.all())
            say("  " + c.name() + ": " + std::to_string(c.automaton.num_states) + " states");
        say(std::string("finite equivalence: ") + (r.finite.finite_ok ? "ok" : "FAILED"));
        say(std::string("infinite equivalence: ") + (r.infinite.infinite_ok ? "ok" : "FAILED") + " (" +
            std::to_string(r.infinite.checked_lassos) + " lassos)");
    }
    if (!r.message.empty()) std::cerr << r.message << "\n";
    say("artifacts: " + cfg.out);
    return r.exit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Supervisor synthesis and localization for omega-regular specifications"};
    app.require_subcommand(1);
    app.add_flag("--quiet", quiet, "suppress progress output");

    std::vector<std::string> plant, spec, in;
    std::string out, dot_file, legal, minimal, psi, sup_star, sup_omega, controllers, report, file, out_dir;
    std::string cfg;
    bool dot = false;
    int lassos = -1;
    std::uint64_t seed = 1;

    auto* product = app.add_subcommand("product", "synchronous product of automata");
    product->add_option("--in", in, "component files")->required();
    product->add_option("--out", out, "output file")->required();
    product->add_option("--dot", dot_file, "DOT output file");

    auto* ss = app.add_subcommand("synth-safety", "supremal controllable sublanguage");
    ss->add_option("--plant", plant, "plant component files")->required();
    ss->add_option("--spec", spec, "safety spec files")->required();
    ss->add_option("--out", out, "output file")->required();
    ss->add_option("--dot", dot_file, "DOT output file");

    auto* so = app.add_subcommand("synth-omega", "liveness supervisor over the controlled plant");
    std::string plant_one;
    so->add_option("--plant", plant_one, "controlled plant (Buchi)")->required();
    so->add_option("--legal", legal, "legal spec")->required();
    so->add_option("--minimal", minimal, "minimal spec")->required();
    so->add_option("--out", out, "output file")->required();
    so->add_option("--psi-table", psi, "CSV of the state map");
    so->add_option("--dot", dot_file, "DOT output file");

    auto* lo = app.add_subcommand("localize", "local controllers per controllable event");
    lo->add_option("--plant", plant, "plant component files")->required();
    lo->add_option("--sup-star", sup_star, "safety supervisor")->required();
    lo->add_option("--sup-omega", sup_omega, "liveness supervisor file or pipeline output directory")->required();
    lo->add_option("--minimal", minimal, "minimal spec (when --sup-omega is a file)");
    lo->add_option("--out-dir", out_dir, "output directory")->required();
    lo->add_flag("--dot", dot, "also write DOT files");

    auto* ve = app.add_subcommand("verify", "closed-loop equivalence of the local controllers");
    ve->add_option("--plant", plant, "plant component files")->required();
    ve->add_option("--sup-star", sup_star, "safety supervisor")->required();
    ve->add_option("--sup-omega", sup_omega, "liveness supervisor")->required();
    ve->add_option("--controllers", controllers, "directory of loc_*.aut")->required();
    ve->add_option("--lassos", lassos, "sampled lassos (default 500)");
    ve->add_option("--seed", seed, "PRNG seed");
    ve->add_option("--report", report, "JSON report file");

    auto* pi = app.add_subcommand("pipeline", "run every stage from a config file");
    pi->add_option("config", cfg, "pipeline config")->required();
    pi->add_option("--out", out, "output directory (overrides the config)");
    pi->add_flag("--dot", dot, "write DOT files");
    pi->add_option("--lassos", lassos, "sampled lassos");
    auto* seed_opt = pi->add_option("--seed", seed, "PRNG seed");

    auto* in_cmd = app.add_subcommand("info", "summary of an automaton file");
    in_cmd->add_option("file", file, "automaton file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code::parse_error;
    }

    try {
        if (*product) return cmd_product(in, out, dot_file);
        if (*ss) return cmd_synth_safety(plant, spec, out, dot_file);
        if (*so) return cmd_synth_omega(plant_one, legal, minimal, out, psi, dot_file);
        if (*lo) return cmd_localize(plant, sup_star, sup_omega, minimal, out_dir, dot);
        if (*ve) return cmd_verify(plant, sup_star, sup_omega, controllers, lassos < 0 ? 500 : lassos, seed, report);
        if (*pi)
            return cmd_pipeline(cfg, out, dot, lassos,
                                seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
        if (*in_cmd) return cmd_info(file);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_code::parse_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::failure;
    }
    return exit_code::failure;
}
