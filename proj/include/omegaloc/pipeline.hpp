// End-to-end driver: configuration, model assembly, synthesis, localization,
// verification and artifact/report emission.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "omegaloc/io.hpp"
#include "omegaloc/localization.hpp"
#include "omegaloc/omega_synth.hpp"
#include "omegaloc/random.hpp"
#include "omegaloc/safety.hpp"
#include "omegaloc/verify.hpp"

namespace omegaloc {

namespace exit_code {
constexpr int ok = 0;
constexpr int failure = 1;
constexpr int parse_error = 2;
constexpr int no_supervisor = 3;  // minimal spec not inside the supremal controllable legal behaviour
constexpr int verification_failed = 4;
}  // namespace exit_code

// `key = value` lines; plant/spec accept several files (repeated keys or
// whitespace-separated). Relative paths resolve against the config's directory.
struct PipelineConfig {
    std::vector<std::string> plant;
    std::vector<std::string> spec;
    std::string legal;
    std::string minimal;
    std::string out;
    bool dot = false;
    int lassos = 500;
    std::uint64_t seed = 1;
};

PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base, const std::string& source);
PipelineConfig load_config(const std::string& path);

RabinBuchiAutomaton lift(const RabinBuchiAutomaton& a, const Alphabet& global);

// Star components are composed as they are; Buchi components are intersected
// one by one onto the result (star parts count as all-accepting).
BuchiAutomaton assemble_plant(const std::vector<AutomatonFile>& parts, const Alphabet& global);
StarAutomaton assemble_spec(const std::vector<AutomatonFile>& parts, const Alphabet& global);
// A Buchi legal file is read as the pair (accepting, all states).
RabinBuchiAutomaton legal_of(const AutomatonFile& f, const Alphabet& global);

struct Models {
    Alphabet alphabet;
    BuchiAutomaton plant;
    StarAutomaton spec;
    RabinBuchiAutomaton legal;
    BuchiAutomaton minimal;
};

Models load_models(const PipelineConfig& cfg);

struct PipelineOptions {
    int lassos = 500;
    std::uint64_t seed = 1;
    bool verify = true;
};

struct PipelineResult {
    SafetySupervisor sup_star;
    BuchiAutomaton controlled;  // G^{f*}
    RabinBuchiProduct product;
    ControllabilityResult control;
    RabinBuchiAutomaton asup;
    BuchiAutomaton inf;
    OmegaCompare existence;
    OmegaSupervisor sup_omega;
    Localization local;
    EquivalenceReport finite;
    EquivalenceReport infinite;
    int exit = exit_code::ok;
    std::string message;
};

PipelineResult run_pipeline(const Models& m, const PipelineOptions& opt);

// Writes every intermediate automaton, the controllers, and report.json.
void write_artifacts(const Models& m, const PipelineResult& r, const std::filesystem::path& dir, bool dot);

nlohmann::ordered_json report_json(const Alphabet& a, const EquivalenceReport& r);
nlohmann::ordered_json summary_json(const Models& m, const PipelineResult& r);
nlohmann::ordered_json manifest_json(const std::vector<LocalController>& cs);
std::string psi_table_csv(const OmegaSupervisor& s);

// Controllable events disabled by `sup` somewhere `plant` allows them, counted
// over the reachable sup x plant product (states of sup).
std::vector<int> disabled_counts(const BuchiAutomaton& plant, const StarAutomaton& sup);

// Small random instance whose existence check passes: the minimal spec is a
// single lasso accepted by the restricted product. nullopt after max_attempts.
std::optional<Models> random_models(Rng& rng, int max_attempts = 500);

}  // namespace omegaloc
