// Text format and DOT export.
//
//   automaton <name>
//   type star|buchi|rabin-buchi
//   events <label>:c|:u ...
//   initial <state>
//   trans <state> <event> <state>
//   buchi <state> ...
//   rabin R <state> ... ; I <state> ...
//
// State tokens are arbitrary; they are numbered in order of first appearance
// (the initial state is always 0). Output always uses those numbers.
#pragma once

#include <string>

#include "omegaloc/core.hpp"

namespace omegaloc {

enum class AutomatonType { Star, Buchi, RabinBuchi };

struct AutomatonFile {
    std::string name;
    AutomatonType type = AutomatonType::Star;
    RabinBuchiAutomaton data;  // buchi/pairs are unused for lower types

    StarAutomaton star() const { return data.core; }
    BuchiAutomaton buchi() const;  // throws for star files
    const RabinBuchiAutomaton& rabin_buchi() const;
};

struct ParseError : Error {
    ParseError(const std::string& source, int line, const std::string& msg);
    int line;
};

AutomatonFile parse_automaton(const std::string& text, const std::string& source = "<input>");
AutomatonFile load_automaton(const std::string& path);

std::string serialize(const AutomatonFile& f);
std::string serialize(const std::string& name, const StarAutomaton& a);
std::string serialize(const std::string& name, const BuchiAutomaton& a);
std::string serialize(const std::string& name, const RabinBuchiAutomaton& a);

std::string to_dot(const AutomatonFile& f);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace omegaloc
