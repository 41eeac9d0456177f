#pragma once

#include <string>
#include <string_view>

#include "mra/constructions.hpp"
#include "mra/gallery.hpp"

namespace mra {

// Line-oriented text formats for automata and scenarios, and plain-text
// report rendering. Every report ends with a "RESULT pass|fail|inconclusive"
// footer so harnesses can grep the verdict.

struct ParsedAutomaton {
    MAutomaton automaton;
    bool deterministic = false; // file began with "dautomaton"
};

/// Accepts the format emitted by format_automaton_text: a "dautomaton" or
/// "automaton" header, then "monoid = ...", "alphabet = a,A", "inv a A",
/// "states = n", "initial = i", "terminals = i,j", and one
/// "edge <src> <dst> <element-literal> <input|e>" line per edge. Blank lines
/// and lines starting with '#' are skipped. Errors carry 1-based line numbers.
ParsedAutomaton parse_automaton_text(std::string_view text);

std::string format_automaton_text(const MAutomaton& a, bool deterministic);

struct Scenario {
    EmbeddingSpec spec;
    SubgroupKind subgroup_kind = SubgroupKind::Full;
    int max_len = 10;
    int max_register_size = 64;
    int max_cosets = 256;
};

/// A "scenario" header followed by "group = ...", "letters = [ a: [1]; ... ]"
/// (the involution is inferred from the images), "subgroup = parity|trivial|full",
/// "monoid = ...", zero or more 'phi "word" = <literal>' lines, and optional
/// max_len / max_register_size / max_cosets bounds.
Scenario parse_scenario_text(std::string_view text);

TheoremBounds scenario_theorem_bounds(const Scenario& s);

Outcome agreement_outcome(const AgreementReport& r);
Outcome refuter_outcome(const RefuterReport& r);

std::string render_agreement_report(const AgreementReport& r);
std::string render_embedding_report(const EmbeddingReport& r);
std::string render_theorem_report(const TheoremReport& r);
std::string render_refuter_report(const RefuterReport& r);

} // namespace mra
