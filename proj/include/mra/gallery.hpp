#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mra/automaton.hpp"
#include "mra/group.hpp"

namespace mra {

// Blind counter machines and pushdown automata as register automata, plus a
// small exhaustive search showing that deterministic polycyclic-register
// automata cannot accept the word problem of an infinite group.

enum class StackOp { Push, Pop, None };

struct StackAction {
    StackOp op = StackOp::None;
    char letter = '\0'; // which stack letter, for Push and Pop
};

struct PdaTransition {
    int src = 0;
    std::optional<char> input; // nullopt reads no input
    StackAction action;
    int dst = 0;
};

/// Accepts by final state with an empty stack, starting from an empty stack.
struct PushdownAutomaton {
    std::string input_letters;
    std::string stack_letters;
    int state_count = 1;
    int initial = 0;
    std::vector<int> finals;
    std::vector<PdaTransition> transitions;
};

void validate_pda(const PushdownAutomaton& p);

struct CounterEdge {
    int src = 0;
    std::vector<long long> deltas;
    std::string input;
    int dst = 0;
};

struct CounterMachine {
    InvolutiveAlphabet alphabet = InvolutiveAlphabet::symmetric(1);
    int state_count = 1;
    int initial = 0;
    std::vector<int> terminals;
    std::vector<CounterEdge> edges;
};

/// Blind n-counter machine as an automaton over free abelian rank n. Each
/// edge adds its delta vector to the counters; acceptance needs all zeros.
MAutomaton make_counter_automaton(int n, const CounterMachine& machine);

/// Same state graph over the polycyclic monoid of rank |stack_letters|:
/// push x becomes the partial map appending x, pop x the map removing it.
/// A run's register is the composite of its stack actions, which is the
/// identity exactly when the action sequence is a balanced stack history,
/// so acceptance coincides with the pushdown automaton's.
MAutomaton pda_to_polycyclic(const PushdownAutomaton& p);

/// Single-state automaton accepting the Dyck language of the given rank:
/// lowercase letters push, their uppercase partners pop.
DeterministicMAutomaton dyck_automaton(int rank);

struct RefuterLabels {
    MonoidDescriptor monoid = MonoidDescriptor::trivial();
    std::vector<Element> labels;
};

/// Identity plus the pushes and pops of a rank-2 polycyclic monoid.
RefuterLabels stack_refuter_labels();
/// Identity plus the +1/-1 steps of a blind counter, for contrast.
RefuterLabels counter_refuter_labels();

struct RefuterReport {
    long long candidates = 0;
    long long refuted = 0;
    // no disagreement found within max_len; inconclusive, not a proof
    std::vector<MAutomaton> survivors;
};

/// Enumerates every deterministic automaton with at most state_bound states
/// over the oracle's alphabet, edges labeled from the given set, initial
/// state 0 terminal, every terminal-set choice. Each candidate is compared
/// against the group's word problem on all words of length <= max_len.
RefuterReport polycyclic_refuter(int state_bound, const RefuterLabels& labels,
                                 const GroupOracle& h, int max_len,
                                 long long max_candidates = 200000);

} // namespace mra
