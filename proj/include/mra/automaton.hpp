#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mra/alphabet.hpp"
#include "mra/monoid.hpp"

namespace mra {

struct Edge {
    int src = 0;
    Element register_label{};
    std::string input; // empty = epsilon edge (written 'e' in files)
    int dst = 0;
};

/// Finite automaton over M x X*: a blind register starts at the identity and
/// multiplies edge labels on the right. A word is accepted when some path
/// from the initial state consumes it and ends at a terminal state with the
/// register back at the identity.
struct MAutomaton {
    MonoidDescriptor monoid;
    InvolutiveAlphabet alphabet;
    int state_count = 0;
    int initial = 0;
    std::vector<int> terminals;
    std::vector<Edge> edges;
};

bool operator==(const Edge& a, const Edge& b);
bool operator==(const MAutomaton& a, const MAutomaton& b);

/// Throws Error on invalid states, labels, or input letters.
void validate_automaton(const MAutomaton& a);
bool is_terminal(const MAutomaton& a, int state);

/// M x X automaton: every edge consumes exactly one letter and each
/// (state, letter) has at most one outgoing edge. Missing edges reject.
class DeterministicMAutomaton {
public:
    explicit DeterministicMAutomaton(MAutomaton a);

    const MAutomaton& base() const { return a_; }
    const Edge* edge_from(int state, char letter) const;

private:
    MAutomaton a_;
    std::map<std::pair<int, char>, std::size_t> by_state_letter_;
};

struct Configuration {
    int state = 0;
    Element register_value{};
};

bool operator==(const Configuration& a, const Configuration& b);
bool operator<(const Configuration& a, const Configuration& b);

/// Search caps for runs over infinite monoids. max_configurations caps each
/// per-prefix frontier (and the total search in path finding).
struct RunBounds {
    long long max_configurations = 10000;
    long long max_register_size = 64;
    int max_epsilon_chain = 16;
};

void validate_bounds(const RunBounds& bounds);

enum class RejectReason { None, NonterminalState, RegisterNotIdentity, Stuck };
std::string reject_reason_name(RejectReason reason);

struct DeterministicRun {
    bool accepted = false;
    RejectReason reason = RejectReason::None;
    std::size_t stuck_position = 0; // set when reason == Stuck
    std::vector<Configuration> trace; // initial configuration, then one per consumed letter
};

/// Follows the unique path for w. The trace always starts at (initial, 1).
DeterministicRun run_deterministic(const DeterministicMAutomaton& a, std::string_view w);

/// Same semantics, but the path starts at an arbitrary state with register 1.
DeterministicRun run_deterministic_from(const DeterministicMAutomaton& a, int start_state,
                                        std::string_view w);

enum class Verdict { Accepted, Rejected, Unknown };
std::string verdict_name(Verdict verdict);

struct FrontierRun {
    Verdict verdict = Verdict::Rejected;
    bool truncated = false;
    std::vector<Configuration> frontier; // configurations after consuming all of w, sorted
};

/// Per-prefix frontier expansion with deduplication. Configurations beyond
/// the bounds are dropped and the run marked truncated; acceptance stays
/// sound (every retained configuration is genuinely reachable), so the
/// verdict is Unknown only when truncation hid a potential accept.
FrontierRun run_nondeterministic(const MAutomaton& a, std::string_view w,
                                 const RunBounds& bounds);

/// Classical finite automaton obtained by dropping the register component.
struct Nfa {
    std::string letters;
    int state_count = 0;
    std::vector<int> initials;
    std::vector<int> terminals;
    struct Arc {
        int src = 0;
        std::string input;
        int dst = 0;
    };
    std::vector<Arc> arcs;
};

Nfa underlying_automaton(const MAutomaton& a);

/// Words read between terminal states: the underlying automaton re-rooted
/// with every terminal as an initial state.
Nfa between_terminal_fa(const MAutomaton& a);

bool nfa_accepts(const Nfa& nfa, std::string_view w);

/// Shortest word w such that some src -> dst path is labelled (1, w), found
/// by breadth-first search over (state, register) pairs. Absent means no
/// witness within the bounds, which is inconclusive.
std::optional<std::string> find_identity_register_path(const MAutomaton& a, int src, int dst,
                                                       const RunBounds& bounds, int max_word_len,
                                                       bool require_nonempty = false);

/// Reference predicate for a language, with an optional sound prefix filter:
/// prefix_dead(p) must only return true when no extension of p (including p
/// itself) is in the language.
struct LanguageOracle {
    std::function<bool(const std::string&)> member;
    std::function<bool(const std::string&)> prefix_dead;
};

struct AgreementReport {
    long long words_total = 0;
    long long words_checked = 0;
    long long words_pruned = 0;
    std::vector<std::string> disagreements;
    std::vector<std::string> unknowns;

    bool agreed() const { return disagreements.empty() && unknowns.empty(); }
};

/// Compares the automaton's verdict with the oracle on every word of length
/// <= max_len. Subtrees where both sides are provably dead are counted as
/// pruned agreement without enumeration.
AgreementReport language_agreement(const DeterministicMAutomaton& a, const LanguageOracle& oracle,
                                   int max_len);
AgreementReport language_agreement(const MAutomaton& a, const LanguageOracle& oracle, int max_len,
                                   const RunBounds& bounds);

} // namespace mra
