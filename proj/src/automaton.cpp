#include "mra/automaton.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <tuple>
#include <set>

namespace mra {

namespace {

void check_input_word(const InvolutiveAlphabet& alphabet, std::string_view w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!alphabet.contains(w[i]))
            throw Error(std::string("input letter '") + w[i] + "' at position " +
                        std::to_string(i) + " is not in the alphabet");
    }
}

// Saturating helpers for word counts; desk-scale runs never hit the cap.
long long sat_add(long long a, long long b) {
    if (a > LLONG_MAX - b) return LLONG_MAX;
    return a + b;
}

long long sat_mul(long long a, long long b) {
    if (b != 0 && a > LLONG_MAX / b) return LLONG_MAX;
    return a * b;
}

// Number of words of length 1..depth over an alphabet of s letters.
long long words_below(long long s, int depth) {
    long long total = 0;
    long long layer = 1;
    for (int k = 1; k <= depth; ++k) {
        layer = sat_mul(layer, s);
        total = sat_add(total, layer);
    }
    return total;
}

std::vector<std::vector<const Edge*>> edges_by_source(const MAutomaton& a) {
    std::vector<std::vector<const Edge*>> out(a.state_count);
    for (const Edge& e : a.edges) out[e.src].push_back(&e);
    return out;
}

} // namespace

void validate_automaton(const MAutomaton& a) {
    if (a.state_count < 1) throw Error("automaton needs at least one state");
    if (a.alphabet.letters().empty()) throw Error("automaton alphabet is empty");
    auto check_state = [&](int q, const char* role) {
        if (q < 0 || q >= a.state_count)
            throw Error(std::string(role) + " state " + std::to_string(q) + " is out of range");
    };
    check_state(a.initial, "initial");
    for (int t : a.terminals) check_state(t, "terminal");
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        const Edge& e = a.edges[i];
        check_state(e.src, "edge source");
        check_state(e.dst, "edge target");
        try {
            validate_element(a.monoid, e.register_label);
        } catch (const Error& err) {
            throw Error("edge " + std::to_string(i) + ": " + err.what());
        }
        for (char c : e.input) {
            if (!a.alphabet.contains(c))
                throw Error("edge " + std::to_string(i) + ": input letter '" + std::string(1, c) +
                            "' is not in the alphabet");
        }
    }
}

bool is_terminal(const MAutomaton& a, int state) {
    return std::find(a.terminals.begin(), a.terminals.end(), state) != a.terminals.end();
}

bool operator==(const Edge& a, const Edge& b) {
    return a.src == b.src && a.dst == b.dst && a.input == b.input &&
           a.register_label == b.register_label;
}

bool operator==(const MAutomaton& a, const MAutomaton& b) {
    return a.monoid == b.monoid && a.alphabet == b.alphabet && a.state_count == b.state_count &&
           a.initial == b.initial && a.terminals == b.terminals && a.edges == b.edges;
}

DeterministicMAutomaton::DeterministicMAutomaton(MAutomaton a) : a_(std::move(a)) {
    validate_automaton(a_);
    for (std::size_t i = 0; i < a_.edges.size(); ++i) {
        const Edge& e = a_.edges[i];
        if (e.input.size() != 1)
            throw Error("deterministic automata need exactly one input letter per edge; edge " +
                        std::to_string(i) + " reads \"" + e.input + "\"");
        auto [it, inserted] = by_state_letter_.insert({{e.src, e.input[0]}, i});
        if (!inserted)
            throw Error("two edges leave state " + std::to_string(e.src) + " on letter '" +
                        e.input + "'");
    }
}

const Edge* DeterministicMAutomaton::edge_from(int state, char letter) const {
    auto it = by_state_letter_.find({state, letter});
    if (it == by_state_letter_.end()) return nullptr;
    return &a_.edges[it->second];
}

bool operator==(const Configuration& a, const Configuration& b) {
    return a.state == b.state && a.register_value == b.register_value;
}

bool operator<(const Configuration& a, const Configuration& b) {
    if (a.state != b.state) return a.state < b.state;
    return a.register_value < b.register_value;
}

void validate_bounds(const RunBounds& bounds) {
    if (bounds.max_configurations < 1) throw Error("max_configurations must be positive");
    if (bounds.max_register_size < 1) throw Error("max_register_size must be positive");
    if (bounds.max_epsilon_chain < 0) throw Error("max_epsilon_chain must be nonnegative");
}

std::string reject_reason_name(RejectReason reason) {
    switch (reason) {
    case RejectReason::None: return "none";
    case RejectReason::NonterminalState: return "nonterminal-state";
    case RejectReason::RegisterNotIdentity: return "register-not-identity";
    case RejectReason::Stuck: return "stuck";
    }
    return "?";
}

std::string verdict_name(Verdict verdict) {
    switch (verdict) {
    case Verdict::Accepted: return "accepted";
    case Verdict::Rejected: return "rejected";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

DeterministicRun run_deterministic_from(const DeterministicMAutomaton& a, int start_state,
                                        std::string_view w) {
    const MAutomaton& base = a.base();
    if (start_state < 0 || start_state >= base.state_count)
        throw Error("start state " + std::to_string(start_state) + " is out of range");
    check_input_word(base.alphabet, w);

    DeterministicRun run;
    run.trace.push_back({start_state, identity_element(base.monoid)});
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Configuration& here = run.trace.back();
        const Edge* e = a.edge_from(here.state, w[i]);
        if (e == nullptr) {
            run.reason = RejectReason::Stuck;
            run.stuck_position = i;
            return run;
        }
        run.trace.push_back(
            {e->dst, multiply(base.monoid, here.register_value, e->register_label)});
    }
    const Configuration& last = run.trace.back();
    if (!is_terminal(base, last.state)) {
        run.reason = RejectReason::NonterminalState;
    } else if (!is_identity(base.monoid, last.register_value)) {
        run.reason = RejectReason::RegisterNotIdentity;
    } else {
        run.accepted = true;
    }
    return run;
}

DeterministicRun run_deterministic(const DeterministicMAutomaton& a, std::string_view w) {
    return run_deterministic_from(a, a.base().initial, w);
}

namespace {

// Frontier expansion shared by the nondeterministic run. Keeps one
// configuration set per consumed-prefix length; epsilon moves stay within a
// set, letter edges feed later ones.
struct FrontierSearch {
    const MAutomaton& a;
    const RunBounds& bounds;
    std::vector<std::vector<const Edge*>> by_src;
    bool truncated = false;

    FrontierSearch(const MAutomaton& automaton, const RunBounds& b)
        : a(automaton), bounds(b), by_src(edges_by_source(automaton)) {}

    bool admit(std::set<Configuration>& into, Configuration c) {
        if (into.count(c)) return false;
        if (element_size(a.monoid, c.register_value) > bounds.max_register_size) {
            truncated = true;
            return false;
        }
        if (static_cast<long long>(into.size()) >= bounds.max_configurations) {
            truncated = true;
            return false;
        }
        into.insert(std::move(c));
        return true;
    }

    void close_epsilon(std::set<Configuration>& configs) {
        std::deque<std::pair<Configuration, int>> queue;
        for (const Configuration& c : configs) queue.push_back({c, 0});
        while (!queue.empty()) {
            auto [c, depth] = queue.front();
            queue.pop_front();
            for (const Edge* e : by_src[c.state]) {
                if (!e->input.empty()) continue;
                Configuration next{e->dst,
                                   multiply(a.monoid, c.register_value, e->register_label)};
                if (configs.count(next)) continue;
                if (depth + 1 > bounds.max_epsilon_chain) {
                    truncated = true;
                    continue;
                }
                if (admit(configs, next)) queue.push_back({std::move(next), depth + 1});
            }
        }
    }
};

} // namespace

FrontierRun run_nondeterministic(const MAutomaton& a, std::string_view w,
                                 const RunBounds& bounds) {
    validate_automaton(a);
    validate_bounds(bounds);
    check_input_word(a.alphabet, w);

    FrontierSearch search(a, bounds);
    std::vector<std::set<Configuration>> reach(w.size() + 1);
    reach[0].insert({a.initial, identity_element(a.monoid)});
    for (std::size_t i = 0; i <= w.size(); ++i) {
        search.close_epsilon(reach[i]);
        if (i == w.size()) break;
        for (const Configuration& c : reach[i]) {
            for (const Edge* e : search.by_src[c.state]) {
                if (e->input.empty()) continue;
                if (i + e->input.size() > w.size()) continue;
                if (w.compare(i, e->input.size(), e->input) != 0) continue;
                search.admit(reach[i + e->input.size()],
                             {e->dst, multiply(a.monoid, c.register_value, e->register_label)});
            }
        }
    }

    FrontierRun run;
    run.truncated = search.truncated;
    run.frontier.assign(reach[w.size()].begin(), reach[w.size()].end());
    bool accepted = false;
    for (const Configuration& c : run.frontier) {
        if (is_terminal(a, c.state) && is_identity(a.monoid, c.register_value)) {
            accepted = true;
            break;
        }
    }
    if (accepted)
        run.verdict = Verdict::Accepted;
    else
        run.verdict = run.truncated ? Verdict::Unknown : Verdict::Rejected;
    return run;
}

Nfa underlying_automaton(const MAutomaton& a) {
    Nfa nfa;
    nfa.letters = a.alphabet.letters();
    nfa.state_count = a.state_count;
    nfa.initials = {a.initial};
    nfa.terminals = a.terminals;
    for (const Edge& e : a.edges) nfa.arcs.push_back({e.src, e.input, e.dst});
    return nfa;
}

Nfa between_terminal_fa(const MAutomaton& a) {
    Nfa nfa = underlying_automaton(a);
    nfa.initials = a.terminals;
    return nfa;
}

bool nfa_accepts(const Nfa& nfa, std::string_view w) {
    for (char c : w) {
        if (nfa.letters.find(c) == std::string::npos) return false;
    }
    std::vector<std::vector<const Nfa::Arc*>> by_src(nfa.state_count);
    for (const Nfa::Arc& arc : nfa.arcs) by_src[arc.src].push_back(&arc);

    auto close = [&](std::set<int>& states) {
        std::deque<int> queue(states.begin(), states.end());
        while (!queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            for (const Nfa::Arc* arc : by_src[s]) {
                if (!arc->input.empty()) continue;
                if (states.insert(arc->dst).second) queue.push_back(arc->dst);
            }
        }
    };

    std::vector<std::set<int>> reach(w.size() + 1);
    for (int s : nfa.initials) reach[0].insert(s);
    for (std::size_t i = 0; i <= w.size(); ++i) {
        close(reach[i]);
        if (i == w.size()) break;
        for (int s : reach[i]) {
            for (const Nfa::Arc* arc : by_src[s]) {
                if (arc->input.empty()) continue;
                if (i + arc->input.size() > w.size()) continue;
                if (w.compare(i, arc->input.size(), arc->input) != 0) continue;
                reach[i + arc->input.size()].insert(arc->dst);
            }
        }
    }
    for (int t : nfa.terminals) {
        if (reach[w.size()].count(t)) return true;
    }
    return false;
}

std::optional<std::string> find_identity_register_path(const MAutomaton& a, int src, int dst,
                                                       const RunBounds& bounds, int max_word_len,
                                                       bool require_nonempty) {
    validate_automaton(a);
    validate_bounds(bounds);
    if (src < 0 || src >= a.state_count || dst < 0 || dst >= a.state_count)
        throw Error("path endpoints are out of range");
    if (max_word_len < 0) throw Error("max_word_len must be nonnegative");

    auto by_src = edges_by_source(a);
    // Buckets by word length keep expansion in shortest-word order; epsilon
    // edges stay in the current bucket. Visited keys carry whether the word
    // so far is empty, so a nonempty return to the start is not deduped away
    // when require_nonempty asks for it.
    std::vector<std::deque<std::pair<std::string, Configuration>>> buckets(max_word_len + 1);
    std::set<std::pair<Configuration, bool>> seen;
    Configuration start{src, identity_element(a.monoid)};
    buckets[0].push_back({"", start});
    seen.insert({start, true});

    long long budget = bounds.max_configurations;
    for (int len = 0; len <= max_word_len; ++len) {
        auto& bucket = buckets[len];
        while (!bucket.empty()) {
            auto [word, c] = std::move(bucket.front());
            bucket.pop_front();
            if ((!require_nonempty || !word.empty()) && c.state == dst &&
                is_identity(a.monoid, c.register_value))
                return word;
            if (--budget < 0) return std::nullopt;
            if (register_is_doomed(a.monoid, c.register_value)) continue;
            for (const Edge* e : by_src[c.state]) {
                int next_len = len + static_cast<int>(e->input.size());
                if (next_len > max_word_len) continue;
                Configuration next{e->dst,
                                   multiply(a.monoid, c.register_value, e->register_label)};
                if (element_size(a.monoid, next.register_value) > bounds.max_register_size)
                    continue;
                std::string next_word = word + e->input;
                if (!seen.insert({next, next_word.empty()}).second) continue;
                buckets[next_len].push_back({std::move(next_word), std::move(next)});
            }
        }
    }
    return std::nullopt;
}

namespace {

long long count_all_words(long long s, int max_len) {
    return sat_add(1, words_below(s, max_len));
}

} // namespace

AgreementReport language_agreement(const DeterministicMAutomaton& a, const LanguageOracle& oracle,
                                   int max_len) {
    if (!oracle.member) throw Error("language oracle has no membership predicate");
    if (max_len < 0) throw Error("max_len must be nonnegative");
    const MAutomaton& base = a.base();
    const std::string& letters = base.alphabet.letters();
    long long s = static_cast<long long>(letters.size());

    AgreementReport report;
    report.words_total = count_all_words(s, max_len);

    std::string word;
    auto visit = [&](auto&& self, const std::optional<Configuration>& cfg) -> void {
        bool accepted = cfg.has_value() && is_terminal(base, cfg->state) &&
                        is_identity(base.monoid, cfg->register_value);
        report.words_checked += 1;
        if (accepted != oracle.member(word)) report.disagreements.push_back(word);
        int remaining = max_len - static_cast<int>(word.size());
        if (remaining == 0) return;

        bool automaton_dead =
            !cfg.has_value() || register_is_doomed(base.monoid, cfg->register_value);
        if (automaton_dead && oracle.prefix_dead && oracle.prefix_dead(word)) {
            report.words_pruned = sat_add(report.words_pruned, words_below(s, remaining));
            return;
        }
        for (char x : letters) {
            std::optional<Configuration> next;
            if (cfg.has_value()) {
                if (const Edge* e = a.edge_from(cfg->state, x)) {
                    next = Configuration{
                        e->dst, multiply(base.monoid, cfg->register_value, e->register_label)};
                }
            }
            word.push_back(x);
            self(self, next);
            word.pop_back();
        }
    };
    visit(visit, Configuration{base.initial, identity_element(base.monoid)});
    return report;
}

namespace {

// Partially consumed edge: the register label is applied on entry, `state` is
// the edge target we occupy once `pending` (the unread tail of the edge's
// input) has been consumed.
struct PendingConfig {
    int state = 0;
    std::string pending;
    Element register_value{};
};

bool operator<(const PendingConfig& a, const PendingConfig& b) {
    return std::tie(a.state, a.pending, a.register_value) <
           std::tie(b.state, b.pending, b.register_value);
}

} // namespace

AgreementReport language_agreement(const MAutomaton& a, const LanguageOracle& oracle, int max_len,
                                   const RunBounds& bounds) {
    if (!oracle.member) throw Error("language oracle has no membership predicate");
    if (max_len < 0) throw Error("max_len must be nonnegative");
    validate_automaton(a);
    validate_bounds(bounds);
    const std::string& letters = a.alphabet.letters();
    long long s = static_cast<long long>(letters.size());
    auto by_src = edges_by_source(a);

    AgreementReport report;
    report.words_total = count_all_words(s, max_len);

    struct Node {
        std::set<PendingConfig> frontier;
        bool truncated = false; // sticky along the path from the root
    };

    auto admit = [&](Node& node, PendingConfig c) {
        if (node.frontier.count(c)) return false;
        if (register_is_doomed(a.monoid, c.register_value)) return false;
        if (element_size(a.monoid, c.register_value) > bounds.max_register_size) {
            node.truncated = true;
            return false;
        }
        if (static_cast<long long>(node.frontier.size()) >= bounds.max_configurations) {
            node.truncated = true;
            return false;
        }
        node.frontier.insert(std::move(c));
        return true;
    };

    auto close_epsilon = [&](Node& node) {
        std::deque<std::pair<PendingConfig, int>> queue;
        for (const PendingConfig& c : node.frontier)
            if (c.pending.empty()) queue.push_back({c, 0});
        while (!queue.empty()) {
            auto [c, depth] = queue.front();
            queue.pop_front();
            for (const Edge* e : by_src[c.state]) {
                if (!e->input.empty()) continue;
                PendingConfig next{e->dst, "",
                                   multiply(a.monoid, c.register_value, e->register_label)};
                if (node.frontier.count(next)) continue;
                if (depth + 1 > bounds.max_epsilon_chain) {
                    node.truncated = true;
                    continue;
                }
                if (admit(node, next)) queue.push_back({std::move(next), depth + 1});
            }
        }
    };

    std::string word;
    auto visit = [&](auto&& self, const Node& node) -> void {
        bool accepted = false;
        for (const PendingConfig& c : node.frontier) {
            if (c.pending.empty() && is_terminal(a, c.state) &&
                is_identity(a.monoid, c.register_value)) {
                accepted = true;
                break;
            }
        }
        report.words_checked += 1;
        if (accepted) {
            if (!oracle.member(word)) report.disagreements.push_back(word);
        } else if (node.truncated) {
            report.unknowns.push_back(word);
        } else if (oracle.member(word)) {
            report.disagreements.push_back(word);
        }
        int remaining = max_len - static_cast<int>(word.size());
        if (remaining == 0) return;

        bool automaton_dead = node.frontier.empty() && !node.truncated;
        if (automaton_dead && oracle.prefix_dead && oracle.prefix_dead(word)) {
            report.words_pruned = sat_add(report.words_pruned, words_below(s, remaining));
            return;
        }
        for (char x : letters) {
            Node next;
            next.truncated = node.truncated;
            for (const PendingConfig& c : node.frontier) {
                if (!c.pending.empty()) {
                    if (c.pending[0] == x)
                        admit(next, {c.state, c.pending.substr(1), c.register_value});
                    continue;
                }
                for (const Edge* e : by_src[c.state]) {
                    if (e->input.empty() || e->input[0] != x) continue;
                    admit(next, {e->dst, e->input.substr(1),
                                 multiply(a.monoid, c.register_value, e->register_label)});
                }
            }
            close_epsilon(next);
            word.push_back(x);
            self(self, next);
            word.pop_back();
        }
    };

    Node root;
    admit(root, {a.initial, "", identity_element(a.monoid)});
    close_epsilon(root);
    visit(visit, root);
    return report;
}

} // namespace mra
