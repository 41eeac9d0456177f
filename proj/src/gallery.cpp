#include "mra/gallery.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mra/error.hpp"

namespace mra {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(message); }

} // namespace

void validate_pda(const PushdownAutomaton& p) {
    if (p.state_count < 1) fail("a pushdown automaton needs at least one state");
    if (p.input_letters.empty()) fail("the input alphabet is empty");
    std::set<char> inputs(p.input_letters.begin(), p.input_letters.end());
    if (inputs.size() != p.input_letters.size()) fail("duplicate input letter");
    if (p.stack_letters.empty()) fail("the stack alphabet is empty");
    std::set<char> stack(p.stack_letters.begin(), p.stack_letters.end());
    if (stack.size() != p.stack_letters.size()) fail("duplicate stack letter");

    auto check_state = [&](int s, const std::string& what) {
        if (s < 0 || s >= p.state_count) fail(what + " state " + std::to_string(s) + " is out of range");
    };
    check_state(p.initial, "initial");
    for (int f : p.finals) check_state(f, "final");
    for (std::size_t i = 0; i < p.transitions.size(); ++i) {
        const PdaTransition& t = p.transitions[i];
        check_state(t.src, "transition " + std::to_string(i) + " source");
        check_state(t.dst, "transition " + std::to_string(i) + " target");
        if (t.input && inputs.count(*t.input) == 0)
            fail("transition " + std::to_string(i) + " reads a letter outside the input alphabet");
        if (t.action.op != StackOp::None && stack.count(t.action.letter) == 0)
            fail("transition " + std::to_string(i) + " acts on a letter outside the stack alphabet");
    }
}

MAutomaton make_counter_automaton(int n, const CounterMachine& machine) {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(n);
    a.alphabet = machine.alphabet;
    a.state_count = machine.state_count;
    a.initial = machine.initial;
    a.terminals = machine.terminals;
    for (std::size_t i = 0; i < machine.edges.size(); ++i) {
        const CounterEdge& e = machine.edges[i];
        if (static_cast<int>(e.deltas.size()) != n)
            fail("counter edge " + std::to_string(i) + " has " + std::to_string(e.deltas.size()) +
                 " deltas; expected " + std::to_string(n));
        a.edges.push_back({e.src, Element{FreeAbelianVec{e.deltas}}, e.input, e.dst});
    }
    validate_automaton(a);
    return a;
}

MAutomaton pda_to_polycyclic(const PushdownAutomaton& p) {
    validate_pda(p);
    MAutomaton a;
    a.monoid = MonoidDescriptor::polycyclic(static_cast<int>(p.stack_letters.size()));
    std::vector<std::pair<char, char>> pairs;
    for (char c : p.input_letters) pairs.push_back({c, c}); // the involution never matters here
    a.alphabet = InvolutiveAlphabet::from_pairs(pairs);
    a.state_count = p.state_count;
    a.initial = p.initial;
    a.terminals = p.finals;
    for (const PdaTransition& t : p.transitions) {
        Element label = identity_element(a.monoid);
        if (t.action.op != StackOp::None) {
            std::string sym(1, static_cast<char>('a' + p.stack_letters.find(t.action.letter)));
            label = t.action.op == StackOp::Push ? polycyclic_element("", sym)
                                                 : polycyclic_element(sym, "");
        }
        a.edges.push_back({t.src, label, t.input ? std::string(1, *t.input) : std::string(), t.dst});
    }
    validate_automaton(a);
    return a;
}

DeterministicMAutomaton dyck_automaton(int rank) {
    MAutomaton a;
    a.monoid = MonoidDescriptor::polycyclic(rank);
    a.alphabet = InvolutiveAlphabet::symmetric(rank);
    a.state_count = 1;
    a.initial = 0;
    a.terminals = {0};
    for (int i = 0; i < rank; ++i) {
        std::string sym(1, static_cast<char>('a' + i));
        a.edges.push_back({0, polycyclic_element("", sym), sym, 0});
        a.edges.push_back({0, polycyclic_element(sym, ""), std::string(1, static_cast<char>('A' + i)), 0});
    }
    return DeterministicMAutomaton(a);
}

RefuterLabels stack_refuter_labels() {
    RefuterLabels l;
    l.monoid = MonoidDescriptor::polycyclic(2);
    l.labels = {identity_element(l.monoid), polycyclic_element("", "a"),
                polycyclic_element("", "b"), polycyclic_element("a", ""),
                polycyclic_element("b", "")};
    return l;
}

RefuterLabels counter_refuter_labels() {
    RefuterLabels l;
    l.monoid = MonoidDescriptor::free_abelian(1);
    l.labels = {Element{FreeAbelianVec{{0}}}, Element{FreeAbelianVec{{1}}},
                Element{FreeAbelianVec{{-1}}}};
    return l;
}

RefuterReport polycyclic_refuter(int state_bound, const RefuterLabels& labels,
                                 const GroupOracle& h, int max_len, long long max_candidates) {
    if (state_bound < 1 || state_bound > 32) fail("state bound must be between 1 and 32");
    if (max_len < 0) fail("max_len must be nonnegative");
    if (max_candidates < 1) fail("the candidate ceiling must be positive");
    if (labels.labels.empty()) fail("the label set is empty");
    for (const Element& e : labels.labels) validate_element(labels.monoid, e);

    const std::string& letters = h.alphabet().letters();
    const long long nlabels = static_cast<long long>(labels.labels.size());

    std::vector<std::string> words = enumerate_words(h.alphabet(), max_len);
    std::vector<char> in_wp(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) in_wp[i] = h.in_word_problem(words[i]);

    RefuterReport report;
    for (int s = 1; s <= state_bound; ++s) {
        const long long options = 1 + s * nlabels; // absent, or (target, label)
        std::vector<long long> digits(letters.size() * static_cast<std::size_t>(s), 0);
        while (true) {
            std::vector<Edge> edges;
            for (std::size_t slot = 0; slot < digits.size(); ++slot) {
                if (digits[slot] == 0) continue;
                long long v = digits[slot] - 1;
                edges.push_back({static_cast<int>(slot / letters.size()),
                                 labels.labels[static_cast<std::size_t>(v % nlabels)],
                                 std::string(1, letters[slot % letters.size()]),
                                 static_cast<int>(v / nlabels)});
            }
            for (unsigned long long mask = 0; mask < (1ULL << (s - 1)); ++mask) {
                if (++report.candidates > max_candidates)
                    fail("the search space exceeds the candidate ceiling of " +
                         std::to_string(max_candidates));
                MAutomaton a;
                a.monoid = labels.monoid;
                a.alphabet = h.alphabet();
                a.state_count = s;
                a.initial = 0;
                a.terminals = {0};
                for (int t = 1; t < s; ++t)
                    if ((mask >> (t - 1)) & 1) a.terminals.push_back(t);
                a.edges = edges;
                DeterministicMAutomaton candidate(a);
                bool refuted = false;
                for (std::size_t i = 0; i < words.size(); ++i) {
                    if (run_deterministic(candidate, words[i]).accepted != (in_wp[i] != 0)) {
                        refuted = true;
                        break;
                    }
                }
                if (refuted)
                    ++report.refuted;
                else
                    report.survivors.push_back(std::move(a));
            }
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == options) {
                digits[i] = 0;
                ++i;
            }
            if (i == digits.size()) break;
        }
    }
    return report;
}

} // namespace mra
