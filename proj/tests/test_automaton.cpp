#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mra/automaton.hpp"
#include "oracles.hpp"

using namespace mra;

namespace {

Element vec(long long n) { return Element{FreeAbelianVec{{n}}}; }

// One state over Z: a adds 1, A subtracts 1. Accepts exponent-sum zero.
DeterministicMAutomaton counter_automaton() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(1);
    a.state_count = 1;
    a.initial = 0;
    a.terminals = {0};
    a.edges = {{0, vec(1), "a", 0}, {0, vec(-1), "A", 0}};
    return DeterministicMAutomaton(a);
}

// Two states, both terminal, strict alternation a then A.
DeterministicMAutomaton padded_counter() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(1);
    a.state_count = 2;
    a.initial = 0;
    a.terminals = {0, 1};
    a.edges = {{0, vec(1), "a", 1}, {1, vec(-1), "A", 0}};
    return DeterministicMAutomaton(a);
}

// Nondeterministic: on each a the register moves by +1 or -1.
MAutomaton sign_guess() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::from_pairs({{'a', 'a'}});
    a.state_count = 1;
    a.initial = 0;
    a.terminals = {0};
    a.edges = {{0, vec(1), "a", 0}, {0, vec(-1), "a", 0}};
    return a;
}

// Coset automaton for the even subgroup of Z: two states, registers count
// how many doubled generators the path has consumed.
DeterministicMAutomaton schreier_even() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(1);
    a.state_count = 2;
    a.initial = 0;
    a.terminals = {0};
    a.edges = {{0, vec(0), "a", 1},
               {0, vec(-1), "A", 1},
               {1, vec(1), "a", 0},
               {1, vec(0), "A", 0}};
    return DeterministicMAutomaton(a);
}

// Same shape but every letter moves the register by +-1, so no odd path can
// keep the register at the identity.
DeterministicMAutomaton parity_counter() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(1);
    a.state_count = 2;
    a.initial = 0;
    a.terminals = {0};
    a.edges = {{0, vec(1), "a", 1},
               {0, vec(-1), "A", 1},
               {1, vec(1), "a", 0},
               {1, vec(-1), "A", 0}};
    return DeterministicMAutomaton(a);
}

// Single state over the rank-2 polycyclic monoid: lowercase pushes, the
// matching uppercase pops. Accepts balanced bracket words.
DeterministicMAutomaton dyck2() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::polycyclic(2);
    a.alphabet = InvolutiveAlphabet::from_pairs({{'a', 'A'}, {'b', 'B'}});
    a.state_count = 1;
    a.initial = 0;
    a.terminals = {0};
    a.edges = {{0, polycyclic_element("", "a"), "a", 0},
               {0, polycyclic_element("a", ""), "A", 0},
               {0, polycyclic_element("", "b"), "b", 0},
               {0, polycyclic_element("b", ""), "B", 0}};
    return DeterministicMAutomaton(a);
}

// Edges that consume two letters at once; accepts (abBA)^n.
MAutomaton chunk_automaton() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(2);
    a.state_count = 2;
    a.initial = 0;
    a.terminals = {0};
    a.edges = {{0, vec(1), "ab", 1}, {1, vec(-1), "BA", 0}};
    return a;
}

bool bracket_prefix_dead(const std::string& word) {
    std::string stack;
    for (char ch : word) {
        if (ch >= 'a' && ch <= 'z') {
            stack += ch;
        } else {
            if (stack.empty() || stack.back() != static_cast<char>(std::tolower(ch))) return true;
            stack.pop_back();
        }
    }
    return false;
}

LanguageOracle sum_zero_oracle() {
    return {[](const std::string& w) {
                return oracle::exponent_sums(w, {{'a', 0}}, 1)[0] == 0;
            },
            nullptr};
}

} // namespace

TEST_CASE("automaton validation catches structural mistakes") {
    MAutomaton a = counter_automaton().base();
    CHECK_NOTHROW(validate_automaton(a));

    MAutomaton bad = a;
    bad.state_count = 0;
    CHECK_THROWS_AS(validate_automaton(bad), Error);

    bad = a;
    bad.alphabet = InvolutiveAlphabet{};
    CHECK_THROWS_AS(validate_automaton(bad), Error);

    bad = a;
    bad.initial = 3;
    CHECK_THROWS_AS(validate_automaton(bad), Error);

    bad = a;
    bad.terminals = {-1};
    CHECK_THROWS_AS(validate_automaton(bad), Error);

    bad = a;
    bad.edges[0].dst = 7;
    CHECK_THROWS_AS(validate_automaton(bad), Error);

    bad = a;
    bad.edges[0].register_label = polycyclic_element("", "a"); // wrong monoid
    CHECK_THROWS_AS(validate_automaton(bad), Error);

    bad = a;
    bad.edges[0].input = "x";
    CHECK_THROWS_AS(validate_automaton(bad), Error);
}

TEST_CASE("deterministic wrapper enforces single-letter unique edges") {
    MAutomaton a = counter_automaton().base();

    MAutomaton eps = a;
    eps.edges.push_back({0, vec(0), "", 0});
    CHECK_THROWS_AS(DeterministicMAutomaton{eps}, Error);

    MAutomaton chunky = a;
    chunky.edges.push_back({0, vec(0), "aA", 0});
    CHECK_THROWS_AS(DeterministicMAutomaton{chunky}, Error);

    MAutomaton doubled = a;
    doubled.edges.push_back({0, vec(2), "a", 0});
    CHECK_THROWS_AS(DeterministicMAutomaton{doubled}, Error);

    DeterministicMAutomaton det(a);
    const Edge* e = det.edge_from(0, 'a');
    REQUIRE(e != nullptr);
    CHECK(e->register_label == vec(1));
    CHECK(det.edge_from(0, 'x') == nullptr);
}

TEST_CASE("deterministic runs on the counter automaton") {
    auto det = counter_automaton();

    auto accept = run_deterministic(det, "aAaA");
    CHECK(accept.accepted);
    CHECK(accept.reason == RejectReason::None);
    REQUIRE(accept.trace.size() == 5);
    std::vector<long long> seen;
    for (const auto& c : accept.trace)
        seen.push_back(std::get<FreeAbelianVec>(c.register_value.value).coords[0]);
    CHECK(seen == std::vector<long long>{0, 1, 0, 1, 0});

    auto reject = run_deterministic(det, "aa");
    CHECK_FALSE(reject.accepted);
    CHECK(reject.reason == RejectReason::RegisterNotIdentity);
    CHECK(reject.trace.back().register_value == vec(2));

    CHECK(run_deterministic(det, "").accepted);
    CHECK_THROWS_AS(run_deterministic(det, "b"), Error);
}

TEST_CASE("rejection reasons distinguish stuck, state, and register") {
    auto padded = padded_counter();
    auto stuck = run_deterministic(padded, "aa");
    CHECK_FALSE(stuck.accepted);
    CHECK(stuck.reason == RejectReason::Stuck);
    CHECK(stuck.stuck_position == 1);
    CHECK(run_deterministic(padded, "aAaA").accepted);

    auto padded_reg = run_deterministic(padded, "a");
    CHECK(padded_reg.reason == RejectReason::RegisterNotIdentity);

    auto even = schreier_even();
    auto nonterminal = run_deterministic(even, "a");
    CHECK(nonterminal.reason == RejectReason::NonterminalState);
    auto bad_register = run_deterministic(even, "aa");
    CHECK(bad_register.reason == RejectReason::RegisterNotIdentity);
    CHECK(bad_register.trace.back().register_value == vec(1));

    auto from_state = run_deterministic_from(even, 1, "a");
    CHECK_FALSE(from_state.accepted);
    CHECK(from_state.trace.back().state == 0);
    CHECK(from_state.trace.back().register_value == vec(1));
    CHECK(run_deterministic_from(even, 1, "A").accepted);
    CHECK_THROWS_AS(run_deterministic_from(even, 9, "a"), Error);
}

TEST_CASE("nondeterministic frontier on the sign guesser") {
    MAutomaton a = sign_guess();
    RunBounds bounds;

    auto empty = run_nondeterministic(a, "", bounds);
    CHECK(empty.verdict == Verdict::Accepted);
    CHECK(empty.frontier == std::vector<Configuration>{{0, vec(0)}});

    auto one = run_nondeterministic(a, "a", bounds);
    CHECK(one.verdict == Verdict::Rejected);
    CHECK_FALSE(one.truncated);
    CHECK(one.frontier == std::vector<Configuration>{{0, vec(-1)}, {0, vec(1)}});

    auto two = run_nondeterministic(a, "aa", bounds);
    CHECK(two.verdict == Verdict::Accepted);
    CHECK(two.frontier == std::vector<Configuration>{{0, vec(-2)}, {0, vec(0)}, {0, vec(2)}});

    RunBounds small;
    small.max_register_size = 2;
    auto squeezed = run_nondeterministic(a, "aaaa", small);
    CHECK(squeezed.verdict == Verdict::Accepted); // a path inside the cap still balances
    CHECK(squeezed.truncated);

    RunBounds tiny;
    tiny.max_configurations = 2;
    auto capped = run_nondeterministic(a, "aa", tiny);
    CHECK(capped.truncated);
    CHECK(capped.frontier.size() <= 2);
}

TEST_CASE("epsilon closure collapses identity cycles") {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(1);
    a.state_count = 2;
    a.initial = 0;
    a.terminals = {1};
    a.edges = {{0, vec(1), "", 1}, {1, vec(-1), "", 0}};

    auto run = run_nondeterministic(a, "", RunBounds{});
    CHECK_FALSE(run.truncated);
    CHECK(run.verdict == Verdict::Rejected);
    CHECK(run.frontier == std::vector<Configuration>{{0, vec(0)}, {1, vec(1)}});
}

TEST_CASE("epsilon chains respect the depth bound") {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(1);
    a.state_count = 6;
    a.initial = 0;
    a.terminals = {5};
    for (int q = 0; q < 5; ++q) a.edges.push_back({q, vec(0), "", q + 1});

    auto deep = run_nondeterministic(a, "", RunBounds{});
    CHECK(deep.verdict == Verdict::Accepted);
    CHECK_FALSE(deep.truncated);

    RunBounds shallow;
    shallow.max_epsilon_chain = 3;
    auto cut = run_nondeterministic(a, "", shallow);
    CHECK(cut.verdict == Verdict::Unknown);
    CHECK(cut.truncated);
}

TEST_CASE("multi-letter edges consume chunks") {
    MAutomaton a = chunk_automaton();
    RunBounds bounds;
    CHECK(run_nondeterministic(a, "abBA", bounds).verdict == Verdict::Accepted);
    CHECK(run_nondeterministic(a, "abBAabBA", bounds).verdict == Verdict::Accepted);

    auto half = run_nondeterministic(a, "ab", bounds);
    CHECK(half.verdict == Verdict::Rejected);
    CHECK(half.frontier == std::vector<Configuration>{{1, vec(1)}});

    CHECK(run_nondeterministic(a, "aB", bounds).frontier.empty());
    CHECK(run_nondeterministic(a, "a", bounds).frontier.empty());

    Nfa shape = underlying_automaton(a);
    CHECK(nfa_accepts(shape, ""));
    CHECK(nfa_accepts(shape, "abBA"));
    CHECK_FALSE(nfa_accepts(shape, "abB"));
    CHECK_FALSE(nfa_accepts(shape, "ab"));

    LanguageOracle pattern{
        [](const std::string& w) {
            if (w.size() % 4 != 0) return false;
            for (std::size_t i = 0; i < w.size(); i += 4)
                if (w.compare(i, 4, "abBA") != 0) return false;
            return true;
        },
        [](const std::string& w) {
            static const std::string cycle = "abBA";
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] != cycle[i % 4]) return true;
            return false;
        }};
    auto report = language_agreement(a, pattern, 8, bounds);
    CHECK(report.disagreements.empty());
    CHECK(report.unknowns.empty());
    CHECK(report.words_checked + report.words_pruned == report.words_total);
    CHECK(report.words_pruned > 0);
}

TEST_CASE("underlying automaton contains the accepted language") {
    auto even = schreier_even();
    Nfa shape = underlying_automaton(even.base());
    for (const std::string& w : oracle::words_up_to("aA", 5)) {
        CHECK(nfa_accepts(shape, w) == (w.size() % 2 == 0));
    }
    for (const std::string& w : oracle::words_up_to("aA", 8)) {
        if (run_deterministic(even, w).accepted) CHECK(nfa_accepts(shape, w));
    }
}

TEST_CASE("between-terminal words re-root at every terminal") {
    auto padded = padded_counter();
    Nfa between = between_terminal_fa(padded.base());
    REQUIRE(between.initials == std::vector<int>{0, 1});

    for (const std::string& w : oracle::words_up_to("aA", 4)) {
        bool expected = false;
        for (int t : padded.base().terminals) {
            Nfa from_t = underlying_automaton(padded.base());
            from_t.initials = {t};
            expected = expected || nfa_accepts(from_t, w);
        }
        CHECK(nfa_accepts(between, w) == expected);
    }
    CHECK(nfa_accepts(between, "A"));
    CHECK_FALSE(nfa_accepts(between, "AA"));
}

TEST_CASE("identity register path finding") {
    RunBounds bounds;
    auto counter = counter_automaton().base();
    CHECK(find_identity_register_path(counter, 0, 0, bounds, 4) == "");
    CHECK(find_identity_register_path(counter, 0, 0, bounds, 4, true) == "aA");

    auto even = schreier_even().base();
    CHECK(find_identity_register_path(even, 0, 1, bounds, 9) == "a");

    auto parity = parity_counter().base();
    CHECK_FALSE(find_identity_register_path(parity, 0, 1, bounds, 9).has_value());
    CHECK(find_identity_register_path(parity, 0, 0, bounds, 9, true) == "aA");

    CHECK(find_identity_register_path(dyck2().base(), 0, 0, bounds, 6, true) == "aA");
    CHECK(find_identity_register_path(chunk_automaton(), 0, 0, bounds, 6, true) == "abBA");

    MAutomaton one_way;
    one_way.monoid = MonoidDescriptor::free_abelian(1);
    one_way.alphabet = InvolutiveAlphabet::symmetric(1);
    one_way.state_count = 1;
    one_way.initial = 0;
    one_way.terminals = {0};
    one_way.edges = {{0, vec(1), "a", 0}};
    CHECK_FALSE(find_identity_register_path(one_way, 0, 0, bounds, 6, true).has_value());

    CHECK_THROWS_AS(find_identity_register_path(counter, 0, 5, bounds, 4), Error);
    CHECK_THROWS_AS(find_identity_register_path(counter, 0, 0, bounds, -1), Error);
}

TEST_CASE("language agreement on the counter") {
    auto report = language_agreement(counter_automaton(), sum_zero_oracle(), 10);
    CHECK(report.words_total == 2047);
    CHECK(report.words_checked == 2047);
    CHECK(report.words_pruned == 0);
    CHECK(report.disagreements.empty());
    CHECK(report.unknowns.empty());
}

TEST_CASE("agreement flags broken automata in search order") {
    MAutomaton no_terminals = counter_automaton().base();
    no_terminals.terminals = {};
    auto report = language_agreement(DeterministicMAutomaton(no_terminals), sum_zero_oracle(), 4);
    REQUIRE_FALSE(report.disagreements.empty());
    CHECK(report.disagreements.front() == "");

    MAutomaton wrong_label = counter_automaton().base();
    wrong_label.edges[1].register_label = vec(-2);
    auto skewed = language_agreement(DeterministicMAutomaton(wrong_label), sum_zero_oracle(), 4);
    REQUIRE_FALSE(skewed.disagreements.empty());
    CHECK(skewed.disagreements.front() == "aaA");
}

TEST_CASE("agreement prunes dead subtrees") {
    LanguageOracle brackets{[](const std::string& w) { return oracle::is_balanced(w); },
                            [](const std::string& w) { return bracket_prefix_dead(w); }};

    auto det_report = language_agreement(dyck2(), brackets, 8);
    CHECK(det_report.words_total == 87381);
    CHECK(det_report.disagreements.empty());
    CHECK(det_report.unknowns.empty());
    CHECK(det_report.words_pruned > 0);
    CHECK(det_report.words_checked + det_report.words_pruned == det_report.words_total);
    CHECK(det_report.words_checked < 20000);

    auto frontier_report = language_agreement(dyck2().base(), brackets, 8, RunBounds{});
    CHECK(frontier_report.disagreements.empty());
    CHECK(frontier_report.unknowns.empty());
    CHECK(frontier_report.words_checked + frontier_report.words_pruned ==
          frontier_report.words_total);
    CHECK(frontier_report.words_checked == det_report.words_checked);
}

TEST_CASE("frontier agreement matches the deterministic run") {
    auto even = schreier_even();
    auto det_report = language_agreement(even, sum_zero_oracle(), 10);
    auto frontier_report = language_agreement(even.base(), sum_zero_oracle(), 10, RunBounds{});
    CHECK(det_report.disagreements.empty());
    CHECK(frontier_report.disagreements.empty());
    CHECK(frontier_report.unknowns.empty());
    CHECK(det_report.words_checked == frontier_report.words_checked);
}

TEST_CASE("register rewrites along states preserve the language") {
    auto even = schreier_even();
    const MAutomaton& base = even.base();

    std::vector<Element> potential{vec(0), vec(5)};
    MAutomaton rewritten = base;
    for (Edge& e : rewritten.edges) {
        Element left = *try_two_sided_inverse(base.monoid, potential[e.src]);
        e.register_label = multiply(base.monoid, multiply(base.monoid, left, e.register_label),
                                    potential[e.dst]);
    }
    DeterministicMAutomaton det_rewritten{rewritten};

    LanguageOracle original{
        [&](const std::string& w) { return run_deterministic(even, w).accepted; }, nullptr};
    auto report = language_agreement(det_rewritten, original, 8);
    CHECK(report.disagreements.empty());
    CHECK(report.words_checked == report.words_total);
}

TEST_CASE("bounds validation and display names") {
    CHECK_NOTHROW(validate_bounds(RunBounds{}));
    RunBounds bad;
    bad.max_configurations = 0;
    CHECK_THROWS_AS(validate_bounds(bad), Error);
    bad = RunBounds{};
    bad.max_register_size = 0;
    CHECK_THROWS_AS(validate_bounds(bad), Error);
    bad = RunBounds{};
    bad.max_epsilon_chain = -1;
    CHECK_THROWS_AS(validate_bounds(bad), Error);

    CHECK(reject_reason_name(RejectReason::Stuck) == "stuck");
    CHECK(reject_reason_name(RejectReason::NonterminalState) == "nonterminal-state");
    CHECK(reject_reason_name(RejectReason::RegisterNotIdentity) == "register-not-identity");
    CHECK(verdict_name(Verdict::Accepted) == "accepted");
    CHECK(verdict_name(Verdict::Unknown) == "unknown");
}
