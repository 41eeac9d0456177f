#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "mra/constructions.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace mra;

namespace {

Element vec(long long n) { return Element{FreeAbelianVec{{n}}}; }

EmbeddingSpec even_spec() {
    return {make_subgroup(fixtures::z_oracle(), SubgroupKind::Parity),
            MonoidDescriptor::free_abelian(1),
            {{"aa", vec(1)}}};
}

EmbeddingSpec dihedral_spec() {
    return {make_subgroup(fixtures::dihedral_oracle(), SubgroupKind::Parity),
            MonoidDescriptor::free_abelian(1),
            {{"t", vec(1)}}};
}

EmbeddingSpec sym3_spec() {
    return {make_subgroup(fixtures::s3_oracle(), SubgroupKind::Trivial),
            MonoidDescriptor::trivial(),
            {}};
}

// Two interchangeable states, both terminal; accepts exponent-sum zero.
DeterministicMAutomaton wasteful_counter() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(1);
    a.state_count = 2;
    a.initial = 0;
    a.terminals = {0, 1};
    a.edges = {{0, vec(1), "a", 1},
               {0, vec(-1), "A", 1},
               {1, vec(1), "a", 0},
               {1, vec(-1), "A", 0}};
    return DeterministicMAutomaton(a);
}

DeterministicMAutomaton one_state_counter() {
    MAutomaton a;
    a.monoid = MonoidDescriptor::free_abelian(1);
    a.alphabet = InvolutiveAlphabet::symmetric(1);
    a.state_count = 1;
    a.initial = 0;
    a.terminals = {0};
    a.edges = {{0, vec(1), "a", 0}, {0, vec(-1), "A", 0}};
    return DeterministicMAutomaton(a);
}

LanguageOracle sum_zero_oracle() {
    return {[](const std::string& w) {
                return oracle::exponent_sums(w, {{'a', 0}}, 1)[0] == 0;
            },
            nullptr};
}

} // namespace

TEST_CASE("embedding spec validation") {
    CHECK_NOTHROW(validate_embedding_spec(even_spec()));

    EmbeddingSpec bad = even_spec();
    bad.phi[0].word = "ax";
    CHECK_THROWS_AS(validate_embedding_spec(bad), Error);

    bad = even_spec();
    bad.phi[0].word = "a"; // odd, outside the parity subgroup
    CHECK_THROWS_AS(validate_embedding_spec(bad), Error);

    bad = even_spec();
    bad.phi[0].image = polycyclic_element("", "a");
    CHECK_THROWS_AS(validate_embedding_spec(bad), Error); // wrong monoid entirely

    EmbeddingSpec nonunit{make_subgroup(fixtures::z_oracle(), SubgroupKind::Parity),
                          MonoidDescriptor::polycyclic(1),
                          {{"aa", polycyclic_element("", "a")}}};
    CHECK_THROWS_AS(validate_embedding_spec(nonunit), Error);

    bad = even_spec();
    bad.phi[0] = {"aA", vec(1)}; // identity word must map to the identity
    CHECK_THROWS_AS(validate_embedding_spec(bad), Error);
}

TEST_CASE("phi closure arithmetic") {
    PhiMap phi(even_spec());
    GroupElement two{FreeAbelianVec{{2}}};
    GroupElement minus_four{FreeAbelianVec{{-4}}};
    GroupElement zero{FreeAbelianVec{{0}}};
    CHECK(phi.resolve(two) == vec(1));
    CHECK(phi.resolve(minus_four) == vec(-2));
    CHECK(phi.resolve(zero) == vec(0));
    CHECK_THROWS_AS(phi.resolve(GroupElement{FreeAbelianVec{{3}}}, 100), Error);

    EmbeddingSpec conflicting = even_spec();
    conflicting.phi.push_back({"aaaa", vec(3)}); // should be [2]
    PhiMap broken(conflicting);
    CHECK_THROWS_AS(broken.resolve(GroupElement{FreeAbelianVec{{6}}}, 100), Error);

    EmbeddingSpec empty_phi = even_spec();
    empty_phi.phi.clear();
    PhiMap unreachable(empty_phi);
    CHECK_THROWS_AS(unreachable.resolve(two, 100), Error);
}

TEST_CASE("schreier construction matches the pinned coset automaton") {
    auto result = schreier_construct(even_spec(), 16);
    CHECK(result.table.representatives == std::vector<std::string>{"", "a"});

    const MAutomaton& base = result.automaton.base();
    CHECK(base.state_count == 2);
    CHECK(base.initial == 0);
    CHECK(base.terminals == std::vector<int>{0});
    REQUIRE(base.edges.size() == 4);

    auto expect_edge = [&](std::size_t i, int src, char x, long long reg, int dst) {
        CHECK(base.edges[i].src == src);
        CHECK(base.edges[i].input == std::string(1, x));
        CHECK(base.edges[i].register_label == vec(reg));
        CHECK(base.edges[i].dst == dst);
    };
    expect_edge(0, 0, 'a', 0, 1);
    expect_edge(1, 0, 'A', -1, 1);
    expect_edge(2, 1, 'a', 1, 0);
    expect_edge(3, 1, 'A', 0, 0);

    CHECK(run_deterministic(result.automaton, "").accepted);
    CHECK(run_deterministic(result.automaton, "aA").accepted);
    CHECK_FALSE(run_deterministic(result.automaton, "aa").accepted);

    EmbeddingSpec infinite{make_subgroup(fixtures::z_oracle(), SubgroupKind::Trivial),
                           MonoidDescriptor::free_abelian(1),
                           {}};
    CHECK_THROWS_AS(schreier_construct(infinite, 10), Error);

    EmbeddingSpec no_phi = even_spec();
    no_phi.phi.clear();
    CHECK_THROWS_AS(schreier_construct(no_phi, 16), Error);
}

TEST_CASE("dihedral schreier automaton realizes the translation subgroup") {
    auto result = schreier_construct(dihedral_spec(), 16);
    CHECK(result.table.coset_count() == 2);
    CHECK(result.table.representatives == std::vector<std::string>{"", "s"});

    const auto& a = result.automaton;
    CHECK(run_deterministic(a, "").accepted);
    CHECK(run_deterministic(a, "ss").accepted);
    CHECK(run_deterministic(a, "tT").accepted);
    CHECK(run_deterministic(a, "tsts").accepted); // the defining relation
    CHECK_FALSE(run_deterministic(a, "s").accepted);
    CHECK_FALSE(run_deterministic(a, "t").accepted);
    CHECK_FALSE(run_deterministic(a, "ts").accepted);
    CHECK_FALSE(run_deterministic(a, "tt").accepted);

    const GroupOracle& h = fixtures::dihedral_oracle();
    LanguageOracle wp{[&](const std::string& w) { return h.in_word_problem(w); }, nullptr};
    auto report = language_agreement(a, wp, 8);
    CHECK(report.disagreements.empty());
    CHECK(report.words_checked == report.words_total);
}

TEST_CASE("rerooting at a terminal preserves the language") {
    auto wasteful = wasteful_counter();
    auto rerooted = reroot(wasteful, 1);
    CHECK(rerooted.base().initial == 1);
    auto report = language_agreement(rerooted, sum_zero_oracle(), 8);
    CHECK(report.disagreements.empty());
    CHECK_THROWS_AS(reroot(wasteful, 9), Error);
}

TEST_CASE("initial terminal check and between-terminal acceptance") {
    auto even = schreier_construct(even_spec(), 16).automaton;
    CHECK(check_initial_is_terminal(even));

    MAutomaton shifted = even.base();
    shifted.terminals = {1};
    CHECK_FALSE(check_initial_is_terminal(DeterministicMAutomaton(shifted)));

    CHECK(accepts_between_terminals(even, ""));
    CHECK(accepts_between_terminals(even, "aA"));
    CHECK_FALSE(accepts_between_terminals(even, "aa"));
    CHECK_FALSE(accepts_between_terminals(even, "a"));

    // with the initial state terminal, between-terminal identity words are
    // exactly the accepted language
    for (const std::string& w : oracle::words_up_to("aA", 8)) {
        CHECK(accepts_between_terminals(even, w) ==
              (oracle::exponent_sums(w, {{'a', 0}}, 1)[0] == 0));
    }

    auto wasteful = wasteful_counter();
    CHECK(accepts_between_terminals(wasteful, "aA"));
    CHECK_FALSE(accepts_between_terminals(wasteful, "a"));
}

TEST_CASE("terminal pruning keeps used terminals") {
    MAutomaton parity;
    parity.monoid = MonoidDescriptor::free_abelian(1);
    parity.alphabet = InvolutiveAlphabet::symmetric(1);
    parity.state_count = 2;
    parity.initial = 0;
    parity.terminals = {0, 1};
    parity.edges = {{0, vec(1), "a", 1},
                    {0, vec(-1), "A", 1},
                    {1, vec(1), "a", 0},
                    {1, vec(-1), "A", 0}};

    // state 1 is only reached by odd words, whose register sum is odd, so it
    // can never complete an accepting run
    auto pruned = terminal_usage_prune(DeterministicMAutomaton(parity), RunBounds{}, 7);
    CHECK(pruned.automaton.base().terminals == std::vector<int>{0});
    REQUIRE(pruned.report.size() == 2);
    CHECK(pruned.report[0].state == 0);
    CHECK(pruned.report[0].kept);
    CHECK(pruned.report[0].witness == "");
    CHECK(pruned.report[1].state == 1);
    CHECK_FALSE(pruned.report[1].kept);
    CHECK_FALSE(pruned.report[1].witness.has_value());
    auto report = language_agreement(pruned.automaton, sum_zero_oracle(), 8);
    CHECK(report.disagreements.empty());

    MAutomaton both = schreier_construct(even_spec(), 16).automaton.base();
    both.terminals = {0, 1};
    auto kept = terminal_usage_prune(DeterministicMAutomaton(both), RunBounds{}, 7);
    CHECK(kept.automaton.base().terminals == std::vector<int>{0, 1});
    CHECK(kept.report[1].kept);
    CHECK(kept.report[1].witness == "a"); // register [0] on the way in
}

TEST_CASE("accessible witnesses match the pinned example") {
    auto even = schreier_construct(even_spec(), 16).automaton;
    auto access = compute_accessible_witnesses(even);
    CHECK(access.inaccessible.empty());
    REQUIRE(access.witnesses.size() == 2);

    CHECK(access.witnesses[0].state == 0);
    CHECK(access.witnesses[0].access_word == "");
    CHECK(access.witnesses[0].register_value == vec(0));
    CHECK(access.witnesses[0].return_word == "");
    CHECK(access.witnesses[0].round_trip_accepted);

    CHECK(access.witnesses[1].state == 1);
    CHECK(access.witnesses[1].access_word == "a");
    CHECK(access.witnesses[1].register_value == vec(0));
    CHECK(access.witnesses[1].return_word == "A");
    CHECK(access.witnesses[1].round_trip_accepted);

    MAutomaton with_orphan = even.base();
    with_orphan.state_count = 3;
    auto orphan_access = compute_accessible_witnesses(DeterministicMAutomaton(with_orphan));
    CHECK(orphan_access.inaccessible == std::vector<int>{2});
    CHECK(orphan_access.witness_for(2) == nullptr);
    CHECK(orphan_access.witness_for(1) != nullptr);
}

TEST_CASE("coset partition separates and merges correctly") {
    const GroupOracle& h = fixtures::z_oracle();
    auto subgroup = make_subgroup(h, SubgroupKind::Parity);

    auto even = schreier_construct(even_spec(), 16).automaton;
    auto access = compute_accessible_witnesses(even);
    auto partition = coset_partition(even, h, access, 8, &subgroup);
    CHECK(partition.classes == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(partition.class_of == std::vector<int>{0, 1});
    CHECK(partition.merges.empty());
    CHECK(partition.unresolved.empty());
    CHECK(partition.index_bound == 2);

    auto wasteful = wasteful_counter();
    auto waccess = compute_accessible_witnesses(wasteful);
    auto wpartition = coset_partition(wasteful, h, waccess, 8, nullptr);
    CHECK(wpartition.classes == std::vector<std::vector<int>>{{0, 1}});
    CHECK(wpartition.index_bound == 1);
    REQUIRE(wpartition.merges.size() == 1);
    CHECK(wpartition.merges[0].word == "A");

    MAutomaton incomplete;
    incomplete.monoid = MonoidDescriptor::free_abelian(1);
    incomplete.alphabet = InvolutiveAlphabet::symmetric(1);
    incomplete.state_count = 1;
    incomplete.initial = 0;
    incomplete.terminals = {0};
    incomplete.edges = {{0, vec(1), "a", 0}};
    DeterministicMAutomaton det_incomplete{incomplete};
    auto iaccess = compute_accessible_witnesses(det_incomplete);
    CHECK_THROWS_AS(coset_partition(det_incomplete, h, iaccess, 8, nullptr), Error);

    MAutomaton with_orphan = even.base();
    with_orphan.state_count = 3;
    DeterministicMAutomaton det_orphan{with_orphan};
    auto oaccess = compute_accessible_witnesses(det_orphan);
    auto opartition = coset_partition(det_orphan, h, oaccess, 8, &subgroup);
    CHECK(opartition.class_of == std::vector<int>{0, 1, -1});
    CHECK(opartition.index_bound == 2);
}

TEST_CASE("sigma extraction on the even subgroup automaton") {
    const GroupOracle& h = fixtures::z_oracle();
    auto subgroup = make_subgroup(h, SubgroupKind::Parity);
    auto even = schreier_construct(even_spec(), 16).automaton;

    auto report = extract_embedding(even, h, ExtractionBounds{}, &subgroup);
    CHECK_FALSE(report.premise_failure.has_value());
    CHECK(report.partition.index_bound == 2);
    CHECK(report.partition.unresolved.empty());
    CHECK(report.notes.empty());
    CHECK(report.well_defined.pass());
    CHECK(report.well_defined.checked > 50);
    CHECK(report.homomorphism.pass());
    CHECK(report.homomorphism.checked == 49); // 7 register values, ordered pairs
    CHECK(report.injectivity.pass());
    CHECK(report.injectivity.checked >= 1);
    CHECK(report.units.pass());
    CHECK(report.units.checked == 7);
    CHECK(report.outcome() == Outcome::Pass);

    // sigma on the full group: the identity embedding of Z
    auto full = extract_embedding(one_state_counter(), h, ExtractionBounds{}, nullptr);
    CHECK(full.partition.index_bound == 1);
    CHECK(full.outcome() == Outcome::Pass);
    bool found_two = false;
    for (const SigmaEntry& entry : full.sigma) {
        if (entry.word == "aa") {
            found_two = true;
            CHECK(entry.image == vec(2));
            CHECK(entry.k_element == GroupElement{FreeAbelianVec{{2}}});
        }
    }
    CHECK(found_two);
}

TEST_CASE("extraction flags automata that miss the word problem") {
    const GroupOracle& h = fixtures::z_oracle();
    auto even = schreier_construct(even_spec(), 16).automaton;

    MAutomaton broken = even.base();
    broken.edges[2].register_label = vec(2); // doubles one return step
    auto report = extract_embedding(DeterministicMAutomaton(broken), h, ExtractionBounds{});
    CHECK(report.premise_failure.has_value());
    CHECK(report.outcome() == Outcome::Fail);
}

TEST_CASE("the main theorem verifies on the pinned scenarios") {
    TheoremBounds bounds;

    auto even = verify_main_theorem(even_spec(), bounds);
    CHECK(even.outcome == Outcome::Pass);
    CHECK(even.schreier.table.coset_count() == 2);
    CHECK(even.agreement.words_total == 2047);
    CHECK(even.agreement.disagreements.empty());
    CHECK(even.embedding.partition.index_bound == 2);

    auto dihedral = verify_main_theorem(dihedral_spec(), bounds);
    CHECK(dihedral.outcome == Outcome::Pass);
    CHECK(dihedral.schreier.table.coset_count() == 2);
    CHECK(dihedral.embedding.partition.index_bound == 2);

    TheoremBounds finite_bounds;
    finite_bounds.agreement_len = 8;
    auto sym3 = verify_main_theorem(sym3_spec(), finite_bounds);
    CHECK(sym3.outcome == Outcome::Pass);
    CHECK(sym3.schreier.table.coset_count() == 6);
    CHECK(sym3.embedding.partition.index_bound == 6);

    EmbeddingSpec collapsed = even_spec();
    collapsed.phi[0].image = vec(0); // kills injectivity of phi
    auto failed = verify_main_theorem(collapsed, bounds);
    CHECK(failed.outcome == Outcome::Fail);
    CHECK_FALSE(failed.agreement.disagreements.empty());
    CHECK(failed.agreement.disagreements.front() == "aa");
}

TEST_CASE("outcome names") {
    CHECK(outcome_name(Outcome::Pass) == "pass");
    CHECK(outcome_name(Outcome::Fail) == "fail");
    CHECK(outcome_name(Outcome::Inconclusive) == "inconclusive");
}
