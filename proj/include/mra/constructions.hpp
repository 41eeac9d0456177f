#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mra/automaton.hpp"
#include "mra/group.hpp"

namespace mra {

enum class Outcome { Pass, Fail, Inconclusive };
std::string outcome_name(Outcome outcome);

struct PhiEntry {
    std::string word; // over the parent group's alphabet; must lie in the subgroup
    Element image;
};

/// Input for the forward construction: a finite-index subgroup K of H plus a
/// homomorphism phi from K into the unit group of M, given on generators.
struct EmbeddingSpec {
    SubgroupOracle subgroup;
    MonoidDescriptor target_monoid;
    std::vector<PhiEntry> phi;
};

/// Throws Error: entry words must lie in the subgroup, images must be units
/// of the target monoid, and identity words must map to the identity.
void validate_embedding_spec(const EmbeddingSpec& spec);

/// Multiplicative closure of the phi generators. resolve() grows a product
/// BFS (generators and their inverses) until the target appears; products
/// landing on a known element with a different image throw.
class PhiMap {
public:
    explicit PhiMap(const EmbeddingSpec& spec);

    /// Image of a subgroup element expressible as a product of generators.
    /// Throws Error when the closure is exhausted or the cap is hit first.
    Element resolve(const GroupElement& target, long long node_cap = 20000);

private:
    void expand_once();

    GroupDescriptor group_;
    MonoidDescriptor monoid_;
    std::vector<std::pair<GroupElement, Element>> generators_;
    std::map<GroupElement, Element> known_;
    std::vector<GroupElement> frontier_;
};

struct SchreierResult {
    DeterministicMAutomaton automaton;
    CosetTable table;
};

/// Coset automaton of spec.subgroup with register labels phi(r_i x r_j^-1):
/// states are right cosets, the subgroup itself is both initial and terminal,
/// and every (state, letter) has an edge. Accepts the word problem of the
/// parent group when phi embeds the subgroup into the units of M.
SchreierResult schreier_construct(const EmbeddingSpec& spec, int max_cosets);

/// The same automaton started from a different state.
DeterministicMAutomaton reroot(const DeterministicMAutomaton& a, int new_initial);

bool check_initial_is_terminal(const DeterministicMAutomaton& a);

/// True when (1, w) labels a path between terminal states; one deterministic
/// run per terminal start decides it.
bool accepts_between_terminals(const DeterministicMAutomaton& a, std::string_view w);

struct TerminalUsage {
    int state = 0;
    bool kept = false;
    std::optional<std::string> witness; // accepted word whose run ends here
};

struct PruneResult {
    DeterministicMAutomaton automaton;
    std::vector<TerminalUsage> report;
};

/// Drops terminal status from states that no accepted word reaches within
/// the bounds; the searched witnesses justify keeping the rest.
PruneResult terminal_usage_prune(const DeterministicMAutomaton& a, const RunBounds& bounds,
                                 int max_word_len);

struct AccessibleWitness {
    int state = 0;
    std::string access_word;  // shortest word reaching the state
    Element register_value{}; // register after reading access_word
    std::string return_word;  // formal inverse of access_word
    bool round_trip_accepted = false;
};

struct AccessibilityReport {
    std::vector<AccessibleWitness> witnesses; // accessible states, by state id
    std::vector<int> inaccessible;

    const AccessibleWitness* witness_for(int state) const;
};

AccessibilityReport compute_accessible_witnesses(const DeterministicMAutomaton& a);

struct MergeWitness {
    int p = 0;
    int q = 0;
    std::string word; // between-terminal word placing both access words in one coset
};

struct CosetPartition {
    std::vector<std::vector<int>> classes; // accessible states, grouped
    std::vector<int> class_of;             // per state; -1 when inaccessible
    std::vector<MergeWitness> merges;
    std::vector<std::pair<int, int>> unresolved; // same coset per oracle, no witness found
    long long index_bound = 0;                   // number of classes
};

/// Groups accessible states by the right coset of their access words. The
/// merge test is between-terminal membership of w_p v_q (sound because such
/// words evaluate into the between-terminal subgroup); a bounded search over
/// words with equal evaluation backs it up. reference_subgroup, when given,
/// flags unmerged same-coset pairs as unresolved. The automaton must be
/// complete on its accessible part.
CosetPartition coset_partition(const DeterministicMAutomaton& a, const GroupOracle& h,
                               const AccessibilityReport& access, int alt_word_len,
                               const SubgroupOracle* reference_subgroup = nullptr);

struct SigmaEntry {
    std::string word;       // between-terminal word
    GroupElement k_element; // its evaluation in H
    Element image;          // register of the between-terminal run
    int src_terminal = 0;
    int dst_terminal = 0;
};

struct VerdictList {
    long long checked = 0;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

struct ExtractionBounds {
    int precheck_len = 6; // word-problem agreement pre-check depth
    int prune_len = 8;    // acceptance witness search for terminal pruning
    int sample_len = 6;   // between-terminal sample words up to this length
    int alt_len = 8;      // alternative-word search for the partition
    int connect_len = 8;  // identity-register connector search depth
    long long max_pairs = 400; // homomorphism pairs examined
    RunBounds run;
};

/// Everything the backward direction recovers from a word-problem automaton:
/// the finite-index subgroup (as a state partition) and the map sigma into M,
/// with bounded verification of sigma's defining properties.
struct EmbeddingReport {
    std::optional<std::string> premise_failure; // set when the pre-check fails
    std::vector<TerminalUsage> pruned_terminals;
    AccessibilityReport access;
    CosetPartition partition;
    std::vector<SigmaEntry> sigma;
    VerdictList well_defined;
    VerdictList homomorphism;
    VerdictList injectivity;
    VerdictList units;
    std::vector<std::string> notes; // bounded-search exhaustion events

    Outcome outcome() const;
};

EmbeddingReport extract_embedding(const DeterministicMAutomaton& a, const GroupOracle& h,
                                  const ExtractionBounds& bounds,
                                  const SubgroupOracle* reference_subgroup = nullptr);

struct TheoremBounds {
    int agreement_len = 10;
    int max_cosets = 256;
    ExtractionBounds extraction;
};

/// Both directions on one embedding spec: build the coset automaton, compare
/// it against the word problem, then extract the subgroup and sigma back out
/// of it.
struct TheoremReport {
    SchreierResult schreier;
    AgreementReport agreement;
    EmbeddingReport embedding;
    Outcome outcome = Outcome::Inconclusive;
};

TheoremReport verify_main_theorem(const EmbeddingSpec& spec, const TheoremBounds& bounds);

} // namespace mra
