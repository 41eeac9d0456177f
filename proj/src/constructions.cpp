#include "mra/constructions.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace mra {

std::string outcome_name(Outcome outcome) {
    switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

void validate_embedding_spec(const EmbeddingSpec& spec) {
    const GroupOracle& h = spec.subgroup.parent();
    for (const PhiEntry& entry : spec.phi) {
        for (char c : entry.word) {
            if (!h.alphabet().contains(c))
                throw Error("phi word \"" + entry.word + "\" uses a letter outside the alphabet");
        }
        if (!spec.subgroup.contains_word(entry.word))
            throw Error("phi word \"" + entry.word + "\" is not in the subgroup");
        validate_element(spec.target_monoid, entry.image);
        if (!try_two_sided_inverse(spec.target_monoid, entry.image))
            throw Error("phi image of \"" + entry.word + "\" is not a unit");
        if (h.in_word_problem(entry.word) && !is_identity(spec.target_monoid, entry.image))
            throw Error("phi must send the identity to the identity; \"" + entry.word +
                        "\" breaks that");
    }
}

PhiMap::PhiMap(const EmbeddingSpec& spec)
    : group_(spec.subgroup.parent().group()), monoid_(spec.target_monoid) {
    validate_embedding_spec(spec);
    const GroupOracle& h = spec.subgroup.parent();
    known_[group_identity(group_)] = identity_element(monoid_);

    auto add_generator = [&](const GroupElement& k, const Element& image) {
        auto it = known_.find(k);
        if (it != known_.end()) {
            if (!(it->second == image))
                throw Error("phi entries are inconsistent at " + format_group_element(group_, k));
            return;
        }
        known_.emplace(k, image);
        generators_.push_back({k, image});
        frontier_.push_back(k);
    };
    for (const PhiEntry& entry : spec.phi) {
        GroupElement k = h.evaluate(entry.word);
        add_generator(k, entry.image);
        add_generator(group_inverse(group_, k), *try_two_sided_inverse(monoid_, entry.image));
    }
    frontier_.push_back(group_identity(group_));
}

void PhiMap::expand_once() {
    std::vector<GroupElement> next;
    for (const GroupElement& f : frontier_) {
        Element f_image = known_.at(f);
        for (const auto& [gen, gen_image] : generators_) {
            GroupElement product = group_multiply(group_, f, gen);
            Element image = multiply(monoid_, f_image, gen_image);
            auto it = known_.find(product);
            if (it != known_.end()) {
                if (!(it->second == image))
                    throw Error("phi entries are inconsistent at " +
                                format_group_element(group_, product));
                continue;
            }
            known_.emplace(product, image);
            next.push_back(std::move(product));
        }
    }
    frontier_ = std::move(next);
}

Element PhiMap::resolve(const GroupElement& target, long long node_cap) {
    while (true) {
        auto it = known_.find(target);
        if (it != known_.end()) return it->second;
        if (frontier_.empty())
            throw Error("phi generators do not reach " + format_group_element(group_, target));
        if (static_cast<long long>(known_.size()) > node_cap)
            throw Error("phi closure hit the node cap before reaching " +
                        format_group_element(group_, target));
        expand_once();
    }
}

SchreierResult schreier_construct(const EmbeddingSpec& spec, int max_cosets) {
    validate_embedding_spec(spec);
    const GroupOracle& h = spec.subgroup.parent();
    auto enumeration = coset_enumerate(spec.subgroup, max_cosets);
    if (enumeration.exceeded_max || !enumeration.table)
        throw Error("coset enumeration exceeded max_cosets = " + std::to_string(max_cosets) +
                    "; the subgroup index is larger (or infinite)");
    const CosetTable& table = *enumeration.table;

    PhiMap phi(spec);
    MAutomaton a;
    a.monoid = spec.target_monoid;
    a.alphabet = h.alphabet();
    a.state_count = table.coset_count();
    a.initial = 0;
    a.terminals = {0};
    for (int i = 0; i < table.coset_count(); ++i) {
        for (char x : h.alphabet().letters()) {
            int j = table.transition(i, x);
            std::string word = table.representatives[i] + x +
                               formal_inverse(h.alphabet(), table.representatives[j]);
            a.edges.push_back({i, phi.resolve(h.evaluate(word)), std::string(1, x), j});
        }
    }
    return {DeterministicMAutomaton(std::move(a)), table};
}

DeterministicMAutomaton reroot(const DeterministicMAutomaton& a, int new_initial) {
    MAutomaton base = a.base();
    base.initial = new_initial;
    return DeterministicMAutomaton(std::move(base));
}

bool check_initial_is_terminal(const DeterministicMAutomaton& a) {
    return is_terminal(a.base(), a.base().initial);
}

bool accepts_between_terminals(const DeterministicMAutomaton& a, std::string_view w) {
    for (int t : a.base().terminals) {
        if (run_deterministic_from(a, t, w).accepted) return true;
    }
    return false;
}

PruneResult terminal_usage_prune(const DeterministicMAutomaton& a, const RunBounds& bounds,
                                 int max_word_len) {
    MAutomaton pruned = a.base();
    pruned.terminals.clear();
    std::vector<TerminalUsage> report;
    for (int t : a.base().terminals) {
        auto witness =
            find_identity_register_path(a.base(), a.base().initial, t, bounds, max_word_len);
        if (witness.has_value()) pruned.terminals.push_back(t);
        report.push_back({t, witness.has_value(), std::move(witness)});
    }
    return {DeterministicMAutomaton(std::move(pruned)), std::move(report)};
}

const AccessibleWitness* AccessibilityReport::witness_for(int state) const {
    for (const AccessibleWitness& w : witnesses) {
        if (w.state == state) return &w;
    }
    return nullptr;
}

AccessibilityReport compute_accessible_witnesses(const DeterministicMAutomaton& a) {
    const MAutomaton& base = a.base();
    std::vector<std::optional<std::pair<std::string, Element>>> found(base.state_count);
    std::deque<int> queue;
    found[base.initial] = {std::string{}, identity_element(base.monoid)};
    queue.push_back(base.initial);
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        for (char x : base.alphabet.letters()) {
            const Edge* e = a.edge_from(q, x);
            if (e == nullptr || found[e->dst].has_value()) continue;
            found[e->dst] = {found[q]->first + x,
                             multiply(base.monoid, found[q]->second, e->register_label)};
            queue.push_back(e->dst);
        }
    }

    AccessibilityReport report;
    for (int q = 0; q < base.state_count; ++q) {
        if (!found[q]) {
            report.inaccessible.push_back(q);
            continue;
        }
        const auto& [word, reg] = *found[q];
        std::string back = formal_inverse(base.alphabet, word);
        bool round_trip = run_deterministic(a, word + back).accepted;
        report.witnesses.push_back({q, word, reg, back, round_trip});
    }
    return report;
}

CosetPartition coset_partition(const DeterministicMAutomaton& a, const GroupOracle& h,
                               const AccessibilityReport& access, int alt_word_len,
                               const SubgroupOracle* reference_subgroup) {
    const MAutomaton& base = a.base();
    if (!(base.alphabet == h.alphabet()))
        throw Error("the oracle alphabet differs from the automaton alphabet");
    for (const AccessibleWitness& w : access.witnesses) {
        for (char x : base.alphabet.letters()) {
            if (a.edge_from(w.state, x) == nullptr)
                throw Error("state " + std::to_string(w.state) + " has no edge on '" +
                            std::string(1, x) + "'; the partition needs a complete automaton");
        }
    }

    std::map<int, int> parent;
    for (const AccessibleWitness& w : access.witnesses) parent[w.state] = w.state;
    auto find_root = [&parent](int x) {
        while (parent.at(x) != x) {
            parent[x] = parent.at(parent.at(x));
            x = parent.at(x);
        }
        return x;
    };

    Nfa between = between_terminal_fa(base);
    CosetPartition out;

    auto merge = [&](int p, int q, std::string word) {
        parent[find_root(p)] = find_root(q);
        out.merges.push_back({p, q, std::move(word)});
    };

    const auto& ws = access.witnesses;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        for (std::size_t j = i + 1; j < ws.size(); ++j) {
            if (find_root(ws[i].state) == find_root(ws[j].state)) continue;
            std::string direct = ws[i].access_word + ws[j].return_word;
            if (nfa_accepts(between, direct)) {
                merge(ws[i].state, ws[j].state, std::move(direct));
                continue;
            }
            std::string reversed = ws[j].access_word + ws[i].return_word;
            if (nfa_accepts(between, reversed)) merge(ws[i].state, ws[j].state, std::move(reversed));
        }
    }

    // Fallback: the coset only depends on the evaluation, so any
    // between-terminal word with the same evaluation is just as good.
    std::optional<std::map<GroupElement, std::string>> j_words;
    auto alternative = [&](const GroupElement& target) -> std::optional<std::string> {
        if (!j_words) {
            j_words.emplace();
            for (const std::string& z : enumerate_words(base.alphabet, alt_word_len)) {
                if (!nfa_accepts(between, z)) continue;
                j_words->try_emplace(h.evaluate(z), z);
            }
        }
        auto it = j_words->find(target);
        if (it == j_words->end()) return std::nullopt;
        return it->second;
    };
    for (std::size_t i = 0; i < ws.size(); ++i) {
        for (std::size_t j = i + 1; j < ws.size(); ++j) {
            if (find_root(ws[i].state) == find_root(ws[j].state)) continue;
            if (auto z = alternative(h.evaluate(ws[i].access_word + ws[j].return_word)))
                merge(ws[i].state, ws[j].state, std::move(*z));
        }
    }

    std::map<int, std::vector<int>> grouped;
    for (const AccessibleWitness& w : access.witnesses)
        grouped[find_root(w.state)].push_back(w.state);
    std::vector<std::vector<int>> classes;
    for (auto& [root, members] : grouped) classes.push_back(std::move(members));
    std::sort(classes.begin(), classes.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });

    out.class_of.assign(base.state_count, -1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (int s : classes[c]) out.class_of[s] = static_cast<int>(c);
    }
    out.classes = std::move(classes);
    out.index_bound = static_cast<long long>(out.classes.size());

    if (reference_subgroup != nullptr) {
        for (std::size_t i = 0; i < ws.size(); ++i) {
            for (std::size_t j = i + 1; j < ws.size(); ++j) {
                if (out.class_of[ws[i].state] == out.class_of[ws[j].state]) continue;
                if (reference_subgroup->contains(
                        h.evaluate(ws[i].access_word + ws[j].return_word)))
                    out.unresolved.push_back({ws[i].state, ws[j].state});
            }
        }
    }
    return out;
}

Outcome EmbeddingReport::outcome() const {
    if (premise_failure.has_value() || !well_defined.pass() || !homomorphism.pass() ||
        !injectivity.pass() || !units.pass())
        return Outcome::Fail;
    if (!partition.unresolved.empty() || !notes.empty()) return Outcome::Inconclusive;
    return Outcome::Pass;
}

EmbeddingReport extract_embedding(const DeterministicMAutomaton& a, const GroupOracle& h,
                                  const ExtractionBounds& bounds,
                                  const SubgroupOracle* reference_subgroup) {
    EmbeddingReport report;

    LanguageOracle wp{[&](const std::string& w) { return h.in_word_problem(w); }, nullptr};
    auto precheck = language_agreement(a, wp, bounds.precheck_len);
    if (!precheck.disagreements.empty()) {
        report.premise_failure = "the automaton disagrees with the word problem at \"" +
                                 precheck.disagreements.front() + "\"";
    }

    PruneResult pruned = terminal_usage_prune(a, bounds.run, bounds.prune_len);
    report.pruned_terminals = pruned.report;
    const DeterministicMAutomaton& b = pruned.automaton;
    const MAutomaton& base = b.base();
    report.access = compute_accessible_witnesses(b);

    if (report.premise_failure.has_value()) return report;

    try {
        report.partition =
            coset_partition(b, h, report.access, bounds.alt_len, reference_subgroup);
    } catch (const Error& err) {
        report.premise_failure = err.what();
        return report;
    }

    // Sample the between-terminal language: short words plus one word per
    // edge (access word, the edge letter, then back).
    Nfa between = between_terminal_fa(base);
    std::set<std::string> samples;
    for (const std::string& w : enumerate_words(base.alphabet, bounds.sample_len)) {
        if (nfa_accepts(between, w)) samples.insert(w);
    }
    for (const Edge& e : base.edges) {
        const AccessibleWitness* src = report.access.witness_for(e.src);
        const AccessibleWitness* dst = report.access.witness_for(e.dst);
        if (src != nullptr && dst != nullptr)
            samples.insert(src->access_word + e.input + dst->return_word);
    }

    for (const std::string& w : samples) {
        bool found = false;
        for (int t : base.terminals) {
            auto run = run_deterministic_from(b, t, w);
            if (run.reason == RejectReason::Stuck) continue;
            if (!is_terminal(base, run.trace.back().state)) continue;
            report.sigma.push_back(
                {w, h.evaluate(w), run.trace.back().register_value, t, run.trace.back().state});
            found = true;
        }
        if (!found) report.notes.push_back("no between-terminal run for sample \"" + w + "\"");
    }

    // Well-definedness: equal evaluations must have equal registers.
    std::map<GroupElement, const SigmaEntry*> first;
    for (const SigmaEntry& entry : report.sigma) {
        auto [it, inserted] = first.try_emplace(entry.k_element, &entry);
        if (inserted) continue;
        report.well_defined.checked += 1;
        if (!(it->second->image == entry.image))
            report.well_defined.failures.push_back("\"" + it->second->word + "\" and \"" +
                                                   entry.word +
                                                   "\" evaluate equally but have different "
                                                   "registers");
    }

    for (const auto& [k, entry] : first) {
        report.units.checked += 1;
        if (!try_two_sided_inverse(base.monoid, entry->image))
            report.units.failures.push_back("sigma image of \"" + entry->word +
                                            "\" is not a unit");
        if (reference_subgroup != nullptr && !reference_subgroup->contains(k))
            report.notes.push_back("between-terminal word \"" + entry->word +
                                   "\" evaluates outside the reference subgroup");
    }

    for (const auto& [k, entry] : first) {
        if (!is_identity(base.monoid, entry->image)) continue;
        report.injectivity.checked += 1;
        if (!h.in_word_problem(entry->word))
            report.injectivity.failures.push_back("sigma sends \"" + entry->word +
                                                  "\" to the identity register, but it does not "
                                                  "evaluate to the identity");
    }

    // Homomorphism: connect the two witness paths with an identity-register
    // word and compare the combined register with the product.
    std::map<std::pair<int, int>, std::optional<std::string>> connectors;
    auto connector = [&](int from, int to) -> const std::optional<std::string>& {
        auto it = connectors.find({from, to});
        if (it == connectors.end()) {
            it = connectors
                     .emplace(std::pair<int, int>{from, to},
                              find_identity_register_path(base, from, to, bounds.run,
                                                          bounds.connect_len))
                     .first;
            if (!it->second.has_value())
                report.notes.push_back("no identity-register connector from state " +
                                       std::to_string(from) + " to state " + std::to_string(to));
        }
        return it->second;
    };

    std::vector<const SigmaEntry*> reps;
    reps.reserve(first.size());
    for (const auto& [k, entry] : first) reps.push_back(entry);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (report.homomorphism.checked >= bounds.max_pairs) break;
        for (std::size_t j = 0; j < reps.size(); ++j) {
            if (report.homomorphism.checked >= bounds.max_pairs) break;
            const SigmaEntry* e1 = reps[i];
            const SigmaEntry* e2 = reps[j];
            const auto& q = connector(e1->dst_terminal, e2->src_terminal);
            if (!q.has_value()) continue;
            report.homomorphism.checked += 1;
            if (!h.in_word_problem(*q)) {
                report.homomorphism.failures.push_back(
                    "connector \"" + *q +
                    "\" carries the identity register but does not evaluate to the identity");
                continue;
            }
            std::string combined = e1->word + *q + e2->word;
            auto run = run_deterministic_from(b, e1->src_terminal, combined);
            Element expected = multiply(base.monoid, e1->image, e2->image);
            bool ok = run.reason != RejectReason::Stuck &&
                      is_terminal(base, run.trace.back().state) &&
                      run.trace.back().register_value == expected;
            if (!ok)
                report.homomorphism.failures.push_back("sigma(\"" + e1->word + "\") sigma(\"" +
                                                       e2->word + "\") differs from the register "
                                                       "of \"" + combined + "\"");
        }
    }

    return report;
}

TheoremReport verify_main_theorem(const EmbeddingSpec& spec, const TheoremBounds& bounds) {
    SchreierResult schreier = schreier_construct(spec, bounds.max_cosets);
    const GroupOracle& h = spec.subgroup.parent();

    LanguageOracle wp{[&](const std::string& w) { return h.in_word_problem(w); }, nullptr};
    AgreementReport agreement = language_agreement(schreier.automaton, wp, bounds.agreement_len);
    EmbeddingReport embedding =
        extract_embedding(schreier.automaton, h, bounds.extraction, &spec.subgroup);

    Outcome outcome = Outcome::Pass;
    if (!agreement.disagreements.empty() || embedding.outcome() == Outcome::Fail)
        outcome = Outcome::Fail;
    else if (!agreement.unknowns.empty() || embedding.outcome() == Outcome::Inconclusive)
        outcome = Outcome::Inconclusive;
    return {std::move(schreier), std::move(agreement), std::move(embedding), outcome};
}

} // namespace mra
