// mra: command line front end for blind register automata over monoids.
//
// Exit codes: reports map pass -> 0, fail -> 1, inconclusive -> 2; cmd_run
// maps accept -> 0, reject -> 1, unknown -> 2; hard errors (unreadable file,
// bad syntax outside cmd_validate) exit 3.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "mra/textio.hpp"

using namespace mra;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Reports go to --out when given, stdout otherwise; the exit code carries the
// verdict either way.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << text;
}

int outcome_exit(Outcome o) {
    switch (o) {
    case Outcome::Pass: return 0;
    case Outcome::Fail: return 1;
    case Outcome::Inconclusive: return 2;
    }
    return 3;
}

struct ScenarioOverrides {
    std::optional<int> max_len;
    std::optional<int> max_register_size;
    std::optional<int> max_cosets;
};

Scenario load_scenario(const std::string& path, const ScenarioOverrides& over) {
    Scenario s = parse_scenario_text(read_file(path));
    if (over.max_len) s.max_len = *over.max_len;
    if (over.max_register_size) s.max_register_size = *over.max_register_size;
    if (over.max_cosets) s.max_cosets = *over.max_cosets;
    return s;
}

LanguageOracle word_problem_oracle(const GroupOracle& g) {
    LanguageOracle o;
    o.member = [&g](const std::string& w) { return g.in_word_problem(w); };
    o.prefix_dead = {};
    return o;
}

int cmd_validate(const std::string& path) {
    std::string text = read_file(path);
    ParsedAutomaton parsed;
    try {
        parsed = parse_automaton_text(text);
    } catch (const Error& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 1;
    }
    std::cout << "OK, " << (parsed.deterministic ? "deterministic" : "nondeterministic") << ", "
              << parsed.automaton.state_count
              << (parsed.automaton.state_count == 1 ? " state" : " states") << "\n";
    return 0;
}

int cmd_run(const std::string& path, const std::string& word, const RunBounds& bounds) {
    ParsedAutomaton parsed = parse_automaton_text(read_file(path));
    const MonoidDescriptor& m = parsed.automaton.monoid;

    if (parsed.deterministic) {
        DeterministicMAutomaton det(parsed.automaton);
        DeterministicRun run = run_deterministic(det, word);
        for (std::size_t i = 0; i < run.trace.size(); ++i) {
            const Configuration& c = run.trace[i];
            if (i == 0) {
                std::cout << "state " << c.state;
            } else {
                std::cout << "'" << word[i - 1] << "' -> state " << c.state;
            }
            std::cout << " register " << format_element(m, c.register_value) << "\n";
        }
        if (run.accepted) {
            std::cout << "ACCEPT register="
                      << format_element(m, run.trace.back().register_value) << "\n";
            return 0;
        }
        std::cout << "REJECT " << reject_reason_name(run.reason);
        if (run.reason == RejectReason::RegisterNotIdentity) {
            std::cout << " " << format_element(m, run.trace.back().register_value);
        } else if (run.reason == RejectReason::NonterminalState) {
            std::cout << " state=" << run.trace.back().state;
        } else if (run.reason == RejectReason::Stuck) {
            std::cout << " position=" << run.stuck_position;
        }
        std::cout << "\n";
        return 1;
    }

    FrontierRun run = run_nondeterministic(parsed.automaton, word, bounds);
    std::cout << "frontier " << run.frontier.size()
              << (run.frontier.size() == 1 ? " configuration" : " configurations");
    if (run.truncated) std::cout << " (truncated)";
    std::cout << "\n";
    switch (run.verdict) {
    case Verdict::Accepted:
        std::cout << "ACCEPT\n";
        return 0;
    case Verdict::Rejected:
        std::cout << "REJECT\n";
        return 1;
    case Verdict::Unknown:
        std::cout << "UNKNOWN search truncated\n";
        return 2;
    }
    return 3;
}

int cmd_schreier(const std::string& path, const ScenarioOverrides& over,
                 const std::string& out_path) {
    Scenario s = load_scenario(path, over);
    SchreierResult result = schreier_construct(s.spec, s.max_cosets);
    emit(format_automaton_text(result.automaton.base(), true), out_path);
    return 0;
}

int cmd_agree(const std::string& path, const std::string& automaton_path,
              const ScenarioOverrides& over, const std::string& out_path) {
    Scenario s = load_scenario(path, over);
    LanguageOracle oracle = word_problem_oracle(s.spec.subgroup.parent());

    AgreementReport report;
    if (automaton_path.empty()) {
        SchreierResult result = schreier_construct(s.spec, s.max_cosets);
        report = language_agreement(result.automaton, oracle, s.max_len);
    } else {
        ParsedAutomaton parsed = parse_automaton_text(read_file(automaton_path));
        if (parsed.deterministic) {
            report = language_agreement(DeterministicMAutomaton(parsed.automaton), oracle,
                                        s.max_len);
        } else {
            RunBounds bounds;
            bounds.max_register_size = s.max_register_size;
            report = language_agreement(parsed.automaton, oracle, s.max_len, bounds);
        }
    }
    emit(render_agreement_report(report), out_path);
    return outcome_exit(agreement_outcome(report));
}

int cmd_extract(const std::string& path, const ScenarioOverrides& over,
                const std::string& out_path) {
    Scenario s = load_scenario(path, over);
    TheoremBounds bounds = scenario_theorem_bounds(s);
    SchreierResult result = schreier_construct(s.spec, s.max_cosets);
    const SubgroupOracle& subgroup = s.spec.subgroup;
    EmbeddingReport report = extract_embedding(result.automaton, subgroup.parent(),
                                               bounds.extraction, &subgroup);
    emit(render_embedding_report(report), out_path);
    return outcome_exit(report.outcome());
}

int cmd_theorem(const std::string& path, const ScenarioOverrides& over,
                const std::string& out_path) {
    Scenario s = load_scenario(path, over);
    TheoremReport report = verify_main_theorem(s.spec, scenario_theorem_bounds(s));
    emit(render_theorem_report(report), out_path);
    return outcome_exit(report.outcome);
}

// --- gallery demos ------------------------------------------------------

GroupOracle integers_oracle() {
    auto desc = GroupDescriptor::free_abelian(1);
    return GroupOracle(desc, InvolutiveAlphabet::symmetric(1),
                       {{'a', parse_group_element(desc, "[1]")},
                        {'A', parse_group_element(desc, "[-1]")}});
}

int demo_counter(int max_len, const std::string& out_path) {
    CounterMachine machine;
    machine.terminals = {0};
    machine.edges = {{0, {1}, "a", 0}, {0, {-1}, "A", 0}};
    DeterministicMAutomaton a(make_counter_automaton(1, machine));

    LanguageOracle sum_zero;
    sum_zero.member = [](const std::string& w) {
        long long sum = 0;
        for (char c : w) sum += c == 'a' ? 1 : -1;
        return sum == 0;
    };
    sum_zero.prefix_dead = {};

    AgreementReport report = language_agreement(a, sum_zero, max_len);
    emit(render_agreement_report(report), out_path);
    return outcome_exit(agreement_outcome(report));
}

int demo_dyck(int max_len, const std::string& out_path) {
    DeterministicMAutomaton a = dyck_automaton(2);

    // stack simulation; empty optional means a pop already mismatched
    auto simulate = [](const std::string& w) -> std::optional<std::string> {
        std::string stack;
        for (char c : w) {
            if (c == 'a' || c == 'b') {
                stack.push_back(c);
            } else {
                char open = c == 'A' ? 'a' : 'b';
                if (stack.empty() || stack.back() != open) return std::nullopt;
                stack.pop_back();
            }
        }
        return stack;
    };

    LanguageOracle balanced;
    balanced.member = [simulate](const std::string& w) {
        auto stack = simulate(w);
        return stack && stack->empty();
    };
    balanced.prefix_dead = [simulate](const std::string& w) { return !simulate(w); };

    AgreementReport report = language_agreement(a, balanced, max_len);
    emit(render_agreement_report(report), out_path);
    return outcome_exit(agreement_outcome(report));
}

int demo_anbn(int max_len, const std::string& out_path) {
    PushdownAutomaton pda;
    pda.input_letters = "ab";
    pda.stack_letters = "s";
    pda.state_count = 2;
    pda.initial = 0;
    pda.finals = {0, 1};
    pda.transitions = {{0, 'a', {StackOp::Push, 's'}, 0},
                       {0, 'b', {StackOp::Pop, 's'}, 1},
                       {1, 'b', {StackOp::Pop, 's'}, 1}};
    MAutomaton a = pda_to_polycyclic(pda);

    LanguageOracle anbn;
    anbn.member = [](const std::string& w) {
        std::size_t i = 0;
        while (i < w.size() && w[i] == 'a') ++i;
        return w.size() == 2 * i && w.find('a', i) == std::string::npos;
    };
    anbn.prefix_dead = [](const std::string& w) {
        std::size_t as = 0, bs = 0;
        for (char c : w) {
            if (c == 'a') {
                if (bs > 0) return true; // an 'a' after a 'b' is fatal
                ++as;
            } else {
                ++bs;
            }
        }
        return bs > as;
    };

    AgreementReport report = language_agreement(a, anbn, max_len, RunBounds{});
    emit(render_agreement_report(report), out_path);
    return outcome_exit(agreement_outcome(report));
}

int demo_refuter(int state_bound, const RefuterLabels& labels, int max_len,
                 const std::string& out_path) {
    GroupOracle z = integers_oracle();
    RefuterReport report = polycyclic_refuter(state_bound, labels, z, max_len);
    emit(render_refuter_report(report), out_path);
    return outcome_exit(refuter_outcome(report));
}

int cmd_gallery(const std::string& demo, std::optional<int> max_len,
                const std::string& out_path) {
    if (demo == "counter") return demo_counter(max_len.value_or(10), out_path);
    if (demo == "dyck-2") return demo_dyck(max_len.value_or(10), out_path);
    if (demo == "anbn") return demo_anbn(max_len.value_or(10), out_path);
    if (demo == "refuter-1-state")
        return demo_refuter(1, stack_refuter_labels(), max_len.value_or(6), out_path);
    if (demo == "refuter-2-state")
        return demo_refuter(2, stack_refuter_labels(), max_len.value_or(8), out_path);
    if (demo == "refuter-counter")
        return demo_refuter(1, counter_refuter_labels(), max_len.value_or(6), out_path);
    throw Error("unknown demo '" + demo +
                "'; try counter, dyck-2, anbn, refuter-1-state, refuter-2-state, "
                "refuter-counter");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"blind register automata over monoids"};
    app.require_subcommand(1);

    std::string automaton_path, scenario_path, word, out_path, extra_automaton, demo;
    ScenarioOverrides over;
    int opt_max_len = 0, opt_max_register = 0, opt_max_cosets = 0;
    RunBounds run_bounds;

    CLI::App* validate = app.add_subcommand("validate", "parse and check an automaton file");
    validate->add_option("file", automaton_path, "automaton file")->required();

    CLI::App* run = app.add_subcommand("run", "run an automaton on a word");
    run->add_option("file", automaton_path, "automaton file")->required();
    run->add_option("word", word, "input word (may be empty)")->required();
    run->add_option("--max-register-size", run_bounds.max_register_size,
                    "register size cap during the run");
    run->add_option("--max-configurations", run_bounds.max_configurations,
                    "frontier cap for nondeterministic search");

    auto add_scenario = [&](CLI::App* sub) {
        sub->add_option("scenario", scenario_path, "scenario file")->required();
        sub->add_option("--out", out_path, "write the output to a file");
    };
    auto add_overrides = [&](CLI::App* sub, bool cosets) {
        sub->add_option("--max-len", opt_max_len, "word length bound")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-register-size", opt_max_register, "register size cap")
            ->check(CLI::PositiveNumber);
        if (cosets)
            sub->add_option("--max-cosets", opt_max_cosets, "coset enumeration cap")
                ->check(CLI::PositiveNumber);
    };

    CLI::App* schreier = app.add_subcommand("schreier", "emit the coset automaton of a scenario");
    add_scenario(schreier);
    schreier->add_option("--max-cosets", opt_max_cosets, "coset enumeration cap")
        ->check(CLI::PositiveNumber);

    CLI::App* agree = app.add_subcommand("agree",
                                         "compare an automaton against the word problem");
    add_scenario(agree);
    agree->add_option("--automaton", extra_automaton,
                      "check this file instead of the coset automaton");
    add_overrides(agree, true);

    CLI::App* extract = app.add_subcommand("extract",
                                           "recover the subgroup and sigma from the coset automaton");
    add_scenario(extract);
    add_overrides(extract, true);

    CLI::App* theorem = app.add_subcommand("theorem", "verify both directions of a scenario");
    add_scenario(theorem);
    add_overrides(theorem, true);

    CLI::App* gallery = app.add_subcommand("gallery", "built-in demos");
    gallery->add_option("demo", demo,
                        "counter | dyck-2 | anbn | refuter-1-state | refuter-2-state | "
                        "refuter-counter")
        ->required();
    gallery->add_option("--out", out_path, "write the output to a file");
    gallery->add_option("--max-len", opt_max_len, "word length bound")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    if (opt_max_len > 0) over.max_len = opt_max_len;
    if (opt_max_register > 0) over.max_register_size = opt_max_register;
    if (opt_max_cosets > 0) over.max_cosets = opt_max_cosets;

    try {
        if (*validate) return cmd_validate(automaton_path);
        if (*run) return cmd_run(automaton_path, word, run_bounds);
        if (*schreier) return cmd_schreier(scenario_path, over, out_path);
        if (*agree) return cmd_agree(scenario_path, extra_automaton, over, out_path);
        if (*extract) return cmd_extract(scenario_path, over, out_path);
        if (*theorem) return cmd_theorem(scenario_path, over, out_path);
        if (*gallery) return cmd_gallery(demo, over.max_len, out_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
