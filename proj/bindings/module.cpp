// Python bindings. Elements travel as their text literals and automata as
// their file format, so the python surface is strings and small result
// structs rather than a mirror of the C++ type hierarchy.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mra/textio.hpp"

namespace py = pybind11;
using namespace mra;

namespace {

struct PyRun {
    std::string verdict;       // accepted | rejected | unknown
    std::string reason;        // none | nonterminal-state | register-not-identity | stuck
    std::string register_value; // final register literal on deterministic runs
};

struct PyAgreement {
    long long words_total = 0;
    long long words_checked = 0;
    long long words_pruned = 0;
    std::vector<std::string> disagreements;
    std::vector<std::string> unknowns;
};

struct PyReport {
    std::string text;    // rendered report, RESULT footer included
    std::string outcome; // pass | fail | inconclusive
};

struct PyRefuter {
    long long candidates = 0;
    long long refuted = 0;
    std::vector<std::string> survivors; // serialized automata
};

struct PyAutomaton {
    MAutomaton automaton;
    bool deterministic = false;

    std::string format() const { return format_automaton_text(automaton, deterministic); }

    PyRun run(const std::string& word) const {
        PyRun out;
        if (deterministic) {
            DeterministicMAutomaton det(automaton);
            DeterministicRun r = run_deterministic(det, word);
            out.verdict = r.accepted ? "accepted" : "rejected";
            out.reason = reject_reason_name(r.reason);
            out.register_value = format_element(automaton.monoid, r.trace.back().register_value);
            return out;
        }
        FrontierRun r = run_nondeterministic(automaton, word, RunBounds{});
        out.verdict = verdict_name(r.verdict);
        out.reason = "none";
        return out;
    }

    py::object accepts(const std::string& word) const {
        PyRun r = run(word);
        if (r.verdict == "unknown") return py::none();
        return py::bool_(r.verdict == "accepted");
    }

    PyAgreement agree(const std::function<bool(const std::string&)>& member, int max_len,
                      const std::function<bool(const std::string&)>& prefix_dead) const {
        LanguageOracle oracle;
        oracle.member = member;
        if (prefix_dead) oracle.prefix_dead = prefix_dead;
        AgreementReport r =
            deterministic
                ? language_agreement(DeterministicMAutomaton(automaton), oracle, max_len)
                : language_agreement(automaton, oracle, max_len, RunBounds{});
        return {r.words_total, r.words_checked, r.words_pruned, r.disagreements, r.unknowns};
    }
};

struct PyScenario {
    Scenario scenario;

    PyAutomaton schreier() const {
        return {schreier_construct(scenario.spec, scenario.max_cosets).automaton.base(), true};
    }

    PyReport theorem() const {
        TheoremReport r = verify_main_theorem(scenario.spec, scenario_theorem_bounds(scenario));
        return {render_theorem_report(r), outcome_name(r.outcome)};
    }

    PyReport extract() const {
        SchreierResult s = schreier_construct(scenario.spec, scenario.max_cosets);
        EmbeddingReport r = extract_embedding(s.automaton, scenario.spec.subgroup.parent(),
                                              scenario_theorem_bounds(scenario).extraction,
                                              &scenario.spec.subgroup);
        return {render_embedding_report(r), outcome_name(r.outcome())};
    }

    PyReport agree() const {
        SchreierResult s = schreier_construct(scenario.spec, scenario.max_cosets);
        const GroupOracle& g = scenario.spec.subgroup.parent();
        LanguageOracle oracle;
        oracle.member = [&g](const std::string& w) { return g.in_word_problem(w); };
        AgreementReport r = language_agreement(s.automaton, oracle, scenario.max_len);
        return {render_agreement_report(r), outcome_name(agreement_outcome(r))};
    }

    bool in_word_problem(const std::string& word) const {
        return scenario.spec.subgroup.parent().in_word_problem(word);
    }
};

PyRefuter run_refuter(int state_bound, const std::string& labels, int max_len) {
    RefuterLabels set;
    if (labels == "stack") {
        set = stack_refuter_labels();
    } else if (labels == "counter") {
        set = counter_refuter_labels();
    } else {
        throw Error("labels must be 'stack' or 'counter'");
    }
    auto desc = GroupDescriptor::free_abelian(1);
    GroupOracle z(desc, InvolutiveAlphabet::symmetric(1),
                  {{'a', parse_group_element(desc, "[1]")},
                   {'A', parse_group_element(desc, "[-1]")}});
    RefuterReport r = polycyclic_refuter(state_bound, set, z, max_len);
    PyRefuter out{r.candidates, r.refuted, {}};
    for (const MAutomaton& s : r.survivors) out.survivors.push_back(format_automaton_text(s, true));
    return out;
}

} // namespace

PYBIND11_MODULE(_mra, m) {
    m.doc() = "blind register automata over monoids";

    py::register_exception<Error>(m, "MraError");

    py::class_<MonoidDescriptor>(m, "Monoid")
        .def_static("parse", [](const std::string& text) { return MonoidDescriptor::parse(text); })
        .def("__str__", &MonoidDescriptor::to_string)
        .def("__repr__",
             [](const MonoidDescriptor& d) { return "Monoid('" + d.to_string() + "')"; })
        .def("identity",
             [](const MonoidDescriptor& d) { return format_element(d, identity_element(d)); })
        .def("multiply",
             [](const MonoidDescriptor& d, const std::string& a, const std::string& b) {
                 return format_element(d, multiply(d, parse_element(d, a), parse_element(d, b)));
             })
        .def("is_identity",
             [](const MonoidDescriptor& d, const std::string& a) {
                 return is_identity(d, parse_element(d, a));
             })
        .def("inverse",
             [](const MonoidDescriptor& d, const std::string& a) -> py::object {
                 auto inv = try_two_sided_inverse(d, parse_element(d, a));
                 if (!inv) return py::none();
                 return py::str(format_element(d, *inv));
             })
        .def("element_size", [](const MonoidDescriptor& d, const std::string& a) {
            return element_size(d, parse_element(d, a));
        });

    py::class_<PyRun>(m, "RunResult")
        .def_readonly("verdict", &PyRun::verdict)
        .def_readonly("reason", &PyRun::reason)
        .def_readonly("register_value", &PyRun::register_value)
        .def("__repr__", [](const PyRun& r) {
            return "RunResult(" + r.verdict + (r.reason != "none" ? ", " + r.reason : "") + ")";
        });

    py::class_<PyAgreement>(m, "Agreement")
        .def_readonly("words_total", &PyAgreement::words_total)
        .def_readonly("words_checked", &PyAgreement::words_checked)
        .def_readonly("words_pruned", &PyAgreement::words_pruned)
        .def_readonly("disagreements", &PyAgreement::disagreements)
        .def_readonly("unknowns", &PyAgreement::unknowns)
        .def_property_readonly("agreed", [](const PyAgreement& a) {
            return a.disagreements.empty() && a.unknowns.empty();
        });

    py::class_<PyReport>(m, "Report")
        .def_readonly("text", &PyReport::text)
        .def_readonly("outcome", &PyReport::outcome)
        .def("__str__", [](const PyReport& r) { return r.text; });

    py::class_<PyRefuter>(m, "RefuterResult")
        .def_readonly("candidates", &PyRefuter::candidates)
        .def_readonly("refuted", &PyRefuter::refuted)
        .def_readonly("survivors", &PyRefuter::survivors);

    py::class_<PyAutomaton>(m, "Automaton")
        .def_static("parse",
                    [](const std::string& text) {
                        ParsedAutomaton p = parse_automaton_text(text);
                        return PyAutomaton{p.automaton, p.deterministic};
                    })
        .def_property_readonly("deterministic",
                               [](const PyAutomaton& a) { return a.deterministic; })
        .def_property_readonly("states",
                               [](const PyAutomaton& a) { return a.automaton.state_count; })
        .def_property_readonly("alphabet",
                               [](const PyAutomaton& a) { return a.automaton.alphabet.letters(); })
        .def("format", &PyAutomaton::format)
        .def("run", &PyAutomaton::run, py::arg("word"))
        .def("accepts", &PyAutomaton::accepts, py::arg("word"))
        .def("agree", &PyAutomaton::agree, py::arg("member"), py::arg("max_len"),
             py::arg("prefix_dead") = nullptr)
        .def("__repr__", [](const PyAutomaton& a) {
            return std::string("Automaton(") + (a.deterministic ? "deterministic" : "nondeterministic") +
                   ", " + std::to_string(a.automaton.state_count) + " states)";
        });

    py::class_<PyScenario>(m, "Scenario")
        .def_static("parse",
                    [](const std::string& text) { return PyScenario{parse_scenario_text(text)}; })
        .def("schreier", &PyScenario::schreier)
        .def("theorem", &PyScenario::theorem)
        .def("extract", &PyScenario::extract)
        .def("agree", &PyScenario::agree)
        .def("in_word_problem", &PyScenario::in_word_problem, py::arg("word"));

    m.def("dyck", [](int rank) { return PyAutomaton{dyck_automaton(rank).base(), true}; },
          py::arg("rank"));
    m.def("refuter", &run_refuter, py::arg("state_bound"), py::arg("labels"),
          py::arg("max_len"));
}
