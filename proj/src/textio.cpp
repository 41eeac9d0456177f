#include "mra/textio.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mra/error.hpp"

namespace mra {

namespace {

[[noreturn]] void fail_line(int line, const std::string& message) {
    throw Error("line " + std::to_string(line) + ": " + message);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

// content lines with their 1-based numbers; blanks and '#' comments dropped
std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
    std::vector<std::pair<int, std::string>> lines;
    int number = 0;
    for (const std::string& raw : split(std::string(text), '\n')) {
        ++number;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        lines.push_back({number, line});
    }
    return lines;
}

long long parse_integer(int line, const std::string& token, const std::string& what) {
    try {
        std::size_t used = 0;
        long long value = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        fail_line(line, what + " '" + token + "' is not an integer");
    }
}

// "key = value" split, or nullopt when there is no '='
std::optional<std::pair<std::string, std::string>> key_value(const std::string& line) {
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) return std::nullopt;
    return std::pair{trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

std::vector<std::string> whitespace_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

// pairs each letter with its involute, preserving mention order
InvolutiveAlphabet build_alphabet(int line, const std::vector<char>& letters,
                                  const std::map<char, char>& involutes) {
    std::vector<std::pair<char, char>> pairs;
    std::map<char, bool> paired;
    for (char c : letters) {
        if (paired.count(c)) continue;
        char partner = c;
        auto it = involutes.find(c);
        if (it != involutes.end()) partner = it->second;
        pairs.push_back({c, partner});
        paired[c] = true;
        paired[partner] = true;
    }
    try {
        return InvolutiveAlphabet::from_pairs(pairs);
    } catch (const Error& e) {
        fail_line(line, e.what());
    }
}

void append_agreement(std::string& out, const AgreementReport& r) {
    out += "agreement total " + std::to_string(r.words_total) + " checked " +
           std::to_string(r.words_checked) + " pruned " + std::to_string(r.words_pruned) + "\n";
    out += "disagreements " + std::to_string(r.disagreements.size()) + "\n";
    out += "unknowns " + std::to_string(r.unknowns.size()) + "\n";
    std::size_t shown = 0;
    for (const std::string& w : r.disagreements) {
        if (++shown > 5) break;
        out += "disagree \"" + w + "\"\n";
    }
    shown = 0;
    for (const std::string& w : r.unknowns) {
        if (++shown > 5) break;
        out += "unknown \"" + w + "\"\n";
    }
}

void append_verdict(std::string& out, const std::string& name, const VerdictList& v) {
    out += "verdict " + name + (v.pass() ? " pass" : " fail") + " checked " +
           std::to_string(v.checked) + "\n";
    std::size_t shown = 0;
    for (const std::string& f : v.failures) {
        if (++shown > 5) break;
        out += "  failure " + f + "\n";
    }
}

void append_embedding(std::string& out, const EmbeddingReport& r) {
    if (r.premise_failure)
        out += "premise failed: " + *r.premise_failure + "\n";
    else
        out += "premise ok\n";
    long long kept = 0;
    for (const TerminalUsage& t : r.pruned_terminals) kept += t.kept ? 1 : 0;
    out += "terminals kept " + std::to_string(kept) + " of " +
           std::to_string(r.pruned_terminals.size()) + "\n";
    out += "accessible " + std::to_string(r.access.witnesses.size()) + " inaccessible " +
           std::to_string(r.access.inaccessible.size()) + "\n";
    out += "index bound " + std::to_string(r.partition.index_bound) + "\n";
    out += "merges " + std::to_string(r.partition.merges.size()) + " unresolved " +
           std::to_string(r.partition.unresolved.size()) + "\n";
    out += "sigma samples " + std::to_string(r.sigma.size()) + "\n";
    append_verdict(out, "well-defined", r.well_defined);
    append_verdict(out, "homomorphism", r.homomorphism);
    append_verdict(out, "injectivity", r.injectivity);
    append_verdict(out, "units", r.units);
    for (const std::string& note : r.notes) out += "note " + note + "\n";
}

std::string footer(Outcome outcome) { return "RESULT " + outcome_name(outcome) + "\n"; }

} // namespace

ParsedAutomaton parse_automaton_text(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw Error("line 1: expected an 'automaton' or 'dautomaton' header");

    ParsedAutomaton result;
    const auto [header_line, header] = lines.front();
    if (header == "dautomaton")
        result.deterministic = true;
    else if (header != "automaton")
        fail_line(header_line, "expected 'automaton' or 'dautomaton', got '" + header + "'");

    MAutomaton& a = result.automaton;
    bool have_monoid = false, have_alphabet = false, have_states = false;
    std::vector<char> letters;
    std::map<char, char> involutes;
    std::map<std::pair<int, char>, int> deterministic_slots; // (src, letter) -> line
    int alphabet_line = header_line;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [number, line] = lines[i];
        std::vector<std::string> tokens = whitespace_tokens(line);

        if (tokens[0] == "inv") {
            if (tokens.size() != 3 || tokens[1].size() != 1 || tokens[2].size() != 1)
                fail_line(number, "expected 'inv <letter> <letter>'");
            involutes[tokens[1][0]] = tokens[2][0];
            involutes[tokens[2][0]] = tokens[1][0];
            continue;
        }

        if (tokens[0] == "edge") {
            if (!have_monoid) fail_line(number, "the monoid must be declared before edges");
            if (!have_alphabet) fail_line(number, "the alphabet must be declared before edges");
            if (tokens.size() < 5)
                fail_line(number, "expected 'edge <src> <dst> <element-literal> <input|e>'");
            Edge edge;
            edge.src = static_cast<int>(parse_integer(number, tokens[1], "source state"));
            edge.dst = static_cast<int>(parse_integer(number, tokens[2], "target state"));
            std::string literal = tokens[3];
            for (std::size_t t = 4; t + 1 < tokens.size(); ++t) literal += " " + tokens[t];
            try {
                edge.register_label = parse_element(a.monoid, literal);
            } catch (const Error& e) {
                fail_line(number, e.what());
            }
            const std::string& input = tokens.back();
            if (input != "e") edge.input = input;
            if (result.deterministic) {
                if (edge.input.size() != 1)
                    fail_line(number, "a deterministic automaton needs one input letter per edge");
                auto slot = deterministic_slots.find({edge.src, edge.input[0]});
                if (slot != deterministic_slots.end())
                    fail_line(number, "a second edge leaves state " + std::to_string(edge.src) +
                                          " on '" + edge.input + "' (first at line " +
                                          std::to_string(slot->second) + ")");
                deterministic_slots[{edge.src, edge.input[0]}] = number;
            }
            a.edges.push_back(std::move(edge));
            continue;
        }

        auto kv = key_value(line);
        if (!kv) fail_line(number, "unrecognized line '" + line + "'");
        const auto& [key, value] = *kv;

        if (key == "monoid") {
            try {
                a.monoid = MonoidDescriptor::parse(value);
            } catch (const Error& e) {
                fail_line(number, e.what());
            }
            have_monoid = true;
        } else if (key == "alphabet") {
            for (const std::string& part : split(value, ',')) {
                std::string letter = trim(part);
                if (letter.size() != 1)
                    fail_line(number, "alphabet entry '" + letter + "' is not a single letter");
                letters.push_back(letter[0]);
            }
            alphabet_line = number;
            have_alphabet = true;
        } else if (key == "states") {
            a.state_count = static_cast<int>(parse_integer(number, value, "state count"));
            have_states = true;
        } else if (key == "initial") {
            a.initial = static_cast<int>(parse_integer(number, value, "initial state"));
        } else if (key == "terminals") {
            a.terminals.clear();
            if (!value.empty())
                for (const std::string& part : split(value, ','))
                    a.terminals.push_back(
                        static_cast<int>(parse_integer(number, trim(part), "terminal state")));
        } else {
            fail_line(number, "unknown key '" + key + "'");
        }
    }

    if (!have_monoid) fail_line(lines.back().first, "missing 'monoid =' line");
    if (!have_alphabet) fail_line(lines.back().first, "missing 'alphabet =' line");
    if (!have_states) fail_line(lines.back().first, "missing 'states =' line");
    for (const auto& [c, d] : involutes)
        if (std::find(letters.begin(), letters.end(), c) == letters.end())
            fail_line(alphabet_line, std::string("inv mentions '") + c + "' outside the alphabet");
    a.alphabet = build_alphabet(alphabet_line, letters, involutes);
    validate_automaton(a);
    if (result.deterministic) (void)DeterministicMAutomaton{a}; // enforce the full rule
    return result;
}

std::string format_automaton_text(const MAutomaton& a, bool deterministic) {
    std::string out = deterministic ? "dautomaton\n" : "automaton\n";
    out += "monoid = " + a.monoid.to_string() + "\n";
    const std::string& letters = a.alphabet.letters();
    out += "alphabet = ";
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) out += ",";
        out += letters[i];
    }
    out += "\n";
    std::string seen;
    for (char c : letters) {
        char d = a.alphabet.involute(c);
        if (d != c && seen.find(d) == std::string::npos)
            out += std::string("inv ") + c + " " + d + "\n";
        seen += c;
    }
    out += "states = " + std::to_string(a.state_count) + "\n";
    out += "initial = " + std::to_string(a.initial) + "\n";
    out += "terminals = ";
    for (std::size_t i = 0; i < a.terminals.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a.terminals[i]);
    }
    out += "\n";
    for (const Edge& e : a.edges) {
        out += "edge " + std::to_string(e.src) + " " + std::to_string(e.dst) + " " +
               format_element(a.monoid, e.register_label) + " " +
               (e.input.empty() ? "e" : e.input) + "\n";
    }
    return out;
}

Scenario parse_scenario_text(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw Error("line 1: expected a 'scenario' header");
    if (lines.front().second != "scenario")
        fail_line(lines.front().first, "expected 'scenario', got '" + lines.front().second + "'");

    std::optional<GroupDescriptor> group;
    std::vector<char> letters;
    std::map<char, GroupElement> images;
    std::optional<SubgroupKind> kind;
    std::optional<MonoidDescriptor> monoid;
    std::vector<PhiEntry> phi;
    int max_len = 10, max_register_size = 64, max_cosets = 256;
    int letters_line = 0;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [number, line] = lines[i];

        if (line.rfind("phi", 0) == 0 && (line.size() == 3 || std::isspace((unsigned char)line[3]))) {
            if (!monoid) fail_line(number, "the monoid must be declared before phi entries");
            std::size_t open = line.find('"');
            std::size_t close = open == std::string::npos ? std::string::npos
                                                          : line.find('"', open + 1);
            if (close == std::string::npos)
                fail_line(number, "expected 'phi \"<word>\" = <element-literal>'");
            std::string word = line.substr(open + 1, close - open - 1);
            std::size_t eq = line.find('=', close);
            if (eq == std::string::npos)
                fail_line(number, "expected '=' after the phi word");
            try {
                phi.push_back({word, parse_element(*monoid, trim(line.substr(eq + 1)))});
            } catch (const Error& e) {
                fail_line(number, e.what());
            }
            continue;
        }

        auto kv = key_value(line);
        if (!kv) fail_line(number, "unrecognized line '" + line + "'");
        const auto& [key, value] = *kv;

        if (key == "group") {
            try {
                group = GroupDescriptor::parse(value);
            } catch (const Error& e) {
                fail_line(number, e.what());
            }
        } else if (key == "letters") {
            if (!group) fail_line(number, "the group must be declared before letters");
            if (value.size() < 2 || value.front() != '[' || value.back() != ']')
                fail_line(number, "expected 'letters = [ a: <literal>; ... ]'");
            for (const std::string& part : split(value.substr(1, value.size() - 2), ';')) {
                std::string entry = trim(part);
                if (entry.empty()) continue;
                std::size_t colon = entry.find(':');
                if (colon == std::string::npos)
                    fail_line(number, "letters entry '" + entry + "' is missing ':'");
                std::string letter = trim(entry.substr(0, colon));
                if (letter.size() != 1)
                    fail_line(number, "letters entry '" + entry + "' needs a single letter");
                try {
                    images[letter[0]] = parse_group_element(*group, trim(entry.substr(colon + 1)));
                } catch (const Error& e) {
                    fail_line(number, e.what());
                }
                letters.push_back(letter[0]);
            }
            letters_line = number;
        } else if (key == "subgroup") {
            kind = parse_subgroup_kind(value);
            if (!kind) fail_line(number, "unknown subgroup kind '" + value + "'");
        } else if (key == "monoid") {
            try {
                monoid = MonoidDescriptor::parse(value);
            } catch (const Error& e) {
                fail_line(number, e.what());
            }
        } else if (key == "max_len") {
            max_len = static_cast<int>(parse_integer(number, value, "max_len"));
            if (max_len < 1) fail_line(number, "max_len must be positive");
        } else if (key == "max_register_size") {
            max_register_size = static_cast<int>(parse_integer(number, value, "max_register_size"));
            if (max_register_size < 1) fail_line(number, "max_register_size must be positive");
        } else if (key == "max_cosets") {
            max_cosets = static_cast<int>(parse_integer(number, value, "max_cosets"));
            if (max_cosets < 1) fail_line(number, "max_cosets must be positive");
        } else {
            fail_line(number, "unknown key '" + key + "'");
        }
    }

    int last = lines.back().first;
    if (!group) fail_line(last, "missing 'group =' line");
    if (letters.empty()) fail_line(last, "missing 'letters =' line");
    if (!kind) fail_line(last, "missing 'subgroup =' line");
    if (!monoid) fail_line(last, "missing 'monoid =' line");

    // pair each letter with the first letter whose image is its inverse
    std::map<char, char> involutes;
    std::map<char, bool> paired;
    for (char c : letters) {
        if (paired.count(c)) continue;
        GroupElement wanted = group_inverse(*group, images.at(c));
        char partner = 0;
        for (char d : letters) {
            if (paired.count(d) && d != c) continue;
            if (images.at(d) == wanted) {
                partner = d;
                break;
            }
        }
        if (partner == 0)
            fail_line(letters_line,
                      std::string("letter '") + c + "' has no letter representing its inverse");
        involutes[c] = partner;
        involutes[partner] = c;
        paired[c] = true;
        paired[partner] = true;
    }
    InvolutiveAlphabet alphabet = build_alphabet(letters_line, letters, involutes);

    GroupOracle oracle(*group, alphabet, images);
    Scenario scenario{EmbeddingSpec{make_subgroup(oracle, *kind), *monoid, std::move(phi)},
                      *kind, max_len, max_register_size, max_cosets};
    return scenario;
}

TheoremBounds scenario_theorem_bounds(const Scenario& s) {
    TheoremBounds bounds;
    bounds.agreement_len = s.max_len;
    bounds.max_cosets = s.max_cosets;
    bounds.extraction.run.max_register_size = s.max_register_size;
    return bounds;
}

Outcome agreement_outcome(const AgreementReport& r) {
    if (!r.disagreements.empty()) return Outcome::Fail;
    if (!r.unknowns.empty()) return Outcome::Inconclusive;
    return Outcome::Pass;
}

Outcome refuter_outcome(const RefuterReport& r) {
    return r.survivors.empty() ? Outcome::Pass : Outcome::Inconclusive;
}

std::string render_agreement_report(const AgreementReport& r) {
    std::string out;
    append_agreement(out, r);
    return out + footer(agreement_outcome(r));
}

std::string render_embedding_report(const EmbeddingReport& r) {
    std::string out;
    append_embedding(out, r);
    return out + footer(r.outcome());
}

std::string render_theorem_report(const TheoremReport& r) {
    std::string out = "schreier cosets " + std::to_string(r.schreier.table.coset_count()) + "\n";
    append_agreement(out, r.agreement);
    append_embedding(out, r.embedding);
    return out + footer(r.outcome);
}

std::string render_refuter_report(const RefuterReport& r) {
    std::string out = "candidates " + std::to_string(r.candidates) + "\n";
    out += "refuted " + std::to_string(r.refuted) + "\n";
    out += "inconclusive " + std::to_string(r.survivors.size()) + "\n";
    return out + footer(refuter_outcome(r));
}

} // namespace mra
