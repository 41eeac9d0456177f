#include "mra/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "parse_util.hpp"

namespace mra {

namespace {

using detail::Cursor;
using detail::parse_integer;

[[noreturn]] void fail(const std::string& msg) { throw Error(msg); }

} // namespace

GroupDescriptor GroupDescriptor::free_abelian(int rank) {
    if (rank < 1 || rank > 64) fail("free-abelian rank out of range");
    return GroupDescriptor(GroupKind::FreeAbelian, rank);
}

GroupDescriptor GroupDescriptor::free_group(int rank) {
    if (rank < 1 || rank > 25) fail("free-group rank out of range");
    return GroupDescriptor(GroupKind::FreeGroup, rank);
}

GroupDescriptor GroupDescriptor::permutation_group(int degree) {
    if (degree < 1 || degree > 64) fail("permutation degree out of range");
    return GroupDescriptor(GroupKind::PermutationGroup, degree);
}

GroupDescriptor GroupDescriptor::infinite_dihedral() {
    return GroupDescriptor(GroupKind::InfiniteDihedral, 0);
}

GroupDescriptor GroupDescriptor::direct_product(std::vector<GroupDescriptor> factors) {
    if (factors.empty()) fail("direct product needs at least one factor");
    GroupDescriptor d(GroupKind::DirectProduct, 0);
    d.factors_ = std::move(factors);
    return d;
}

std::string GroupDescriptor::to_string() const {
    switch (kind_) {
        case GroupKind::FreeAbelian: return "free-abelian(" + std::to_string(rank_) + ")";
        case GroupKind::FreeGroup: return "free-group(" + std::to_string(rank_) + ")";
        case GroupKind::PermutationGroup: return "sym(" + std::to_string(rank_) + ")";
        case GroupKind::InfiniteDihedral: return "dihedral-inf";
        case GroupKind::DirectProduct: {
            std::string out = "product(";
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                if (i) out += ", ";
                out += factors_[i].to_string();
            }
            return out + ")";
        }
    }
    fail("unreachable");
}

bool GroupDescriptor::operator==(const GroupDescriptor& other) const {
    return kind_ == other.kind_ && rank_ == other.rank_ && factors_ == other.factors_;
}

// ---------------------------------------------------------------------------
// Element comparisons

bool operator==(const GroupTuple& a, const GroupTuple& b) { return a.parts == b.parts; }

bool operator<(const GroupTuple& a, const GroupTuple& b) {
    return std::lexicographical_compare(
        a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end(),
        [](const GroupElement& x, const GroupElement& y) { return x < y; });
}

bool operator==(const GroupElement& a, const GroupElement& b) {
    if (a.value.index() != b.value.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            return lhs == std::get<T>(b.value);
        },
        a.value);
}

bool operator<(const GroupElement& a, const GroupElement& b) {
    if (a.value.index() != b.value.index()) return a.value.index() < b.value.index();
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            return lhs < std::get<T>(b.value);
        },
        a.value);
}

// ---------------------------------------------------------------------------
// Arithmetic

GroupElement group_identity(const GroupDescriptor& desc) {
    switch (desc.kind()) {
        case GroupKind::FreeAbelian:
            return GroupElement{FreeAbelianVec{std::vector<long long>(desc.rank(), 0)}};
        case GroupKind::FreeGroup: return GroupElement{FreeGroupWord{}};
        case GroupKind::PermutationGroup: {
            std::vector<int> id(desc.rank());
            std::iota(id.begin(), id.end(), 0);
            return GroupElement{PermutationMap{std::move(id)}};
        }
        case GroupKind::InfiniteDihedral: return GroupElement{AffineMap{}};
        case GroupKind::DirectProduct: {
            GroupTuple t;
            for (const auto& f : desc.factors()) t.parts.push_back(group_identity(f));
            return GroupElement{std::move(t)};
        }
    }
    fail("unreachable");
}

void validate_group_element(const GroupDescriptor& desc, const GroupElement& e) {
    switch (desc.kind()) {
        case GroupKind::FreeAbelian: {
            const auto* v = std::get_if<FreeAbelianVec>(&e.value);
            if (!v) fail("element is not a free-abelian vector");
            if (static_cast<int>(v->coords.size()) != desc.rank())
                fail("vector length does not match rank");
            return;
        }
        case GroupKind::FreeGroup: {
            const auto* w = std::get_if<FreeGroupWord>(&e.value);
            if (!w) fail("element is not a free-group word");
            for (std::size_t i = 0; i < w->letters.size(); ++i) {
                int l = w->letters[i];
                if (l == 0 || std::abs(l) > desc.rank()) fail("generator out of range for rank");
                if (i > 0 && w->letters[i - 1] == -l) fail("free-group word is not reduced");
            }
            return;
        }
        case GroupKind::PermutationGroup: {
            const auto* p = std::get_if<PermutationMap>(&e.value);
            if (!p) fail("element is not a permutation");
            if (static_cast<int>(p->images.size()) != desc.rank())
                fail("permutation degree mismatch");
            std::vector<bool> seen(p->images.size(), false);
            for (int img : p->images) {
                if (img < 0 || img >= static_cast<int>(p->images.size()) || seen[img])
                    fail("images do not form a bijection");
                seen[img] = true;
            }
            return;
        }
        case GroupKind::InfiniteDihedral: {
            const auto* m = std::get_if<AffineMap>(&e.value);
            if (!m) fail("element is not an affine map");
            if (m->sign != 1 && m->sign != -1) fail("affine sign must be +1 or -1");
            return;
        }
        case GroupKind::DirectProduct: {
            const auto* t = std::get_if<GroupTuple>(&e.value);
            if (!t) fail("element is not a tuple");
            if (t->parts.size() != desc.factors().size()) fail("tuple arity mismatch");
            for (std::size_t i = 0; i < t->parts.size(); ++i)
                validate_group_element(desc.factors()[i], t->parts[i]);
            return;
        }
    }
    fail("unreachable");
}

namespace {

void reduce_append(std::vector<int>& word, int letter) {
    if (!word.empty() && word.back() == -letter) {
        word.pop_back();
    } else {
        word.push_back(letter);
    }
}

} // namespace

GroupElement group_multiply(const GroupDescriptor& desc, const GroupElement& a,
                            const GroupElement& b) {
    validate_group_element(desc, a);
    validate_group_element(desc, b);
    switch (desc.kind()) {
        case GroupKind::FreeAbelian: {
            const auto& va = std::get<FreeAbelianVec>(a.value).coords;
            const auto& vb = std::get<FreeAbelianVec>(b.value).coords;
            std::vector<long long> out(va.size());
            for (std::size_t i = 0; i < va.size(); ++i) out[i] = va[i] + vb[i];
            return GroupElement{FreeAbelianVec{std::move(out)}};
        }
        case GroupKind::FreeGroup: {
            std::vector<int> out = std::get<FreeGroupWord>(a.value).letters;
            for (int l : std::get<FreeGroupWord>(b.value).letters) reduce_append(out, l);
            return GroupElement{FreeGroupWord{std::move(out)}};
        }
        case GroupKind::PermutationGroup: {
            const auto& ia = std::get<PermutationMap>(a.value).images;
            const auto& ib = std::get<PermutationMap>(b.value).images;
            std::vector<int> out(ia.size());
            for (std::size_t i = 0; i < ia.size(); ++i) out[i] = ib[ia[i]];
            return GroupElement{PermutationMap{std::move(out)}};
        }
        case GroupKind::InfiniteDihedral: {
            const auto& ma = std::get<AffineMap>(a.value);
            const auto& mb = std::get<AffineMap>(b.value);
            // x -> mb(ma(x)): apply the left factor first.
            return GroupElement{AffineMap{ma.sign * mb.sign, mb.sign * ma.shift + mb.shift}};
        }
        case GroupKind::DirectProduct: {
            const auto& ta = std::get<GroupTuple>(a.value).parts;
            const auto& tb = std::get<GroupTuple>(b.value).parts;
            GroupTuple out;
            for (std::size_t i = 0; i < ta.size(); ++i)
                out.parts.push_back(group_multiply(desc.factors()[i], ta[i], tb[i]));
            return GroupElement{std::move(out)};
        }
    }
    fail("unreachable");
}

GroupElement group_inverse(const GroupDescriptor& desc, const GroupElement& e) {
    validate_group_element(desc, e);
    switch (desc.kind()) {
        case GroupKind::FreeAbelian: {
            auto v = std::get<FreeAbelianVec>(e.value).coords;
            for (auto& x : v) x = -x;
            return GroupElement{FreeAbelianVec{std::move(v)}};
        }
        case GroupKind::FreeGroup: {
            const auto& w = std::get<FreeGroupWord>(e.value).letters;
            std::vector<int> inv(w.rbegin(), w.rend());
            for (int& l : inv) l = -l;
            return GroupElement{FreeGroupWord{std::move(inv)}};
        }
        case GroupKind::PermutationGroup: {
            const auto& images = std::get<PermutationMap>(e.value).images;
            std::vector<int> inv(images.size());
            for (std::size_t i = 0; i < images.size(); ++i) inv[images[i]] = static_cast<int>(i);
            return GroupElement{PermutationMap{std::move(inv)}};
        }
        case GroupKind::InfiniteDihedral: {
            const auto& m = std::get<AffineMap>(e.value);
            return GroupElement{AffineMap{m.sign, -m.sign * m.shift}};
        }
        case GroupKind::DirectProduct: {
            const auto& parts = std::get<GroupTuple>(e.value).parts;
            GroupTuple out;
            for (std::size_t i = 0; i < parts.size(); ++i)
                out.parts.push_back(group_inverse(desc.factors()[i], parts[i]));
            return GroupElement{std::move(out)};
        }
    }
    fail("unreachable");
}

bool group_is_identity(const GroupDescriptor& desc, const GroupElement& e) {
    validate_group_element(desc, e);
    return e == group_identity(desc);
}

// ---------------------------------------------------------------------------
// Literals

namespace {

GroupElement parse_one(const GroupDescriptor& desc, Cursor& cur);

GroupElement parse_vector(const GroupDescriptor& desc, Cursor& cur) {
    cur.skip_ws();
    cur.expect('[');
    std::vector<long long> coords;
    cur.skip_ws();
    if (cur.peek() != ']') {
        coords.push_back(parse_integer(cur));
        cur.skip_ws();
        while (cur.peek() == ',') {
            cur.take();
            coords.push_back(parse_integer(cur));
            cur.skip_ws();
        }
    }
    cur.expect(']');
    if (static_cast<int>(coords.size()) != desc.rank()) cur.error("vector length does not match rank");
    return GroupElement{FreeAbelianVec{std::move(coords)}};
}

GroupElement parse_word(const GroupDescriptor& desc, Cursor& cur) {
    cur.skip_ws();
    if (cur.peek() == 'e') {
        cur.take();
        return group_identity(desc);
    }
    std::vector<int> letters;
    while (true) {
        cur.skip_ws();
        char c = cur.peek();
        if (c >= 'a' && c <= 'z') {
            int idx = generator_index(c);
            if (idx < 0 || idx >= desc.rank()) cur.error("generator letter out of range");
            letters.push_back(idx + 1);
            cur.take();
        } else if (c >= 'A' && c <= 'Z') {
            int idx = generator_index(static_cast<char>(std::tolower(c)));
            if (idx < 0 || idx >= desc.rank()) cur.error("generator letter out of range");
            letters.push_back(-(idx + 1));
            cur.take();
        } else {
            break;
        }
    }
    if (letters.empty()) cur.error("expected free-group word or 'e'");
    std::vector<int> reduced;
    for (int l : letters) reduce_append(reduced, l);
    return GroupElement{FreeGroupWord{std::move(reduced)}};
}

GroupElement parse_cycles(const GroupDescriptor& desc, Cursor& cur) {
    cur.skip_ws();
    if (cur.peek() == 'i') {
        cur.take();
        cur.expect('d');
        return group_identity(desc);
    }
    std::vector<int> images(desc.rank());
    std::iota(images.begin(), images.end(), 0);
    bool saw_cycle = false;
    while (true) {
        cur.skip_ws();
        if (cur.peek() != '(') break;
        cur.take();
        std::vector<int> cycle;
        while (true) {
            cur.skip_ws();
            if (cur.peek() == ')') {
                cur.take();
                break;
            }
            long long v = parse_integer(cur);
            if (v < 0 || v >= desc.rank()) cur.error("cycle entry out of range");
            cycle.push_back(static_cast<int>(v));
        }
        if (cycle.size() < 2) cur.error("cycle needs at least two points");
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            int from = cycle[i];
            int to = cycle[(i + 1) % cycle.size()];
            if (images[from] != from && images[from] != to) cur.error("cycles are not disjoint");
            images[from] = to;
        }
        saw_cycle = true;
    }
    if (!saw_cycle) cur.error("expected cycle notation or 'id'");
    GroupElement e{PermutationMap{std::move(images)}};
    validate_group_element(desc, e);
    return e;
}

GroupElement parse_affine(Cursor& cur) {
    cur.skip_ws();
    cur.expect('(');
    long long sign = parse_integer(cur);
    if (sign != 1 && sign != -1) cur.error("affine sign must be +1 or -1");
    cur.skip_ws();
    cur.expect(',');
    long long shift = parse_integer(cur);
    cur.skip_ws();
    cur.expect(')');
    return GroupElement{AffineMap{static_cast<int>(sign), shift}};
}

GroupElement parse_one(const GroupDescriptor& desc, Cursor& cur) {
    switch (desc.kind()) {
        case GroupKind::FreeAbelian: return parse_vector(desc, cur);
        case GroupKind::FreeGroup: return parse_word(desc, cur);
        case GroupKind::PermutationGroup: return parse_cycles(desc, cur);
        case GroupKind::InfiniteDihedral: return parse_affine(cur);
        case GroupKind::DirectProduct: {
            GroupTuple t;
            for (std::size_t i = 0; i < desc.factors().size(); ++i) {
                if (i) {
                    cur.skip_ws();
                    cur.expect('*');
                }
                t.parts.push_back(parse_one(desc.factors()[i], cur));
            }
            return GroupElement{std::move(t)};
        }
    }
    fail("unreachable");
}

} // namespace

GroupElement parse_group_element(const GroupDescriptor& desc, std::string_view text) {
    Cursor cur{text};
    GroupElement e = parse_one(desc, cur);
    cur.skip_ws();
    if (!cur.done()) cur.error("trailing characters after element literal");
    return e;
}

std::string format_group_element(const GroupDescriptor& desc, const GroupElement& e) {
    validate_group_element(desc, e);
    switch (desc.kind()) {
        case GroupKind::FreeAbelian: {
            std::string out = "[";
            const auto& v = std::get<FreeAbelianVec>(e.value).coords;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(v[i]);
            }
            return out + "]";
        }
        case GroupKind::FreeGroup: {
            const auto& w = std::get<FreeGroupWord>(e.value).letters;
            if (w.empty()) return "e";
            std::string out;
            for (int l : w) {
                char c = generator_letter(std::abs(l) - 1);
                out += l > 0 ? c : static_cast<char>(std::toupper(c));
            }
            return out;
        }
        case GroupKind::PermutationGroup: {
            const auto& images = std::get<PermutationMap>(e.value).images;
            std::string out;
            std::vector<bool> seen(images.size(), false);
            for (std::size_t start = 0; start < images.size(); ++start) {
                if (seen[start] || images[start] == static_cast<int>(start)) continue;
                out += "(";
                int cur = static_cast<int>(start);
                bool first = true;
                while (!seen[cur]) {
                    seen[cur] = true;
                    if (!first) out += " ";
                    out += std::to_string(cur);
                    first = false;
                    cur = images[cur];
                }
                out += ")";
            }
            return out.empty() ? "id" : out;
        }
        case GroupKind::InfiniteDihedral: {
            const auto& m = std::get<AffineMap>(e.value);
            std::string out = "(";
            out += m.sign > 0 ? "+1" : "-1";
            out += ",";
            out += std::to_string(m.shift);
            return out + ")";
        }
        case GroupKind::DirectProduct: {
            const auto& parts = std::get<GroupTuple>(e.value).parts;
            std::string out;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) out += " * ";
                out += format_group_element(desc.factors()[i], parts[i]);
            }
            return out;
        }
    }
    fail("unreachable");
}

// ---------------------------------------------------------------------------
// Descriptor literals

namespace {

GroupDescriptor parse_group_descriptor(Cursor& cur);

int parse_paren_int(Cursor& cur) {
    cur.skip_ws();
    cur.expect('(');
    long long v = parse_integer(cur);
    cur.skip_ws();
    cur.expect(')');
    return static_cast<int>(v);
}

std::string parse_kind_ident(Cursor& cur) {
    cur.skip_ws();
    std::string out;
    while (std::isalpha(static_cast<unsigned char>(cur.peek())) || cur.peek() == '-') out += cur.take();
    if (out.empty()) cur.error("expected group kind");
    return out;
}

GroupDescriptor parse_group_descriptor(Cursor& cur) {
    std::string kind = parse_kind_ident(cur);
    if (kind == "free-abelian") return GroupDescriptor::free_abelian(parse_paren_int(cur));
    if (kind == "free-group") return GroupDescriptor::free_group(parse_paren_int(cur));
    if (kind == "sym") return GroupDescriptor::permutation_group(parse_paren_int(cur));
    if (kind == "dihedral-inf") return GroupDescriptor::infinite_dihedral();
    if (kind == "product") {
        cur.skip_ws();
        cur.expect('(');
        std::vector<GroupDescriptor> factors;
        factors.push_back(parse_group_descriptor(cur));
        cur.skip_ws();
        while (cur.peek() == ',') {
            cur.take();
            factors.push_back(parse_group_descriptor(cur));
            cur.skip_ws();
        }
        cur.expect(')');
        return GroupDescriptor::direct_product(std::move(factors));
    }
    cur.error("unknown group kind '" + kind + "'");
}

} // namespace

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
    Cursor cur{text};
    GroupDescriptor d = parse_group_descriptor(cur);
    cur.skip_ws();
    if (!cur.done()) cur.error("trailing characters after group descriptor");
    return d;
}

// ---------------------------------------------------------------------------
// Oracles

GroupOracle::GroupOracle(GroupDescriptor group, InvolutiveAlphabet alphabet,
                         std::map<char, GroupElement> letter_images)
    : group_(std::move(group)), alphabet_(std::move(alphabet)),
      letter_images_(std::move(letter_images)) {
    for (char c : alphabet_.letters()) {
        auto it = letter_images_.find(c);
        if (it == letter_images_.end())
            fail(std::string("letter '") + c + "' has no image");
        validate_group_element(group_, it->second);
    }
    for (const auto& [c, img] : letter_images_) {
        if (!alphabet_.contains(c)) fail(std::string("image set for unknown letter '") + c + "'");
        const GroupElement& paired = letter_images_.at(alphabet_.involute(c));
        if (paired != group_inverse(group_, img))
            fail(std::string("image of '") + alphabet_.involute(c) +
                 "' is not the inverse of the image of '" + c + "'");
    }
}

const GroupElement& GroupOracle::letter_image(char letter) const {
    auto it = letter_images_.find(letter);
    if (it == letter_images_.end()) fail(std::string("unknown letter '") + letter + "'");
    return it->second;
}

GroupElement GroupOracle::evaluate(std::string_view word) const {
    GroupElement acc = group_identity(group_);
    for (char c : word) acc = group_multiply(group_, acc, letter_image(c));
    return acc;
}

bool GroupOracle::in_word_problem(std::string_view word) const {
    return group_is_identity(group_, evaluate(word));
}

SubgroupOracle::SubgroupOracle(GroupOracle parent, Membership membership,
                               std::optional<long long> claimed_index_bound)
    : parent_(std::move(parent)), membership_(std::move(membership)),
      claimed_index_bound_(claimed_index_bound) {
    if (!membership_) fail("subgroup membership predicate is empty");
    if (!membership_(group_identity(parent_.group()))) fail("subgroup does not contain identity");
    if (claimed_index_bound_ && *claimed_index_bound_ < 1) fail("index bound must be positive");
}

bool SubgroupOracle::contains_word(std::string_view word) const {
    return membership_(parent_.evaluate(word));
}

namespace {

// Value of the evident character to Z/2: total coordinate/exponent parity,
// permutation sign, or the reflection bit of an affine map.
int parity_bit(const GroupDescriptor& desc, const GroupElement& e) {
    switch (desc.kind()) {
        case GroupKind::FreeAbelian: {
            long long s = 0;
            for (long long x : std::get<FreeAbelianVec>(e.value).coords) s += x;
            return static_cast<int>(((s % 2) + 2) % 2);
        }
        case GroupKind::FreeGroup:
            return static_cast<int>(std::get<FreeGroupWord>(e.value).letters.size() % 2);
        case GroupKind::PermutationGroup: {
            auto images = std::get<PermutationMap>(e.value).images;
            int transpositions = 0;
            for (std::size_t i = 0; i < images.size(); ++i) {
                while (images[i] != static_cast<int>(i)) {
                    std::swap(images[i], images[images[i]]);
                    ++transpositions;
                }
            }
            return transpositions % 2;
        }
        case GroupKind::InfiniteDihedral:
            return std::get<AffineMap>(e.value).sign == 1 ? 0 : 1;
        case GroupKind::DirectProduct: {
            int s = 0;
            const auto& parts = std::get<GroupTuple>(e.value).parts;
            for (std::size_t i = 0; i < parts.size(); ++i)
                s ^= parity_bit(desc.factors()[i], parts[i]);
            return s;
        }
    }
    fail("unreachable");
}

} // namespace

SubgroupOracle make_subgroup(const GroupOracle& oracle, SubgroupKind kind) {
    const GroupDescriptor desc = oracle.group();
    switch (kind) {
        case SubgroupKind::Full:
            return SubgroupOracle(oracle, [](const GroupElement&) { return true; }, 1);
        case SubgroupKind::Parity:
            return SubgroupOracle(
                oracle, [desc](const GroupElement& e) { return parity_bit(desc, e) == 0; }, 2);
        case SubgroupKind::Trivial: {
            std::optional<long long> bound;
            if (desc.kind() == GroupKind::PermutationGroup) {
                long long order = 1;
                for (int i = 2; i <= desc.rank(); ++i) order *= i;
                bound = order;
            }
            return SubgroupOracle(
                oracle, [desc](const GroupElement& e) { return group_is_identity(desc, e); },
                bound);
        }
    }
    fail("unreachable");
}

std::string subgroup_kind_name(SubgroupKind kind) {
    switch (kind) {
        case SubgroupKind::Full: return "full";
        case SubgroupKind::Parity: return "parity";
        case SubgroupKind::Trivial: return "trivial";
    }
    fail("unreachable");
}

std::optional<SubgroupKind> parse_subgroup_kind(std::string_view text) {
    if (text == "full") return SubgroupKind::Full;
    if (text == "parity") return SubgroupKind::Parity;
    if (text == "trivial") return SubgroupKind::Trivial;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Coset enumeration

int CosetTable::transition(int coset, char letter) const {
    int at = alphabet.position(letter);
    if (at < 0) throw Error(std::string("unknown letter '") + letter + "'");
    if (coset < 0 || coset >= coset_count()) throw Error("coset index out of range");
    return transitions[coset][at];
}

CosetEnumerationResult coset_enumerate(const SubgroupOracle& subgroup, int max_cosets) {
    if (max_cosets < 1) throw Error("max_cosets must be positive");
    const GroupOracle& oracle = subgroup.parent();
    const GroupDescriptor& desc = oracle.group();
    const InvolutiveAlphabet& alphabet = oracle.alphabet();

    std::vector<std::string> reps{""};
    std::vector<GroupElement> rep_values{group_identity(desc)};
    std::vector<GroupElement> rep_inverses{group_identity(desc)};
    std::vector<std::vector<int>> transitions;

    for (std::size_t i = 0; i < reps.size(); ++i) {
        transitions.emplace_back(alphabet.letters().size(), -1);
        for (std::size_t at = 0; at < alphabet.letters().size(); ++at) {
            char x = alphabet.letters()[at];
            GroupElement moved = group_multiply(desc, rep_values[i], oracle.letter_image(x));
            int target = -1;
            for (std::size_t j = 0; j < reps.size(); ++j) {
                if (subgroup.contains(group_multiply(desc, moved, rep_inverses[j]))) {
                    target = static_cast<int>(j);
                    break;
                }
            }
            if (target < 0) {
                if (static_cast<int>(reps.size()) >= max_cosets) {
                    return CosetEnumerationResult{std::nullopt,
                                                  static_cast<long long>(reps.size()), true};
                }
                target = static_cast<int>(reps.size());
                reps.push_back(reps[i] + x);
                rep_values.push_back(moved);
                rep_inverses.push_back(group_inverse(desc, moved));
            }
            transitions[i][at] = target;
        }
    }

    CosetTable table{alphabet, std::move(reps), std::move(transitions)};
    long long found = table.coset_count();
    return CosetEnumerationResult{std::move(table), found, false};
}

void validate_coset_table(const SubgroupOracle& subgroup, const CosetTable& table) {
    const GroupOracle& oracle = subgroup.parent();
    const GroupDescriptor& desc = oracle.group();
    if (table.representatives.empty() || !table.representatives[0].empty())
        throw Error("coset 0 must be represented by the empty word");
    if (table.transitions.size() != table.representatives.size())
        throw Error("transition table size mismatch");

    std::vector<GroupElement> values;
    for (const auto& rep : table.representatives) values.push_back(oracle.evaluate(rep));

    for (int i = 0; i < table.coset_count(); ++i) {
        if (table.transitions[i].size() != table.alphabet.letters().size())
            throw Error("transition row is not total");
        for (char x : table.alphabet.letters()) {
            int j = table.transition(i, x);
            if (j < 0 || j >= table.coset_count()) throw Error("transition target out of range");
            // r_i x r_j^-1 must land in the subgroup.
            GroupElement moved = group_multiply(desc, values[i], oracle.letter_image(x));
            if (!subgroup.contains(group_multiply(desc, moved, group_inverse(desc, values[j]))))
                throw Error("transition target is not the coset of the moved representative");
            if (table.transition(j, table.alphabet.involute(x)) != i)
                throw Error("involuted letter does not undo the transition");
        }
        for (int j = 0; j < i; ++j) {
            if (subgroup.contains(
                    group_multiply(desc, values[i], group_inverse(desc, values[j]))))
                throw Error("two representatives share a coset");
        }
    }
}

} // namespace mra
