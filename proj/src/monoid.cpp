#include "mra/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "parse_util.hpp"

namespace mra {

namespace {

constexpr int kMaxRank = 25;
constexpr int kMaxPermutationDegree = 8;
constexpr long long kEnumerationCeiling = 2'000'000;

[[noreturn]] void fail(const std::string& msg) { throw Error(msg); }

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

MonoidDescriptor MonoidDescriptor::free_group(int rank) {
    if (rank < 1 || rank > kMaxRank) fail("free-group rank out of range");
    return MonoidDescriptor(MonoidKind::FreeGroup, rank);
}

MonoidDescriptor MonoidDescriptor::free_abelian(int rank) {
    if (rank < 1 || rank > 64) fail("free-abelian rank out of range");
    return MonoidDescriptor(MonoidKind::FreeAbelian, rank);
}

MonoidDescriptor MonoidDescriptor::polycyclic(int rank) {
    if (rank < 1 || rank > kMaxRank) fail("polycyclic rank out of range");
    return MonoidDescriptor(MonoidKind::Polycyclic, rank);
}

MonoidDescriptor MonoidDescriptor::permutation_group(int degree) {
    if (degree < 1 || degree > 64) fail("permutation degree out of range");
    return MonoidDescriptor(MonoidKind::PermutationGroup, degree);
}

MonoidDescriptor MonoidDescriptor::trivial() { return MonoidDescriptor(MonoidKind::Trivial, 0); }

MonoidDescriptor MonoidDescriptor::direct_product(std::vector<MonoidDescriptor> factors) {
    if (factors.empty()) fail("direct product needs at least one factor");
    MonoidDescriptor d(MonoidKind::DirectProduct, 0);
    d.factors_ = std::move(factors);
    return d;
}

bool MonoidDescriptor::is_group() const {
    switch (kind_) {
        case MonoidKind::Polycyclic: return false;
        case MonoidKind::DirectProduct:
            return std::all_of(factors_.begin(), factors_.end(),
                               [](const MonoidDescriptor& f) { return f.is_group(); });
        default: return true;
    }
}

bool MonoidDescriptor::claims_unique_left_inverses() const {
    // Every group is right cancellative; polycyclic monoids satisfy the
    // property too, and it is preserved by direct products.
    if (kind_ == MonoidKind::DirectProduct)
        return std::all_of(factors_.begin(), factors_.end(),
                           [](const MonoidDescriptor& f) { return f.claims_unique_left_inverses(); });
    return true;
}

std::string MonoidDescriptor::to_string() const {
    switch (kind_) {
        case MonoidKind::FreeGroup: return "free-group(" + std::to_string(rank_) + ")";
        case MonoidKind::FreeAbelian: return "free-abelian(" + std::to_string(rank_) + ")";
        case MonoidKind::Polycyclic: return "polycyclic(" + std::to_string(rank_) + ")";
        case MonoidKind::PermutationGroup: return "sym(" + std::to_string(rank_) + ")";
        case MonoidKind::Trivial: return "trivial";
        case MonoidKind::DirectProduct: {
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

bool MonoidDescriptor::operator==(const MonoidDescriptor& other) const {
    return kind_ == other.kind_ && rank_ == other.rank_ && factors_ == other.factors_;
}

char generator_letter(int index) {
    // 'e' denotes the empty word in every literal grammar, so it is skipped.
    if (index < 0 || index >= kMaxRank) fail("generator index out of range");
    char c = static_cast<char>('a' + index);
    if (index >= 4) c = static_cast<char>(c + 1);
    return c;
}

int generator_index(char letter) {
    if (letter < 'a' || letter > 'z' || letter == 'e') return -1;
    int idx = letter - 'a';
    if (letter > 'e') --idx;
    return idx;
}

// ---------------------------------------------------------------------------
// Element comparisons

bool operator==(const ProductTuple& a, const ProductTuple& b) { return a.parts == b.parts; }

bool operator<(const ProductTuple& a, const ProductTuple& b) {
    return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                        b.parts.end(),
                                        [](const Element& x, const Element& y) { return x < y; });
}

namespace {
bool product_eq(const ProductTuple& a, const ProductTuple& b) { return a == b; }
} // namespace

bool operator==(const Element& a, const Element& b) {
    if (a.value.index() != b.value.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.value);
            if constexpr (std::is_same_v<T, ProductTuple>) {
                return product_eq(lhs, rhs);
            } else {
                return lhs == rhs;
            }
        },
        a.value);
}

bool operator<(const Element& a, const Element& b) {
    if (a.value.index() != b.value.index()) return a.value.index() < b.value.index();
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.value);
            return lhs < rhs;
        },
        a.value);
}

// ---------------------------------------------------------------------------
// Construction and validation

Element identity_element(const MonoidDescriptor& desc) {
    switch (desc.kind()) {
        case MonoidKind::FreeGroup: return Element{FreeGroupWord{}};
        case MonoidKind::FreeAbelian:
            return Element{FreeAbelianVec{std::vector<long long>(desc.rank(), 0)}};
        case MonoidKind::Polycyclic: return Element{PolycyclicMap{}};
        case MonoidKind::PermutationGroup: {
            std::vector<int> id(desc.rank());
            std::iota(id.begin(), id.end(), 0);
            return Element{PermutationMap{std::move(id)}};
        }
        case MonoidKind::Trivial: return Element{TrivialUnit{}};
        case MonoidKind::DirectProduct: {
            ProductTuple t;
            for (const auto& f : desc.factors()) t.parts.push_back(identity_element(f));
            return Element{std::move(t)};
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

std::vector<int> reduce_word(const std::vector<int>& unreduced) {
    std::vector<int> out;
    out.reserve(unreduced.size());
    for (int letter : unreduced) reduce_append(out, letter);
    return out;
}

} // namespace

Element free_group_element(std::vector<int> unreduced) {
    return Element{FreeGroupWord{reduce_word(unreduced)}};
}

Element polycyclic_element(std::string pop, std::string push) {
    return Element{PolycyclicMap{false, std::move(pop), std::move(push)}};
}

Element polycyclic_zero() { return Element{PolycyclicMap{true, "", ""}}; }

void validate_element(const MonoidDescriptor& desc, const Element& e) {
    switch (desc.kind()) {
        case MonoidKind::FreeGroup: {
            const auto* w = std::get_if<FreeGroupWord>(&e.value);
            if (!w) fail("element is not a free-group word");
            for (std::size_t i = 0; i < w->letters.size(); ++i) {
                int l = w->letters[i];
                if (l == 0 || std::abs(l) > desc.rank()) fail("generator out of range for rank");
                if (i > 0 && w->letters[i - 1] == -l) fail("free-group word is not reduced");
            }
            return;
        }
        case MonoidKind::FreeAbelian: {
            const auto* v = std::get_if<FreeAbelianVec>(&e.value);
            if (!v) fail("element is not a free-abelian vector");
            if (static_cast<int>(v->coords.size()) != desc.rank())
                fail("vector length does not match rank");
            return;
        }
        case MonoidKind::Polycyclic: {
            const auto* p = std::get_if<PolycyclicMap>(&e.value);
            if (!p) fail("element is not a polycyclic pair");
            if (p->zero) {
                if (!p->pop.empty() || !p->push.empty()) fail("malformed zero element");
                return;
            }
            for (char c : p->pop + p->push) {
                int idx = generator_index(c);
                if (idx < 0 || idx >= desc.rank()) fail("stack letter out of range for rank");
            }
            return;
        }
        case MonoidKind::PermutationGroup: {
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
        case MonoidKind::Trivial:
            if (!std::holds_alternative<TrivialUnit>(e.value)) fail("element is not the unit");
            return;
        case MonoidKind::DirectProduct: {
            const auto* t = std::get_if<ProductTuple>(&e.value);
            if (!t) fail("element is not a tuple");
            if (t->parts.size() != desc.factors().size()) fail("tuple arity mismatch");
            for (std::size_t i = 0; i < t->parts.size(); ++i)
                validate_element(desc.factors()[i], t->parts[i]);
            return;
        }
    }
    fail("unreachable");
}

// ---------------------------------------------------------------------------
// Arithmetic

Element multiply(const MonoidDescriptor& desc, const Element& a, const Element& b) {
    validate_element(desc, a);
    validate_element(desc, b);
    switch (desc.kind()) {
        case MonoidKind::FreeGroup: {
            const auto& wa = std::get<FreeGroupWord>(a.value).letters;
            const auto& wb = std::get<FreeGroupWord>(b.value).letters;
            std::vector<int> out = wa;
            for (int letter : wb) reduce_append(out, letter);
            return Element{FreeGroupWord{std::move(out)}};
        }
        case MonoidKind::FreeAbelian: {
            const auto& va = std::get<FreeAbelianVec>(a.value).coords;
            const auto& vb = std::get<FreeAbelianVec>(b.value).coords;
            std::vector<long long> out(va.size());
            for (std::size_t i = 0; i < va.size(); ++i) out[i] = va[i] + vb[i];
            return Element{FreeAbelianVec{std::move(out)}};
        }
        case MonoidKind::Polycyclic: {
            const auto& pa = std::get<PolycyclicMap>(a.value);
            const auto& pb = std::get<PolycyclicMap>(b.value);
            if (pa.zero || pb.zero) return polycyclic_zero();
            // (u,v)(s,t) composes the partial maps, left factor applied first.
            if (ends_with(pa.push, pb.pop)) {
                std::string kept = pa.push.substr(0, pa.push.size() - pb.pop.size());
                return polycyclic_element(pa.pop, kept + pb.push);
            }
            if (ends_with(pb.pop, pa.push)) {
                std::string extra = pb.pop.substr(0, pb.pop.size() - pa.push.size());
                return polycyclic_element(extra + pa.pop, pb.push);
            }
            return polycyclic_zero();
        }
        case MonoidKind::PermutationGroup: {
            const auto& ia = std::get<PermutationMap>(a.value).images;
            const auto& ib = std::get<PermutationMap>(b.value).images;
            std::vector<int> out(ia.size());
            for (std::size_t i = 0; i < ia.size(); ++i) out[i] = ib[ia[i]];
            return Element{PermutationMap{std::move(out)}};
        }
        case MonoidKind::Trivial: return a;
        case MonoidKind::DirectProduct: {
            const auto& ta = std::get<ProductTuple>(a.value).parts;
            const auto& tb = std::get<ProductTuple>(b.value).parts;
            ProductTuple out;
            for (std::size_t i = 0; i < ta.size(); ++i)
                out.parts.push_back(multiply(desc.factors()[i], ta[i], tb[i]));
            return Element{std::move(out)};
        }
    }
    fail("unreachable");
}

bool is_identity(const MonoidDescriptor& desc, const Element& e) {
    validate_element(desc, e);
    return e == identity_element(desc);
}

std::optional<Element> try_two_sided_inverse(const MonoidDescriptor& desc, const Element& e) {
    validate_element(desc, e);
    switch (desc.kind()) {
        case MonoidKind::FreeGroup: {
            const auto& w = std::get<FreeGroupWord>(e.value).letters;
            std::vector<int> inv(w.rbegin(), w.rend());
            for (int& l : inv) l = -l;
            return Element{FreeGroupWord{std::move(inv)}};
        }
        case MonoidKind::FreeAbelian: {
            auto v = std::get<FreeAbelianVec>(e.value).coords;
            for (auto& x : v) x = -x;
            return Element{FreeAbelianVec{std::move(v)}};
        }
        case MonoidKind::Polycyclic:
            // Only the identity is a unit: the group of units is trivial.
            if (e == identity_element(desc)) return e;
            return std::nullopt;
        case MonoidKind::PermutationGroup: {
            const auto& images = std::get<PermutationMap>(e.value).images;
            std::vector<int> inv(images.size());
            for (std::size_t i = 0; i < images.size(); ++i) inv[images[i]] = static_cast<int>(i);
            return Element{PermutationMap{std::move(inv)}};
        }
        case MonoidKind::Trivial: return e;
        case MonoidKind::DirectProduct: {
            const auto& parts = std::get<ProductTuple>(e.value).parts;
            ProductTuple out;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                auto inv = try_two_sided_inverse(desc.factors()[i], parts[i]);
                if (!inv) return std::nullopt;
                out.parts.push_back(std::move(*inv));
            }
            return Element{std::move(out)};
        }
    }
    fail("unreachable");
}

long long element_size(const MonoidDescriptor& desc, const Element& e) {
    switch (desc.kind()) {
        case MonoidKind::FreeGroup:
            return static_cast<long long>(std::get<FreeGroupWord>(e.value).letters.size());
        case MonoidKind::FreeAbelian: {
            long long s = 0;
            for (long long x : std::get<FreeAbelianVec>(e.value).coords) s += std::abs(x);
            return s;
        }
        case MonoidKind::Polycyclic: {
            const auto& p = std::get<PolycyclicMap>(e.value);
            return p.zero ? 0 : static_cast<long long>(p.pop.size() + p.push.size());
        }
        case MonoidKind::PermutationGroup:
        case MonoidKind::Trivial: return 0;
        case MonoidKind::DirectProduct: {
            long long s = 0;
            const auto& parts = std::get<ProductTuple>(e.value).parts;
            for (std::size_t i = 0; i < parts.size(); ++i)
                s += element_size(desc.factors()[i], parts[i]);
            return s;
        }
    }
    fail("unreachable");
}

bool register_is_doomed(const MonoidDescriptor& desc, const Element& e) {
    switch (desc.kind()) {
        case MonoidKind::Polycyclic: {
            // The pop component of a product only ever grows, so a nonempty
            // pop (or zero) can never be multiplied back to the identity.
            const auto& p = std::get<PolycyclicMap>(e.value);
            return p.zero || !p.pop.empty();
        }
        case MonoidKind::DirectProduct: {
            const auto& parts = std::get<ProductTuple>(e.value).parts;
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (register_is_doomed(desc.factors()[i], parts[i])) return true;
            return false;
        }
        default: return false;
    }
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void enumerate_reduced_words(int rank, int bound, std::vector<int>& cur, std::vector<Element>& out) {
    out.push_back(Element{FreeGroupWord{cur}});
    if (static_cast<int>(cur.size()) >= bound) return;
    for (int g = 1; g <= rank; ++g) {
        for (int letter : {g, -g}) {
            if (!cur.empty() && cur.back() == -letter) continue;
            cur.push_back(letter);
            enumerate_reduced_words(rank, bound, cur, out);
            cur.pop_back();
        }
    }
}

void enumerate_vectors(int rank, int budget, std::vector<long long>& cur, std::vector<Element>& out) {
    if (static_cast<int>(cur.size()) == rank) {
        out.push_back(Element{FreeAbelianVec{cur}});
        return;
    }
    for (int x = -budget; x <= budget; ++x) {
        cur.push_back(x);
        enumerate_vectors(rank, budget - std::abs(x), cur, out);
        cur.pop_back();
    }
}

std::vector<std::string> stack_words_up_to(int rank, int max_len) {
    std::vector<std::string> words{""};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t end = words.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int g = 0; g < rank; ++g) words.push_back(words[i] + generator_letter(g));
        begin = end;
    }
    return words;
}

void enumerate_permutations(int degree, std::vector<Element>& out) {
    std::vector<int> images(degree);
    std::iota(images.begin(), images.end(), 0);
    do {
        out.push_back(Element{PermutationMap{images}});
    } while (std::next_permutation(images.begin(), images.end()));
}

} // namespace

std::vector<Element> enumerate_elements(const MonoidDescriptor& desc, int size_bound) {
    if (size_bound < 0) fail("size bound must be nonnegative");
    std::vector<Element> out;
    switch (desc.kind()) {
        case MonoidKind::FreeGroup: {
            double estimate = 1;
            double layer = 1;
            for (int k = 1; k <= size_bound; ++k) {
                layer *= (k == 1 ? 2.0 * desc.rank() : 2.0 * desc.rank() - 1);
                estimate += layer;
                if (estimate > kEnumerationCeiling) fail("enumeration infeasible: too many words");
            }
            std::vector<int> cur;
            enumerate_reduced_words(desc.rank(), size_bound, cur, out);
            break;
        }
        case MonoidKind::FreeAbelian: {
            std::vector<long long> cur;
            enumerate_vectors(desc.rank(), size_bound, cur, out);
            break;
        }
        case MonoidKind::Polycyclic: {
            out.push_back(polycyclic_zero());
            auto words = stack_words_up_to(desc.rank(), size_bound);
            for (const auto& u : words)
                for (const auto& v : words)
                    if (static_cast<int>(u.size() + v.size()) <= size_bound)
                        out.push_back(polycyclic_element(u, v));
            break;
        }
        case MonoidKind::PermutationGroup: {
            if (desc.rank() > kMaxPermutationDegree)
                fail("enumeration infeasible: permutation degree too large");
            enumerate_permutations(desc.rank(), out);
            break;
        }
        case MonoidKind::Trivial:
            out.push_back(Element{TrivialUnit{}});
            break;
        case MonoidKind::DirectProduct: {
            std::vector<Element> acc{Element{ProductTuple{}}};
            for (const auto& f : desc.factors()) {
                auto factor_elems = enumerate_elements(f, size_bound);
                std::vector<Element> next;
                for (const auto& partial : acc) {
                    long long used = 0;
                    const auto& parts = std::get<ProductTuple>(partial.value).parts;
                    for (std::size_t i = 0; i < parts.size(); ++i)
                        used += element_size(desc.factors()[i], parts[i]);
                    for (const auto& fe : factor_elems) {
                        if (used + element_size(f, fe) > size_bound) continue;
                        ProductTuple t = std::get<ProductTuple>(partial.value);
                        t.parts.push_back(fe);
                        next.push_back(Element{std::move(t)});
                        if (static_cast<long long>(next.size()) > kEnumerationCeiling)
                            fail("enumeration infeasible: product too large");
                    }
                }
                acc = std::move(next);
            }
            out = std::move(acc);
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) { return a < b; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

UliReport verify_unique_left_inverses(const MonoidDescriptor& desc, int size_bound) {
    UliReport report;
    std::vector<Element> elems;
    try {
        elems = enumerate_elements(desc, size_bound);
    } catch (const Error& e) {
        report.feasible = false;
        report.infeasible_reason = e.what();
        return report;
    }
    report.elements_checked = static_cast<long long>(elems.size());
    const Element one = identity_element(desc);
    for (const auto& a : elems) {
        std::vector<const Element*> left_inverses;
        for (const auto& b : elems) {
            ++report.products_checked;
            if (multiply(desc, b, a) == one) left_inverses.push_back(&b);
        }
        for (std::size_t i = 0; i + 1 < left_inverses.size(); ++i)
            for (std::size_t j = i + 1; j < left_inverses.size(); ++j)
                report.violations.push_back(UliViolation{a, *left_inverses[i], *left_inverses[j]});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Literals

namespace {

using detail::Cursor;
using detail::parse_integer;

std::string parse_stack_word(Cursor& cur, int rank) {
    cur.skip_ws();
    if (cur.peek() == 'e') {
        cur.take();
        return "";
    }
    std::string out;
    while (cur.peek() >= 'a' && cur.peek() <= 'z') {
        int idx = generator_index(cur.peek());
        if (idx < 0 || idx >= rank) cur.error("stack letter out of range");
        out += cur.take();
    }
    if (out.empty()) cur.error("expected stack word or 'e'");
    return out;
}

Element parse_one(const MonoidDescriptor& desc, Cursor& cur);

Element parse_free_group(const MonoidDescriptor& desc, Cursor& cur) {
    cur.skip_ws();
    if (cur.peek() == 'e') {
        cur.take();
        return identity_element(desc);
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
    return free_group_element(std::move(letters));
}

Element parse_free_abelian(const MonoidDescriptor& desc, Cursor& cur) {
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
    return Element{FreeAbelianVec{std::move(coords)}};
}

Element parse_polycyclic(const MonoidDescriptor& desc, Cursor& cur) {
    cur.skip_ws();
    if (cur.peek() == '0') {
        cur.take();
        return polycyclic_zero();
    }
    cur.expect('(');
    std::string pop = parse_stack_word(cur, desc.rank());
    cur.skip_ws();
    cur.expect('|');
    std::string push = parse_stack_word(cur, desc.rank());
    cur.skip_ws();
    cur.expect(')');
    return polycyclic_element(std::move(pop), std::move(push));
}

Element parse_permutation(const MonoidDescriptor& desc, Cursor& cur) {
    cur.skip_ws();
    if (cur.peek() == 'i') {
        cur.take();
        cur.expect('d');
        return identity_element(desc);
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
    Element e{PermutationMap{std::move(images)}};
    validate_element(desc, e);
    return e;
}

Element parse_trivial(const MonoidDescriptor& desc, Cursor& cur) {
    cur.skip_ws();
    if (cur.peek() == '1') {
        cur.take();
        return identity_element(desc);
    }
    cur.error("expected '1'");
}

Element parse_one(const MonoidDescriptor& desc, Cursor& cur) {
    switch (desc.kind()) {
        case MonoidKind::FreeGroup: return parse_free_group(desc, cur);
        case MonoidKind::FreeAbelian: return parse_free_abelian(desc, cur);
        case MonoidKind::Polycyclic: return parse_polycyclic(desc, cur);
        case MonoidKind::PermutationGroup: return parse_permutation(desc, cur);
        case MonoidKind::Trivial: return parse_trivial(desc, cur);
        case MonoidKind::DirectProduct: {
            ProductTuple t;
            for (std::size_t i = 0; i < desc.factors().size(); ++i) {
                if (i) {
                    cur.skip_ws();
                    cur.expect('*');
                }
                t.parts.push_back(parse_one(desc.factors()[i], cur));
            }
            return Element{std::move(t)};
        }
    }
    fail("unreachable");
}

} // namespace

Element parse_element(const MonoidDescriptor& desc, std::string_view text) {
    Cursor cur{text};
    Element e = parse_one(desc, cur);
    cur.skip_ws();
    if (!cur.done()) cur.error("trailing characters after element literal");
    return e;
}

std::string format_element(const MonoidDescriptor& desc, const Element& e) {
    validate_element(desc, e);
    switch (desc.kind()) {
        case MonoidKind::FreeGroup: {
            const auto& w = std::get<FreeGroupWord>(e.value).letters;
            if (w.empty()) return "e";
            std::string out;
            for (int l : w) {
                char c = generator_letter(std::abs(l) - 1);
                out += l > 0 ? c : static_cast<char>(std::toupper(c));
            }
            return out;
        }
        case MonoidKind::FreeAbelian: {
            std::string out = "[";
            const auto& v = std::get<FreeAbelianVec>(e.value).coords;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(v[i]);
            }
            return out + "]";
        }
        case MonoidKind::Polycyclic: {
            const auto& p = std::get<PolycyclicMap>(e.value);
            if (p.zero) return "0";
            auto word = [](const std::string& w) { return w.empty() ? std::string("e") : w; };
            return "(" + word(p.pop) + "|" + word(p.push) + ")";
        }
        case MonoidKind::PermutationGroup: {
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
        case MonoidKind::Trivial: return "1";
        case MonoidKind::DirectProduct: {
            const auto& parts = std::get<ProductTuple>(e.value).parts;
            std::string out;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) out += " * ";
                out += format_element(desc.factors()[i], parts[i]);
            }
            return out;
        }
    }
    fail("unreachable");
}

// ---------------------------------------------------------------------------
// Descriptor literals

namespace {

MonoidDescriptor parse_descriptor(Cursor& cur);

int parse_paren_int(Cursor& cur) {
    cur.skip_ws();
    cur.expect('(');
    long long v = parse_integer(cur);
    cur.skip_ws();
    cur.expect(')');
    return static_cast<int>(v);
}

std::string parse_ident(Cursor& cur) {
    cur.skip_ws();
    std::string out;
    while (std::isalpha(static_cast<unsigned char>(cur.peek())) || cur.peek() == '-') out += cur.take();
    if (out.empty()) cur.error("expected monoid kind");
    return out;
}

MonoidDescriptor parse_descriptor(Cursor& cur) {
    std::string kind = parse_ident(cur);
    if (kind == "free-group") return MonoidDescriptor::free_group(parse_paren_int(cur));
    if (kind == "free-abelian") return MonoidDescriptor::free_abelian(parse_paren_int(cur));
    if (kind == "polycyclic") return MonoidDescriptor::polycyclic(parse_paren_int(cur));
    if (kind == "sym") return MonoidDescriptor::permutation_group(parse_paren_int(cur));
    if (kind == "trivial") return MonoidDescriptor::trivial();
    if (kind == "product") {
        cur.skip_ws();
        cur.expect('(');
        std::vector<MonoidDescriptor> factors;
        factors.push_back(parse_descriptor(cur));
        cur.skip_ws();
        while (cur.peek() == ',') {
            cur.take();
            factors.push_back(parse_descriptor(cur));
            cur.skip_ws();
        }
        cur.expect(')');
        return MonoidDescriptor::direct_product(std::move(factors));
    }
    cur.error("unknown monoid kind '" + kind + "'");
}

} // namespace

MonoidDescriptor MonoidDescriptor::parse(std::string_view text) {
    Cursor cur{text};
    MonoidDescriptor d = parse_descriptor(cur);
    cur.skip_ws();
    if (!cur.done()) cur.error("trailing characters after monoid descriptor");
    return d;
}

} // namespace mra
