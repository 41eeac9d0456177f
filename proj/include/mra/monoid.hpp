#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mra/error.hpp"

namespace mra {

enum class MonoidKind {
    FreeGroup,
    FreeAbelian,
    Polycyclic,
    PermutationGroup,
    Trivial,
    DirectProduct,
};

/// Describes one of the supported register monoids. The descriptor owns no
/// element data; it is the dispatch key for every element operation.
class MonoidDescriptor {
public:
    /// Defaults to the trivial monoid.
    MonoidDescriptor() : MonoidDescriptor(MonoidKind::Trivial, 0) {}

    static MonoidDescriptor free_group(int rank);
    static MonoidDescriptor free_abelian(int rank);
    static MonoidDescriptor polycyclic(int rank);
    static MonoidDescriptor permutation_group(int degree);
    static MonoidDescriptor trivial();
    static MonoidDescriptor direct_product(std::vector<MonoidDescriptor> factors);

    MonoidKind kind() const { return kind_; }
    /// Rank of the free/polycyclic monoid, or the permutation degree.
    int rank() const { return rank_; }
    const std::vector<MonoidDescriptor>& factors() const { return factors_; }

    /// True when every element has a two-sided inverse.
    bool is_group() const;
    /// ba = 1 = ca implies b = c. Holds for all supported kinds; recorded so
    /// that callers can state the hypothesis they rely on.
    bool claims_unique_left_inverses() const;

    std::string to_string() const;
    static MonoidDescriptor parse(std::string_view text);

    bool operator==(const MonoidDescriptor& other) const;
    bool operator!=(const MonoidDescriptor& other) const { return !(*this == other); }

private:
    MonoidDescriptor(MonoidKind kind, int rank) : kind_(kind), rank_(rank) {}

    MonoidKind kind_;
    int rank_;
    std::vector<MonoidDescriptor> factors_;
};

/// Reduced word over free-group generators: entry +(i+1) is generator i,
/// entry -(i+1) is its inverse. Empty word = identity.
struct FreeGroupWord {
    std::vector<int> letters;
    auto operator<=>(const FreeGroupWord&) const = default;
};

struct FreeAbelianVec {
    std::vector<long long> coords;
    auto operator<=>(const FreeAbelianVec&) const = default;
};

/// Partial map on stack words: (pop, push) sends any word w0·pop to w0·push.
/// `zero` marks the empty partial map, which absorbs all products.
struct PolycyclicMap {
    bool zero = false;
    std::string pop;
    std::string push;
    auto operator<=>(const PolycyclicMap&) const = default;
};

struct PermutationMap {
    std::vector<int> images;
    auto operator<=>(const PermutationMap&) const = default;
};

struct TrivialUnit {
    auto operator<=>(const TrivialUnit&) const = default;
};

struct Element;

struct ProductTuple {
    std::vector<Element> parts;
};

/// A value in one of the supported monoids. Immutable by convention: all
/// operations return fresh elements.
struct Element {
    std::variant<TrivialUnit, FreeGroupWord, FreeAbelianVec, PolycyclicMap, PermutationMap,
                 ProductTuple>
        value;
};

bool operator==(const Element& a, const Element& b);
inline bool operator!=(const Element& a, const Element& b) { return !(a == b); }
bool operator<(const Element& a, const Element& b);

bool operator==(const ProductTuple& a, const ProductTuple& b);
bool operator<(const ProductTuple& a, const ProductTuple& b);

/// Generator letters run a,b,c,d,f,... — 'e' is reserved for the empty word.
char generator_letter(int index);
/// Inverse of generator_letter; returns -1 for letters outside the range.
int generator_index(char letter);

Element identity_element(const MonoidDescriptor& desc);
Element free_group_element(std::vector<int> unreduced);
Element polycyclic_element(std::string pop, std::string push);
Element polycyclic_zero();

/// Throws Error when the element does not belong to the monoid described.
void validate_element(const MonoidDescriptor& desc, const Element& e);

Element multiply(const MonoidDescriptor& desc, const Element& a, const Element& b);
bool is_identity(const MonoidDescriptor& desc, const Element& e);
std::optional<Element> try_two_sided_inverse(const MonoidDescriptor& desc, const Element& e);

/// Size metric used to bound searches: reduced-word length, vector 1-norm,
/// |pop|+|push| (Zero has size 0), permutations 0, products the sum.
long long element_size(const MonoidDescriptor& desc, const Element& e);

/// True when no right factor can complete e to the identity. Sound, not
/// complete: used only to prune subtree searches.
bool register_is_doomed(const MonoidDescriptor& desc, const Element& e);

/// All distinct normal-form elements of size <= bound. Throws Error when the
/// enumeration is infeasible (degree too large, or the count explodes).
std::vector<Element> enumerate_elements(const MonoidDescriptor& desc, int size_bound);

struct UliViolation {
    Element a, b, c;
};

struct UliReport {
    bool feasible = true;
    std::string infeasible_reason;
    long long elements_checked = 0;
    long long products_checked = 0;
    std::vector<UliViolation> violations;

    bool holds() const { return feasible && violations.empty(); }
};

/// Exhaustively checks ba = 1 = ca => b = c over all elements of size <= bound.
UliReport verify_unique_left_inverses(const MonoidDescriptor& desc, int size_bound);

Element parse_element(const MonoidDescriptor& desc, std::string_view text);
std::string format_element(const MonoidDescriptor& desc, const Element& e);

} // namespace mra
