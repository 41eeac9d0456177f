#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mra/alphabet.hpp"
#include "mra/monoid.hpp"

namespace mra {

enum class GroupKind {
    FreeAbelian,
    FreeGroup,
    PermutationGroup,
    InfiniteDihedral,
    DirectProduct,
};

/// Describes a concrete computable group used as the target H. Elements are
/// faithful representations, so identity testing is trivially decidable.
class GroupDescriptor {
public:
    static GroupDescriptor free_abelian(int rank);
    static GroupDescriptor free_group(int rank);
    static GroupDescriptor permutation_group(int degree);
    static GroupDescriptor infinite_dihedral();
    static GroupDescriptor direct_product(std::vector<GroupDescriptor> factors);

    GroupKind kind() const { return kind_; }
    int rank() const { return rank_; }
    const std::vector<GroupDescriptor>& factors() const { return factors_; }

    std::string to_string() const;
    static GroupDescriptor parse(std::string_view text);

    bool operator==(const GroupDescriptor& other) const;
    bool operator!=(const GroupDescriptor& other) const { return !(*this == other); }

private:
    GroupDescriptor(GroupKind kind, int rank) : kind_(kind), rank_(rank) {}

    GroupKind kind_;
    int rank_;
    std::vector<GroupDescriptor> factors_;
};

/// The map x -> sign*x + shift on the integers, sign in {+1,-1}.
struct AffineMap {
    int sign = 1;
    long long shift = 0;
    auto operator<=>(const AffineMap&) const = default;
};

struct GroupElement;

struct GroupTuple {
    std::vector<GroupElement> parts;
};

struct GroupElement {
    std::variant<FreeAbelianVec, FreeGroupWord, PermutationMap, AffineMap, GroupTuple> value;
};

bool operator==(const GroupElement& a, const GroupElement& b);
inline bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
bool operator<(const GroupElement& a, const GroupElement& b);

bool operator==(const GroupTuple& a, const GroupTuple& b);
bool operator<(const GroupTuple& a, const GroupTuple& b);

GroupElement group_identity(const GroupDescriptor& desc);
void validate_group_element(const GroupDescriptor& desc, const GroupElement& e);
/// Applies the left factor first (composition order for map representations).
GroupElement group_multiply(const GroupDescriptor& desc, const GroupElement& a,
                            const GroupElement& b);
GroupElement group_inverse(const GroupDescriptor& desc, const GroupElement& e);
bool group_is_identity(const GroupDescriptor& desc, const GroupElement& e);

GroupElement parse_group_element(const GroupDescriptor& desc, std::string_view text);
std::string format_group_element(const GroupDescriptor& desc, const GroupElement& e);

/// Evaluation of words over an involutive alphabet into a concrete group.
/// Immutable after construction; the kernel of evaluate() is the group's
/// word problem with respect to this generating map.
class GroupOracle {
public:
    GroupOracle(GroupDescriptor group, InvolutiveAlphabet alphabet,
                std::map<char, GroupElement> letter_images);

    const GroupDescriptor& group() const { return group_; }
    const InvolutiveAlphabet& alphabet() const { return alphabet_; }
    const std::map<char, GroupElement>& letter_images() const { return letter_images_; }

    const GroupElement& letter_image(char letter) const;
    GroupElement evaluate(std::string_view word) const;
    bool in_word_problem(std::string_view word) const;

private:
    GroupDescriptor group_;
    InvolutiveAlphabet alphabet_;
    std::map<char, GroupElement> letter_images_;
};

enum class SubgroupKind { Full, Parity, Trivial };

/// A subgroup K of the oracle's group given by a membership predicate.
class SubgroupOracle {
public:
    using Membership = std::function<bool(const GroupElement&)>;

    SubgroupOracle(GroupOracle parent, Membership membership,
                   std::optional<long long> claimed_index_bound = std::nullopt);

    const GroupOracle& parent() const { return parent_; }
    bool contains(const GroupElement& e) const { return membership_(e); }
    bool contains_word(std::string_view word) const;
    std::optional<long long> claimed_index_bound() const { return claimed_index_bound_; }

private:
    GroupOracle parent_;
    Membership membership_;
    std::optional<long long> claimed_index_bound_;
};

/// Built-in subgroup predicates: the whole group, the kernel of the evident
/// sign/parity character, or the trivial subgroup.
SubgroupOracle make_subgroup(const GroupOracle& oracle, SubgroupKind kind);
std::string subgroup_kind_name(SubgroupKind kind);
std::optional<SubgroupKind> parse_subgroup_kind(std::string_view text);

/// Right-coset table for a finite-index subgroup: coset 0 is K itself, and
/// transitions follow right multiplication by letters.
struct CosetTable {
    InvolutiveAlphabet alphabet;
    std::vector<std::string> representatives;
    std::vector<std::vector<int>> transitions;

    int coset_count() const { return static_cast<int>(representatives.size()); }
    int transition(int coset, char letter) const;
};

struct CosetEnumerationResult {
    std::optional<CosetTable> table;
    long long cosets_found = 0;
    bool exceeded_max = false;
};

/// BFS coset enumeration from the empty representative. The coset of r·x is
/// found by testing (r·x)·r'^-1 against the membership predicate for each
/// known representative r'. Index larger than max_cosets is reported via
/// exceeded_max rather than an exception.
CosetEnumerationResult coset_enumerate(const SubgroupOracle& subgroup, int max_cosets);

/// Throws Error if the table violates totality, involution consistency,
/// coset targeting, or pairwise distinctness of representatives.
void validate_coset_table(const SubgroupOracle& subgroup, const CosetTable& table);

} // namespace mra
