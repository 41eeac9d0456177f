// Small group oracles shared by the test suites.
#pragma once

#include "mra/group.hpp"

namespace fixtures {

using namespace mra;

// Z with letters a, A.
inline GroupOracle z_oracle() {
    auto desc = GroupDescriptor::free_abelian(1);
    return GroupOracle(desc, InvolutiveAlphabet::symmetric(1),
                       {{'a', parse_group_element(desc, "[1]")},
                        {'A', parse_group_element(desc, "[-1]")}});
}

// Z^2 with letters a, A, b, B.
inline GroupOracle z2_oracle() {
    auto desc = GroupDescriptor::free_abelian(2);
    return GroupOracle(desc, InvolutiveAlphabet::symmetric(2),
                       {{'a', parse_group_element(desc, "[1,0]")},
                        {'A', parse_group_element(desc, "[-1,0]")},
                        {'b', parse_group_element(desc, "[0,1]")},
                        {'B', parse_group_element(desc, "[0,-1]")}});
}

// Free group of rank 2 with letters a, A, b, B.
inline GroupOracle f2_oracle() {
    auto desc = GroupDescriptor::free_group(2);
    return GroupOracle(desc, InvolutiveAlphabet::symmetric(2),
                       {{'a', parse_group_element(desc, "a")},
                        {'A', parse_group_element(desc, "A")},
                        {'b', parse_group_element(desc, "b")},
                        {'B', parse_group_element(desc, "B")}});
}

// Infinite dihedral group: s is the reflection at 0, t the unit translation.
inline GroupOracle dihedral_oracle() {
    auto desc = GroupDescriptor::infinite_dihedral();
    return GroupOracle(desc, InvolutiveAlphabet::from_pairs({{'s', 's'}, {'t', 'T'}}),
                       {{'s', parse_group_element(desc, "(-1,0)")},
                        {'t', parse_group_element(desc, "(+1,1)")},
                        {'T', parse_group_element(desc, "(+1,-1)")}});
}

// Infinite dihedral group generated by two reflections, both self-involute.
inline GroupOracle reflections_oracle() {
    auto desc = GroupDescriptor::infinite_dihedral();
    return GroupOracle(desc, InvolutiveAlphabet::from_pairs({{'s', 's'}, {'u', 'u'}}),
                       {{'s', parse_group_element(desc, "(-1,0)")},
                        {'u', parse_group_element(desc, "(-1,1)")}});
}

// S3 generated by a 3-cycle and a transposition.
inline GroupOracle s3_oracle() {
    auto desc = GroupDescriptor::permutation_group(3);
    return GroupOracle(desc, InvolutiveAlphabet::from_pairs({{'a', 'A'}, {'b', 'b'}}),
                       {{'a', parse_group_element(desc, "(0 1 2)")},
                        {'A', parse_group_element(desc, "(0 2 1)")},
                        {'b', parse_group_element(desc, "(0 1)")}});
}

} // namespace fixtures
