#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mra/error.hpp"

namespace mra {

/// Finite input alphabet together with an involution pairing each letter
/// with the one denoting its inverse. A letter may be its own involute.
/// Letters are ASCII alpha characters; 'e' is reserved for the empty word.
class InvolutiveAlphabet {
public:
    InvolutiveAlphabet() = default;

    /// Each pair (x, y) declares y as the involute of x (and x of y). Pass
    /// (x, x) for a self-involute letter. Letter order follows first mention.
    static InvolutiveAlphabet from_pairs(const std::vector<std::pair<char, char>>& pairs);

    /// Word-problem alphabet for rank generators: a,A,b,B,... with the
    /// uppercase letter as the involute of the lowercase one.
    static InvolutiveAlphabet symmetric(int rank);

    const std::string& letters() const { return letters_; }
    bool contains(char letter) const;
    char involute(char letter) const;
    /// Position of the letter in letters(), or -1.
    int position(char letter) const;

    bool operator==(const InvolutiveAlphabet&) const = default;

private:
    std::string letters_;
    std::string involutes_;
};

/// All words of length <= max_len, shortest first, letters in alphabet order.
std::vector<std::string> enumerate_words(const InvolutiveAlphabet& alphabet, int max_len);

/// Reverse of w with every letter involuted; represents the inverse of w.
std::string formal_inverse(const InvolutiveAlphabet& alphabet, std::string_view word);

} // namespace mra
