#include "mra/alphabet.hpp"

#include <cctype>

#include "mra/monoid.hpp"

namespace mra {

namespace {

void check_letter(char c) {
    if (!std::isalpha(static_cast<unsigned char>(c)))
        throw Error(std::string("alphabet letter '") + c + "' is not a letter");
    if (c == 'e') throw Error("'e' is reserved for the empty word");
}

} // namespace

InvolutiveAlphabet InvolutiveAlphabet::from_pairs(
    const std::vector<std::pair<char, char>>& pairs) {
    InvolutiveAlphabet a;
    auto add = [&](char letter, char involute) {
        check_letter(letter);
        int at = a.position(letter);
        if (at >= 0) {
            if (a.involutes_[at] != involute)
                throw Error(std::string("conflicting involutions for '") + letter + "'");
            return;
        }
        a.letters_ += letter;
        a.involutes_ += involute;
    };
    for (auto [x, y] : pairs) {
        add(x, y);
        add(y, x);
    }
    if (a.letters_.empty()) throw Error("alphabet is empty");
    return a;
}

InvolutiveAlphabet InvolutiveAlphabet::symmetric(int rank) {
    std::vector<std::pair<char, char>> pairs;
    for (int i = 0; i < rank; ++i) {
        char c = generator_letter(i);
        pairs.emplace_back(c, static_cast<char>(std::toupper(c)));
    }
    return from_pairs(pairs);
}

bool InvolutiveAlphabet::contains(char letter) const { return position(letter) >= 0; }

int InvolutiveAlphabet::position(char letter) const {
    auto at = letters_.find(letter);
    return at == std::string::npos ? -1 : static_cast<int>(at);
}

char InvolutiveAlphabet::involute(char letter) const {
    int at = position(letter);
    if (at < 0) throw Error(std::string("unknown letter '") + letter + "'");
    return involutes_[at];
}

std::vector<std::string> enumerate_words(const InvolutiveAlphabet& alphabet, int max_len) {
    if (max_len < 0) throw Error("word length bound must be nonnegative");
    std::vector<std::string> words{""};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t end = words.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char c : alphabet.letters()) words.push_back(words[i] + c);
        begin = end;
    }
    return words;
}

std::string formal_inverse(const InvolutiveAlphabet& alphabet, std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) out += alphabet.involute(*it);
    return out;
}

} // namespace mra
