// Independent reference implementations used to cross-check the library.
// Everything here works on plain std types and does its own naive search,
// so a bug in the library cannot hide behind shared code.
#pragma once

#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

// Partial map on stack words: defined on words ending with `pop`, replaces
// that suffix with `push`.
inline std::optional<std::string> apply_partial_map(const std::string& word,
                                                    const std::string& pop,
                                                    const std::string& push) {
    if (word.size() < pop.size()) return std::nullopt;
    if (word.compare(word.size() - pop.size(), pop.size(), pop) != 0) return std::nullopt;
    return word.substr(0, word.size() - pop.size()) + push;
}

// Leftmost-cancellation free reduction. Uppercase is the inverse of the
// matching lowercase letter. Deliberately quadratic.
inline std::string reduce_free_word(std::string word) {
    auto cancels = [](char x, char y) {
        return x != y && std::tolower(x) == std::tolower(y);
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (cancels(word[i], word[i + 1])) {
                word.erase(i, 2);
                changed = true;
                break;
            }
        }
    }
    return word;
}

// 2x2 integer matrices acting on row vectors (x, 1). The affine map
// x -> ex + n is [[e,0],[n,1]]; applying map f then map g is mat(f)*mat(g).
struct Mat2 {
    long long a, b, c, d;
    bool operator==(const Mat2&) const = default;
};

inline Mat2 affine_matrix(int sign, long long shift) { return Mat2{sign, 0, shift, 1}; }

inline Mat2 mat_mul(const Mat2& m, const Mat2& n) {
    return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
                m.c * n.b + m.d * n.d};
}

// Balanced-bracket check: each lowercase letter opens, its uppercase closes.
inline bool is_balanced(const std::string& word) {
    std::string stack;
    for (char ch : word) {
        if (ch >= 'a' && ch <= 'z') {
            stack += ch;
        } else if (ch >= 'A' && ch <= 'Z') {
            if (stack.empty() || stack.back() != std::tolower(ch)) return false;
            stack.pop_back();
        } else {
            return false;
        }
    }
    return stack.empty();
}

inline bool is_anbn(const std::string& word) {
    std::size_t i = 0;
    while (i < word.size() && word[i] == 'a') ++i;
    std::size_t n = i;
    while (i < word.size() && word[i] == 'b') ++i;
    return i == word.size() && i == 2 * n;
}

// Per-letter exponent sums: lowercase counts +1, uppercase -1 at the index
// the caller assigns via `slot`.
inline std::vector<long long> exponent_sums(const std::string& word,
                                            const std::map<char, int>& slot, int rank) {
    std::vector<long long> sums(rank, 0);
    for (char ch : word) {
        char base = static_cast<char>(std::tolower(ch));
        sums[slot.at(base)] += std::isupper(static_cast<unsigned char>(ch)) ? -1 : 1;
    }
    return sums;
}

inline bool permutation_is_even(std::vector<int> images) {
    int transpositions = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        while (images[i] != static_cast<int>(i)) {
            std::swap(images[i], images[images[i]]);
            ++transpositions;
        }
    }
    return transpositions % 2 == 0;
}

// All words over `alphabet` of length <= max_len, shortest first.
inline std::vector<std::string> words_up_to(const std::string& alphabet, int max_len) {
    std::vector<std::string> words{""};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t end = words.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char ch : alphabet) words.push_back(words[i] + ch);
        begin = end;
    }
    return words;
}

// Bare-bones pushdown machine: consumes one optional input letter per move,
// pops at most one stack letter, pushes a string. Accepts when the whole
// word is consumed in an accepting state with an empty stack.
struct PdaMove {
    int src = 0;
    char input = 0; // 0 reads nothing
    char pop = 0;   // 0 pops nothing
    std::string push;
    int dst = 0;
};

struct Pda {
    int states = 0;
    int initial = 0;
    std::set<int> accepting;
    std::vector<PdaMove> moves;
};

inline bool pda_accepts(const Pda& pda, const std::string& word, int max_stack = 64,
                        long long max_steps = 200000) {
    using Config = std::tuple<int, std::size_t, std::string>;
    std::set<Config> seen;
    std::deque<Config> queue;
    queue.emplace_back(pda.initial, 0, "");
    seen.insert(queue.back());
    long long steps = 0;
    while (!queue.empty() && steps < max_steps) {
        auto [state, pos, stack] = queue.front();
        queue.pop_front();
        ++steps;
        if (pos == word.size() && stack.empty() && pda.accepting.count(state)) return true;
        for (const auto& mv : pda.moves) {
            if (mv.src != state) continue;
            std::size_t npos = pos;
            if (mv.input != 0) {
                if (pos >= word.size() || word[pos] != mv.input) continue;
                npos = pos + 1;
            }
            std::string nstack = stack;
            if (mv.pop != 0) {
                if (nstack.empty() || nstack.back() != mv.pop) continue;
                nstack.pop_back();
            }
            nstack += mv.push;
            if (static_cast<int>(nstack.size()) > max_stack) continue;
            Config next{mv.dst, npos, nstack};
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return false;
}

} // namespace oracle
