// Shared cursor for the small literal grammars. Internal to the library.
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "mra/error.hpp"

namespace mra::detail {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }
    char take() { return text[pos++]; }
    void skip_ws() {
        while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    void expect(char c) {
        if (done() || text[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }
    [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, pos); }
};

inline long long parse_integer(Cursor& cur) {
    cur.skip_ws();
    std::size_t start = cur.pos;
    if (cur.peek() == '-' || cur.peek() == '+') cur.take();
    if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.error("expected integer");
    while (std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.take();
    return std::stoll(std::string(cur.text.substr(start, cur.pos - start)));
}

} // namespace mra::detail
