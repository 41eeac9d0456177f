#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mra {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syntax error in an element literal or a text-format file; `position` is a
/// byte offset into the offending string (or a line number, for file-level
/// diagnostics rethrown by the text reader).
struct ParseError : Error {
    std::size_t position;

    ParseError(const std::string& message, std::size_t pos)
        : Error(message + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

} // namespace mra
