#pragma once

#include <stdexcept>
#include <string>

namespace segsim {

// Model fails structural validation (lengths, duplicate species, bad rates).
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad engine or abstraction parameters (c out of range, k < 1, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text-format syntax errors, with 1-based position.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) +
                             ": " + msg),
          line(line),
          column(column) {}
    int line;
    int column;
};

// Versioned binary/JSON/CSV document does not match the expected schema.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller violated an operation's domain (t < 0, unnormalized histogram, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace segsim
