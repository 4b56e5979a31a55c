#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gemloc {

/// Malformed input text. `position` is a byte offset into the input pointing
/// inside the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Structurally well-formed input that the group grammar rejects: Z/0 or Z/1,
/// a composite number where a prime is required, omega multiplicity on an
/// atom other than Q.
class GrammarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gemloc
