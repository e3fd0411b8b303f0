#pragma once

#include <stdexcept>
#include <string>

namespace lipcurve {

/// Malformed text input (curve files, proof-set files, bundle metadata).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
          line_(line) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

/// The grid-restricted OPT oracle refused a grid larger than its cap.
class OracleCapExceeded : public std::runtime_error {
public:
    OracleCapExceeded(std::size_t grid_size, std::size_t cap)
        : std::runtime_error("grid of " + std::to_string(grid_size) +
                             " nodes exceeds the oracle cap of " + std::to_string(cap) +
                             "; use a coarser grid step"),
          grid_size_(grid_size),
          cap_(cap) {}

    std::size_t grid_size() const { return grid_size_; }
    std::size_t cap() const { return cap_; }

private:
    std::size_t grid_size_;
    std::size_t cap_;
};

}  // namespace lipcurve
