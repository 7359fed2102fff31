#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace routeprobe {

/// Malformed input text (region config, trace file, probe file, guard
/// expression). Carries the source name and 1-based line of the offence.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : std::runtime_error(format(source, line, what)),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, std::size_t line,
                              const std::string& what) {
        return source + ":" + std::to_string(line) + ": " + what;
    }

    std::string source_;
    std::size_t line_;
};

/// Structurally well-formed input that violates a domain invariant
/// (overlapping regions, non-disjoint guards, unsound generator request).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace routeprobe
