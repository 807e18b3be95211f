#pragma once

#include <stdexcept>
#include <string>

namespace wbasn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySinkSet : Error {
    EmptySinkSet() : Error("no sinks configured") {}
};

struct NegativeInput : Error {
    using Error::Error;
};

struct InvalidHopCount : Error {
    using Error::Error;
};

struct UndefinedThroughput : Error {
    UndefinedThroughput() : Error("throughput undefined: zero packets transmitted") {}
};

// Malformed scenario text. `line` is 1-based, 0 when not tied to a line.
struct ParseError : Error {
    ParseError(int line, std::string key, const std::string& what)
        : Error("line " + std::to_string(line) + (key.empty() ? "" : " (" + key + ")") + ": " + what),
          line(line), key(std::move(key)) {}
    int line;
    std::string key;
};

// A well-formed value that violates a model invariant.
struct ValidationError : Error {
    ValidationError(std::string key, const std::string& what)
        : Error(key + ": " + what), key(std::move(key)) {}
    std::string key;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace wbasn
