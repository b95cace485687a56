#pragma once

#include <stdexcept>
#include <string>

namespace stfidf {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// A violated precondition or otherwise unusable argument.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Malformed input data. Carries the source name, the 1-based line where
// the problem was found (0 if not line-addressable) and the offending
// field, all of which are also baked into what().
class ParseError : public Error {
public:
    ParseError(std::string source, long line, std::string field, const std::string& message)
        : Error(format(source, line, field, message)),
          source_(std::move(source)),
          line_(line),
          field_(std::move(field)) {}

    const std::string& source() const noexcept { return source_; }
    long line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& source, long line, const std::string& field,
                              const std::string& message) {
        std::string out = source;
        if (line > 0) {
            out += ":" + std::to_string(line);
        }
        if (!field.empty()) {
            out += ": field '" + field + "'";
        }
        out += ": " + message;
        return out;
    }

    std::string source_;
    long line_;
    std::string field_;
};

// An index and a pipeline configuration that do not belong together.
// Mixing tokenization schemes silently corrupts document-frequency
// semantics, so this is always a hard error.
class ConfigMismatch : public Error {
public:
    using Error::Error;
};

// A numeric result left its valid domain (overflow, division by zero,
// non-finite intermediate).
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace stfidf
