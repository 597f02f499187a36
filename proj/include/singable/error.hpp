#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace singable {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input syntax. `offset` is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class EmptyLineError : public PreconditionError {
public:
    EmptyLineError() : PreconditionError("line is empty after trimming") {}
};

class UnsupportedNumberError : public Error {
public:
    explicit UnsupportedNumberError(long long n)
        : Error("number out of supported range (|n| <= 999999): " + std::to_string(n)), value_(n) {}
    long long value() const noexcept { return value_; }

private:
    long long value_;
};

class MissingRulesError : public Error {
public:
    using Error::Error;
};

/// Syllable counts of zero where a reference count is required.
class UndefinedReferenceError : public Error {
public:
    using Error::Error;
};

class DegenerateEmbeddingError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace singable
