#pragma once

#include <stdexcept>
#include <string>

namespace skewproj {

enum class ErrorKind {
    Parse,        // malformed scalar, file or witness
    Domain,       // precondition violated (sizes, ranges, zero values)
    Unsupported,  // input outside the representable fragment
    SearchLimit,  // exhaustive search would be too large
    Overflow,     // fixed-width integer arithmetic overflowed
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Unsupported: return "unsupported input";
    case ErrorKind::SearchLimit: return "search too large";
    case ErrorKind::Overflow: return "integer overflow";
    }
    return "error";
}

/// Single exception type for the library; the kind drives CLI exit codes and tests.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

namespace detail {

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "addition");
    return r;
}

inline long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "subtraction");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "multiplication");
    return r;
}

}  // namespace detail
}  // namespace skewproj
