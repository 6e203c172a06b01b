#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace adequal {

/// Domain-level failure kinds. The CLI maps every kind to exit code 1,
/// except parse errors, which are usage errors (exit code 2).
enum class ErrorKind {
    zero_division,
    unlimited,
    zero_input,
    no_bracket,
    out_of_range,
    domain_violation,
    stance_undecided,
    invalid_stance,
    not_representable,
    insufficient_precision,
    derivative_mismatch,
    invalid_argument,
    parse_error,
};

inline const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::zero_division: return "ZeroDivision";
    case ErrorKind::unlimited: return "Unlimited";
    case ErrorKind::zero_input: return "ZeroInput";
    case ErrorKind::no_bracket: return "NoBracket";
    case ErrorKind::out_of_range: return "OutOfRange";
    case ErrorKind::domain_violation: return "DomainViolation";
    case ErrorKind::stance_undecided: return "StanceUndecided";
    case ErrorKind::invalid_stance: return "InvalidStance";
    case ErrorKind::not_representable: return "NotRepresentable";
    case ErrorKind::insufficient_precision: return "InsufficientPrecision";
    case ErrorKind::derivative_mismatch: return "DerivativeMismatch";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::parse_error: return "ParseError";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the expression and germ-rule parsers. Carries the byte offset
/// of the offending token and the set of tokens that would have been valid.
class ParseError : public Error {
public:
    ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
        : Error(ErrorKind::parse_error, describe(position, expected, found)),
          position_(position), expected_(std::move(expected))
    {}

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string describe(std::size_t position, const std::vector<std::string>& expected,
                                const std::string& found)
    {
        std::string msg = "at offset " + std::to_string(position) + ", found " + found + ", expected one of {";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i != 0) msg += ", ";
            msg += expected[i];
        }
        return msg + "}";
    }

    std::size_t position_;
    std::vector<std::string> expected_;
};

} // namespace adequal
