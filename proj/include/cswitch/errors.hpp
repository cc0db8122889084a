#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cswitch {

enum class ErrorKind {
    dimension_mismatch,
    unknown_label,
    empty_graph,
    duplicate_edge,
    invalid_node,
    syntax,
    malformed_rational,
    schema,
    non_consecutive_path,
    not_strongly_connected,
    bad_subspace_dim,
    cap_exceeded,
    eigen_failure,
    zero_parameter,
    unknown_example,
    invalid_argument,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::unknown_label: return "UnknownLabel";
        case ErrorKind::empty_graph: return "EmptyGraph";
        case ErrorKind::duplicate_edge: return "DuplicateEdge";
        case ErrorKind::invalid_node: return "InvalidNode";
        case ErrorKind::syntax: return "SyntaxError";
        case ErrorKind::malformed_rational: return "MalformedRational";
        case ErrorKind::schema: return "SchemaError";
        case ErrorKind::non_consecutive_path: return "NonConsecutivePath";
        case ErrorKind::not_strongly_connected: return "NotStronglyConnected";
        case ErrorKind::bad_subspace_dim: return "BadSubspaceDim";
        case ErrorKind::cap_exceeded: return "CapExceeded";
        case ErrorKind::eigen_failure: return "EigenFailure";
        case ErrorKind::zero_parameter: return "ZeroParameter";
        case ErrorKind::unknown_example: return "UnknownExampleId";
        case ErrorKind::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

/// Base exception for every failure raised by the toolkit.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when an enumeration would exceed its configured size cap.
/// `required()` is the enumeration size that would have been needed
/// (saturated at the maximum of std::size_t).
class CapExceeded : public Error {
public:
    CapExceeded(std::size_t required, std::size_t cap)
        : Error(ErrorKind::cap_exceeded,
                "enumeration needs " + std::to_string(required) + " paths, cap is " +
                    std::to_string(cap)),
          required_(required),
          cap_(cap) {}

    [[nodiscard]] std::size_t required() const noexcept { return required_; }
    [[nodiscard]] std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t required_;
    std::size_t cap_;
};

/// Parse failure with a 1-based line/column position in the input text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorKind::syntax, "line " + std::to_string(line) + ", column " +
                                       std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace cswitch
