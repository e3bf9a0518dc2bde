#pragma once

#include <stdexcept>
#include <string>

namespace ghost {

enum class ErrorKind {
    lex,
    parse,
    unbound_variable,
    does_not_understand,
    invalid_activation,
    refused_become,
    encoding,
    swap_fault,
    handler_config,
    compact_budget,
    duplicate_name,
    slot_range,
    arity,
    primitive_failed,
    not_wrapped,
    assertion,
    fatal,
};

const char* error_kind_name(ErrorKind kind);

/// Runtime-wide error type. `line`/`column` are 1-based when known, 0 otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, int line = 0, int column = 0)
        : std::runtime_error(std::move(message)), kind(kind), line(line), column(column) {}

    ErrorKind kind;
    int line;
    int column;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message, int line = 0,
                               int column = 0) {
    throw Error(kind, message, line, column);
}

} // namespace ghost
