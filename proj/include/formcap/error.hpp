#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace formcap {

enum class ErrorCode {
    invalid_argument,
    not_found,
    conflict,
    parse,
    no_data,
    no_menu,
};

// Every failure raised by the library. The code decides the HTTP status
// in the service layer; line() is non-zero only for parse errors.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::size_t line = 0)
        : std::runtime_error(message), code_(code), line_(line) {}

    ErrorCode code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }

private:
    ErrorCode code_;
    std::size_t line_;
};

}  // namespace formcap
