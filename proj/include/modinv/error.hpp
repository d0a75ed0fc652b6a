#pragma once

#include <stdexcept>
#include <string>

namespace modinv {

enum class Errc {
    invalid_argument,
    context_mismatch,
    index_out_of_range,
    syntax,
    not_divisible,
    overflow,
    unknown_id,
    hypothesis,
};

// Short machine-readable name, used as the prefix of CLI error lines.
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Parse failures carry the 1-based column of the offending character.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t column, const std::string& what)
        : Error(Errc::syntax, what + " at column " + std::to_string(column)), column_(column)
    {
    }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

}  // namespace modinv
