#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zerohess {

enum class ErrorKind {
    dimension,
    domain,
    undefined_input,
    parse,
    cap_exceeded,
    certificate_invalid,
    not_a_member,
    unsupported_corank,
    invalid_relation,
    degenerate_matrix,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(ErrorKind::parse,
                what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line),
          column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace zerohess
