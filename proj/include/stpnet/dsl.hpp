#pragma once

#include <string>

#include "stpnet/network.hpp"

namespace stpnet {

/// Syntax error with 1-based location.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/// Parses the network definition text:
///   states <n>
///   controls <m>
///   x<i>' = <expr>
///   u<j>' = <expr>
///   g = <expr>
/// Expressions use &, |, !, ^, atoms x<i>, u<j>, d(g)/d(u<k>), 0, 1.
/// One binary operator per parenthesis level; nesting needs parentheses.
/// '#' starts a comment. The g line may be omitted when no rule uses a
/// derivative atom.
NetworkSpec parse_network(const std::string& text);

/// Canonical text form; parse_network(print_network(s)) is structurally
/// equal to s.
std::string print_network(const NetworkSpec& spec);

}  // namespace stpnet
