#pragma once

#include <string>
#include <string_view>

#include "jetgeo/vector_field.hpp"

namespace jetgeo {

struct ParseError : std::runtime_error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

/// Parse a single expression. Variables are x1..xn, any other identifier is
/// a parameter; sin/cos/exp are the available functions; `^` takes integer
/// exponents and associates to the right. `t` is rejected (fields are
/// autonomous).
ExprPtr parse_expression(std::string_view text);

/// Parse a field file: one `X<i> = <expr>` per line, `#` comments, blank
/// lines ignored. Component labels must be X1..Xn, contiguous, no
/// duplicates. Lines starting with `#!override dX<i>/dx<j> =` install a
/// replacement partial derivative (fault-injection fixture for the
/// verification suites).
VectorField parse_field(const std::string& text, ParamMap params);

} // namespace jetgeo
