#pragma once

#include <istream>
#include <string>

#include "fairedge/error.hpp"

namespace fairedge::detail {

// Next line that is neither blank nor a '#' comment.
inline bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno)
{
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] inline void parse_fail(std::size_t lineno, const std::string& what)
{
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
}

} // namespace fairedge::detail
