#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "iel/term.hpp"

namespace iel {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line, col;
};

FormulaPtr parse_formula(std::string_view text);
TermPtr parse_term(std::string_view text);

}  // namespace iel
