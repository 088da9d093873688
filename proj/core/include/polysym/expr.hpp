#pragma once

// Expression grammar shared by model files and the command line:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' nat)?
//   atom   := rational | identifier | '(' expr ')'
//
// Identifiers are [A-Za-z_][A-Za-z0-9_.]* and must name a chart generator;
// on a shifted chart the differential of x is the generator "dx".
// Juxtaposition is rejected. to_string output parses back to the same value.

#include <string>
#include <string_view>
#include <vector>

#include "polysym/graded_algebra.hpp"

namespace polysym {

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position)
      : Error(message + " at position " + std::to_string(position + 1)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParseResult {
  GradedPoly value;
  std::vector<std::string> warnings;  // e.g. odd generator squared to zero
};

ParseResult parse_expr_with_warnings(std::string_view text, const ChartPtr& chart);
GradedPoly parse_expr(std::string_view text, const ChartPtr& chart);

}  // namespace polysym
