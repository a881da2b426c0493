#pragma once

// Text forms of algebraic normal forms.
//
// Standard grammar: terms joined by '+'; a term is '1' or factors 'x<i>'
// joined by '*'; whitespace is ignored and "0" denotes the empty sum.
//
// Digit shorthand (n <= 9): terms joined by '+' or U+2295, each term a string
// of variable digits, so "14 + 25 + 36" is x1*x4 + x2*x5 + x3*x6.

#include <string>
#include <string_view>
#include <vector>

#include "bentkit/boolean_function.hpp"

namespace bentkit {

enum class AnfSyntax { kStandard, kDigits };

Anf parse_anf(std::string_view text, int n, AnfSyntax syntax = AnfSyntax::kStandard);

std::string format_anf(const Anf& anf);
std::string format_anf_digits(const Anf& anf);

// {"n": 6, "m": 2, "coords": ["x1*x4+...", "..."]}
struct FunctionRecord {
  VectorialFunction function;
  std::string label;
};

FunctionRecord parse_function_json(std::string_view json_text, AnfSyntax syntax = AnfSyntax::kStandard);
std::string function_to_json(const VectorialFunction& F, const std::string& label = {});

}  // namespace bentkit
