#pragma once

#include <functional>
#include <string>

namespace levylab {

/// Compiles an arithmetic expression in the variable `u` into an evaluator.
///
/// Grammar: + - * / ^ (right-assoc), parentheses, numeric literals, and the
/// functions abs, exp, ln, log, sqrt, pow(x,y), min(x,y), max(x,y).
/// Example: "1/(abs(u)^2 * (abs(ln(abs(u))) + 1))".
/// Throws ConfigError on malformed input.
std::function<double(double)> compile_density_expression(
    const std::string& text);

}  // namespace levylab
