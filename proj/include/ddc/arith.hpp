#pragma once

#include <cstdint>
#include <variant>

#include "ddc/term.hpp"

namespace ddc {

using Number = std::variant<std::int64_t, double>;

// Evaluates a ground arithmetic expression over + - * / and unary minus.
// Integer operations stay integral except for an inexact '/', which yields a
// float. Throws EngineError on unbound variables, non-numeric leaves,
// unknown functors, integer overflow and division by zero.
Number eval_arith(const Store &s, Term expr);

Term make_number(Store &s, const Number &n);

// Numeric comparison of two evaluated values.
Ordering compare_numeric(const Number &a, const Number &b);

} // namespace ddc
