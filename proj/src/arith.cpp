#include "ddc/arith.hpp"

#include <cmath>
#include <string>

#include "ddc/errors.hpp"
#include "ddc/format.hpp"

namespace ddc {

namespace {

[[noreturn]] void overflow(const char *op) {
  throw EngineError(ErrorKind::Evaluation,
                    std::string("evaluation error: integer overflow in ") + op);
}

double as_double(const Number &n) {
  return std::visit([](auto v) { return static_cast<double>(v); }, n);
}

Number add(const Number &a, const Number &b) {
  if (auto *x = std::get_if<std::int64_t>(&a))
    if (auto *y = std::get_if<std::int64_t>(&b)) {
      std::int64_t r;
      if (__builtin_add_overflow(*x, *y, &r))
        overflow("+");
      return r;
    }
  return as_double(a) + as_double(b);
}

Number sub(const Number &a, const Number &b) {
  if (auto *x = std::get_if<std::int64_t>(&a))
    if (auto *y = std::get_if<std::int64_t>(&b)) {
      std::int64_t r;
      if (__builtin_sub_overflow(*x, *y, &r))
        overflow("-");
      return r;
    }
  return as_double(a) - as_double(b);
}

Number mul(const Number &a, const Number &b) {
  if (auto *x = std::get_if<std::int64_t>(&a))
    if (auto *y = std::get_if<std::int64_t>(&b)) {
      std::int64_t r;
      if (__builtin_mul_overflow(*x, *y, &r))
        overflow("*");
      return r;
    }
  return as_double(a) * as_double(b);
}

Number divide(const Number &a, const Number &b) {
  if (auto *x = std::get_if<std::int64_t>(&a))
    if (auto *y = std::get_if<std::int64_t>(&b)) {
      if (*y == 0)
        throw EngineError(ErrorKind::Evaluation, "evaluation error: zero_divisor");
      if (*x == INT64_MIN && *y == -1)
        overflow("/");
      if (*x % *y == 0)
        return *x / *y;
      return static_cast<double>(*x) / static_cast<double>(*y);
    }
  const double d = as_double(b);
  if (d == 0.0)
    throw EngineError(ErrorKind::Evaluation, "evaluation error: zero_divisor");
  return as_double(a) / d;
}

Number negate(const Number &a) {
  if (auto *x = std::get_if<std::int64_t>(&a)) {
    if (*x == INT64_MIN)
      overflow("-");
    return -*x;
  }
  return -std::get<double>(a);
}

} // namespace

Number eval_arith(const Store &s, Term expr) {
  const Term t = s.deref(expr);
  switch (s.tag(t)) {
  case Tag::Int:
    return s.int_value(t);
  case Tag::Float:
    return s.float_value(t);
  case Tag::Var:
    throw EngineError(ErrorKind::Instantiation,
                      "instantiation error: unbound variable in arithmetic expression");
  case Tag::Atom:
    throw EngineError(ErrorKind::Type, "type error: evaluable expected, found " +
                                           format_term(s, t, {.quoted = true}));
  default:
    break;
  }
  const AtomId f = s.name(t);
  const std::uint32_t n = s.arity(t);
  if (n == 2) {
    const Number a = eval_arith(s, s.arg(t, 0));
    const Number b = eval_arith(s, s.arg(t, 1));
    if (f == atoms::plus)
      return add(a, b);
    if (f == atoms::minus)
      return sub(a, b);
    if (f == atoms::star)
      return mul(a, b);
    if (f == atoms::slash)
      return divide(a, b);
  } else if (n == 1 && f == atoms::minus) {
    return negate(eval_arith(s, s.arg(t, 0)));
  }
  throw EngineError(ErrorKind::Type, "type error: evaluable expected, found " +
                                         atom_name(f) + "/" + std::to_string(n));
}

Term make_number(Store &s, const Number &n) {
  if (auto *i = std::get_if<std::int64_t>(&n))
    return s.make_int(*i);
  return s.make_float(std::get<double>(n));
}

Ordering compare_numeric(const Number &a, const Number &b) {
  if (auto *x = std::get_if<std::int64_t>(&a))
    if (auto *y = std::get_if<std::int64_t>(&b))
      return *x < *y ? Ordering::Less : (*y < *x ? Ordering::Greater : Ordering::Equal);
  const double x = as_double(a);
  const double y = as_double(b);
  return x < y ? Ordering::Less : (y < x ? Ordering::Greater : Ordering::Equal);
}

} // namespace ddc
