#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iwalab {

// One coefficient of a parsed polynomial. A base-p digit string
// "(a0.a1...am)_p" denotes sum a_i p^i and is known mod p^(m+1); `precision`
// records that absolute precision.
struct ParsedCoefficient {
  mpq_class value = 0;
  std::optional<long> precision;
  std::optional<long> digit_base;
};

// Parses "c0+c1*T+c2*T^2" style text in the given variable. Coefficients may
// be integers, fractions a/b, or parenthesised digit strings. Repeated powers
// accumulate. Index i of the result is the coefficient of var^i.
std::vector<ParsedCoefficient> parse_polynomial(std::string_view text, char var);

// Parses one coefficient token in isolation (integer, a/b, or digit string).
ParsedCoefficient parse_coefficient(std::string_view text);

// Integer-only convenience used by field descriptions.
std::vector<mpz_class> parse_integer_polynomial(std::string_view text, char var);

std::string format_polynomial(const std::vector<mpq_class>& coeffs, char var);

}  // namespace iwalab
