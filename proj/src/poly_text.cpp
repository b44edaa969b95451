#include "iwalab/poly_text.hpp"

#include <cctype>

#include "iwalab/errors.hpp"

namespace iwalab {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  char take() {
    skip_ws();
    if (i_ >= s_.size()) fail(ErrorKind::ParseError, "unexpected end of input in '" + std::string(s_) + "'");
    return s_[i_++];
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip_ws();
    std::string out;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) out += s_[i_++];
    return out;
  }
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorKind::ParseError, what + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  size_t i_ = 0;
};

// "(a0.a1a2...am)_p" or "(0.a1...am)_p": inside parentheses already consumed.
ParsedCoefficient parse_digit_string(Cursor& cur) {
  std::string head = cur.digits();
  if (!cur.accept('.')) cur.error("expected '.' in digit string");
  // Digit groups may be separated by spaces for readability.
  std::string tail = cur.digits();
  for (std::string more = cur.digits(); !more.empty(); more = cur.digits()) tail += more;
  if (!cur.accept(')')) cur.error("expected ')' closing digit string");
  if (!cur.accept('_')) cur.error("expected '_p' after digit string");
  std::string base_text = cur.digits();
  if (base_text.empty() || head.size() > 1 || tail.empty()) cur.error("malformed digit string");
  long base = std::stol(base_text);
  if (base < 2) cur.error("digit base must be at least 2");
  mpz_class value = 0;
  mpz_class power = 1;
  auto digit = [&](char c) {
    long d = c - '0';
    if (d >= base) cur.error("digit exceeds base");
    return d;
  };
  if (!head.empty()) value += digit(head[0]);
  for (char c : tail) {
    power *= base;
    value += power * digit(c);
  }
  ParsedCoefficient out;
  out.value = mpq_class(value);
  out.precision = static_cast<long>(tail.size()) + 1;
  out.digit_base = base;
  return out;
}

ParsedCoefficient parse_number(Cursor& cur) {
  if (cur.accept('(')) return parse_digit_string(cur);
  std::string num = cur.digits();
  if (num.empty()) cur.error("expected a number");
  mpq_class value{mpz_class(num)};
  if (cur.accept('/')) {
    std::string den = cur.digits();
    if (den.empty()) cur.error("expected a denominator");
    mpz_class d(den);
    if (d == 0) cur.error("zero denominator");
    value /= mpq_class(d);
  }
  value.canonicalize();
  ParsedCoefficient out;
  out.value = value;
  return out;
}

}  // namespace

ParsedCoefficient parse_coefficient(std::string_view text) {
  Cursor cur(text);
  bool negative = cur.accept('-');
  if (!negative) cur.accept('+');
  ParsedCoefficient c = parse_number(cur);
  if (!cur.done()) cur.error("trailing characters");
  if (negative) c.value = -c.value;
  return c;
}

std::vector<ParsedCoefficient> parse_polynomial(std::string_view text, char var) {
  Cursor cur(text);
  std::vector<ParsedCoefficient> out;
  if (cur.done()) cur.error("empty polynomial");
  bool first = true;
  while (!cur.done()) {
    int sign = 1;
    if (cur.accept('-')) {
      sign = -1;
    } else if (!cur.accept('+') && !first) {
      cur.error("expected '+' or '-'");
    }
    first = false;
    ParsedCoefficient coeff;
    coeff.value = 1;
    bool have_coeff = false;
    char c = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '(') {
      coeff = parse_number(cur);
      have_coeff = true;
    }
    long power = 0;
    bool star = have_coeff && cur.accept('*');
    if (cur.peek() == var) {
      cur.take();
      power = 1;
      if (cur.accept('^')) {
        std::string e = cur.digits();
        if (e.empty()) cur.error("expected exponent");
        power = std::stol(e);
      }
    } else if (star || !have_coeff) {
      cur.error(std::string("expected variable '") + var + "'");
    }
    if (static_cast<long>(out.size()) <= power) out.resize(power + 1);
    ParsedCoefficient& slot = out[power];
    slot.value += sign * coeff.value;
    if (coeff.precision) {
      slot.precision = slot.precision ? std::min(*slot.precision, *coeff.precision) : coeff.precision;
      slot.digit_base = coeff.digit_base;
    }
  }
  return out;
}

std::vector<mpz_class> parse_integer_polynomial(std::string_view text, char var) {
  std::vector<mpz_class> out;
  for (const auto& c : parse_polynomial(text, var)) {
    if (c.value.get_den() != 1 || c.precision)
      fail(ErrorKind::ParseError, "integer coefficients required in '" + std::string(text) + "'");
    out.push_back(c.value.get_num());
  }
  return out;
}

std::string format_polynomial(const std::vector<mpq_class>& coeffs, char var) {
  std::string out;
  for (size_t i = coeffs.size(); i-- > 0;) {
    const mpq_class& c = coeffs[i];
    if (c == 0) continue;
    bool neg = c < 0;
    mpq_class mag = neg ? mpq_class(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    bool unit = mag == 1;
    if (!unit || i == 0) out += mag.get_str();
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace iwalab
