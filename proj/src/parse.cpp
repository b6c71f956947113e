#include <cctype>
#include <string>

#include "paucity/errors.hpp"
#include "paucity/polyalg.hpp"

namespace paucity {

namespace {

// expr   := term (('+' | '-') term)*
// term   := unary (['*'] unary)*        juxtaposition multiplies: "2x", "x(x+1)"
// unary  := '-' unary | '+' unary | power
// power  := atom ['^' integer]
// atom   := integer | 'x' | '(' expr ')'
class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  IntPoly parse() {
    IntPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial expression: " + msg + " at offset " + std::to_string(pos_) + " in \"" +
                     std::string(s_) + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  IntPoly expr() {
    IntPoly acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  IntPoly term() {
    IntPoly acc = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == 'x' || c == 'X' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  IntPoly unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  IntPoly power() {
    IntPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 64) fail("exponent too large");
      return pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  IntPoly atom() {
    char c = peek();
    if (c == 'x' || c == 'X') {
      ++pos_;
      return IntPoly::x();
    }
    if (c == '(') {
      ++pos_;
      IntPoly inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return IntPoly::constant(BigInt(std::string(s_.substr(start, pos_ - start))));
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

IntPoly parse_coeff_list(std::string_view text) {
  std::vector<BigInt> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view field = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
    BigInt c;
    if (field.empty() || c.set_str(std::string(field), 10) != 0)
      throw ParseError("coefficient list: bad coefficient \"" + std::string(field) + "\"");
    coeffs.push_back(c);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return IntPoly(std::move(coeffs));
}

}  // namespace

IntPoly parse_poly(std::string_view text) {
  bool has_var = false;
  for (char c : text) {
    if (c == 'x' || c == 'X' || c == '(' || c == '*' || c == '^') has_var = true;
  }
  if (text.find(',') != std::string_view::npos || !has_var) {
    if (has_var) throw ParseError("polynomial text mixes a coefficient list with an expression");
    return parse_coeff_list(text);
  }
  return ExprParser(text).parse();
}

}  // namespace paucity
