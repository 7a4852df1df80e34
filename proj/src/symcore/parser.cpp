#include "feff/symcore/parser.hpp"

#include <algorithm>
#include <cctype>

#include "feff/errors.hpp"

namespace feff {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const VarId> allowed) : text_(text), allowed_(allowed) {}

  RatFunc parse() {
    skip();
    if (pos_ == text_.size()) fail("empty expression");
    RatFunc r = expr();
    skip();
    if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  RatFunc term() {
    RatFunc acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RatFunc d = factor();
        if (d.is_zero()) throw ParseError(at, "division by the zero polynomial");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFunc factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    RatFunc b = base();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected non-negative integer exponent");
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 3) throw ParseError(start, "exponent too large");
      b = b.pow(std::stoi(digits));
    }
    return b;
  }

  RatFunc base() {
    skip();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RatFunc(Rational(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto v = var_from_name(name);
      if (!v || std::find(allowed_.begin(), allowed_.end(), *v) == allowed_.end())
        throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
      return RatFunc::var(*v);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::span<const VarId> allowed_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expr(std::string_view text, std::span<const VarId> allowed) { return Parser(text, allowed).parse(); }

RatFunc parse_expr(std::string_view text) {
  std::vector<VarId> all;
  for (VarId v = 0; v < kMaxVars; ++v) all.push_back(v);
  return parse_expr(text, all);
}

}  // namespace feff
