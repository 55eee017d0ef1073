#include <cctype>

#include "alc/algebra/bipoly.hpp"
#include "alc/errors.hpp"

namespace alc::algebra {

namespace {

class Parser {
 public:
  Parser(const std::string& text, VarNames vars, ContextPtr ctx)
      : text_(text), vars_(std::move(vars)), ctx_(std::move(ctx)) {}

  BiPoly parse() {
    BiPoly result = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  BiPoly expr() {
    BiPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  BiPoly term() {
    BiPoly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        BiPoly d = unary();
        if (d.total_degree() > 0) fail("division by a non-constant polynomial");
        if (d.is_zero()) fail("division by zero");
        acc = d.coeff(0, 0).inverse() * acc;
      } else {
        return acc;
      }
    }
  }

  BiPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  BiPoly power() {
    BiPoly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      base = base.pow(std::stoi(text_.substr(start, pos_ - start)));
    }
    return base;
  }

  BiPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      BiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return BiPoly::constant(ParamScalar(parse_rational(text_.substr(start, pos_ - start))), vars_);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      if (name == vars_[0]) return BiPoly::variable(0, vars_);
      if (name == vars_[1]) return BiPoly::variable(1, vars_);
      if (ctx_ && ctx_->has_param() && name == ctx_->param)
        return BiPoly::constant(ParamScalar::parameter(ctx_), vars_);
      if (ctx_ && ctx_->has_extension() && name == "s") return BiPoly::constant(ParamScalar::root(ctx_), vars_);
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  const std::string& text_;
  VarNames vars_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

BiPoly parse_bipoly(const std::string& text, VarNames vars, ContextPtr ctx) {
  BiPoly p = Parser(text, std::move(vars), ctx).parse();
  return p;
}

}  // namespace alc::algebra
