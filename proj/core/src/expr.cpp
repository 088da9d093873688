#include "polysym/expr.hpp"

#include <cctype>

namespace polysym {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

class Parser {
 public:
  Parser(std::string_view text, const ChartPtr& chart) : text_(text), chart_(chart) {}

  ParseResult run() {
    GradedPoly v = expr();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'; juxtaposition is not multiplication");
    return {std::move(v), std::move(warnings_)};
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

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

  GradedPoly expr() {
    GradedPoly v = term();
    for (;;) {
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }

  GradedPoly term() {
    const std::size_t start = pos_;
    GradedPoly v = unary();
    while (accept('*')) {
      GradedPoly rhs = unary();
      GradedPoly prod = v * rhs;
      if (prod.is_zero() && !v.is_zero() && !rhs.is_zero())
        warnings_.push_back("product '" + std::string(text_.substr(start, pos_ - start)) +
                            "' vanishes: an odd factor appears twice");
      v = std::move(prod);
    }
    return v;
  }

  GradedPoly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  GradedPoly power() {
    const std::size_t start = pos_;
    GradedPoly base = atom();
    if (!accept('^')) return base;
    skip();
    const std::size_t at = pos_;
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    if (digits.empty()) fail("expected a natural-number exponent");
    if (digits.size() > 9) {
      pos_ = at;
      fail("exponent too large");
    }
    auto e = static_cast<std::uint32_t>(std::stoul(digits));
    GradedPoly out = pow(base, e);
    if (e >= 2 && base.odd().value_or(false) && out.is_zero() && !base.is_zero())
      warnings_.push_back("odd expression '" + std::string(text_.substr(start, at - start)) +
                          "' raised to a power >= 2 is zero");
    return out;
  }

  GradedPoly atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      GradedPoly v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::size_t den = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den == pos_) fail("expected a denominator");
      }
      Rational q;
      try {
        q = parse_rational(text_.substr(start, pos_ - start));
      } catch (const Error&) {
        pos_ = start;
        fail("invalid rational");
      }
      return GradedPoly::constant(chart_, q);
    }
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = chart_->find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown generator '" + std::string(name) + "'");
      }
      GradedPoly g = GradedPoly::generator(chart_, *idx);
      skip();
      if (pos_ < text_.size() && (ident_start(text_[pos_]) || std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                  text_[pos_] == '('))
        fail("missing '*'; juxtaposition is not multiplication");
      return g;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const ChartPtr& chart_;
  std::size_t pos_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace

ParseResult parse_expr_with_warnings(std::string_view text, const ChartPtr& chart) {
  return Parser(text, chart).run();
}

GradedPoly parse_expr(std::string_view text, const ChartPtr& chart) {
  return parse_expr_with_warnings(text, chart).value;
}

}  // namespace polysym
