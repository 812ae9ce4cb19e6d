#include "qmomap/parse.hpp"

#include <cctype>

#include "qmomap/error.hpp"

namespace qmomap {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const Universe& u) : s_(text), u_(u) {}

  MultiPoly run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly sum(u_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    MultiPoly t = term();
    sum += negate ? -t : t;
    while (true) {
      if (accept('+')) sum += term();
      else if (accept('-')) sum -= term();
      else break;
    }
    return sum;
  }

  MultiPoly term() {
    MultiPoly p = power();
    while (accept('*')) p = p * power();
    return p;
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected exponent", pos_);
      unsigned long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_++] - '0');
        if (e > 255) throw ParseError("exponent too large", start);
      }
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  MultiPoly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (name == "i") return MultiPoly::constant(u_, GaussianRational::i());
      auto v = u_.lookup(name);
      if (!v) throw ParseError("unknown variable '" + std::string(name) + "' for universe " + u_.describe(), start);
      return MultiPoly::variable(u_, *v);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  MultiPoly number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t den = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == den) throw ParseError("expected denominator", den);
    }
    try {
      return MultiPoly::constant(u_, GaussianRational::parse_rational(s_.substr(start, pos_ - start)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), start);
    }
  }

  std::string_view s_;
  const Universe& u_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const Universe& u) { return Parser(text, u).run(); }

}  // namespace qmomap
