#include <cctype>

#include "jwb/bundles.hpp"

namespace jwb::bundles {

namespace {

struct Parser {
  const std::string& s;
  const CurveContext& ctx;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("parse error at offset " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_ident() {
    skip_ws();
    return pos < s.size() &&
           (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_');
  }

  std::string ident() {
    skip_ws();
    if (!peek_ident()) fail("expected identifier");
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail("expected integer");
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return std::stol(s.substr(start, pos - start));
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      skip_ws();
      if (eat('+'))
        e = e_sum({std::move(e), term()});
      else
        return e;
    }
  }

  Expr term() {
    Expr e = powed();
    while (true) {
      skip_ws();
      if (eat('*'))
        e = e_tensor({std::move(e), powed()});
      else
        return e;
    }
  }

  Expr powed() {
    Expr e = factor();
    skip_ws();
    if (eat('^')) {
      long k = integer();
      if (k < 0) fail("direct-sum power must be nonnegative");
      e = e_pow(std::move(e), k);
    }
    return e;
  }

  Expr factor() {
    skip_ws();
    if (eat('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (!peek_ident()) fail("expected atom or function");
    size_t save = pos;
    std::string id = ident();
    if (id == "O") return e_O();
    if (id == "E0") return e_E0();
    if (id == "E0v") return e_E0(true);
    if (id == "F") {
      long r = integer();
      if (r < 1) fail("F rank must be positive");
      return e_F(static_cast<int>(r));
    }
    if (id == "L") {
      expect('(');
      long d = integer();
      std::map<std::string, int> word;
      if (eat(';')) {
        while (peek_ident()) {
          std::string sym = ident();
          int e2 = 1;
          if (eat('^')) e2 = static_cast<int>(integer());
          word[sym] += e2;
        }
      }
      expect(')');
      return e_line(d, std::move(word));
    }
    if (id == "dual" || id == "det" || id == "End") {
      expect('(');
      Expr a = expr();
      expect(')');
      if (id == "dual") return e_dual(std::move(a));
      if (id == "det") return e_det(std::move(a));
      return e_end(std::move(a));
    }
    if (id == "Hom") {
      expect('(');
      Expr a = expr();
      expect(',');
      Expr b = expr();
      expect(')');
      return e_hom(std::move(a), std::move(b));
    }
    if (id == "Tr" || id == "res") {
      expect('[');
      std::string ext = ident();
      expect(']');
      expect('(');
      Expr a = expr();
      expect(')');
      return id == "Tr" ? e_trace(ext, std::move(a)) : e_res(ext, std::move(a));
    }
    if (ctx.find_indec(id)) return e_ind(id);
    pos = save;
    fail("unknown atom '" + id + "'");
  }
};

}  // namespace

Expr parse_expr(const std::string& text, const CurveContext& ctx) {
  Parser p{text, ctx};
  Expr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace jwb::bundles
