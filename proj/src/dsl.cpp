#include "focklab/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace focklab {

ParseError::ParseError(std::size_t position, const std::string& message, std::string_view text)
    : std::runtime_error("position " + std::to_string(position) + ": " + message + "\n  " +
                         std::string(text) + "\n  " + std::string(position, ' ') + "^"),
      position_(position),
      message_(message) {}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx c) {
  if (c.imag() == 0.0 && !std::signbit(c.imag())) return format_double(c.real());
  std::string im = format_double(std::abs(c.imag()));
  return "(" + format_double(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + im + "i)";
}

namespace {

// Complex product that keeps signed zeros when either side is real; the printer relies on
// "(-0-3i)" reading back as written.
cplx scale_coeff(cplx a, cplx b) {
  if (a.imag() == 0.0 && !std::signbit(a.imag())) return {a.real() * b.real(), a.real() * b.imag()};
  if (b.imag() == 0.0 && !std::signbit(b.imag())) return {a.real() * b.real(), a.imag() * b.real()};
  return a * b;
}

struct ParsedMonomial {
  std::map<int, int> powers;  // 0-based variable -> exponent
  cplx coeff = 1.0;
};

struct ParsedPoly {
  std::vector<ParsedMonomial> terms;
};

enum class ItemKind { poly, kernel, expsq, exp };

struct ParsedItem {
  ItemKind kind = ItemKind::poly;
  std::size_t position = 0;
  ParsedPoly poly;
  bool has_poly = false;
  std::vector<cplx> vec;  // w or a
  bool has_vec = false;
  double alpha = 0.0;
  bool has_alpha = false;
  cplx gamma = 0.0;
  bool has_gamma = false;
  bool normalized = false;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<ParsedItem> parse_all() {
    std::vector<ParsedItem> items;
    items.push_back(item());
    skip_ws();
    while (peek() == '|') {
      ++pos_;
      items.push_back(item());
      skip_ws();
    }
    if (!at_end()) fail("unexpected character '" + std::string(1, peek()) + "'");
    return items;
  }

  // a, b, ... with optional surrounding parentheses
  std::vector<cplx> point() {
    skip_ws();
    bool paren = peek() == '(';
    if (paren) ++pos_;
    std::vector<cplx> v;
    v.push_back(complex_literal());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      v.push_back(complex_literal());
      skip_ws();
    }
    if (paren) expect(')');
    skip_ws();
    if (!at_end()) fail("unexpected character '" + std::string(1, peek()) + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg, text_); }
  [[noreturn]] void fail_at(std::size_t p, const std::string& msg) const {
    throw ParseError(p, msg, text_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  ParsedItem item() {
    skip_ws();
    ParsedItem it;
    it.position = pos_;
    std::string kind = identifier();
    expect(':');
    if (kind == "poly") {
      it.kind = ItemKind::poly;
      it.poly = polynomial();
      it.has_poly = true;
      return it;
    }
    if (kind == "kernel") {
      it.kind = ItemKind::kernel;
    } else if (kind == "expsq") {
      it.kind = ItemKind::expsq;
    } else if (kind == "exp") {
      it.kind = ItemKind::exp;
    } else {
      fail_at(it.position, "unknown item kind '" + kind + "' (expected poly, kernel, expsq, exp)");
    }
    key_values(it);
    return it;
  }

  void key_values(ParsedItem& it) {
    while (true) {
      skip_ws();
      std::size_t kpos = pos_;
      std::string key = identifier();
      skip_ws();
      if (key == "normalized") {
        if (it.kind != ItemKind::kernel) fail_at(kpos, "'normalized' applies to kernel items only");
        it.normalized = true;
        if (peek() == '=') {
          ++pos_;
          skip_ws();
          std::string v = identifier_or_digit();
          if (v == "0" || v == "false") it.normalized = false;
          else if (v != "1" && v != "true") fail_at(kpos, "normalized expects 0/1/true/false");
        }
      } else {
        expect('=');
        if (key == "alpha" && it.kind == ItemKind::kernel) {
          it.alpha = real_number();
          it.has_alpha = true;
        } else if (key == "w" && it.kind == ItemKind::kernel) {
          it.vec = vector();
          it.has_vec = true;
        } else if (key == "gamma" && it.kind == ItemKind::expsq) {
          it.gamma = complex_value();
          it.has_gamma = true;
        } else if (key == "a" && (it.kind == ItemKind::exp || it.kind == ItemKind::expsq)) {
          it.vec = vector();
          it.has_vec = true;
        } else if (key == "poly" && (it.kind == ItemKind::exp || it.kind == ItemKind::expsq)) {
          it.poly = polynomial();
          it.has_poly = true;
        } else {
          fail_at(kpos, "unknown key '" + key + "' for this item");
        }
      }
      skip_ws();
      if (peek() != ';') break;
      ++pos_;
    }
    if (it.kind == ItemKind::kernel && (!it.has_alpha || !it.has_vec))
      fail_at(it.position, "kernel requires alpha and w");
    if (it.kind == ItemKind::kernel && !(it.alpha > 0.0))
      fail_at(it.position, "kernel alpha must be positive");
    if (it.kind == ItemKind::expsq && !it.has_gamma) fail_at(it.position, "expsq requires gamma");
    if (it.kind == ItemKind::exp && !it.has_vec) fail_at(it.position, "exp requires a");
  }

  std::string identifier_or_digit() {
    std::size_t start = pos_;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // unsigned decimal literal; returns nullopt if none at the cursor
  std::optional<double> unsigned_number() {
    if (at_end()) return std::nullopt;
    char c = peek();
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return std::nullopt;
    double v = 0.0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  double real_number() {
    skip_ws();
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    auto v = unsigned_number();
    if (!v) fail("expected number");
    return sign * *v;
  }

  // a | bi | a+bi | a-bi | i | -i ; no surrounding parentheses
  cplx complex_literal() {
    skip_ws();
    double s1 = 1.0;
    if (peek() == '-' || peek() == '+') {
      s1 = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    auto a = unsigned_number();
    if (peek() == 'i') {
      ++pos_;
      return {0.0, s1 * a.value_or(1.0)};
    }
    if (!a) fail("expected complex literal");
    double re = s1 * *a;
    if (peek() == '+' || peek() == '-') {
      double s2 = peek() == '-' ? -1.0 : 1.0;
      std::size_t save = pos_;
      ++pos_;
      auto b = unsigned_number();
      if (peek() != 'i') {
        pos_ = save;
        return re;
      }
      ++pos_;
      return {re, s2 * b.value_or(1.0)};
    }
    return re;
  }

  cplx complex_value() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      cplx c = complex_literal();
      expect(')');
      return c;
    }
    return complex_literal();
  }

  std::vector<cplx> vector() {
    expect('(');
    std::vector<cplx> v;
    v.push_back(complex_literal());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      v.push_back(complex_literal());
      skip_ws();
    }
    expect(')');
    return v;
  }

  ParsedPoly polynomial() {
    ParsedPoly p;
    skip_ws();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    p.terms.push_back(monomial_term(sign));
    while (true) {
      skip_ws();
      if (peek() != '+' && peek() != '-') break;
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skip_ws();
      // a second sign belongs to the literal, e.g. "1 + -2*z"
      if (peek() == '-' || peek() == '+') {
        sign *= peek() == '-' ? -1.0 : 1.0;
        ++pos_;
      }
      p.terms.push_back(monomial_term(sign));
    }
    return p;
  }

  ParsedMonomial monomial_term(double sign) {
    ParsedMonomial m;
    m.coeff = sign;
    factor(m);
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      factor(m);
    }
    return m;
  }

  void factor(ParsedMonomial& m) {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      m.coeff = scale_coeff(m.coeff, complex_literal());
      expect(')');
      return;
    }
    if (c == 'z') {
      std::size_t vpos = pos_;
      ++pos_;
      int var = 0;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), var);
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        if (var < 1) fail_at(vpos, "variable index must be >= 1");
        var -= 1;
      }
      int e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), e);
        if (res.ec != std::errc() || e < 0) fail("expected non-negative integer exponent");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
      }
      m.powers[var] += e;
      return;
    }
    if (c == 'i') {
      ++pos_;
      m.coeff = scale_coeff(m.coeff, cplx{0.0, 1.0});
      return;
    }
    auto v = unsigned_number();
    if (!v) fail("expected coefficient, variable, or '('");
    if (peek() == 'i') {
      ++pos_;
      m.coeff = scale_coeff(m.coeff, cplx{0.0, *v});
    } else {
      m.coeff = scale_coeff(m.coeff, *v);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Polynomial build_poly(const ParsedPoly& pp, int n, const Parser& parser, std::size_t where) {
  Polynomial p(n);
  for (const auto& t : pp.terms) {
    std::vector<int> e(static_cast<std::size_t>(n));
    for (auto [var, pw] : t.powers) {
      if (var >= n) parser.fail_at(where, "variable z" + std::to_string(var + 1) + " exceeds dimension " +
                                             std::to_string(n));
      e[static_cast<std::size_t>(var)] += pw;
    }
    p.add(MultiIndex(std::move(e)), t.coeff);
  }
  return p;
}

int poly_max_var(const ParsedPoly& pp) {
  int v = -1;
  for (const auto& t : pp.terms) {
    for (auto [var, pw] : t.powers) v = std::max(v, var);
  }
  return v;
}

}  // namespace

EntireFn parse_fn(std::string_view text, int n) {
  Parser parser(text);
  auto items = parser.parse_all();

  if (n <= 0) {
    int vec_dim = 0;
    int var_dim = 1;
    for (const auto& it : items) {
      if (it.has_vec) {
        int d = static_cast<int>(it.vec.size());
        if (vec_dim && d != vec_dim) parser.fail_at(it.position, "inconsistent vector lengths");
        vec_dim = d;
      }
      if (it.has_poly) var_dim = std::max(var_dim, poly_max_var(it.poly) + 1);
    }
    n = vec_dim ? vec_dim : var_dim;
  }

  EntireFn f(n);
  for (const auto& it : items) {
    if (it.has_vec && static_cast<int>(it.vec.size()) != n) {
      parser.fail_at(it.position, "vector length " + std::to_string(it.vec.size()) +
                                      " does not match dimension " + std::to_string(n));
    }
    Polynomial poly = it.has_poly ? build_poly(it.poly, n, parser, it.position)
                                  : Polynomial::constant(n, 1.0);
    switch (it.kind) {
      case ItemKind::poly:
        f = f + EntireFn::polynomial(std::move(poly));
        break;
      case ItemKind::kernel: {
        CPoint w(it.vec);
        f = f + (it.normalized ? EntireFn::normalized_kernel(it.alpha, w) : EntireFn::kernel(it.alpha, w));
        break;
      }
      case ItemKind::expsq: {
        if (n != 1) parser.fail_at(it.position, "expsq requires dimension 1");
        std::vector<cplx> a = it.has_vec ? it.vec : std::vector<cplx>{0.0};
        f = f + EntireFn(1, {Term{std::move(poly), std::move(a), it.gamma}});
        break;
      }
      case ItemKind::exp:
        f = f + EntireFn(n, {Term{std::move(poly), it.vec, 0.0}});
        break;
    }
  }
  return f;
}

namespace {

std::string print_poly(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.coeffs()) {
    if (!first) out += " + ";
    first = false;
    out += format_complex(c);
    for (int k = 0; k < m.dim(); ++k) {
      if (m[k] == 0) continue;
      out += "*z" + std::to_string(k + 1);
      if (m[k] > 1) out += "^" + std::to_string(m[k]);
    }
  }
  return out;
}

std::string print_vec(const std::vector<cplx>& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    std::string s = format_complex(v[k]);
    // strip the parentheses a non-real literal carries
    if (s.front() == '(') s = s.substr(1, s.size() - 2);
    out += s;
  }
  return out + ")";
}

}  // namespace

std::string print_fn(const EntireFn& f) {
  if (f.is_zero()) return "poly: 0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " | ";
    if (t.has_quadratic()) {
      std::string g = format_complex(t.quadratic);
      if (g.front() == '(') g = g.substr(1, g.size() - 2);
      out += "expsq: gamma=" + g;
      if (t.has_linear()) out += "; a=" + print_vec(t.linear);
      out += "; poly=" + print_poly(t.poly);
    } else if (t.has_linear()) {
      out += "exp: a=" + print_vec(t.linear) + "; poly=" + print_poly(t.poly);
    } else {
      out += "poly: " + print_poly(t.poly);
    }
  }
  return out;
}

CPoint parse_point(std::string_view text, int n) {
  Parser parser(text);
  auto v = parser.point();
  if (n > 0 && static_cast<int>(v.size()) != n)
    throw ParseError(0, "point has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(n), text);
  return CPoint(std::move(v));
}

}  // namespace focklab
