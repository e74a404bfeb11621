#include "npf/jetcalc/text.hpp"

#include <cctype>

namespace npf::jetcalc {

ParseError::ParseError(const std::string& msg, std::size_t l, std::size_t c)
    : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)), line(l), column(c) {}

namespace {

const char* kFallbackLetters = "xyzwvu";

std::string coord_name(int k, const SpacePtr& space) {
  if (space && k < space->d) return space->names[k];
  return std::string(1, kFallbackLetters[k]);
}

}  // namespace

std::string var_token(VarCode v, const SpacePtr& space) {
  SymbolId s = var_symbol(v);
  if (is_coordinate(s)) return coord_name(coordinate_index(s), space);
  std::string out = symbol_name(s);
  if (var_order(v) == 0) return out;
  out += '_';
  for (int k = 0; k < kMaxDim; ++k)
    for (int n = 0; n < var_exp(v, k); ++n) out += coord_name(k, space);
  return out;
}

std::string monomial_text(const Monomial& m, const SpacePtr& space) {
  std::string out;
  const auto& v = m.vars();
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if (!out.empty()) out += '*';
    out += var_token(v[i], space);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string print(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& ts = p.terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    const Rational& c = it->coeff;
    bool neg = c.sign() < 0;
    if (neg)
      out += '-';
    else if (!out.empty())
      out += '+';
    Rational a = neg ? -c : c;
    if (it->mono.empty()) {
      out += a.str();
      continue;
    }
    if (!a.is_one()) out += a.str() + '*';
    out += monomial_text(it->mono, p.space());
  }
  return out;
}

namespace {

class Parser {
public:
  Parser(std::string_view s, SpacePtr space) : s_(s), space_(std::move(space)) {}

  DiffPoly run() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    DiffPoly r = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  DiffPoly expr() {
    PolyAccumulator acc(space_);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    acc.add(term(), neg ? Rational(-1) : Rational(1));
    for (;;) {
      if (eat('+')) {
        acc.add(term());
      } else if (eat('-')) {
        acc.add(term(), Rational(-1));
      } else {
        break;
      }
    }
    return acc.take();
  }

  DiffPoly term() {
    DiffPoly r = power();
    for (;;) {
      if (eat('*')) {
        r = r * power();
      } else if (eat('/')) {
        std::size_t at = pos_;
        DiffPoly den = power();
        if (!den.is_constant() || den.is_zero()) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        r *= Rational(1) / den.constant_value();
      } else {
        return r;
      }
    }
  }

  DiffPoly power() {
    DiffPoly base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      DiffPoly r(Rational(1), space_);
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  DiffPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      DiffPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return DiffPoly(Rational::parse(s_.substr(start, pos_ - start)), space_);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  DiffPoly identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (space_ && name.size() == 1) {
      int k = space_->index_of(name[0]);
      if (k >= 0) {
        if (pos_ < s_.size() && s_[pos_] == '_') fail("coordinates have no jets");
        return DiffPoly::coordinate(space_, k);
      }
    }
    MultiIndex m;
    if (pos_ < s_.size() && s_[pos_] == '_') {
      ++pos_;
      std::size_t ls = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
        int k = space_ ? space_->index_of(s_[pos_]) : -1;
        if (k < 0) fail(std::string("unknown coordinate letter '") + s_[pos_] + "'");
        if (m.e[k] >= kMaxPartial) fail("derivative order too high");
        ++m.e[k];
        ++pos_;
      }
      if (ls == pos_) fail("expected coordinate letters after '_'");
    }
    SymbolId sym;
    try {
      sym = symbol_by_name(name);
    } catch (const std::exception& e) {
      pos_ = start;
      fail(e.what());
    }
    if (is_coordinate(sym)) fail("reserved symbol name");
    return DiffPoly::jet(space_, sym, m);
  }

  std::string_view s_;
  SpacePtr space_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffPoly parse(std::string_view text, const SpacePtr& space) { return Parser(text, space).run(); }

}  // namespace npf::jetcalc
