#include "npf/civita/formula.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace npf::civita {

using jetcalc::ParseError;

bool CivitaFormula::has_free() const {
  for (const auto& m : markers)
    if (m.free) return true;
  return false;
}

void CivitaFormula::validate() const {
  if (!space) throw std::invalid_argument("formula has no base space");
  bool any_free = has_free();
  for (const auto& m : markers) {
    if (static_cast<bool>(m.free) != any_free) throw std::invalid_argument("free index on some markers only");
    validate_marker(m, space->d, tuples);
  }
}

std::string position_letters(int d) {
  switch (d) {
    case 2: return "xy";
    case 3: return "uvw";
    case 4: return "stuv";
    case 5: return "rstuv";
    case 6: return "qrstuv";
    default: throw std::invalid_argument("no tuple letters for this dimension");
  }
}

namespace {

struct LineParser {
  std::string_view s;
  std::size_t line;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, pos + 1); }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool at_digit() {
    skip();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  long number() {
    if (!at_digit()) fail("expected a number");
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos++] - '0');
      if (v > 1000000000L) fail("number too large");
    }
    return v;
  }
  std::string word() {
    skip();
    std::size_t b = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected a name");
    return std::string(s.substr(b, pos - b));
  }
};

Letter parse_letter(LineParser& p, const std::string& letters, int tuples) {
  if (p.pos >= p.s.size()) p.fail("expected a tuple letter");
  auto at = letters.find(p.s[p.pos]);
  if (at == std::string::npos) p.fail(std::string("unknown tuple letter '") + p.s[p.pos] + "'");
  ++p.pos;
  if (p.pos >= p.s.size() || !std::isdigit(static_cast<unsigned char>(p.s[p.pos]))) p.fail("expected a tuple number");
  long k = 0;
  while (p.pos < p.s.size() && std::isdigit(static_cast<unsigned char>(p.s[p.pos]))) k = k * 10 + (p.s[p.pos++] - '0');
  if (k < 1 || k > tuples) p.fail("tuple number out of range");
  return {static_cast<std::uint8_t>(k - 1), static_cast<std::uint8_t>(at)};
}

Marker parse_marker(LineParser& p, int d, int tuples) {
  const std::string letters = position_letters(d);
  Marker m;
  bool neg = false;
  if (p.eat('-')) neg = true;
  else p.eat('+');
  bool need_factor = true;
  if (p.at_digit()) {
    long num = p.number();
    long den = 1;
    if (p.eat('/')) den = p.number();
    if (den == 0) p.fail("zero denominator");
    m.coeff = Rational(num) / Rational(den);
    need_factor = false;
    p.skip();
    if (p.pos >= p.s.size()) {
      if (neg) m.coeff = -m.coeff;
      return m;
    }
    if (!p.eat('*')) p.fail("expected '*'");
    need_factor = true;
  }
  if (neg) m.coeff = -m.coeff;
  while (need_factor) {
    p.skip();
    std::size_t start = p.pos;
    std::string name;
    while (p.pos < p.s.size() && std::isalnum(static_cast<unsigned char>(p.s[p.pos]))) name += p.s[p.pos++];
    if (name.empty()) p.fail("expected a factor");
    std::vector<Letter> ls;
    if (p.pos < p.s.size() && p.s[p.pos] == '_') {
      ++p.pos;
      while (p.pos < p.s.size() && std::isalpha(static_cast<unsigned char>(p.s[p.pos]))) ls.push_back(parse_letter(p, letters, tuples));
      if (ls.empty()) p.fail("expected tuple letters after '_'");
    }
    if (name == "partial") {
      if (ls.size() != 1) {
        p.pos = start;
        p.fail("partial takes exactly one letter");
      }
      if (m.free) p.fail("second free index");
      m.free = ls[0];
    } else {
      if (name.size() == 1 && name != "a") {
        p.pos = start;
        p.fail("unknown fibre symbol '" + name + "'");
      }
      SymbolId sym = jetcalc::symbol_by_name(name);
      long power = 1;
      if (p.eat('^')) {
        if (!ls.empty()) p.fail("powers only on undifferentiated factors");
        power = p.number();
        if (power < 1 || power > 32) p.fail("power out of range");
      }
      for (long r = 0; r < power; ++r) m.factors.push_back({sym, ls});
    }
    need_factor = p.eat('*');
  }
  p.skip();
  if (p.pos != p.s.size()) p.fail("unexpected character");
  return m;
}

}  // namespace

CivitaFormula parse_civita_formula(std::string_view text) {
  CivitaFormula f;
  int d = 0;
  std::size_t lineno = 0;
  std::size_t b = 0;
  while (b <= text.size()) {
    std::size_t e = text.find('\n', b);
    if (e == std::string_view::npos) e = text.size();
    std::string_view raw = text.substr(b, e - b);
    b = e + 1;
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    LineParser p{raw, lineno};
    p.skip();
    if (p.pos == raw.size()) continue;
    if (raw.substr(p.pos, 3) == "dim" && !std::isalnum(static_cast<unsigned char>(raw.size() > p.pos + 3 ? raw[p.pos + 3] : ' '))) {
      p.pos += 3;
      d = static_cast<int>(p.number());
      if (d < 2 || d > jetcalc::kMaxDim) p.fail("dimension out of range");
      f.space = jetcalc::make_space(d);
      continue;
    }
    if (raw.substr(p.pos, 6) == "tuples") {
      p.pos += 6;
      f.tuples = static_cast<int>(p.number());
      if (f.tuples < 1 || f.tuples > 6) p.fail("tuple count out of range");
      continue;
    }
    if (!f.space || f.tuples == 0) p.fail("'dim' and 'tuples' must precede the markers");
    Marker m = parse_marker(p, d, f.tuples);
    try {
      validate_marker(m, d, f.tuples);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what(), lineno, 1);
    }
    f.markers.push_back(std::move(m));
  }
  if (!f.space) throw ParseError("missing 'dim' line", lineno, 1);
  try {
    f.validate();
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what(), lineno, 1);
  }
  return f;
}

CivitaFormula load_civita_formula(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_civita_formula(ss.str());
}

std::string marker_text(const Marker& m, int d) {
  const std::string letters = position_letters(d);
  auto letter = [&](const Letter& l) { return letters[l.position] + std::to_string(l.tuple + 1); };
  std::string out = m.coeff.str();
  for (std::size_t i = 0; i < m.factors.size();) {
    const auto& f = m.factors[i];
    out += '*';
    out += jetcalc::symbol_name(f.symbol);
    std::size_t run = 1;
    if (f.letters.empty())
      while (i + run < m.factors.size() && m.factors[i + run].symbol == f.symbol && m.factors[i + run].letters.empty()) ++run;
    if (run > 1) out += '^' + std::to_string(run);
    if (!f.letters.empty()) out += '_';
    for (const auto& l : f.letters) out += letter(l);
    i += run;
  }
  if (m.free) out += "*partial_" + letter(*m.free);
  return out;
}

std::string print_civita_formula(const CivitaFormula& f) {
  std::string out = "dim " + std::to_string(f.space->d) + "\ntuples " + std::to_string(f.tuples) + "\n";
  for (const auto& m : f.markers) out += marker_text(m, f.space->d) + "\n";
  return out;
}

DiffPoly expand_civita_formula(const CivitaFormula& f) {
  f.validate();
  if (f.has_free()) throw std::invalid_argument("formula has a free index; use expand_civita_field");
  jetcalc::PolyAccumulator acc(f.space);
  for (const auto& m : f.markers) acc.add(alternating_sum(f.space, f.tuples, m));
  return acc.take();
}

PolyVector expand_civita_field(const CivitaFormula& f) {
  f.validate();
  PolyVector out(f.space, 1);
  for (const auto& m : f.markers) out += alternating_sum_field(f.space, f.tuples, m);
  return out;
}

}  // namespace npf::civita
