#include "tpa/element.hpp"

namespace tpa {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

std::uint64_t parse_number(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.i;
  std::uint64_t value = 0;
  while (c.i < c.s.size() && c.s[c.i] >= '0' && c.s[c.i] <= '9') {
    value = value * 10 + static_cast<std::uint64_t>(c.s[c.i] - '0');
    if (value > (1ull << 40)) throw ParseError("integer literal too large", start);
    ++c.i;
  }
  if (c.i == start) throw ParseError("expected an integer", start);
  return value;
}

}  // namespace

Vec parse_element(const std::string& text, std::uint32_t p, std::size_t N) {
  PrimeField F(p);
  Vec out(N, 0);
  Cursor c{text};
  if (c.done()) throw ParseError("empty element expression", 0);
  bool first = true;
  while (!c.done()) {
    Scalar sign = 1;
    char ch = c.peek();
    if (!first || ch == '+' || ch == '-') {
      if (ch == '+') {
        ++c.i;
      } else if (ch == '-') {
        sign = F.neg(1);
        ++c.i;
      } else if (!first) {
        throw ParseError("expected '+' or '-' between terms", c.i);
      }
    }
    first = false;
    c.skip_ws();
    std::size_t term_start = c.i;
    Scalar coeff = 1;
    if (c.peek() != 'e') {
      std::uint64_t lit = parse_number(c);
      coeff = static_cast<Scalar>(lit % p);
      c.skip_ws();
      if (c.i < c.s.size() && c.s[c.i] == '*') {
        ++c.i;
      } else if (lit == 0 && (c.done() || c.peek() == '+' || c.peek() == '-')) {
        continue;  // a bare "0" term
      } else {
        throw ParseError("expected '*' after coefficient", c.i);
      }
      c.skip_ws();
    }
    if (c.i >= c.s.size() || c.s[c.i] != 'e')
      throw ParseError("expected basis symbol 'e'", c.i);
    ++c.i;
    bool neg_index = false;
    if (c.i < c.s.size() && c.s[c.i] == '-') {
      neg_index = true;
      ++c.i;
    }
    std::uint64_t mag = parse_number(c);
    std::int64_t index = neg_index ? -static_cast<std::int64_t>(mag)
                                   : static_cast<std::int64_t>(mag);
    if (index < -1 || index > static_cast<std::int64_t>(N) - 2)
      throw ParseError("basis index " + std::to_string(index) + " outside [-1, " +
                           std::to_string(static_cast<std::int64_t>(N) - 2) + "]",
                       term_start);
    std::size_t pos = static_cast<std::size_t>(index + 1);
    out[pos] = F.add(out[pos], F.mul(sign, coeff));
  }
  return out;
}

std::string print_element(const Vec& v) {
  std::string out;
  for (std::size_t pos = 0; pos < v.size(); ++pos) {
    if (!v[pos]) continue;
    if (!out.empty()) out += " + ";
    if (v[pos] != 1) out += std::to_string(v[pos]) + "*";
    out += "e" + std::to_string(static_cast<std::int64_t>(pos) - 1);
  }
  return out.empty() ? "0" : out;
}

}  // namespace tpa
