#include "negcone/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace negcone {

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool accept(const std::string& word) {
    skip();
    if (s_.compare(i_, word.size(), word) == 0) {
      i_ += word.size();
      return true;
    }
    return false;
  }
  std::string digits() {
    std::string out;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) out += s_[i_++];
    return out;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse '" + s_ + "' at offset " + std::to_string(i_) + ": " + why);
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

int marking(Lexer& lx, char c, int lo, int hi) {
  const int v = c - '0';
  if (v < lo || v > hi) lx.fail("index out of range");
  return v;
}

std::size_t pair_pos(int i, int j) {
  if (i > j) std::swap(i, j);
  static const int offset[] = {0, 0, 4, 7, 9};
  return 6 + static_cast<std::size_t>(offset[i] + (j - i - 1));
}

// Adds coef * symbol to v. `upper` selects divisor symbols.
void parse_symbol(Lexer& lx, const Space& space, bool upper, const Rational& coef, Vec& v) {
  const char unit = upper ? 'H' : 'l';
  const char exc = upper ? 'E' : 'e';
  if (lx.accept(std::string(1, unit))) {
    v[0] += coef;
    return;
  }
  if (upper && space.id == SpaceId::M06 && lx.accept("KV")) {
    const std::string a = lx.digits();
    if (!lx.accept(',')) lx.fail("expected ',' in KV label");
    const std::string b = lx.digits();
    if (a.size() != 2 || b.size() != 2) lx.fail("KV label needs two pairs");
    const int i = marking(lx, a[0], 1, 5), j = marking(lx, a[1], 1, 5);
    const int k = marking(lx, b[0], 1, 5), h = marking(lx, b[1], 1, 5);
    if (std::set<int>{i, j, k, h}.size() != 4) lx.fail("KV pairs must be disjoint");
    const IntVec kv = keel_vermiere_class(i, j, k, h);
    for (std::size_t p = 0; p < kv.size(); ++p) v[p] += coef * kv[p];
    return;
  }
  if (upper && space.id == SpaceId::M06 && lx.accept('D')) {
    const std::string t = lx.digits();
    if (t.size() != 3) lx.fail("plane label needs three markings");
    std::vector<int> tri;
    for (char c : t) tri.push_back(marking(lx, c, 1, 5));
    if (std::set<int>(tri.begin(), tri.end()).size() != 3) lx.fail("repeated marking");
    std::vector<int> label;
    for (int x = 1; x <= 5; ++x) {
      if (std::find(tri.begin(), tri.end(), x) == tri.end()) label.push_back(x);
    }
    const IntVec d = boundary_class(SpaceId::M06, label);
    for (std::size_t p = 0; p < d.size(); ++p) v[p] += coef * d[p];
    return;
  }
  if (!lx.accept(exc)) lx.fail("expected a basis symbol");
  const std::string idx = lx.digits();
  if (space.id == SpaceId::M05) {
    if (idx.size() != 1) lx.fail("expected one index in 0..3");
    v[1 + marking(lx, idx[0], 0, 3)] += coef;
    return;
  }
  if (idx.size() == 1) {
    v[marking(lx, idx[0], 1, 5)] += coef;
  } else if (idx.size() == 2) {
    const int i = marking(lx, idx[0], 1, 5), j = marking(lx, idx[1], 1, 5);
    if (i == j) lx.fail("repeated marking");
    v[pair_pos(i, j)] += coef;
  } else {
    lx.fail("expected one or two indices");
  }
}

Vec parse_class(const Space& space, const std::string& text, bool upper) {
  Lexer lx(text);
  Vec v(space.rank);
  bool first = true;
  if (lx.done()) lx.fail("empty expression");
  while (!lx.done()) {
    int sign = 1;
    if (lx.accept('-')) {
      sign = -1;
    } else if (!lx.accept('+') && !first) {
      lx.fail("expected '+' or '-'");
    }
    lx.skip();
    Rational coef = 1;
    std::string num = lx.digits();
    if (!num.empty()) {
      coef = Rational(Integer(num));
      if (lx.accept('/')) {
        const std::string den = lx.digits();
        if (den.empty() || Integer(den) == 0) lx.fail("bad denominator");
        coef /= Integer(den);
      }
      lx.accept('*');
    }
    parse_symbol(lx, space, upper, sign * coef, v);
    first = false;
  }
  return v;
}

std::string format_class(const Space& space, const Vec& v, const std::vector<std::string>& basis) {
  if (v.size() != space.rank) throw DimensionMismatch("format: basis mismatch");
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const Rational a = boost::multiprecision::abs(v[i]);
    if (v[i] < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    if (a != 1) {
      out += to_string(a);
      if (boost::multiprecision::denominator(a) != 1) out += "*";
    }
    out += basis[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Vec parse_curve(const Space& space, const std::string& text) { return parse_class(space, text, false); }
Vec parse_divisor(const Space& space, const std::string& text) { return parse_class(space, text, true); }

std::string format_curve(const Space& space, const Vec& v) { return format_class(space, v, space.curve_basis); }
std::string format_divisor(const Space& space, const Vec& v) {
  return format_class(space, v, space.divisor_basis);
}

}  // namespace negcone
