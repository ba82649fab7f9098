#include "negcone/rational.hpp"

#include <limits>
#include <stdexcept>

namespace negcone {

std::string to_string(const Rational& q) {
  const Integer& den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

namespace {

Integer parse_integer(std::string_view text) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size()) throw std::invalid_argument("empty integer");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("malformed integer: " + std::string(text));
    }
  }
  std::string digits(text);
  if (digits[0] == '+') digits.erase(0, 1);
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

Vec to_vec(const IntVec& v) {
  Vec out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(x);
  return out;
}

bool is_integral(const Vec& v) {
  for (const auto& x : v) {
    if (boost::multiprecision::denominator(x) != 1) return false;
  }
  return true;
}

IntVec to_int_vec(const Vec& v) {
  IntVec out;
  out.reserve(v.size());
  const Integer lo = std::numeric_limits<long long>::min();
  const Integer hi = std::numeric_limits<long long>::max();
  for (const auto& x : v) {
    if (boost::multiprecision::denominator(x) != 1) {
      throw std::domain_error("non-integral coordinate " + to_string(x));
    }
    const Integer& n = boost::multiprecision::numerator(x);
    if (n < lo || n > hi) throw std::domain_error("coordinate out of range");
    out.push_back(n.convert_to<long long>());
  }
  return out;
}

}  // namespace negcone
