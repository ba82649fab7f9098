#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace negcone {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Dense coordinate vector over Q. Catalog classes are integral but share
/// this representation so they can be handed to the kernel unchanged.
using Vec = std::vector<Rational>;
using IntVec = std::vector<long long>;

/// "p" for integers, "p/q" otherwise; always in lowest terms.
std::string to_string(const Rational& q);
std::string to_string(const Vec& v);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

Vec to_vec(const IntVec& v);

/// Throws std::domain_error if a coordinate is not an integer that fits in
/// a long long.
IntVec to_int_vec(const Vec& v);

bool is_integral(const Vec& v);

}  // namespace negcone
