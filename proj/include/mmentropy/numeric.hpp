#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>
#include <string_view>

namespace mme {

// Lap and crossing counts grow like (l+1)^nu, so they overflow any fixed
// width long before the iteration halts.  All bookkeeping uses GMP integers;
// piecewise linear maps additionally get exact rational arithmetic.
using big_int = boost::multiprecision::mpz_int;
using big_rat = boost::multiprecision::mpq_rational;

// 50 decimal digits, comfortably above the double mantissa, for taking
// logarithms of huge integers without drift.
using big_float = boost::multiprecision::cpp_bin_float_50;

// Natural log of a positive big integer, rounded to double at the end.
double ln_big(const big_int& n);

// Parses "3", "-0.45", "1e-3", or an exact fraction "23/60".
// Throws std::invalid_argument on malformed input.
big_rat rat_from_string(std::string_view s);

// Exact value of the double (every finite double is a dyadic rational).
big_rat rat_from_double(double x);

std::string rat_to_string(const big_rat& q);

// Shortest decimal string that round-trips to the same double.
std::string double_to_string(double x);

}  // namespace mme
