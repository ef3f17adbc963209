#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace irk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);

}  // namespace irk
