// Exact arithmetic aliases used throughout the library.
//
// Everything is integer or rational; there is no floating point anywhere
// in the computation paths.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace fpindex {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

}  // namespace fpindex
