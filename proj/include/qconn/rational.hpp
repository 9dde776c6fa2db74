#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qconn::sym {

// Exact arbitrary-precision rational scalar for all symbolic work.
// No floating point enters the symbolic layer; doubles appear only when a
// caller explicitly evaluates a polynomial at a numeric point.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

} // namespace qconn::sym
