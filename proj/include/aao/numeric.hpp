#ifndef AAO_NUMERIC_HPP
#define AAO_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace aao {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical "p/q" rendering, always lowest terms, denominator > 0.
inline std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Round-half-even decimal rendering with a fixed number of places.
std::string to_decimal_string(const Rational& r, int places = 6);

}  // namespace aao

#endif
