#pragma once

#include <boost/rational.hpp>
#include <string>

namespace nftpos {

// Exact rational arithmetic for throughput figures. Keeping these exact
// internally means golden CSV files cannot drift across platforms; rounding
// happens once, at the rendering boundary.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

// Render with exactly 6 decimal places, round half to even.
std::string format_fixed6(const Rational& r);

// Same width for values that are only available as doubles (stddev, cv).
std::string format_fixed6(double v);

}  // namespace nftpos
