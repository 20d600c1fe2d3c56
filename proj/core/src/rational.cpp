#include "nftpos/rational.hpp"

#include <cstdio>
#include <cstdlib>

namespace nftpos {

std::string format_fixed6(const Rational& r) {
  // boost::rational keeps the denominator positive
  const bool negative = r.numerator() < 0;
  const unsigned long long num =
      negative ? static_cast<unsigned long long>(-(r.numerator() + 1)) + 1
               : static_cast<unsigned long long>(r.numerator());
  const unsigned long long den =
      static_cast<unsigned long long>(r.denominator());

  const unsigned __int128 scaled =
      static_cast<unsigned __int128>(num) * 1000000u;
  unsigned __int128 q = scaled / den;
  const unsigned __int128 rem = scaled % den;
  // round half to even
  if (2 * rem > den || (2 * rem == den && (q & 1) != 0)) ++q;

  const unsigned long long whole = static_cast<unsigned long long>(q / 1000000u);
  const unsigned long long frac = static_cast<unsigned long long>(q % 1000000u);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%llu.%06llu", negative ? "-" : "", whole,
                frac);
  return buf;
}

std::string format_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace nftpos
