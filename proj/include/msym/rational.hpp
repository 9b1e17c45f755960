#ifndef MSYM_RATIONAL_HPP
#define MSYM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace msym {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rat& r)
{
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace msym

#endif
