#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "mext/errors.hpp"

namespace mext {

// Exact arithmetic everywhere: weights are rationals in lowest terms with
// positive denominators, which boost::rational maintains for us.
using Rat = boost::rational<long long>;

inline std::string render_rat(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rat parse_rat(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(text));
    long long num = std::stoll(text.substr(0, slash));
    long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw parse_error("rational with zero denominator: " + text);
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    throw parse_error("malformed rational: " + text);
  } catch (const std::out_of_range&) {
    throw parse_error("rational out of range: " + text);
  }
}

}  // namespace mext
