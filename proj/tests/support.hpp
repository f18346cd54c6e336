#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "jetlin/obstruction.hpp"
#include "jetlin/random.hpp"

namespace jetlin::test {

inline Expr E(const std::string& text) {
  static const std::set<std::string, std::less<>> vars{"x1", "x2", "t"};
  return parse(text, vars);
}

inline Section rhs(const std::string& text) {
  static const std::set<std::string, std::less<>> vars{"x", "y", "p"};
  return rhs_to_section(parse(text, vars));
}

inline Scalar Q(long p, long q = 1) { return Scalar(ratio(p, q)); }

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace jetlin::test
