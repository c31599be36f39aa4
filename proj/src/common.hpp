#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rih {

// Bad input data: degenerate samples, values outside a declared domain,
// unreadable files. Distinct from usage errors (std::invalid_argument).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: infeasible optimization, non-finite intermediate,
// quadrature breakdown.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// log Gamma(x), x > 0. Avoids the non-thread-safe signgam global.
inline double log_gamma(double x) {
#ifdef __GLIBC__
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// log C(n, k) for integer 0 <= k <= n.
inline double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_gamma(double(n) + 1.0) - log_gamma(double(k) + 1.0) -
         log_gamma(double(n - k) + 1.0);
}

}  // namespace rih
