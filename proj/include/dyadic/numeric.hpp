// Small numeric helpers shared across the library: exact powers of two,
// compensated summation, and round-trip-exact float formatting.
#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace dyadic {

// 2^j as a double, exact for all representable j.
inline double pow2(int j) { return std::ldexp(1.0, j); }

// 2^{j/2}; exact for even j, one rounding of sqrt(2) for odd j.
inline double pow2_half(int j) {
    if (j % 2 == 0) return std::ldexp(1.0, j / 2);
    static const double sqrt2 = std::sqrt(2.0);
    return std::ldexp(sqrt2, (j - 1) / 2);
}

// Neumaier-compensated accumulator. The conversion formulas are short sums
// of exactly scaled terms; compensation keeps every route within ~1 ulp of
// the exact value so that cross-route comparisons stay below 1e-12.
class Accumulator {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// 17 significant digits: enough to reproduce any double bit-exactly on parse.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace dyadic
