// Exact dyadic geometry on the half line: binary-rational points, dyadic
// intervals I^j_k = [k 2^-j, (k+1) 2^-j), the ultrametric delta, and the
// closed forms of the delta-power integrals.
//
// Points are kept as integer numerator + resolution exponent and all delta
// computations reduce to shift/XOR on aligned numerators. delta is
// discontinuous for the usual topology, so floating-point coordinates would
// misclassify shell membership.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dyadic {

// x = numerator * 2^-resolution, x >= 0.
struct DyadicPoint {
    std::uint64_t numerator = 0;
    int resolution = 0;

    double value() const;
};

// Convenience factory: n * 2^-res.
DyadicPoint make_point(std::uint64_t numerator, int resolution);

// I^level_position = [position 2^-level, (position+1) 2^-level).
struct DyadicInterval {
    int level = 0;
    std::uint64_t position = 0;

    double length() const;      // 2^-level, exact
    double left() const;        // position * 2^-level
    DyadicInterval parent() const;
    DyadicInterval left_half() const;
    DyadicInterval right_half() const;
    bool contains(const DyadicPoint& x) const;
    // -1: left half, +1: right half, 0: outside.
    int half_of(const DyadicPoint& x) const;

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

// A value of the dyadic distance: either 0 or an integer power of two.
class DeltaValue {
  public:
    static DeltaValue zero() { return DeltaValue(true, 0); }
    static DeltaValue power_of_two(int m) { return DeltaValue(false, m); }

    bool is_zero() const { return zero_; }
    int exponent() const {
        if (zero_) throw std::logic_error("DeltaValue: zero has no exponent");
        return exponent_;
    }
    double value() const;

    friend bool operator==(const DeltaValue&, const DeltaValue&) = default;
    bool operator<(const DeltaValue& o) const {
        if (zero_) return !o.zero_;
        if (o.zero_) return false;
        return exponent_ < o.exponent_;
    }
    bool operator<=(const DeltaValue& o) const { return *this == o || *this < o; }

  private:
    DeltaValue(bool z, int m) : zero_(z), exponent_(m) {}
    bool zero_;
    int exponent_;
};

// Exact equality of the represented rationals.
bool same_point(const DyadicPoint& x, const DyadicPoint& y);

// The unique smallest dyadic interval containing both points; x and y land
// in different halves of it. Throws std::invalid_argument on x == y.
DyadicInterval smallest_common_interval(const DyadicPoint& x, const DyadicPoint& y);

// delta(x, y): |smallest_common_interval| for x != y, zero otherwise.
DeltaValue dyadic_distance(const DyadicPoint& x, const DyadicPoint& y);

// |{y : delta(x,y) = 2^m}| = 2^{m-1}, independent of x.
double shell_measure(const DyadicPoint& x, int m);

enum class IntegralRegion { ball, tail };

// Integral of delta(x,.)^alpha over {delta < r} (ball) or {delta >= r}
// (tail), as an extended real. With 2^{j0} <= r < 2^{j0+1}:
//   ball, alpha > -1: c(alpha) 2^{(1+alpha) j0},  c(a) = 1/2 (1 - 2^{-(1+a)})^-1
//   tail, alpha < -1: ct(alpha) 2^{(1+alpha) j0}, ct(a) = 1/2 (1 - 2^{1+a})^-1
// and +infinity in the divergent cases.
double delta_power_integral(double alpha, double r, IntegralRegion region);

} // namespace dyadic
