#include "dyadic/point.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "dyadic/numeric.hpp"

namespace dyadic {

namespace {

std::uint64_t shifted(std::uint64_t n, int by, const char* what) {
    if (by == 0) return n;
    if (by >= 64 || (n >> (64 - by)) != 0)
        throw std::overflow_error(std::string(what) + ": numerator overflow while aligning resolutions");
    return n << by;
}

// Align both numerators to the finer of the two resolutions.
struct Aligned {
    std::uint64_t a, b;
    int res;
};

Aligned align(const DyadicPoint& x, const DyadicPoint& y) {
    const int res = std::max(x.resolution, y.resolution);
    return {shifted(x.numerator, res - x.resolution, "dyadic point"),
            shifted(y.numerator, res - y.resolution, "dyadic point"), res};
}

} // namespace

double DyadicPoint::value() const { return std::ldexp(static_cast<double>(numerator), -resolution); }

DyadicPoint make_point(std::uint64_t numerator, int resolution) { return DyadicPoint{numerator, resolution}; }

double DyadicInterval::length() const { return pow2(-level); }

double DyadicInterval::left() const { return std::ldexp(static_cast<double>(position), -level); }

DyadicInterval DyadicInterval::parent() const { return {level - 1, position >> 1}; }

DyadicInterval DyadicInterval::left_half() const { return {level + 1, position << 1}; }

DyadicInterval DyadicInterval::right_half() const { return {level + 1, (position << 1) | 1}; }

bool DyadicInterval::contains(const DyadicPoint& x) const {
    if (x.resolution >= level) {
        return (x.numerator >> (x.resolution - level)) == position;
    }
    // Point resolution is coarser than the interval: x 2^level is an integer.
    return shifted(x.numerator, level - x.resolution, "dyadic interval") == position;
}

int DyadicInterval::half_of(const DyadicPoint& x) const {
    if (!contains(x)) return 0;
    return left_half().contains(x) ? -1 : +1;
}

double DeltaValue::value() const { return zero_ ? 0.0 : pow2(exponent_); }

bool same_point(const DyadicPoint& x, const DyadicPoint& y) {
    const Aligned al = align(x, y);
    return al.a == al.b;
}

DyadicInterval smallest_common_interval(const DyadicPoint& x, const DyadicPoint& y) {
    const Aligned al = align(x, y);
    if (al.a == al.b) throw std::invalid_argument("smallest_common_interval: identical points");
    // The two points first disagree at bit b-1 of the aligned numerators, so
    // the finest level at which they share a cell is res - b.
    const int b = std::bit_width(al.a ^ al.b);
    return {al.res - b, al.a >> b};
}

DeltaValue dyadic_distance(const DyadicPoint& x, const DyadicPoint& y) {
    const Aligned al = align(x, y);
    if (al.a == al.b) return DeltaValue::zero();
    const int b = std::bit_width(al.a ^ al.b);
    return DeltaValue::power_of_two(b - al.res);
}

double shell_measure(const DyadicPoint& /*x*/, int m) { return pow2(m - 1); }

double delta_power_integral(double alpha, double r, IntegralRegion region) {
    if (!(r > 0.0)) throw std::domain_error("delta_power_integral: r must be positive");
    const int j0 = std::ilogb(r); // exact floor(log2 r)
    if (region == IntegralRegion::ball) {
        if (alpha <= -1.0) return std::numeric_limits<double>::infinity();
        const double c = 0.5 / (1.0 - std::exp2(-(1.0 + alpha)));
        return c * std::exp2((1.0 + alpha) * j0);
    }
    if (alpha >= -1.0) return std::numeric_limits<double>::infinity();
    const double ct = 0.5 / (1.0 - std::exp2(1.0 + alpha));
    return ct * std::exp2((1.0 + alpha) * j0);
}

} // namespace dyadic
