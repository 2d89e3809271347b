#include "dyadic/haar.hpp"

#include <cmath>

#include "dyadic/numeric.hpp"

namespace dyadic {

HaarCoefficients::HaarCoefficients(int domain_exponent, int resolution_exponent)
    : jd_(domain_exponent), jr_(resolution_exponent), scaling_(0.0) {
    if (jd_ < 0 || jr_ < 0 || jd_ + jr_ < 1 || jd_ + jr_ > 30)
        throw std::invalid_argument("HaarCoefficients: need Jd, Jr >= 0 and 1 <= Jd+Jr <= 30");
    details_.assign((std::size_t{1} << (jd_ + jr_)) - 1, 0.0);
}

HaarCoefficients HaarCoefficients::from_parts(int domain_exponent, int resolution_exponent, double scaling,
                                              std::vector<double> details) {
    HaarCoefficients c(domain_exponent, resolution_exponent);
    if (details.size() != c.details_.size())
        throw std::invalid_argument("HaarCoefficients: malformed coefficient set");
    c.scaling_ = scaling;
    c.details_ = std::move(details);
    return c;
}

std::size_t HaarCoefficients::slot(int level, std::uint64_t position) const {
    if (level < level_lo() || level > level_hi() || position >= positions_at(level))
        throw std::out_of_range("HaarCoefficients: index outside the (Jd, Jr) layout");
    // Level blocks in coarse-to-fine order: block for level j starts at
    // 2^(Jd+j) - 1 and holds 2^(Jd+j) entries.
    return (std::size_t{1} << (jd_ + level)) - 1 + position;
}

double haar_eval(const HaarIndex& idx, const DyadicPoint& x) {
    const int side = idx.support().half_of(x);
    if (side == 0) return 0.0;
    return side < 0 ? pow2_half(idx.level) : -pow2_half(idx.level);
}

HaarCoefficients haar_forward(const GridFunction& f) {
    const int jd = f.domain_exponent();
    const int jr = f.resolution_exponent();
    HaarCoefficients out(jd, jr);

    // Work in integral units: A^j_k = integral of f over I^j_k.
    std::vector<double> a(f.values());
    for (double& v : a) v = std::ldexp(v, -jr);
    for (int j = jr - 1; j >= -jd; --j) {
        const std::uint64_t count = std::uint64_t{1} << (jd + j);
        const double scale = pow2_half(j);
        for (std::uint64_t k = 0; k < count; ++k) {
            const double l = a[2 * k], r = a[2 * k + 1];
            out.detail(j, k) = scale * (l - r);
            a[k] = l + r;
        }
    }
    out.scaling() = pow2_half(-jd) * a[0];
    return out;
}

GridFunction haar_inverse(const HaarCoefficients& c) {
    const int jd = c.domain_exponent();
    const int jr = c.resolution_exponent();
    std::vector<double> a(std::size_t{1} << (jd + jr), 0.0);
    a[0] = pow2_half(jd) * c.scaling();
    for (int j = -jd; j <= jr - 1; ++j) {
        const std::uint64_t count = std::uint64_t{1} << (jd + j);
        const double scale = pow2_half(-j);
        for (std::uint64_t k = count; k-- > 0;) {
            const double s = a[k];
            const double d = scale * c.detail(j, k);
            a[2 * k] = 0.5 * (s + d);
            a[2 * k + 1] = 0.5 * (s - d);
        }
    }
    for (double& v : a) v = std::ldexp(v, jr);
    return GridFunction(jd, jr, std::move(a));
}

GridFunction square_function(const GridFunction& f) {
    const HaarCoefficients c = haar_forward(f);
    const int jd = f.domain_exponent();
    const int jr = f.resolution_exponent();
    GridFunction out(jd, jr);
    for (int j = -jd; j <= jr - 1; ++j) {
        const std::uint64_t count = std::uint64_t{1} << (jd + j);
        const std::uint64_t width = std::uint64_t{1} << (jr - j); // cells under one support
        const double w = pow2(j);
        for (std::uint64_t k = 0; k < count; ++k) {
            const double d = c.detail(j, k);
            const double add = d * d * w;
            const std::uint64_t base = k * width;
            for (std::uint64_t i = 0; i < width; ++i) out[base + i] += add;
        }
    }
    for (std::size_t i = 0; i < out.cells(); ++i) out[i] = std::sqrt(out[i]);
    return out;
}

GridFunction sample_haar(int domain_exponent, int resolution_exponent, const HaarIndex& idx) {
    GridFunction f(domain_exponent, resolution_exponent);
    if (idx.level < -domain_exponent || idx.level > resolution_exponent - 1 ||
        idx.position >= (std::uint64_t{1} << (domain_exponent + idx.level)))
        throw std::invalid_argument("sample_haar: index outside the (Jd, Jr) layout");
    const std::uint64_t width = std::uint64_t{1} << (resolution_exponent - idx.level);
    const std::uint64_t base = idx.position * width;
    const double v = pow2_half(idx.level);
    for (std::uint64_t i = 0; i < width / 2; ++i) f[base + i] = v;
    for (std::uint64_t i = width / 2; i < width; ++i) f[base + i] = -v;
    return f;
}

} // namespace dyadic
