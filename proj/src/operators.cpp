#include "dyadic/operators.hpp"

#include <bit>
#include <cmath>

#include "dyadic/numeric.hpp"

namespace dyadic {

namespace {

void check_cover(const KernelSpec& k, int jd, int jr, const char* who) {
    if (k.window_lo() > -jd || k.window_hi() < jr - 1)
        throw std::invalid_argument(std::string(who) +
                                    ": kernel window must cover the Haar levels [-Jd, Jr-1] of the grid");
}

} // namespace

OperatorPlan::OperatorPlan(KernelSpec kernel, ScalingMode mode, int domain_exponent, int resolution_exponent)
    : kernel_(std::move(kernel)), mode_(mode), jd_(domain_exponent), jr_(resolution_exponent) {
    check_cover(kernel_, jd_, jr_, "OperatorPlan");
}

GridFunction apply_kernel(const OperatorPlan& plan, const GridFunction& f) {
    if (f.domain_exponent() != plan.domain_exponent() || f.resolution_exponent() != plan.resolution_exponent())
        throw std::invalid_argument("apply_kernel: grid layout does not match the plan");
    HaarCoefficients c = haar_forward(f);
    for (int j = c.level_lo(); j <= c.level_hi(); ++j) {
        const double lam = plan.kernel().lambda(j);
        for (std::uint64_t k = 0; k < c.positions_at(j); ++k) c.detail(j, k) *= lam;
    }
    if (plan.mode() == ScalingMode::annihilate) c.scaling() = 0.0;
    return haar_inverse(c);
}

double quadrature_diagonal_mass(const KernelSpec& k, int resolution_exponent) {
    const ShellSeq& s = k.shell_seq();
    const int top = -resolution_exponent;
    if (top < s.lo) throw std::invalid_argument("quadrature: kernel shells do not reach the cell scale");
    Accumulator acc;
    for (int m = s.lo; m <= std::min(top, s.hi()); ++m) acc.add(std::ldexp(s.at(m), m - 1));
    acc.add(std::ldexp(s.at(s.lo), s.lo - 1)); // constant below-range tail
    return acc.value();
}

double domain_row_mass(const KernelSpec& k, int domain_exponent) {
    const ShellSeq& s = k.shell_seq();
    Accumulator acc;
    for (int m = s.lo; m <= std::min(domain_exponent, s.hi()); ++m) acc.add(std::ldexp(s.at(m), m - 1));
    acc.add(std::ldexp(s.at(s.lo), s.lo - 1));
    return acc.value();
}

std::vector<double> quadrature_matrix(const KernelSpec& k, int domain_exponent, int resolution_exponent) {
    check_cover(k, domain_exponent, resolution_exponent, "quadrature_matrix");
    const int jd = domain_exponent, jr = resolution_exponent;
    const std::size_t n = std::size_t{1} << (jd + jr);
    // Off-diagonal weight by XOR bit width b = m + Jr.
    std::vector<double> w(jd + jr + 1, 0.0);
    for (int b = 1; b <= jd + jr; ++b) w[b] = std::ldexp(k.shell(b - jr), -jr);
    const double diag = quadrature_diagonal_mass(k, jr);
    std::vector<double> a(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d)
            a[c * n + d] = c == d ? diag : w[std::bit_width(c ^ d)];
    }
    return a;
}

GridFunction apply_kernel_quadrature(const KernelSpec& k, const GridFunction& f) {
    check_cover(k, f.domain_exponent(), f.resolution_exponent(), "apply_kernel_quadrature");
    const int jd = f.domain_exponent(), jr = f.resolution_exponent();
    const std::size_t n = f.cells();
    std::vector<double> w(jd + jr + 1, 0.0);
    for (int b = 1; b <= jd + jr; ++b) w[b] = std::ldexp(k.shell(b - jr), -jr);
    const double diag = quadrature_diagonal_mass(k, jr);
    GridFunction out(jd, jr);
    for (std::size_t c = 0; c < n; ++c) {
        Accumulator acc;
        for (std::size_t d = 0; d < n; ++d) acc.add((c == d ? diag : w[std::bit_width(c ^ d)]) * f[d]);
        out[c] = acc.value();
    }
    return out;
}

GridFunction fractional_derivative_spectral(double s, const GridFunction& f) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("fractional_derivative_spectral: need 0 < s <= 1");
    HaarCoefficients c = haar_forward(f);
    for (int j = c.level_lo(); j <= c.level_hi(); ++j) {
        const double mult = std::exp2(s * j); // |I(h)|^-s
        for (std::uint64_t k = 0; k < c.positions_at(j); ++k) c.detail(j, k) *= mult;
    }
    c.scaling() = 0.0; // constants have zero derivative
    return haar_inverse(c);
}

double fractional_derivative_quadrature(double s, const GridFunction& g, std::uint64_t cell) {
    if (s == 1.0)
        throw std::domain_error("fractional_derivative_quadrature: pointwise integral divergent; use spectral form");
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("fractional_derivative_quadrature: need 0 < s < 1");
    if (cell >= g.cells()) throw std::invalid_argument("fractional_derivative_quadrature: cell outside the grid");
    // The raw shell sum maps h^j_k to (1 + 1/(2(2^s-1))) 2^{js} h^j_k; the
    // derivative with multipliers exactly 2^{js} is the normalized integral
    //   D^s g = c_s int (g(x) - g(y)) delta^{-(1+s)} dy,
    // c_s = 2(2^s - 1)/(2^{s+1} - 1). At s = 1 this constant is the 2/3 that
    // also appears as the far-field parameter of the diffusion kernel.
    const double cs = 2.0 * (std::exp2(s) - 1.0) / (std::exp2(s + 1.0) - 1.0);
    const int jd = g.domain_exponent(), jr = g.resolution_exponent();
    // Per-shell sums of g around the cell; within-cell shells contribute
    // nothing since g is cell-constant.
    std::vector<Accumulator> shells(jd + jr + 1);
    Accumulator total;
    for (std::uint64_t d = 0; d < g.cells(); ++d) {
        total.add(g[d]);
        if (d == cell) continue;
        shells[std::bit_width(cell ^ d)].add(g[d]);
    }
    const double gx = g[cell];
    Accumulator acc;
    for (int b = 1; b <= jd + jr; ++b) {
        const int m = b - jr;
        // int_{shell m} (g(x) - g(y)) dy weighted by delta^{-(1+s)} = 2^{-m(1+s)}
        const double shell_int = gx * pow2(m - 1) - std::ldexp(shells[b].value(), -jr);
        acc.add(std::exp2(-m * (1.0 + s)) * shell_int);
    }
    // Beyond the domain the datum is continued by its domain mean (the
    // carry-mode convention): the pure-detail part of g is then exactly the
    // zero-extended finite Haar sum and constants have zero derivative. The
    // tail is (g(x) - mean) int_{delta >= 2^{Jd+1}} delta^{-(1+s)} dy.
    const double mean = std::ldexp(total.value(), -jr - jd);
    acc.add((gx - mean) * delta_power_integral(-1.0 - s, pow2(jd + 1), IntegralRegion::tail));
    return cs * acc.value();
}

GridFunction heat_solve(double s, double t, const GridFunction& u0) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("heat_solve: need 0 < s <= 1");
    if (!(t >= 0.0)) throw std::domain_error("heat_solve: need t >= 0");
    if (t == 0.0) return u0;
    HaarCoefficients c = haar_forward(u0);
    for (int j = c.level_lo(); j <= c.level_hi(); ++j) {
        const double mult = std::exp(-t * std::exp2(s * j));
        for (std::uint64_t k = 0; k < c.positions_at(j); ++k) c.detail(j, k) *= mult;
    }
    return haar_inverse(c);
}

double carry_truncation_bound(const OperatorPlan& plan, const GridFunction& f) {
    const HaarCoefficients c = haar_forward(f);
    return plan.kernel().mu(-plan.domain_exponent()) * std::abs(c.scaling());
}

} // namespace dyadic
