// Operators induced by kernels on grid functions: the diagonal
// Haar-multiplier application, the exact dense quadrature oracle, the dyadic
// fractional derivative in both spectral and pointwise-integral form, and
// the heat semigroup.
#pragma once

#include <cstdint>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/haar.hpp"
#include "dyadic/kernel.hpp"

namespace dyadic {

enum class ScalingMode {
    carry,     // multiply the scaling coefficient by 1 (Lambda -> 1 tail)
    annihilate // project onto the zero-mean detail span
};

// A kernel bound to a grid layout. The kernel window must cover the Haar
// levels [-Jd, Jr-1] of the grid.
class OperatorPlan {
  public:
    OperatorPlan(KernelSpec kernel, ScalingMode mode, int domain_exponent, int resolution_exponent);

    const KernelSpec& kernel() const { return kernel_; }
    ScalingMode mode() const { return mode_; }
    int domain_exponent() const { return jd_; }
    int resolution_exponent() const { return jr_; }

  private:
    KernelSpec kernel_;
    ScalingMode mode_;
    int jd_;
    int jr_;
};

// T f through the Haar multiplier: detail coefficients scaled by
// Lambda_{j(h)}, scaling coefficient per the plan mode. Non-expansive on
// every grid L^p norm in carry mode.
GridFunction apply_kernel(const OperatorPlan& plan, const GridFunction& f);

// Lumped within-cell mass sum_{m <= -Jr} k_m 2^{m-1} (the quadrature
// diagonal entry before the 2^-Jr cell weight is factored out).
double quadrature_diagonal_mass(const KernelSpec& k, int resolution_exponent);

// Domain-truncated row mass sum_{m <= Jd} k_m 2^{m-1}; every row of the
// quadrature matrix sums to this value.
double domain_row_mass(const KernelSpec& k, int domain_exponent);

// Dense N x N quadrature matrix, row-major: A[c,c'] = k_{m(c,c')} 2^-Jr off
// the diagonal (m(c,c') the delta exponent between the cells) and the
// lumped within-cell mass on it. Exact for cell-constant integrands.
std::vector<double> quadrature_matrix(const KernelSpec& k, int domain_exponent, int resolution_exponent);

// T f by direct quadrature (computed on the fly, no matrix storage); the
// independent oracle for apply_kernel.
GridFunction apply_kernel_quadrature(const KernelSpec& k, const GridFunction& f);

// D^s by the Haar multiplier 2^{j(h) s}; constants map to zero. 0 < s <= 1.
GridFunction fractional_derivative_spectral(double s, const GridFunction& f);

// Pointwise shell-sum quadrature of the normalized difference integral
//   D^s g(x) = c_s int (g(x) - g(y)) / delta(x,y)^{1+s} dy,
// c_s = 2(2^s - 1)/(2^{s+1} - 1), evaluated at one grid cell. The constant
// is fixed by requiring the multipliers 2^{j s} on the Haar system (at
// s = 1 it is the familiar 2/3 of the diffusion far field). Within-cell
// shells contribute nothing (g is cell-constant); beyond the domain g is
// continued by its domain mean and the tail enters in closed form through
// delta_power_integral, so sampled Haar functions reproduce 2^{j s} h
// exactly and constants map to zero. Only 0 < s < 1: at s = 1 the
// pointwise integral diverges and the spectral form is the only route.
double fractional_derivative_quadrature(double s, const GridFunction& g, std::uint64_t cell);

// Heat semigroup for the generator -D^s: details scaled by e^{-t 2^{j s}},
// scaling coefficient carried. t = 0 returns u0 unchanged.
GridFunction heat_solve(double s, double t, const GridFunction& u0);

// Size of the carry-mode domain truncation: (1 - Lambda_{-Jd}) |scaling
// coefficient of f|. A design-level estimate, reported for diagnostics.
double carry_truncation_bound(const OperatorPlan& plan, const GridFunction& f);

} // namespace dyadic
