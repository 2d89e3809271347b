#include <doctest.h>

#include <cmath>
#include <random>

#include "dyadic/numeric.hpp"
#include "dyadic/operators.hpp"

using namespace dyadic;

namespace {

GridFunction random_grid(int jd, int jr, std::uint64_t seed) {
    GridFunction f(jd, jr);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t c = 0; c < f.cells(); ++c) f[c] = u(rng);
    return f;
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (std::size_t c = 0; c < f.cells(); ++c) m = std::max(m, std::abs(f[c]));
    return m;
}

} // namespace

TEST_CASE("apply_kernel: eigenfunctions, constants, plan validation") {
    const int jd = 2, jr = 4;
    const KernelSpec g = KernelSpec::gaussian(1.0, {-20, 20});
    const OperatorPlan plan(g, ScalingMode::carry, jd, jr);

    for (int j = -jd; j <= jr - 1; ++j) {
        const GridFunction h = sample_haar(jd, jr, {j, (std::uint64_t{1} << (jd + j)) - 1});
        const GridFunction th = apply_kernel(plan, h);
        const GridFunction want = g.lambda(j) * GridFunction(h);
        CHECK(max_abs(th - want) < 1e-13);
    }

    GridFunction c(jd, jr);
    for (std::size_t i = 0; i < c.cells(); ++i) c[i] = 0.8;
    CHECK(max_abs(apply_kernel(plan, c) - c) < 1e-13);

    const OperatorPlan ann(g, ScalingMode::annihilate, jd, jr);
    CHECK(max_abs(apply_kernel(ann, c)) < 1e-13);

    CHECK_THROWS_AS(OperatorPlan(KernelSpec::gaussian(1.0, {-1, 20}), ScalingMode::carry, jd, jr),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_kernel(plan, GridFunction(3, 3)), std::invalid_argument);
}

TEST_CASE("quadrature oracle agrees with the multiplier route (N = 256)") {
    const int jd = 3, jr = 5;
    for (const KernelSpec& k : {KernelSpec::gaussian(1.0, {-20, 20}), KernelSpec::power_law(2.0 / 3.0, {-20, 20}),
                                KernelSpec::uniform_ball({-20, 20})}) {
        const OperatorPlan plan(k, ScalingMode::carry, jd, jr);
        const GridFunction f = random_grid(jd, jr, 17);
        const GridFunction spectral = apply_kernel(plan, f);
        const GridFunction quad = apply_kernel_quadrature(k, f);
        // The multiplier route carries the scaling part with weight 1; the
        // quadrature keeps only the in-domain mass.
        const double carry_gap = carry_truncation_bound(plan, f);
        GridFunction gap = spectral - quad;
        CHECK(max_abs(gap) <= carry_gap * pow2_half(-jd) + 1e-10);

        // On the pure detail span the two routes agree outright.
        const OperatorPlan ann(k, ScalingMode::annihilate, jd, jr);
        const HaarCoefficients cf = haar_forward(f);
        GridFunction detail_only = f;
        {
            HaarCoefficients c2 = cf;
            c2.scaling() = 0.0;
            detail_only = haar_inverse(c2);
        }
        CHECK(max_abs(apply_kernel(ann, detail_only) - apply_kernel_quadrature(k, detail_only)) < 1e-10);
    }
}

TEST_CASE("quadrature matrix: eigenvectors, row sums, symmetry") {
    const int jd = 2, jr = 4;
    const std::size_t n = std::size_t{1} << (jd + jr);
    const KernelSpec k = KernelSpec::gaussian(0.5, {-20, 20});
    const std::vector<double> a = quadrature_matrix(k, jd, jr);

    for (std::size_t c = 0; c < n; ++c) {
        Accumulator row;
        for (std::size_t d = 0; d < n; ++d) {
            row.add(a[c * n + d]);
            CHECK(a[c * n + d] == a[d * n + c]);
        }
        CHECK(row.value() == doctest::Approx(domain_row_mass(k, jd)).epsilon(1e-12));
    }
    CHECK(domain_row_mass(k, jd) < 1.0);
    CHECK(domain_row_mass(k, jd) > 0.9); // most of the unit mass is local

    // Matrix-vector application of a sampled Haar function reproduces the
    // eigenvalue exactly (the integral is confined to the support).
    for (int j = -jd; j <= jr - 1; ++j) {
        const GridFunction h = sample_haar(jd, jr, {j, 0});
        std::vector<double> out(n, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
            Accumulator acc;
            for (std::size_t d = 0; d < n; ++d) acc.add(a[c * n + d] * h[d]);
            out[c] = acc.value();
        }
        for (std::size_t c = 0; c < n; ++c) CHECK(std::abs(out[c] - k.lambda(j) * h[c]) < 1e-12);
    }

    // Zero in, zero out.
    CHECK(max_abs(apply_kernel_quadrature(k, GridFunction(jd, jr))) == 0.0);
}

TEST_CASE("kernel representation: multiplier matrix vs quadrature matrix") {
    // Columns of the carry-mode operator are the images of cell indicators.
    // They differ from the quadrature matrix by the domain-truncation rank-one
    // term: A_spec - A_quad = (1 - c_dom) 2^{-Jd-Jr} on every entry, with
    // c_dom the in-domain row mass. On the detail span the two agree outright.
    const int jd = 2, jr = 3;
    const std::size_t n = std::size_t{1} << (jd + jr);
    const KernelSpec k = KernelSpec::gaussian(1.0, {-20, 20});
    const OperatorPlan plan(k, ScalingMode::carry, jd, jr);
    const std::vector<double> quad = quadrature_matrix(k, jd, jr);
    const double correction = (1.0 - domain_row_mass(k, jd)) * pow2(-jd - jr);
    for (std::size_t c = 0; c < n; ++c) {
        GridFunction ind(jd, jr);
        ind[c] = 1.0;
        const GridFunction col = apply_kernel(plan, ind);
        for (std::size_t x = 0; x < n; ++x)
            CHECK(std::abs(col[x] - (quad[x * n + c] + correction)) < 1e-10);
    }
}

TEST_CASE("commuting diagram: transform of T f = multiplier of transform") {
    const int jd = 2, jr = 5;
    const KernelSpec k = KernelSpec::power_law(1.0, {-20, 20});
    const OperatorPlan plan(k, ScalingMode::carry, jd, jr);
    const GridFunction f = random_grid(jd, jr, 23);
    const HaarCoefficients lhs = haar_forward(apply_kernel(plan, f));
    const HaarCoefficients rhs = haar_forward(f);
    for (int j = -jd; j <= jr - 1; ++j)
        for (std::uint64_t pos = 0; pos < lhs.positions_at(j); ++pos)
            CHECK(lhs.detail(j, pos) == doctest::Approx(k.lambda(j) * rhs.detail(j, pos)).epsilon(1e-12));
    CHECK(lhs.scaling() == doctest::Approx(rhs.scaling()).epsilon(1e-12));
}

TEST_CASE("non-expansiveness in carry mode") {
    const int jd = 2, jr = 4;
    const KernelSpec k = KernelSpec::gaussian(1.0, {-20, 20});
    const OperatorPlan plan(k, ScalingMode::carry, jd, jr);
    for (int trial = 0; trial < 25; ++trial) {
        const GridFunction f = random_grid(jd, jr, 1000 + trial);
        const GridFunction tf = apply_kernel(plan, f);
        for (double p : {1.0, 2.0, HUGE_VAL}) CHECK(lp_norm(tf, p) <= lp_norm(f, p) * (1.0 + 1e-12));
    }
}

TEST_CASE("fractional derivative: spectral multipliers") {
    const int jd = 2, jr = 4;
    for (double s : {0.25, 0.5, 1.0}) {
        for (int j : {-2, 0, 3}) {
            const GridFunction h = sample_haar(jd, jr, {j, 0});
            const GridFunction dh = fractional_derivative_spectral(s, h);
            const GridFunction want = std::exp2(s * j) * GridFunction(h);
            CHECK(max_abs(dh - want) < 1e-12 * std::exp2(s * j));
        }
    }
    GridFunction c(jd, jr);
    for (std::size_t i = 0; i < c.cells(); ++i) c[i] = 2.0;
    CHECK(max_abs(fractional_derivative_spectral(0.5, c)) < 1e-14);
    CHECK_THROWS_AS(fractional_derivative_spectral(0.0, c), std::domain_error);
    CHECK_THROWS_AS(fractional_derivative_spectral(1.5, c), std::domain_error);
}

TEST_CASE("fractional derivative: shell-sum quadrature vs spectral") {
    const int jd = 2, jr = 4;
    const double s = 0.5;
    // Basis functions: quadrature returns 2^{j s} h(x) at every cell.
    for (int j : {-2, -1, 0, 1}) {
        const GridFunction h = sample_haar(jd, jr, {j, 0});
        for (std::uint64_t c = 0; c < h.cells(); ++c) {
            const double got = fractional_derivative_quadrature(s, h, c);
            CHECK(got == doctest::Approx(std::exp2(s * j) * h[c]).epsilon(1e-10));
        }
    }
    // Constants map to zero: the mean continuation kills the tail term and
    // every within-domain shell integrand vanishes.
    GridFunction cst(jd, jr);
    for (std::size_t i = 0; i < cst.cells(); ++i) cst[i] = 1.0;
    CHECK(std::abs(fractional_derivative_quadrature(s, cst, 3)) < 1e-14);

    // Random function: quadrature matches the spectral route cell by cell.
    const GridFunction f = random_grid(jd, jr, 5150);
    const GridFunction spec = fractional_derivative_spectral(s, f);
    for (std::uint64_t c = 0; c < f.cells(); ++c) {
        const double quad = fractional_derivative_quadrature(s, f, c);
        CHECK(quad == doctest::Approx(spec[c]).epsilon(1e-10).scale(1.0));
    }

    CHECK_THROWS_AS(fractional_derivative_quadrature(1.0, f, 0), std::domain_error);
    CHECK_THROWS_AS(fractional_derivative_quadrature(0.5, f, f.cells()), std::invalid_argument);
}

TEST_CASE("heat semigroup") {
    const int jd = 2, jr = 5;
    // Basis data: u(t) = e^{-t 2^{j s}} h.
    for (double s : {0.5, 1.0}) {
        for (int j : {-1, 0, 2}) {
            const GridFunction h = sample_haar(jd, jr, {j, 0});
            const GridFunction ut = heat_solve(s, 0.7, h);
            const GridFunction want = std::exp(-0.7 * std::exp2(s * j)) * GridFunction(h);
            CHECK(max_abs(ut - want) < 1e-13);
        }
    }

    const GridFunction f = random_grid(jd, jr, 31337);
    CHECK(max_abs(heat_solve(1.0, 0.0, f) - f) == 0.0); // exact identity at t = 0

    // Semigroup property.
    const GridFunction one_step = heat_solve(0.5, 0.9, f);
    const GridFunction two_step = heat_solve(0.5, 0.4, heat_solve(0.5, 0.5, f));
    CHECK(max_abs(one_step - two_step) < 1e-12);

    // s = 1 equals the gaussian-kernel multiplier.
    const KernelSpec g = KernelSpec::gaussian(0.8, {-20, 20});
    const OperatorPlan plan(g, ScalingMode::carry, jd, jr);
    CHECK(max_abs(heat_solve(1.0, 0.8, f) - apply_kernel(plan, f)) < 1e-12);

    CHECK_THROWS_AS(heat_solve(1.0, -0.1, f), std::domain_error);
}

TEST_CASE("generator consistency: d/dt u = -D^1 u to first order") {
    const int jd = 2, jr = 5;
    const GridFunction f = random_grid(jd, jr, 99);
    const double t = 0.5;
    const GridFunction ut = heat_solve(1.0, t, f);
    const GridFunction rhs = -1.0 * fractional_derivative_spectral(1.0, ut);
    double err_prev = 0.0;
    for (double epsv : {1e-3, 1e-4}) {
        const GridFunction fd = (1.0 / epsv) * (heat_solve(1.0, t + epsv, f) - ut);
        const double err = max_abs(fd - rhs);
        if (err_prev > 0.0) CHECK(err < err_prev / 5.0); // first-order decay
        err_prev = err;
    }
}
