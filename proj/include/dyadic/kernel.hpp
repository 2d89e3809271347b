// Markov kernels on R+ x R+ that depend only on the dyadic distance, stored
// canonically by their Haar eigenvalue sequence Lambda on a finite level
// window (tails: 1 below, 0 above). The shell values k_m and the profile
// coefficients a_j are derived views; convolution, iteration, mollification
// and the iterate-and-mollify step are diagonal or shift operations on
// Lambda.
//
// Alongside Lambda each kernel keeps the complements mu_j = 1 - Lambda_j.
// The central-limit arithmetic lives entirely in the region Lambda ~ 1,
// where mu carries the significant digits; powers (Lambda_{j-i})^{2^i} are
// evaluated as expm1/log1p expressions in mu so no digits are lost exactly
// where the limit happens.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "dyadic/errors.hpp"
#include "dyadic/point.hpp"
#include "dyadic/sequences.hpp"

namespace dyadic {

// psi(r) = (1/r) (sum_{j>=1} 2^-j e^{-1/(2^j r)} - e^{-1/r}), r > 0.
// Strictly positive; r^2 psi(r) -> 2/3 as r -> infinity.
double psi(double r);

struct StabilityReport {
    std::vector<std::pair<int, double>> sigma_samples; // shell level -> 4^m k_m
    double sigma_estimate = 0.0;
    bool converged = false;
};

class KernelSpec {
  public:
    // Generic construction from eigenvalues; values must lie in [-1, 1] and
    // the derived shell values must be nonnegative (within 1e-12). With
    // strict_decreasing the sequence must be nonincreasing.
    static KernelSpec from_lambda(LevelWindow w, std::vector<double> lambda, bool strict_decreasing = false);

    // Lambda_j = e^{-t 2^j}; shells carry the closed form (1/t) psi(2^m/t);
    // 1-stable with parameter (2/3) t.
    static KernelSpec gaussian(double t, LevelWindow w = {});

    // k_m = 1 - sigma/2 for m <= 0 and sigma 4^-m for m >= 1; eigenvalues
    // Lambda_j = 1 - (3 sigma/2) 2^j for j <= -1, 0 for j >= 0. Exactly
    // 1-stable with parameter sigma; requires 0 < sigma < 2.
    static KernelSpec power_law(double sigma, LevelWindow w = {});

    // Uniform kernel on the unit delta-ball: k_m = 1 for m <= 0, 0 above;
    // Lambda_j = 1 for j <= -1, 0 for j >= 0.
    static KernelSpec uniform_ball(LevelWindow w = {});

    int window_lo() const { return lambda_.lo; }
    int window_hi() const { return lambda_.hi(); }

    // Eigenvalue at level j, with the 1/0 tail convention.
    double lambda(int j) const { return lambda_.at(j); }
    // Complement 1 - Lambda_j (0 below the window, 1 above).
    double mu(int j) const;
    // Shell value k_m (constant below its range, 0 above).
    double shell(int m) const { return shell_.at(m); }
    // Kernel value at shell m, continued by sigma 4^-m beyond the stored
    // range when the far-field parameter is known.
    double shell_extended(int m) const;

    const LambdaSeq& lambda_seq() const { return lambda_; }
    const ShellSeq& shell_seq() const { return shell_; }
    AlphaSeq alpha_seq() const { return k_to_alpha(shell_); }

    bool has_sigma_tail() const;
    double sigma_tail() const { return sigma_tail_; }

    friend KernelSpec convolve(const KernelSpec& a, const KernelSpec& b);
    friend KernelSpec iterate(const KernelSpec& k, long n);
    friend KernelSpec mollify(const KernelSpec& k, int i);
    friend KernelSpec clt_step(const KernelSpec& k, int i);

  private:
    KernelSpec() = default;
    void derive_shells();

    LambdaSeq lambda_;
    std::vector<double> mu_;
    ShellSeq shell_;
    double sigma_tail_ = std::numeric_limits<double>::quiet_NaN();
};

// sum_m k_m 2^{m-1} over the extended shell range, with the constant
// below-range tail summed in closed form. Values visibly below 1 flag lost
// profile mass.
double profile_mass(const ShellSeq& shells);

// profile_mass of the kernel's shells plus its analytic far-field tail;
// 1 up to rounding for every member of the class.
double normalization_check(const KernelSpec& k);

// K(x, y) = k_m at m = log2 delta(x,y); throws on x == y (the diagonal
// carries lumped mass only under quadrature, not a pointwise value).
double eval(const KernelSpec& k, const DyadicPoint& x, const DyadicPoint& y);

// Samples 4^m k_m on the eight far-field shells [top-12, top-5] of the shell
// range; the last shells next to the window edge are skipped because the
// hard Lambda tail doubles the boundary profile coefficient there. Estimate
// is the last sample; converged when the last five spread by < 1e-2
// relative. Requires the shell range to reach level 13.
StabilityReport stability_estimate(const KernelSpec& k);

// gamma(i, j) = 2^{i-j} sum_{l >= i-j} k_l 2^{l-1} + k_{i-j} 4^{i-j} / 2,
// the curvature diagnostic of the central limit; tends to t for seeds that
// are 1-stable with parameter (2/3) t. Satisfies Lambda_{j-i} = 1 -
// gamma(i,j) 2^{j-i} exactly.
double gamma_diag(const KernelSpec& k, int i, int j);

// Convolution: Lambda pointwise product on the window intersection; shells
// from the profile-coefficient formula
//   a3_j = a1_j L2_j + a2_j L1_j + a1_j a2_j.
// Stability parameters add.
KernelSpec convolve(const KernelSpec& a, const KernelSpec& b);

// n-fold composition: Lambda^n evaluated in the log domain near 1.
KernelSpec iterate(const KernelSpec& k, long n);

// 2^i-mollification: index shift by i in Lambda, shell values 2^i k_{m+i};
// stability parameter divided by 2^i.
KernelSpec mollify(const KernelSpec& k, int i);

// The iterate-2^i-then-mollify-2^i kernel: Lambda'_j = (Lambda_{j-i})^{2^i},
// stability parameter preserved.
KernelSpec clt_step(const KernelSpec& k, int i);

// JSON object { "j_lo": int, "j_hi": int, "lambda": [reals] }.
void save_kernel(const KernelSpec& k, const std::filesystem::path& path);
KernelSpec load_kernel(const std::filesystem::path& path);

enum class KernelColumns { lambda, alpha, k, all };

// CSV rows (j, lambda_j, alpha_j, k_j, 4^j k_j) with header
// `j,lambda,alpha,k,stab`; the single-column variants keep j plus that column.
void write_kernel_csv(const KernelSpec& k, std::ostream& out, KernelColumns cols = KernelColumns::all);

} // namespace dyadic
