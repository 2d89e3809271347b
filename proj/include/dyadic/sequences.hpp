// The three sequence coordinates of a kernel depending on the dyadic
// distance, each on a finite index window with fixed values outside it:
//
//   LambdaSeq  eigenvalues Lambda_j      tails: 1 below the window, 0 above
//   AlphaSeq   profile coefficients a_j  tails: 0 on both sides
//   ShellSeq   shell values k_m          tails: constant below, 0 above
//
// and the six conversions linking them:
//
//   a_j = Lambda_{j-1} - Lambda_j            Lambda_j = sum_{l>j} a_l
//   a_j = 2^-j (k_{-j} - k_{-j+1})           k_j = sum_{i>=j} 2^-i a_{-i}
//   Lambda_j = (sum_{l<-j} k_l 2^l - k_{-j} 2^-j) / 2
//   k_j = -2^-j Lambda_{-j} + sum_{i>=j+1} 2^-i Lambda_{-i}
//
// All sums honor the tail conventions analytically, so composed round trips
// are identities up to rounding.
#pragma once

#include <vector>

namespace dyadic {

struct LevelWindow {
    int lo = -30;
    int hi = 30;
};

namespace detail {
template <class Derived> struct WindowedSeq {
    int lo = 0;
    std::vector<double> v;

    int hi() const { return lo + static_cast<int>(v.size()) - 1; }
    double at(int j) const {
        if (j < lo) return Derived::below();
        if (j > hi()) return Derived::above();
        return v[static_cast<std::size_t>(j - lo)];
    }
};
} // namespace detail

struct LambdaSeq : detail::WindowedSeq<LambdaSeq> {
    static double below() { return 1.0; }
    static double above() { return 0.0; }
};

struct AlphaSeq : detail::WindowedSeq<AlphaSeq> {
    static double below() { return 0.0; }
    static double above() { return 0.0; }
};

struct ShellSeq {
    int lo = 0;
    std::vector<double> v;

    int hi() const { return lo + static_cast<int>(v.size()) - 1; }
    double at(int m) const {
        if (v.empty()) return 0.0;
        if (m < lo) return v.front();
        if (m > hi()) return 0.0;
        return v[static_cast<std::size_t>(m - lo)];
    }
};

AlphaSeq lambda_to_alpha(const LambdaSeq& L);
LambdaSeq alpha_to_lambda(const AlphaSeq& A);
ShellSeq alpha_to_k(const AlphaSeq& A);
AlphaSeq k_to_alpha(const ShellSeq& K);
LambdaSeq k_to_lambda(const ShellSeq& K);
ShellSeq lambda_to_k(const LambdaSeq& L);

// Variant of lambda_to_k taking the complements mu_j = 1 - Lambda_j on the
// same window. Near Lambda = 1 the complements carry the significant digits,
// and the far-field shells k_m (m >= 1) are evaluated entirely from them:
//   k_m = 2^-m mu_{-m} - sum_{i>=m+1} 2^-i mu_{-i}
// which keeps full relative precision in the heavy tail.
ShellSeq lambda_to_k(const LambdaSeq& L, const std::vector<double>& mu);

} // namespace dyadic
