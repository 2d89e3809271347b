#include "dyadic/sequences.hpp"

#include <cmath>
#include <stdexcept>

#include "dyadic/numeric.hpp"

namespace dyadic {

AlphaSeq lambda_to_alpha(const LambdaSeq& L) {
    AlphaSeq A;
    A.lo = L.lo;
    A.v.resize(L.v.size() + 1);
    for (int j = A.lo; j <= L.hi() + 1; ++j) A.v[j - A.lo] = L.at(j - 1) - L.at(j);
    return A;
}

LambdaSeq alpha_to_lambda(const AlphaSeq& A) {
    LambdaSeq L;
    L.lo = A.lo - 1;
    L.v.resize(A.v.size() + 1);
    Accumulator suffix; // sum_{l > j} a_l, grown from the top
    for (int j = A.hi(); j >= L.lo; --j) {
        L.v[j - L.lo] = suffix.value();
        suffix.add(A.at(j));
    }
    return L;
}

ShellSeq alpha_to_k(const AlphaSeq& A) {
    ShellSeq K;
    K.lo = -A.hi();
    K.v.resize(A.v.size());
    Accumulator acc; // sum_{i >= m} 2^-i a_{-i}, grown downward
    for (int m = -A.lo; m >= K.lo; --m) {
        acc.add(std::ldexp(A.at(-m), -m));
        K.v[m - K.lo] = acc.value();
    }
    return K;
}

AlphaSeq k_to_alpha(const ShellSeq& K) {
    AlphaSeq A;
    A.lo = -K.hi();
    A.v.resize(K.v.size());
    for (int j = A.lo; j <= -K.lo; ++j) A.v[j - A.lo] = std::ldexp(K.at(-j) - K.at(-j + 1), -j);
    return A;
}

LambdaSeq k_to_lambda(const ShellSeq& K) {
    LambdaSeq L;
    L.lo = -K.hi();
    L.v.resize(K.v.size());
    Accumulator prefix; // sum_{l < m} k_l 2^l; the constant below-tail sums to k_lo 2^lo
    prefix.add(std::ldexp(K.at(K.lo), K.lo));
    for (int m = K.lo; m <= K.hi(); ++m) {
        L.v[-m - L.lo] = 0.5 * (prefix.value() - std::ldexp(K.at(m), m));
        prefix.add(std::ldexp(K.at(m), m));
    }
    return L;
}

namespace {

ShellSeq lambda_to_k_impl(const LambdaSeq& L, const double* mu, std::size_t mu_size) {
    if (mu != nullptr && mu_size != L.v.size())
        throw std::invalid_argument("lambda_to_k: complement array must match the window");
    const auto mu_at = [&](int j) -> double {
        if (j < L.lo) return 0.0;
        if (j > L.hi()) return 1.0;
        return mu != nullptr ? mu[static_cast<std::size_t>(j - L.lo)] : 1.0 - L.at(j);
    };

    ShellSeq K;
    K.lo = -L.hi() - 1;
    K.v.resize(L.v.size() + 1);
    Accumulator s_lambda; // sum_{i >= m+1} 2^-i Lambda_{-i}
    Accumulator s_mu;     // sum_{i >= m+1} 2^-i mu_{-i}
    // Above the window (-i < L.lo) the 1-tail of Lambda contributes exactly
    // sum_{i >= -L.lo + 1} 2^-i = 2^{L.lo}; the mu tail there is zero.
    s_lambda.add(std::ldexp(1.0, L.lo));
    for (int m = -L.lo; m >= K.lo; --m) {
        if (m >= 1)
            K.v[m - K.lo] = std::ldexp(mu_at(-m), -m) - s_mu.value();
        else
            K.v[m - K.lo] = -std::ldexp(L.at(-m), -m) + s_lambda.value();
        s_lambda.add(std::ldexp(L.at(-m), -m));
        s_mu.add(std::ldexp(mu_at(-m), -m));
    }
    return K;
}

} // namespace

ShellSeq lambda_to_k(const LambdaSeq& L) { return lambda_to_k_impl(L, nullptr, 0); }

ShellSeq lambda_to_k(const LambdaSeq& L, const std::vector<double>& mu) {
    return lambda_to_k_impl(L, mu.data(), mu.size());
}

} // namespace dyadic
