#include "dyadic/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "dyadic/numeric.hpp"

namespace dyadic {

namespace {

constexpr double kNonnegTol = 1e-12;

void check_window(LevelWindow w) {
    if (w.lo > w.hi) throw std::invalid_argument("kernel window: lo must not exceed hi");
    if (w.hi - w.lo > 4096) throw std::invalid_argument("kernel window: unreasonably wide");
}

} // namespace

double psi(double r) {
    if (!(r > 0.0)) throw std::domain_error("psi: r must be positive");
    const double x = 1.0 / r;
    Accumulator acc;
    if (r >= 1.0) {
        // e^{-a} - e^{-x} = e^{-x} expm1(x - a) with a = x 2^-j keeps full
        // relative precision when all terms are close to 1.
        for (int j = 1; j < 1100; ++j) {
            const double term = std::ldexp(std::expm1(x * (1.0 - pow2(-j))), -j);
            acc.add(term);
            if (j > 8 && term < 1e-18 * acc.value()) break;
        }
        return std::exp(-x) * acc.value() / r;
    }
    // For r < 1 the bracketed differences are far apart; summed directly.
    // Terms only rise once 2^j r ~ 1, so run well past that point.
    const double e0 = std::exp(-x);
    const int floor_j = std::max(0, std::ilogb(x)) + 8;
    for (int j = 1; j < 1200; ++j) {
        const double term = std::ldexp(std::exp(-std::ldexp(x, -j)) - e0, -j);
        acc.add(term);
        if (j > floor_j && std::abs(term) < 1e-18 * std::abs(acc.value())) break;
    }
    return acc.value() / r;
}

double KernelSpec::mu(int j) const {
    if (j < lambda_.lo) return 0.0;
    if (j > lambda_.hi()) return 1.0;
    return mu_[static_cast<std::size_t>(j - lambda_.lo)];
}

double KernelSpec::shell_extended(int m) const {
    if (m > shell_.hi() && has_sigma_tail()) return sigma_tail_ * pow2(-2 * m);
    return shell_.at(m);
}

bool KernelSpec::has_sigma_tail() const { return !std::isnan(sigma_tail_); }

void KernelSpec::derive_shells() { shell_ = lambda_to_k(lambda_, mu_); }

KernelSpec KernelSpec::from_lambda(LevelWindow w, std::vector<double> lambda, bool strict_decreasing) {
    check_window(w);
    if (lambda.size() != static_cast<std::size_t>(w.hi - w.lo + 1))
        throw std::invalid_argument("from_lambda: value count does not match the window");
    for (double v : lambda)
        if (!(v >= -1.0 && v <= 1.0)) throw std::invalid_argument("from_lambda: eigenvalues must lie in [-1, 1]");
    if (strict_decreasing)
        for (std::size_t i = 1; i < lambda.size(); ++i)
            if (lambda[i] > lambda[i - 1])
                throw std::invalid_argument("from_lambda: not a decreasing eigenvalue sequence");

    KernelSpec k;
    k.lambda_.lo = w.lo;
    k.lambda_.v = std::move(lambda);
    k.mu_.resize(k.lambda_.v.size());
    for (std::size_t i = 0; i < k.mu_.size(); ++i) k.mu_[i] = 1.0 - k.lambda_.v[i];
    k.derive_shells();
    for (double s : k.shell_.v)
        if (s < -kNonnegTol) throw std::domain_error("from_lambda: kernel not nonnegative");
    return k;
}

KernelSpec KernelSpec::gaussian(double t, LevelWindow w) {
    if (!(t > 0.0)) throw std::domain_error("gaussian: t must be positive");
    check_window(w);
    KernelSpec k;
    k.lambda_.lo = w.lo;
    k.lambda_.v.resize(w.hi - w.lo + 1);
    k.mu_.resize(k.lambda_.v.size());
    for (int j = w.lo; j <= w.hi; ++j) {
        k.lambda_.v[j - w.lo] = std::exp(-t * pow2(j));
        k.mu_[j - w.lo] = -std::expm1(-t * pow2(j));
    }
    // Closed-form shells K_t = (1/t) psi(delta / t).
    k.shell_.lo = -w.hi - 1;
    k.shell_.v.resize(k.lambda_.v.size() + 1);
    for (int m = k.shell_.lo; m <= -w.lo; ++m) k.shell_.v[m - k.shell_.lo] = psi(pow2(m) / t) / t;
    k.sigma_tail_ = (2.0 / 3.0) * t;
    return k;
}

KernelSpec KernelSpec::power_law(double sigma, LevelWindow w) {
    if (!(sigma > 0.0 && sigma < 2.0)) throw std::domain_error("power_law: head weight negative (need 0 < sigma < 2)");
    check_window(w);
    if (w.lo > -1 || w.hi < 0) throw std::invalid_argument("power_law: window must cover levels -1 and 0");
    const double t = 1.5 * sigma;
    KernelSpec k;
    k.lambda_.lo = w.lo;
    k.lambda_.v.resize(w.hi - w.lo + 1);
    k.mu_.resize(k.lambda_.v.size());
    for (int j = w.lo; j <= w.hi; ++j) {
        const double m = std::min(1.0, t * pow2(j));
        k.mu_[j - w.lo] = j <= -1 ? m : 1.0;
        k.lambda_.v[j - w.lo] = j <= -1 ? std::max(0.0, 1.0 - t * pow2(j)) : 0.0;
    }
    const double head = 1.0 - sigma / 2.0;
    k.shell_.lo = -w.hi - 1;
    k.shell_.v.resize(k.lambda_.v.size() + 1);
    for (int m = k.shell_.lo; m <= -w.lo; ++m) k.shell_.v[m - k.shell_.lo] = m <= 0 ? head : sigma * pow2(-2 * m);
    k.sigma_tail_ = sigma;
    return k;
}

KernelSpec KernelSpec::uniform_ball(LevelWindow w) {
    check_window(w);
    if (w.lo > -1 || w.hi < 0) throw std::invalid_argument("uniform_ball: window must cover levels -1 and 0");
    KernelSpec k;
    k.lambda_.lo = w.lo;
    k.lambda_.v.resize(w.hi - w.lo + 1);
    k.mu_.resize(k.lambda_.v.size());
    for (int j = w.lo; j <= w.hi; ++j) {
        k.lambda_.v[j - w.lo] = j <= -1 ? 1.0 : 0.0;
        k.mu_[j - w.lo] = j <= -1 ? 0.0 : 1.0;
    }
    k.shell_.lo = -w.hi - 1;
    k.shell_.v.resize(k.lambda_.v.size() + 1);
    for (int m = k.shell_.lo; m <= -w.lo; ++m) k.shell_.v[m - k.shell_.lo] = m <= 0 ? 1.0 : 0.0;
    k.sigma_tail_ = 0.0;
    return k;
}

double profile_mass(const ShellSeq& s) {
    Accumulator acc;
    for (int m = s.lo; m <= s.hi(); ++m) acc.add(std::ldexp(s.at(m), m - 1));
    acc.add(std::ldexp(s.at(s.lo), s.lo - 1)); // constant tail below: sum_{m<lo} 2^{m-1} = 2^{lo-1}
    return acc.value();
}

double normalization_check(const KernelSpec& k) {
    double mass = profile_mass(k.shell_seq());
    if (k.has_sigma_tail()) mass += std::ldexp(k.sigma_tail(), -k.shell_seq().hi() - 1);
    return mass;
}

double eval(const KernelSpec& k, const DyadicPoint& x, const DyadicPoint& y) {
    const DeltaValue d = dyadic_distance(x, y);
    if (d.is_zero()) throw std::domain_error("eval: diagonal evaluation undefined pointwise");
    return k.shell_extended(d.exponent());
}

StabilityReport stability_estimate(const KernelSpec& k) {
    const ShellSeq& s = k.shell_seq();
    const int top = s.hi();
    constexpr int guard = 5;
    constexpr int count = 8;
    if (top < 13 || top - guard - count + 1 < s.lo)
        throw std::invalid_argument("stability_estimate: insufficient tail (shell range must reach level 13)");
    StabilityReport r;
    for (int m = top - guard - count + 1; m <= top - guard; ++m)
        r.sigma_samples.emplace_back(m, std::ldexp(s.at(m), 2 * m));
    r.sigma_estimate = r.sigma_samples.back().second;
    const double denom = std::max(std::abs(r.sigma_estimate), std::numeric_limits<double>::min());
    double spread = 0.0;
    for (std::size_t i = r.sigma_samples.size() - 5; i < r.sigma_samples.size(); ++i)
        spread = std::max(spread, std::abs(r.sigma_samples[i].second - r.sigma_estimate) / denom);
    r.converged = spread < 1e-2;
    return r;
}

double gamma_diag(const KernelSpec& k, int i, int j) {
    const ShellSeq& s = k.shell_seq();
    const int m = i - j;
    Accumulator tail; // sum_{l >= m} k_l 2^{l-1}
    for (int l = std::max(m, s.lo); l <= s.hi(); ++l) tail.add(std::ldexp(s.at(l), l - 1));
    if (m < s.lo) tail.add(s.at(s.lo) * (pow2(s.lo - 1) - pow2(m - 1)));
    if (k.has_sigma_tail()) tail.add(std::ldexp(k.sigma_tail(), -std::max(m, s.hi() + 1)));
    return std::ldexp(tail.value(), m) + std::ldexp(k.shell_extended(m), 2 * m - 1);
}

KernelSpec convolve(const KernelSpec& a, const KernelSpec& b) {
    const int lo = std::max(a.window_lo(), b.window_lo());
    const int hi = std::min(a.window_hi(), b.window_hi());
    if (lo > hi) throw std::invalid_argument("convolve: incompatible windows");

    KernelSpec k;
    k.lambda_.lo = lo;
    k.lambda_.v.resize(hi - lo + 1);
    k.mu_.resize(k.lambda_.v.size());
    for (int j = lo; j <= hi; ++j) {
        k.lambda_.v[j - lo] = a.lambda(j) * b.lambda(j);
        // 1 - (1-ma)(1-mb) without forming the products of values near 1.
        k.mu_[j - lo] = a.mu(j) + b.mu(j) - a.mu(j) * b.mu(j);
    }

    // Shell values through the profile coefficients:
    // a3_j = a1_j L2_j + a2_j L1_j + a1_j a2_j.
    const AlphaSeq a1 = a.alpha_seq();
    const AlphaSeq a2 = b.alpha_seq();
    AlphaSeq a3;
    a3.lo = std::min(a1.lo, a2.lo);
    a3.v.resize(std::max(a1.hi(), a2.hi()) - a3.lo + 1);
    for (int j = a3.lo; j <= a3.hi(); ++j)
        a3.v[j - a3.lo] = a1.at(j) * b.lambda(j) + a2.at(j) * a.lambda(j) + a1.at(j) * a2.at(j);
    k.shell_ = alpha_to_k(a3);

    if (a.has_sigma_tail() && b.has_sigma_tail()) k.sigma_tail_ = a.sigma_tail() + b.sigma_tail();
    return k;
}

KernelSpec iterate(const KernelSpec& k, long n) {
    if (n < 1) throw std::invalid_argument("iterate: n must be a positive integer");
    if (n == 1) return k;
    KernelSpec r;
    r.lambda_.lo = k.window_lo();
    r.lambda_.v.resize(k.lambda_.v.size());
    r.mu_.resize(r.lambda_.v.size());
    for (int j = k.window_lo(); j <= k.window_hi(); ++j) {
        const double lam = k.lambda(j);
        const double m = k.mu(j);
        double lam_n, mu_n;
        if (lam >= 0.5) {
            // log-of-one-plus route; exact where Lambda ~ 1.
            mu_n = -std::expm1(static_cast<double>(n) * std::log1p(-m));
            lam_n = 1.0 - mu_n;
        } else {
            const double mag = std::pow(std::abs(lam), static_cast<double>(n));
            lam_n = (lam < 0.0 && (n % 2) != 0) ? -mag : mag;
            mu_n = 1.0 - lam_n;
        }
        r.lambda_.v[j - r.lambda_.lo] = lam_n;
        r.mu_[j - r.lambda_.lo] = mu_n;
    }
    r.derive_shells();
    if (k.has_sigma_tail()) r.sigma_tail_ = static_cast<double>(n) * k.sigma_tail();
    return r;
}

KernelSpec mollify(const KernelSpec& k, int i) {
    const long lo = static_cast<long>(k.window_lo()) + i;
    const long hi = static_cast<long>(k.window_hi()) + i;
    if (lo < -100000 || hi > 100000) throw std::invalid_argument("mollify: window shift out of range");
    KernelSpec r = k;
    r.lambda_.lo = static_cast<int>(lo);
    r.shell_.lo = k.shell_.lo - i;
    for (double& v : r.shell_.v) v = std::ldexp(v, i);
    if (k.has_sigma_tail()) r.sigma_tail_ = std::ldexp(k.sigma_tail(), -i);
    return r;
}

KernelSpec clt_step(const KernelSpec& k, int i) {
    if (i < 0) throw std::invalid_argument("clt_step: i must be nonnegative");
    if (i == 0) return k;
    if (i > 62) throw std::invalid_argument("clt_step: iteration exponent out of range");
    const double fold = pow2(i); // 2^i iterations
    KernelSpec r;
    r.lambda_.lo = k.window_lo() + i;
    r.lambda_.v.resize(k.lambda_.v.size());
    r.mu_.resize(r.lambda_.v.size());
    for (int j = r.lambda_.lo; j <= r.lambda_.lo + static_cast<int>(r.lambda_.v.size()) - 1; ++j) {
        const double lam = k.lambda(j - i);
        const double m = k.mu(j - i);
        double lam_n, mu_n;
        if (lam >= 0.5) {
            mu_n = -std::expm1(fold * std::log1p(-m));
            lam_n = 1.0 - mu_n;
        } else {
            // 2^i is even for i >= 1, so the sign of lam drops out.
            lam_n = std::pow(std::abs(lam), fold);
            mu_n = 1.0 - lam_n;
        }
        r.lambda_.v[j - r.lambda_.lo] = lam_n;
        r.mu_[j - r.lambda_.lo] = mu_n;
    }
    r.derive_shells();
    r.sigma_tail_ = k.sigma_tail_;
    return r;
}

void save_kernel(const KernelSpec& k, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["j_lo"] = k.window_lo();
    doc["j_hi"] = k.window_hi();
    doc["lambda"] = k.lambda_seq().v;
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    out << doc.dump() << '\n';
    if (!out) throw io_error("write failed: " + path.string());
}

KernelSpec load_kernel(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("bad kernel file " + path.string() + ": " + e.what());
    }
    if (!doc.contains("j_lo") || !doc.contains("j_hi") || !doc.contains("lambda"))
        throw std::invalid_argument("kernel file must carry j_lo, j_hi and lambda");
    return KernelSpec::from_lambda({doc.at("j_lo").get<int>(), doc.at("j_hi").get<int>()},
                                   doc.at("lambda").get<std::vector<double>>());
}

void write_kernel_csv(const KernelSpec& k, std::ostream& out, KernelColumns cols) {
    const AlphaSeq alpha = k.alpha_seq();
    const int lo = std::min(k.window_lo(), k.shell_seq().lo) - 1;
    const int hi = std::max(k.window_hi(), k.shell_seq().hi()) + 1;
    switch (cols) {
    case KernelColumns::lambda: out << "j,lambda\n"; break;
    case KernelColumns::alpha: out << "j,alpha\n"; break;
    case KernelColumns::k: out << "j,k\n"; break;
    case KernelColumns::all: out << "j,lambda,alpha,k,stab\n"; break;
    }
    for (int j = lo; j <= hi; ++j) {
        out << j;
        if (cols == KernelColumns::lambda || cols == KernelColumns::all) out << ',' << fmt17(k.lambda(j));
        if (cols == KernelColumns::alpha || cols == KernelColumns::all) out << ',' << fmt17(alpha.at(j));
        if (cols == KernelColumns::k || cols == KernelColumns::all) out << ',' << fmt17(k.shell(j));
        if (cols == KernelColumns::all) out << ',' << fmt17(std::ldexp(k.shell(j), 2 * j));
        out << '\n';
    }
}

} // namespace dyadic
