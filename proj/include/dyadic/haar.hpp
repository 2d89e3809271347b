// The Haar system restricted to a finite dyadic grid: exact evaluation, the
// O(N) pyramid transform and its inverse, the square function, and sampling
// of basis functions.
//
// On a (Jd, Jr) grid the in-range Haar indices are the levels
// j in [-Jd, Jr-1] with I^j_k inside [0, 2^Jd); together with one scaling
// coefficient (the normalized indicator of the whole domain) they form an
// orthonormal basis of the N = 2^(Jd+Jr) cell values.
#pragma once

#include <cstdint>

#include "dyadic/grid.hpp"
#include "dyadic/point.hpp"

namespace dyadic {

// h^level_position, supported on I^level_position, values +-2^{level/2}.
struct HaarIndex {
    int level = 0;
    std::uint64_t position = 0;

    DyadicInterval support() const { return {level, position}; }
    friend bool operator==(const HaarIndex&, const HaarIndex&) = default;
};

class HaarCoefficients {
  public:
    HaarCoefficients(int domain_exponent, int resolution_exponent);

    // Adopt raw coefficients; the detail count must be 2^(Jd+Jr) - 1.
    static HaarCoefficients from_parts(int domain_exponent, int resolution_exponent, double scaling,
                                       std::vector<double> details);

    int domain_exponent() const { return jd_; }
    int resolution_exponent() const { return jr_; }
    int level_lo() const { return -jd_; }
    int level_hi() const { return jr_ - 1; }
    std::uint64_t positions_at(int level) const { return std::uint64_t{1} << (jd_ + level); }
    std::size_t detail_count() const { return details_.size(); }

    double scaling() const { return scaling_; }
    double& scaling() { return scaling_; }
    double detail(int level, std::uint64_t position) const { return details_[slot(level, position)]; }
    double& detail(int level, std::uint64_t position) { return details_[slot(level, position)]; }

    bool same_layout(const HaarCoefficients& o) const { return jd_ == o.jd_ && jr_ == o.jr_; }

  private:
    std::size_t slot(int level, std::uint64_t position) const;
    int jd_;
    int jr_;
    double scaling_;
    std::vector<double> details_;
};

// Pointwise value of h^j_k at an exact dyadic point.
double haar_eval(const HaarIndex& idx, const DyadicPoint& x);

// Forward pyramid transform; each detail equals the exact quadrature <f, h>.
HaarCoefficients haar_forward(const GridFunction& f);

// Inverse pyramid; left inverse of haar_forward on matching layouts.
GridFunction haar_inverse(const HaarCoefficients& c);

// S f = (sum_h <f,h>^2 |I(h)|^-1 chi_I(h))^{1/2} over the in-range details;
// the scaling coefficient is not part of S and is reported by haar_forward.
GridFunction square_function(const GridFunction& f);

// The sampled basis function h^j_k on the grid, zero outside its support.
// The support must be inside the domain and no finer than half a cell.
GridFunction sample_haar(int domain_exponent, int resolution_exponent, const HaarIndex& idx);

} // namespace dyadic
