// Piecewise-constant functions on a dyadic grid over [0, 2^Jd) with cell
// width 2^-Jr. These are the finite stand-ins for L^p functions; every norm
// and inner product on them is an exact finite sum.
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "dyadic/errors.hpp"
#include "dyadic/point.hpp"

namespace dyadic {

class GridFunction {
  public:
    // Zero function on the (Jd, Jr) layout.
    GridFunction(int domain_exponent, int resolution_exponent);
    GridFunction(int domain_exponent, int resolution_exponent, std::vector<double> values);

    int domain_exponent() const { return jd_; }
    int resolution_exponent() const { return jr_; }
    std::size_t cells() const { return values_.size(); }
    double cell_width() const;

    double& operator[](std::size_t c) { return values_[c]; }
    double operator[](std::size_t c) const { return values_[c]; }
    const std::vector<double>& values() const { return values_; }

    // Left endpoint of cell c as an exact point.
    DyadicPoint cell_point(std::uint64_t c) const { return make_point(c, jr_); }
    // Cell containing x; throws if x is outside [0, 2^Jd) or not aligned.
    std::uint64_t cell_of(const DyadicPoint& x) const;

    bool same_layout(const GridFunction& o) const { return jd_ == o.jd_ && jr_ == o.jr_; }

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double a);
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double a, GridFunction f) { return f *= a; }

  private:
    int jd_;
    int jr_;
    std::vector<double> values_;
};

// Exact cell quadrature: (sum |f_c|^p 2^-Jr)^{1/p}; max |f_c| for p = inf.
// p < 1 is rejected.
double lp_norm(const GridFunction& f, double p);

// CSV with header `cell_index,value` plus a JSON sidecar `{"Jd":..,"Jr":..}`
// at <path>.json.
void write_grid_csv(const GridFunction& f, const std::filesystem::path& path);
GridFunction read_grid_csv(const std::filesystem::path& path);

} // namespace dyadic
