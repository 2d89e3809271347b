#include "dyadic/grid.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dyadic/numeric.hpp"

namespace dyadic {

namespace {

std::size_t layout_cells(int jd, int jr) {
    if (jd < 0 || jr < 0 || jd + jr < 1 || jd + jr > 30)
        throw std::invalid_argument("GridFunction: need Jd, Jr >= 0 and 1 <= Jd+Jr <= 30");
    return std::size_t{1} << (jd + jr);
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    std::filesystem::path p = path;
    p += ".json";
    return p;
}

} // namespace

GridFunction::GridFunction(int domain_exponent, int resolution_exponent)
    : jd_(domain_exponent), jr_(resolution_exponent), values_(layout_cells(jd_, jr_), 0.0) {}

GridFunction::GridFunction(int domain_exponent, int resolution_exponent, std::vector<double> values)
    : jd_(domain_exponent), jr_(resolution_exponent), values_(std::move(values)) {
    if (values_.size() != layout_cells(jd_, jr_))
        throw std::invalid_argument("GridFunction: value count does not match 2^(Jd+Jr)");
}

double GridFunction::cell_width() const { return pow2(-jr_); }

std::uint64_t GridFunction::cell_of(const DyadicPoint& x) const {
    if (x.resolution < jr_) {
        const std::uint64_t c = x.numerator << (jr_ - x.resolution);
        if (c >= cells()) throw std::invalid_argument("GridFunction: point outside the domain");
        return c;
    }
    const std::uint64_t c = x.numerator >> (x.resolution - jr_);
    if (c >= cells()) throw std::invalid_argument("GridFunction: point outside the domain");
    return c;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (!same_layout(o)) throw std::invalid_argument("GridFunction: layout mismatch");
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += o.values_[c];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (!same_layout(o)) throw std::invalid_argument("GridFunction: layout mismatch");
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] -= o.values_[c];
    return *this;
}

GridFunction& GridFunction::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p < 1 is not a norm");
    Accumulator acc;
    if (p == 1.0) {
        for (double v : f.values()) acc.add(std::abs(v));
        return std::ldexp(acc.value(), -f.resolution_exponent());
    }
    if (p == 2.0) {
        for (double v : f.values()) acc.add(v * v);
        return std::sqrt(std::ldexp(acc.value(), -f.resolution_exponent()));
    }
    for (double v : f.values()) acc.add(std::pow(std::abs(v), p));
    return std::pow(std::ldexp(acc.value(), -f.resolution_exponent()), 1.0 / p);
}

void write_grid_csv(const GridFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    out << "cell_index,value\n";
    for (std::size_t c = 0; c < f.cells(); ++c) out << c << ',' << fmt17(f[c]) << '\n';
    if (!out) throw io_error("write failed: " + path.string());

    nlohmann::json meta;
    meta["Jd"] = f.domain_exponent();
    meta["Jr"] = f.resolution_exponent();
    std::ofstream side(sidecar_path(path));
    if (!side) throw io_error("cannot open for writing: " + sidecar_path(path).string());
    side << meta.dump() << '\n';
    if (!side) throw io_error("write failed: " + sidecar_path(path).string());
}

GridFunction read_grid_csv(const std::filesystem::path& path) {
    std::ifstream side(sidecar_path(path));
    if (!side) throw io_error("cannot open: " + sidecar_path(path).string());
    nlohmann::json meta;
    try {
        side >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("bad grid sidecar " + sidecar_path(path).string() + ": " + e.what());
    }
    if (!meta.contains("Jd") || !meta.contains("Jr"))
        throw std::invalid_argument("grid sidecar must carry Jd and Jr");
    GridFunction f(meta.at("Jd").get<int>(), meta.at("Jr").get<int>());

    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "cell_index,value")
        throw std::invalid_argument("grid CSV must start with header cell_index,value");
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("grid CSV: malformed row " + line);
        const std::size_t c = std::stoull(line.substr(0, comma));
        if (c != row || c >= f.cells()) throw std::invalid_argument("grid CSV: cell indices must be 0..N-1 in order");
        f[c] = std::strtod(line.c_str() + comma + 1, nullptr);
        ++row;
    }
    if (row != f.cells()) throw std::invalid_argument("grid CSV: wrong number of rows for the declared layout");
    return f;
}

} // namespace dyadic
