#include "dyadic/clt.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dyadic/haar.hpp"
#include "dyadic/numeric.hpp"
#include "dyadic/operators.hpp"

namespace dyadic {

namespace {

std::string p_label(double p) {
    if (std::isinf(p)) return "inf";
    std::ostringstream os;
    os << p;
    return os.str();
}

} // namespace

GridFunction default_initial_datum(int grid_jd, int grid_jr) {
    return sample_haar(grid_jd, grid_jr, HaarIndex{0, 0});
}

CltReport run_clt(const KernelSpec& seed, const CltParams& params, const GridFunction& u0,
                  const std::string& seed_descriptor) {
    if (params.i_max < 1) throw std::invalid_argument("run_clt: i_max must be at least 1");
    if (params.j_lo > params.j_hi) throw std::invalid_argument("run_clt: empty j range");
    if (u0.domain_exponent() != params.grid_jd || u0.resolution_exponent() != params.grid_jr)
        throw std::invalid_argument("run_clt: u0 layout does not match the requested grid");
    if (!(params.t > 0.0)) throw std::domain_error("run_clt: t must be positive");

    CltReport rep;
    rep.t = params.t;
    rep.seed = seed_descriptor;
    rep.window_lo = seed.window_lo();
    rep.window_hi = seed.window_hi();
    rep.j_lo = params.j_lo;
    rep.j_hi = params.j_hi;
    rep.grid_jd = params.grid_jd;
    rep.grid_jr = params.grid_jr;
    rep.i_max = params.i_max;
    rep.stability_gate_tolerance = 0.05;

    const StabilityReport stab = stability_estimate(seed);
    rep.seed_sigma_estimate = stab.sigma_estimate;
    const double sigma_expected = (2.0 / 3.0) * params.t;
    if (!params.override_stability_gate &&
        std::abs(stab.sigma_estimate - sigma_expected) > rep.stability_gate_tolerance * sigma_expected)
        throw std::invalid_argument("run_clt: seed not 1-stable with parameter (2/3)t");

    const GridFunction u = heat_solve(1.0, params.t, u0);
    const HaarCoefficients u0c = haar_forward(u0);

    std::vector<double> eps(params.i_max + 1, 0.0);
    for (int i = 1; i <= params.i_max; ++i) {
        const KernelSpec mi = clt_step(seed, i);
        double worst = 0.0;
        for (int j = params.j_lo; j <= params.j_hi; ++j) {
            CltEigenRow row;
            row.i = i;
            row.j = j;
            row.lambda_mi = mi.lambda(j);
            row.target = std::exp(-params.t * pow2(j));
            row.abs_err = std::abs(row.lambda_mi - row.target);
            row.gamma = gamma_diag(seed, i, j);
            worst = std::max(worst, row.abs_err);
            rep.rows.push_back(row);
        }
        eps[i] = worst;

        const OperatorPlan plan(mi, ScalingMode::carry, params.grid_jd, params.grid_jr);
        const GridFunction vi = apply_kernel(plan, u0);
        const GridFunction diff = vi - u;
        for (double p : params.p_list) rep.lp_rows.push_back({i, p, lp_norm(diff, p)});

        // Coefficient-space route for the L2 error.
        Accumulator acc;
        for (int j = u0c.level_lo(); j <= u0c.level_hi(); ++j) {
            const double gap = mi.lambda(j) - std::exp(-params.t * pow2(j));
            for (std::uint64_t k = 0; k < u0c.positions_at(j); ++k) {
                const double a = gap * u0c.detail(j, k);
                acc.add(a * a);
            }
        }
        // Both routes carry the scaling coefficient unchanged, so the
        // scaling discrepancy term of the closed form vanishes.
        rep.parseval_l2.push_back(std::sqrt(acc.value()));
    }

    int mono_from = params.i_max;
    for (int i = params.i_max; i >= 2; --i) {
        if (eps[i] <= eps[i - 1])
            mono_from = i - 1;
        else
            break;
    }
    rep.monotone_from_i = mono_from;
    return rep;
}

void emit_report(const CltReport& r, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::csv) {
        out << "i,j,lambda_mi,target,abs_err,gamma\n";
        for (const CltEigenRow& row : r.rows)
            out << row.i << ',' << row.j << ',' << fmt17(row.lambda_mi) << ',' << fmt17(row.target) << ','
                << fmt17(row.abs_err) << ',' << fmt17(row.gamma) << '\n';
        out << '\n';
        out << "i,p,lp_err\n";
        for (const CltLpRow& row : r.lp_rows)
            out << row.i << ',' << p_label(row.p) << ',' << fmt17(row.lp_err) << '\n';
        return;
    }
    // Hand-assembled JSON so every float is serialized with 17 significant
    // digits (round-trip exact) and the layout is byte-deterministic.
    out << "{\n";
    out << "  \"t\": " << fmt17(r.t) << ",\n";
    out << "  \"seed\": \"" << r.seed << "\",\n";
    out << "  \"metadata\": {\n";
    out << "    \"window\": [" << r.window_lo << ", " << r.window_hi << "],\n";
    out << "    \"j_range\": [" << r.j_lo << ", " << r.j_hi << "],\n";
    out << "    \"grid\": {\"Jd\": " << r.grid_jd << ", \"Jr\": " << r.grid_jr << "},\n";
    out << "    \"i_max\": " << r.i_max << ",\n";
    out << "    \"seed_sigma_estimate\": " << fmt17(r.seed_sigma_estimate) << ",\n";
    out << "    \"stability_gate_tolerance\": " << fmt17(r.stability_gate_tolerance) << ",\n";
    out << "    \"monotone_from_i\": " << r.monotone_from_i << "\n";
    out << "  },\n";
    out << "  \"eigen_rows\": [\n";
    for (std::size_t n = 0; n < r.rows.size(); ++n) {
        const CltEigenRow& row = r.rows[n];
        out << "    {\"i\": " << row.i << ", \"j\": " << row.j << ", \"lambda_mi\": " << fmt17(row.lambda_mi)
            << ", \"target\": " << fmt17(row.target) << ", \"abs_err\": " << fmt17(row.abs_err)
            << ", \"gamma\": " << fmt17(row.gamma) << '}' << (n + 1 < r.rows.size() ? "," : "") << '\n';
    }
    out << "  ],\n";
    out << "  \"lp_rows\": [\n";
    for (std::size_t n = 0; n < r.lp_rows.size(); ++n) {
        const CltLpRow& row = r.lp_rows[n];
        out << "    {\"i\": " << row.i << ", \"p\": \"" << p_label(row.p) << "\", \"lp_err\": " << fmt17(row.lp_err)
            << '}' << (n + 1 < r.lp_rows.size() ? "," : "") << '\n';
    }
    out << "  ],\n";
    out << "  \"parseval_l2\": [";
    for (std::size_t n = 0; n < r.parseval_l2.size(); ++n)
        out << (n ? ", " : "") << fmt17(r.parseval_l2[n]);
    out << "]\n";
    out << "}\n";
}

void emit_report(const CltReport& report, ReportFormat format, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    emit_report(report, format, out);
    if (!out) throw io_error("write failed: " + path.string());
}

} // namespace dyadic
