#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "dyadic/clt.hpp"
#include "dyadic/numeric.hpp"
#include "reference_values.hpp"

using namespace dyadic;

namespace {

CltParams small_params() {
    CltParams p;
    p.i_max = 6;
    p.j_lo = -3;
    p.j_hi = 3;
    p.grid_jd = 3;
    p.grid_jr = 5;
    return p;
}

} // namespace

TEST_CASE("gaussian seed is the fixed point of the ladder") {
    const KernelSpec seed = KernelSpec::gaussian(1.0, {-40, 30});
    CltParams p = small_params();
    const CltReport rep = run_clt(seed, p, default_initial_datum(p.grid_jd, p.grid_jr), "gaussian");
    REQUIRE(rep.rows.size() == static_cast<std::size_t>(p.i_max * (p.j_hi - p.j_lo + 1)));
    for (const CltEigenRow& row : rep.rows) CHECK(row.abs_err <= 1e-12);
    for (const CltLpRow& row : rep.lp_rows) CHECK(row.lp_err <= 1e-10);
    for (double v : rep.parseval_l2) CHECK(v <= 1e-10);
}

TEST_CASE("power-law seed converges with the frozen ladder errors") {
    const KernelSpec seed = KernelSpec::power_law(2.0 / 3.0);
    CltParams p;
    p.i_max = 20;
    const CltReport rep = run_clt(seed, p, default_initial_datum(p.grid_jd, p.grid_jr), "powerlaw");

    // Worst eigenvalue error per ladder step.
    std::vector<double> eps(p.i_max + 1, 0.0);
    for (const CltEigenRow& row : rep.rows) eps[row.i] = std::max(eps[row.i], row.abs_err);
    for (const auto& pin : refvals::ladder_eps) CHECK(std::abs(eps[pin.i] - pin.eps) < 1e-12);
    for (int i = refvals::ladder_monotone_from + 1; i <= p.i_max; ++i) CHECK(eps[i] <= eps[i - 1]);
    CHECK(rep.monotone_from_i == refvals::ladder_monotone_from);

    // gamma column sits at t for this exactly 1-stable seed.
    for (const CltEigenRow& row : rep.rows)
        if (row.i > row.j) CHECK(std::abs(row.gamma - 1.0) < 1e-4);

    // abs_err is recomputable from the stored row, to the last bit.
    for (const CltEigenRow& row : rep.rows) CHECK(row.abs_err == std::abs(row.lambda_mi - row.target));

    // With u0 = h^0_0 all three norms equal |lambda_mi(0) - e^-1| and the
    // coefficient-space route agrees.
    std::vector<double> err_at_0(p.i_max + 1, 0.0);
    for (const CltEigenRow& row : rep.rows)
        if (row.j == 0) err_at_0[row.i] = row.abs_err;
    for (const CltLpRow& row : rep.lp_rows) CHECK(row.lp_err == doctest::Approx(err_at_0[row.i]).epsilon(1e-10));
    for (int i = 1; i <= p.i_max; ++i) CHECK(rep.parseval_l2[i - 1] == doctest::Approx(err_at_0[i]).epsilon(1e-10));
    // L^p errors decrease along the ladder.
    for (int i = 2; i <= p.i_max; ++i) CHECK(err_at_0[i] < err_at_0[i - 1]);
}

TEST_CASE("stability gate") {
    const KernelSpec seed = KernelSpec::power_law(2.0 / 3.0);
    CltParams p = small_params();
    p.t = 3.0; // expects sigma = 2, far from the seed's 2/3
    CHECK_THROWS_AS(run_clt(seed, p, default_initial_datum(p.grid_jd, p.grid_jr)), std::invalid_argument);
    p.override_stability_gate = true;
    CHECK_NOTHROW(run_clt(seed, p, default_initial_datum(p.grid_jd, p.grid_jr)));
}

TEST_CASE("report emission: headers, determinism, JSON round trip") {
    const KernelSpec seed = KernelSpec::power_law(2.0 / 3.0);
    CltParams p = small_params();
    const CltReport rep = run_clt(seed, p, default_initial_datum(p.grid_jd, p.grid_jr), "powerlaw");

    std::ostringstream csv1, csv2;
    emit_report(rep, ReportFormat::csv, csv1);
    emit_report(rep, ReportFormat::csv, csv2);
    CHECK(csv1.str() == csv2.str()); // byte identical
    CHECK(csv1.str().rfind("i,j,lambda_mi,target,abs_err,gamma\n", 0) == 0);
    CHECK(csv1.str().find("\ni,p,lp_err\n") != std::string::npos);
    // Row count: header + i_max * |j_range| rows before the blank line.
    std::istringstream lines(csv1.str());
    std::string line;
    int eigen_rows = -1; // discount the header
    while (std::getline(lines, line) && !line.empty()) ++eigen_rows;
    CHECK(eigen_rows == p.i_max * (p.j_hi - p.j_lo + 1));

    std::ostringstream json1, json2;
    emit_report(rep, ReportFormat::json, json1);
    emit_report(rep, ReportFormat::json, json2);
    CHECK(json1.str() == json2.str());
    // Reparsing reproduces every float bit-exactly.
    const nlohmann::json doc = nlohmann::json::parse(json1.str());
    REQUIRE(doc.at("eigen_rows").size() == rep.rows.size());
    for (std::size_t n = 0; n < rep.rows.size(); ++n) {
        const auto& row = doc.at("eigen_rows")[n];
        CHECK(row.at("lambda_mi").get<double>() == rep.rows[n].lambda_mi);
        CHECK(row.at("target").get<double>() == rep.rows[n].target);
        CHECK(row.at("abs_err").get<double>() == rep.rows[n].abs_err);
        CHECK(row.at("gamma").get<double>() == rep.rows[n].gamma);
    }
    REQUIRE(doc.at("lp_rows").size() == rep.lp_rows.size());
    for (std::size_t n = 0; n < rep.lp_rows.size(); ++n)
        CHECK(doc.at("lp_rows")[n].at("lp_err").get<double>() == rep.lp_rows[n].lp_err);
}

TEST_CASE("empty report emits header-only tables") {
    CltReport empty;
    std::ostringstream os;
    emit_report(empty, ReportFormat::csv, os);
    CHECK(os.str() == "i,j,lambda_mi,target,abs_err,gamma\n\ni,p,lp_err\n");
}

TEST_CASE("empty ladder is rejected, bad grids are rejected") {
    const KernelSpec seed = KernelSpec::power_law(2.0 / 3.0);
    CltParams p = small_params();
    p.i_max = 0;
    CHECK_THROWS_AS(run_clt(seed, p, default_initial_datum(3, 5)), std::invalid_argument);
    p = small_params();
    CHECK_THROWS_AS(run_clt(seed, p, default_initial_datum(2, 5)), std::invalid_argument);
}
