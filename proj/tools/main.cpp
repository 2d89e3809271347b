// dyadic: kernel construction, conversion tables, stability reports, the
// central-limit ladder, and the fractional heat solver on dyadic grids.
//
// Exit codes: 0 success, 2 validation error, 3 I/O error.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyadic/clt.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/kernel.hpp"
#include "dyadic/numeric.hpp"
#include "dyadic/operators.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

dyadic::LevelWindow parse_window(const std::string& text) {
    const auto colon = text.find(':', 1); // skip a possible leading minus
    if (colon == std::string::npos) throw CLI::ValidationError("--window", "expected <lo>:<hi>");
    try {
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--window", "expected <lo>:<hi> integers");
    }
}

std::pair<int, int> parse_pair(const std::string& text, const std::string& flag) {
    const auto colon = text.find(':', 1);
    if (colon == std::string::npos) throw CLI::ValidationError(flag, "expected <lo>:<hi>");
    try {
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError(flag, "expected two integers separated by ':'");
    }
}

std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok == "inf" || tok == "Inf" || tok == "INF")
            out.push_back(HUGE_VAL);
        else {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw CLI::ValidationError("--p", "expected comma-separated exponents or 'inf'");
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("--p", "empty exponent list");
    return out;
}

void print_stability(const dyadic::StabilityReport& rep) {
    std::cout << "{\"sigma_samples\": [";
    for (std::size_t i = 0; i < rep.sigma_samples.size(); ++i) {
        const auto& [m, v] = rep.sigma_samples[i];
        std::cout << (i ? ", " : "") << "{\"j\": " << m << ", \"stab\": " << dyadic::fmt17(v) << "}";
    }
    std::cout << "], \"sigma_estimate\": " << dyadic::fmt17(rep.sigma_estimate)
              << ", \"converged\": " << (rep.converged ? "true" : "false") << "}\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadic Markov-kernel calculus: Haar spectra, semigroups, and the central-limit ladder"};
    app.require_subcommand(1);

    // kernel {build, convert, convolve}
    CLI::App* kernel = app.add_subcommand("kernel", "construct and inspect kernels");
    kernel->require_subcommand(1);

    std::string build_type, build_window = "-30:30", build_out;
    double build_t = 1.0, build_sigma = 2.0 / 3.0;
    CLI::App* build = kernel->add_subcommand("build", "construct a kernel and write it as JSON");
    build->add_option("--type", build_type, "gaussian|powerlaw|step")->required();
    build->add_option("--t", build_t, "time parameter for the gaussian family");
    build->add_option("--sigma", build_sigma, "stability parameter for the power-law family");
    build->add_option("--window", build_window, "eigenvalue window <lo>:<hi> (default -30:30)");
    build->add_option("--out", build_out, "output path")->required();

    std::string convert_in, convert_show = "all";
    CLI::App* convert = kernel->add_subcommand("convert", "print the sequence table as CSV");
    convert->add_option("--in", convert_in, "kernel JSON path")->required();
    convert->add_option("--show", convert_show, "lambda|alpha|k|all");

    std::string conv_a, conv_b, conv_out;
    CLI::App* convolve_cmd = kernel->add_subcommand("convolve", "convolve two kernels");
    convolve_cmd->add_option("--a", conv_a)->required();
    convolve_cmd->add_option("--b", conv_b)->required();
    convolve_cmd->add_option("--out", conv_out)->required();

    std::string stab_in;
    CLI::App* stability = app.add_subcommand("stability", "print the stability report as JSON");
    stability->add_option("--in", stab_in, "kernel JSON path")->required();

    double psi_r = 1.0;
    CLI::App* psi_cmd = app.add_subcommand("psi", "evaluate the diffusion profile");
    psi_cmd->add_option("--r", psi_r, "argument r > 0")->required();

    std::string clt_seed, clt_jrange = "-6:6", clt_grid = "4:8", clt_p = "1,2,inf", clt_format = "csv", clt_out;
    double clt_t = 1.0;
    int clt_imax = 20;
    CLI::App* clt = app.add_subcommand("clt", "run the iteration-mollification ladder");
    clt->add_option("--seed", clt_seed, "seed kernel JSON path")->required();
    clt->add_option("--t", clt_t, "diffusion time");
    clt->add_option("--imax", clt_imax, "ladder depth");
    clt->add_option("--jrange", clt_jrange, "eigenvalue levels <lo>:<hi>");
    clt->add_option("--grid", clt_grid, "grid layout <Jd>:<Jr>");
    clt->add_option("--p", clt_p, "norm exponents, e.g. 1,2,inf");
    clt->add_option("--format", clt_format, "csv|json");
    clt->add_option("--out", clt_out, "report path")->required();

    std::string solve_u0, solve_out;
    double solve_s = 1.0, solve_t = 1.0;
    CLI::App* solve = app.add_subcommand("solve", "apply the heat semigroup to a grid function");
    solve->add_option("--s", solve_s, "derivative order in (0, 1]")->required();
    solve->add_option("--t", solve_t, "time t >= 0")->required();
    solve->add_option("--u0", solve_u0, "initial datum CSV path")->required();
    solve->add_option("--out", solve_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (build->parsed()) {
            const dyadic::LevelWindow w = parse_window(build_window);
            dyadic::KernelSpec k = [&] {
                if (build_type == "gaussian") return dyadic::KernelSpec::gaussian(build_t, w);
                if (build_type == "powerlaw") return dyadic::KernelSpec::power_law(build_sigma, w);
                if (build_type == "step") return dyadic::KernelSpec::uniform_ball(w);
                throw std::invalid_argument("kernel build: unknown --type " + build_type);
            }();
            dyadic::save_kernel(k, build_out);
        } else if (convert->parsed()) {
            const dyadic::KernelSpec k = dyadic::load_kernel(convert_in);
            dyadic::KernelColumns cols;
            if (convert_show == "lambda")
                cols = dyadic::KernelColumns::lambda;
            else if (convert_show == "alpha")
                cols = dyadic::KernelColumns::alpha;
            else if (convert_show == "k")
                cols = dyadic::KernelColumns::k;
            else if (convert_show == "all")
                cols = dyadic::KernelColumns::all;
            else
                throw std::invalid_argument("kernel convert: unknown --show " + convert_show);
            dyadic::write_kernel_csv(k, std::cout, cols);
        } else if (convolve_cmd->parsed()) {
            const dyadic::KernelSpec a = dyadic::load_kernel(conv_a);
            const dyadic::KernelSpec b = dyadic::load_kernel(conv_b);
            dyadic::save_kernel(dyadic::convolve(a, b), conv_out);
        } else if (stability->parsed()) {
            print_stability(dyadic::stability_estimate(dyadic::load_kernel(stab_in)));
        } else if (psi_cmd->parsed()) {
            const double v = dyadic::psi(psi_r);
            std::cout << "{\"r\": " << dyadic::fmt17(psi_r) << ", \"psi\": " << dyadic::fmt17(v)
                      << ", \"r2_psi\": " << dyadic::fmt17(psi_r * psi_r * v) << "}\n";
        } else if (clt->parsed()) {
            dyadic::CltParams params;
            params.t = clt_t;
            params.i_max = clt_imax;
            std::tie(params.j_lo, params.j_hi) = parse_pair(clt_jrange, "--jrange");
            std::tie(params.grid_jd, params.grid_jr) = parse_pair(clt_grid, "--grid");
            params.p_list = parse_p_list(clt_p);
            dyadic::ReportFormat fmt;
            if (clt_format == "csv")
                fmt = dyadic::ReportFormat::csv;
            else if (clt_format == "json")
                fmt = dyadic::ReportFormat::json;
            else
                throw std::invalid_argument("clt: unknown --format " + clt_format);
            const dyadic::KernelSpec seed = dyadic::load_kernel(clt_seed);
            const dyadic::GridFunction u0 = dyadic::default_initial_datum(params.grid_jd, params.grid_jr);
            const dyadic::CltReport rep = dyadic::run_clt(seed, params, u0, clt_seed);
            dyadic::emit_report(rep, fmt, std::filesystem::path(clt_out));
        } else if (solve->parsed()) {
            const dyadic::GridFunction u0 = dyadic::read_grid_csv(solve_u0);
            dyadic::write_grid_csv(dyadic::heat_solve(solve_s, solve_t, u0), solve_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const dyadic::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
