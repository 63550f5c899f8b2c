// Command-line front end: approximate a weighted lognormal sum, simulate its
// CDF, search the t-set, or emit the four-method comparison table.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lnsum/approximator.hpp"
#include "lnsum/errors.hpp"
#include "lnsum/factorize.hpp"
#include "lnsum/montecarlo.hpp"
#include "lnsum/problem_io.hpp"
#include "lnsum/tuner.hpp"

namespace {

using namespace lnsum;

const std::vector<double> kTableProbs = {0.01, 0.05, 0.10, 0.30, 0.50,
                                         0.80, 0.90, 0.95, 0.99};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot open output file: " + out_path);
    out << text;
}

TPair tpair_from(const ProblemFile& pf, const std::vector<double>& t_flag) {
    if (t_flag.size() == 2)
        return TPair{t_flag[0], t_flag[1]};
    if (pf.t)
        return *pf.t;
    throw ValidationError("no t pair: pass --t <t1> <t2> or add a 't' field to the problem file");
}

void print_verbose_trace(const SumSpec& spec) {
    const NormalSystem sys = underlying_system(spec);
    const int n = spec.size();
    for (int i = 0; i < n; ++i)
        std::cout << "  normal mu_x" << i + 1 << " = " << fmt(sys.means(i)) << "\n";
    for (int i = 0; i < n; ++i)
        std::cout << "  normal var_x" << i + 1 << " = " << fmt(sys.cov(i, i)) << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double rho =
                sys.cov(i, j) / std::sqrt(sys.cov(i, i) * sys.cov(j, j));
            std::cout << "  normal cov(x" << i + 1 << ",x" << j + 1
                      << ") = " << fmt(sys.cov(i, j)) << "  (rho = " << fmt(rho) << ")\n";
        }
    const auto [e_s, v_s] = sum_mean_var(spec);
    std::cout << "  E[S] = " << fmt(e_s) << "  V[S] = " << fmt(v_s) << "\n";
    const auto [mu0, sigma0] = initial_point(spec);
    std::cout << "  start mu_x = " << fmt(mu0) << "  start sigma_x = " << fmt(sigma0) << "\n";
}

int cmd_approx(const std::string& file, const std::vector<double>& t_flag,
               const SolverConfig& solver_config, bool quantiles, bool alpha_row,
               bool verbose) {
    const ProblemFile pf = load_problem(file);
    const TPair tpair = tpair_from(pf, t_flag);
    if (verbose) {
        std::cout << "derivation:\n";
        print_verbose_trace(pf.spec);
    }
    const ApproxResult r = approximate(pf.spec, tpair, solver_config);
    std::cout << "t pair            = {" << fmt(tpair.t1) << ", " << fmt(tpair.t2) << "}\n";
    std::cout << "lognormal mean    = " << fmt(r.lognormal_mean) << "\n";
    std::cout << "lognormal var     = " << fmt(r.lognormal_variance) << "\n";
    std::cout << "normal mu_x       = " << fmt(r.normal_mu) << "\n";
    std::cout << "normal sigma_x    = " << fmt(r.normal_sigma) << "\n";
    std::cout << "iterations        = " << r.solver.iterations << "\n";
    std::cout << "final residual    = " << fmt(r.solver.final_residual) << "\n";
    if (quantiles)
        for (double p : kTableProbs)
            std::cout << "quantile p=" << p << "  s = " << fmt(approx_quantile(r, p)) << "\n";
    if (alpha_row) {
        for (std::size_t i = 0; i < kTableProbs.size(); ++i)
            std::printf("%s%.4f", i ? " " : "", approx_quantile(r, kTableProbs[i]));
        std::printf("\n");
    }
    return 0;
}

int cmd_simulate(const std::string& file, std::optional<std::int64_t> n,
                 std::optional<std::uint64_t> seed, std::optional<int> threads,
                 std::optional<double> grid_h, std::optional<int> grid_k,
                 const std::string& out_path) {
    const ProblemFile pf = load_problem(file);
    SimConfig config = pf.sim.value_or(SimConfig{});
    if (n)
        config.sample_size = *n;
    if (seed)
        config.seed = *seed;
    if (threads)
        config.threads = *threads;

    std::vector<double> domain;
    if (grid_h || grid_k)
        domain = default_grid(grid_h.value_or(3.0), grid_k.value_or(3000));
    else if (pf.grid_domain)
        domain = *pf.grid_domain;
    else
        domain = default_grid(3.0, 3000);

    const CdfGrid grid = simulate_cdf(pf.spec, domain, config);
    write_output(format_cdf_csv(grid, config), out_path);
    if (!out_path.empty())
        std::cerr << "wrote " << grid.domain.size() << " rows to " << out_path
                  << " (seed=" << config.seed << ", n=" << config.sample_size << ")\n";
    return 0;
}

WeightFn weights_from_flag(const std::string& spec_str) {
    if (spec_str.empty() || spec_str == "uniform")
        return uniform_weights();
    if (spec_str == "three-band")
        return three_band_weights();
    // Otherwise a JSON file of bands: [{"upto": 0.75, "weight": 1.0}, ..., {"weight": 50.0}]
    std::ifstream in(spec_str);
    if (!in)
        throw ValidationError("unknown weight preset and unreadable file: " + spec_str);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ValidationError(std::string("weight file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw ValidationError("weight file must be a non-empty JSON array of bands");
    struct Band {
        double upto;
        double weight;
    };
    std::vector<Band> bands;
    for (const auto& b : doc) {
        const double upto = b.contains("upto")
                                ? b["upto"].get<double>()
                                : std::numeric_limits<double>::infinity();
        bands.push_back({upto, b["weight"].get<double>()});
    }
    return [bands](double s) {
        for (const auto& b : bands)
            if (s <= b.upto)
                return b.weight;
        return bands.back().weight;
    };
}

int cmd_optimize(const std::string& file, const std::string& truth_path, int ul, int prec,
                 const std::string& weights_flag, const SolverConfig& solver_config) {
    const ProblemFile pf = load_problem(file);
    std::ifstream truth_in(truth_path);
    if (!truth_in)
        throw ValidationError("cannot open truth CSV: " + truth_path);
    const CdfGrid truth = read_cdf_csv(truth_in);

    TunerConfig config;
    config.upper_limit = ul;
    config.precision = prec;
    config.weight_fn = weights_from_flag(weights_flag);

    const TunerResult r = optimize_tset(pf.spec, truth, config, solver_config);
    std::cout << "best score        = " << fmt(r.best_score) << "\n";
    std::cout << "best t1           = " << fmt(r.best_tpair.t1) << "\n";
    std::cout << "best t2           = " << fmt(r.best_tpair.t2) << "\n";
    std::cout << "lognormal mean    = " << fmt(r.best_result.lognormal_mean) << "\n";
    std::cout << "lognormal var     = " << fmt(r.best_result.lognormal_variance) << "\n";
    std::cout << "pairs evaluated   = " << r.evaluated_pairs << " (skipped "
              << r.skipped_pairs << ", audited "
              << r.evaluated_pairs + r.skipped_pairs << ")\n";
    return 0;
}

SumSpec portfolio_spec(double alpha) {
    SumSpec spec;
    spec.means = Eigen::Vector2d(1.0837, 1.0214);
    spec.cov = Eigen::Matrix2d();
    spec.cov << 0.04635409, 0.00078, 0.00078, 0.00680625;
    spec.weights = Eigen::Vector2d(alpha, 1.0 - alpha);
    return spec;
}

int cmd_table2(const std::vector<double>& alphas, std::int64_t n, std::uint64_t seed,
               int threads, const std::string& out_path) {
    std::string csv = "method,alpha";
    for (double p : kTableProbs)
        csv += "," + fmt(p);
    csv += "\n";
    char cell[32];

    auto add_row = [&](const std::string& method, double alpha,
                       const std::vector<double>& cells) {
        csv += method + "," + fmt(alpha);
        for (double v : cells) {
            std::snprintf(cell, sizeof cell, ",%.4f", v);
            csv += cell;
        }
        csv += "\n";
    };

    for (double alpha : alphas) {
        const SumSpec spec = portfolio_spec(alpha);

        SimConfig sim_config{n, seed, threads};
        const CdfGrid grid = simulate_cdf(spec, default_grid(3.0, 3000), sim_config);
        std::vector<double> sim_cells;
        for (double p : kTableProbs)
            sim_cells.push_back(empirical_quantile(grid, p));
        add_row("simulation", alpha, sim_cells);

        const auto [mu0, sigma0] = initial_point(spec);
        ApproxResult mm;
        mm.normal_mu = mu0;
        mm.normal_sigma = sigma0;
        std::vector<double> mm_cells;
        for (double p : kTableProbs)
            mm_cells.push_back(approx_quantile(mm, p));
        add_row("moment-match", alpha, mm_cells);

        for (const auto& [name, tpair] :
             {std::pair<std::string, TPair>{"mgf-1", {-1.0, -0.2}},
              std::pair<std::string, TPair>{"mgf-2", {-0.001, -0.005}}}) {
            const ApproxResult r = approximate(spec, tpair);
            std::vector<double> cells;
            for (double p : kTableProbs)
                cells.push_back(approx_quantile(r, p));
            add_row(name, alpha, cells);
        }
    }
    write_output(csv, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate a weighted sum of correlated lognormal random variables "
                 "with a single lognormal via MGF matching"};
    app.require_subcommand(1);

    std::string file, out_path, truth_path, weights_flag = "uniform";
    std::vector<double> t_flag;
    SolverConfig solver_config;
    bool quantiles = false, alpha_row = false, verbose = false;
    std::optional<std::int64_t> n_opt;
    std::optional<std::uint64_t> seed_opt;
    std::optional<int> threads_opt;
    std::optional<double> grid_h;
    std::optional<int> grid_k;
    int ul = 100, prec = 10;
    std::vector<double> alphas = {0.25, 0.50, 0.75};
    std::int64_t table_n = 10000000;
    std::uint64_t table_seed = 20240901;
    int table_threads = 0;

    auto* approx = app.add_subcommand("approx", "approximate a problem file");
    approx->add_option("file", file, "problem JSON")->required();
    approx->add_option("--t", t_flag, "two negative t values")->expected(2);
    approx->add_option("--epsilon", solver_config.epsilon, "convergence threshold");
    approx->add_option("--max-iter", solver_config.max_iterations, "iteration cap");
    approx->add_flag("--quantiles", quantiles, "print the standard quantile table");
    approx->add_flag("--alpha-row", alpha_row, "print the nine quantiles as one 4-decimal row");
    approx->add_flag("--verbose", verbose, "print the parameter derivation trace");

    auto* simulate = app.add_subcommand("simulate", "simulate the CDF of the sum");
    simulate->add_option("file", file, "problem JSON")->required();
    simulate->add_option("--n", n_opt, "sample size");
    simulate->add_option("--seed", seed_opt, "RNG seed");
    simulate->add_option("--threads", threads_opt, "worker threads (0 = all)");
    simulate->add_option("--grid-h", grid_h, "grid upper bound");
    simulate->add_option("--grid-k", grid_k, "grid point count");
    simulate->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* optimize = app.add_subcommand("optimize", "search the 2-member t-set");
    optimize->add_option("file", file, "problem JSON")->required();
    optimize->add_option("--truth", truth_path, "simulated CDF CSV")->required();
    optimize->add_option("--ul", ul, "integer index upper limit");
    optimize->add_option("--prec", prec, "max |t| (index divisor is ul/prec)");
    optimize->add_option("--weights", weights_flag, "uniform | three-band | band JSON file");
    optimize->add_option("--epsilon", solver_config.epsilon, "convergence threshold");
    optimize->add_option("--max-iter", solver_config.max_iterations, "iteration cap");

    auto* table2 = app.add_subcommand("table2", "four-method comparison table for the "
                                                "stock/bond portfolio");
    table2->add_option("--alpha", alphas, "equity ratios");
    table2->add_option("--n", table_n, "simulation sample size");
    table2->add_option("--seed", table_seed, "RNG seed");
    table2->add_option("--threads", table_threads, "worker threads (0 = all)");
    table2->add_option("--out", out_path, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
        if (approx->parsed())
            return cmd_approx(file, t_flag, solver_config, quantiles, alpha_row, verbose);
        if (simulate->parsed())
            return cmd_simulate(file, n_opt, seed_opt, threads_opt, grid_h, grid_k, out_path);
        if (optimize->parsed())
            return cmd_optimize(file, truth_path, ul, prec, weights_flag, solver_config);
        if (table2->parsed())
            return cmd_table2(alphas, table_n, table_seed, table_threads, out_path);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "error (validation): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error (numerical): " << e.what() << "\n";
        return 2;
    }
}
