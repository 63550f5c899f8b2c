// Wall-clock comparison of the OpenMP kernels against their serial
// reference implementations. Also verifies that both produce identical
// results, since the parallel paths are designed to be schedule-invariant.

#include <omp.h>

#include <cstdio>
#include <random>

#include "lnsum/factorize.hpp"
#include "lnsum/mgf.hpp"
#include "lnsum/montecarlo.hpp"
#include "lnsum/tuner.hpp"

using namespace lnsum;

namespace {

SumSpec portfolio_spec(double alpha) {
    SumSpec spec;
    spec.means = Eigen::Vector2d(1.0837, 1.0214);
    spec.cov = Eigen::Matrix2d();
    spec.cov << 0.04635409, 0.00078, 0.00078, 0.00680625;
    spec.weights = Eigen::Vector2d(alpha, 1.0 - alpha);
    return spec;
}

SumSpec random_spec(int n, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> unif(0.2, 1.5);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = unif(eng);
    SumSpec spec;
    spec.cov = 0.05 * (a.transpose() * a + static_cast<double>(n) *
                                               Eigen::MatrixXd::Identity(n, n));
    spec.means = Eigen::VectorXd::Constant(n, 1.0).array() +
                 Eigen::VectorXd::Random(n).array().abs();
    spec.weights = Eigen::VectorXd::Constant(n, 1.0 / n);
    return spec;
}

void report(const char* name, double serial_s, double parallel_s, bool same) {
    std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
                name, serial_s, parallel_s, serial_s / parallel_s,
                same ? "results identical" : "RESULTS DIFFER");
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    // Monte-Carlo CDF estimation.
    {
        const SumSpec spec = portfolio_spec(0.5);
        const auto grid = default_grid(3.0, 3000);
        const SimConfig config{4000000, 99, 0};
        const double t0 = omp_get_wtime();
        const CdfGrid serial = simulate_cdf_serial(spec, grid, config);
        const double t1 = omp_get_wtime();
        const CdfGrid parallel = simulate_cdf(spec, grid, config);
        const double t2 = omp_get_wtime();
        report("simulate_cdf (n=4e6)", t1 - t0, t2 - t1,
               serial.probabilities == parallel.probabilities);
    }

    // 12^n quadrature enumeration. The serial reference is the same kernel
    // pinned to one thread; the partial-sum layout makes the value identical.
    {
        std::mt19937_64 eng(7);
        const SumSpec spec = random_spec(7, eng);
        NormalSystem sys = underlying_system(spec);
        factorize(sys);
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        const double t0 = omp_get_wtime();
        const double serial = sum_mgf_constant(-1.0, spec, sys);
        const double t1 = omp_get_wtime();
        omp_set_num_threads(saved);
        const double t2 = omp_get_wtime();
        const double parallel = sum_mgf_constant(-1.0, spec, sys);
        const double t3 = omp_get_wtime();
        report("sum_mgf_constant (12^7)", t1 - t0, t3 - t2, serial == parallel);
    }

    // t-set grid search.
    {
        const SumSpec spec = portfolio_spec(0.75);
        const CdfGrid truth =
            simulate_cdf(spec, default_grid(3.0, 1000), SimConfig{1000000, 41, 0});
        TunerConfig config;
        config.upper_limit = 60;
        config.precision = 6;
        const double t0 = omp_get_wtime();
        const TunerResult serial = optimize_tset_serial(spec, truth, config);
        const double t1 = omp_get_wtime();
        const TunerResult parallel = optimize_tset(spec, truth, config);
        const double t2 = omp_get_wtime();
        report("optimize_tset (C(60,2))", t1 - t0, t2 - t1,
               serial.best_score == parallel.best_score &&
                   serial.best_tpair.t1 == parallel.best_tpair.t1 &&
                   serial.best_tpair.t2 == parallel.best_tpair.t2);
    }
    return 0;
}
