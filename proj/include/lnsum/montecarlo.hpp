#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "lnsum/moments.hpp"

namespace lnsum {

struct SimConfig {
    std::int64_t sample_size = 1000000;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = use all available
};

/// Discretized CDF: strictly increasing domain values with their cumulative
/// probabilities.
struct CdfGrid {
    std::vector<double> domain;
    std::vector<double> probabilities;
};

/// s_i = (i+1) * h / k for i = 0..k-1.
std::vector<double> default_grid(double h, int k);

/// Draws one observation of S = sum_i a_i * exp(theta * u_i) where
/// u = L z + mu and z is iid standard normal.
class SumSampler {
public:
    SumSampler(const SumSpec& spec, const NormalSystem& system);

    double operator()(std::mt19937_64& engine);

private:
    Eigen::MatrixXd chol_;
    Eigen::VectorXd mu_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd z_;
    Eigen::VectorXd u_;
    std::normal_distribution<double> normal_;
};

/// RNG stream layout: samples are split into fixed-size chunks, each chunk
/// owning an engine derived from (seed, chunk index). The layout depends only
/// on the sample count, so results are identical for any thread count.
int stream_count(std::int64_t sample_size);

/// Engine for one stream.
std::mt19937_64 stream_engine(std::uint64_t seed, int stream);

/// Empirical CDF of S on the grid. Counting is exact (integer buckets merged
/// after all workers finish), so the output is reproducible bit-for-bit
/// across runs and thread counts.
CdfGrid simulate_cdf(const SumSpec& spec, const std::vector<double>& grid_domain,
                     const SimConfig& config);

/// Single-threaded reference implementation; produces output identical to
/// simulate_cdf with the same seed.
CdfGrid simulate_cdf_serial(const SumSpec& spec, const std::vector<double>& grid_domain,
                            const SimConfig& config);

/// Interpolated domain value where the grid CDF crosses p.
double empirical_quantile(const CdfGrid& grid, double p);

/// CSV with '#'-prefixed metadata (seed, n, streams) and an `s,p` header.
std::string format_cdf_csv(const CdfGrid& grid, const SimConfig& config);

/// Parses CSV written by format_cdf_csv (metadata and header lines are
/// skipped). Throws ValidationError on malformed rows or a non-increasing
/// domain.
CdfGrid read_cdf_csv(std::istream& in);

} // namespace lnsum
