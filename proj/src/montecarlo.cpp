#include "lnsum/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "lnsum/errors.hpp"
#include "lnsum/factorize.hpp"

namespace lnsum {

namespace {

// Samples per RNG stream. Small enough to load-balance, large enough that
// per-stream engine setup is negligible.
constexpr std::int64_t kStreamSamples = 1 << 18;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void validate_grid(const std::vector<double>& domain) {
    if (domain.empty())
        throw ValidationError("CDF grid domain is empty");
    double prev = 0.0;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (!(domain[i] > prev)) {
            std::ostringstream os;
            os << "grid domain must be strictly increasing and positive; entry "
               << i << " is " << domain[i];
            throw ValidationError(os.str());
        }
        prev = domain[i];
    }
}

// Counts, for one stream, how many samples land at or below each bucket
// boundary. bucket[j] counts samples in (domain[j-1], domain[j]]; samples
// beyond the last grid point are dropped.
void accumulate_stream(SumSampler sampler, std::mt19937_64 engine,
                       std::int64_t samples, const std::vector<double>& domain,
                       std::vector<std::uint64_t>& bucket) {
    for (std::int64_t i = 0; i < samples; ++i) {
        const double s = sampler(engine);
        const auto it = std::lower_bound(domain.begin(), domain.end(), s);
        if (it != domain.end())
            ++bucket[static_cast<std::size_t>(it - domain.begin())];
    }
}

CdfGrid finish(const std::vector<double>& domain, const std::vector<std::uint64_t>& counts,
               std::int64_t n) {
    CdfGrid grid;
    grid.domain = domain;
    grid.probabilities.resize(domain.size());
    std::uint64_t running = 0;
    for (std::size_t k = 0; k < domain.size(); ++k) {
        running += counts[k];
        grid.probabilities[k] = static_cast<double>(running) / static_cast<double>(n);
    }
    return grid;
}

void validate_config(const SimConfig& config) {
    if (config.sample_size < 1)
        throw ValidationError("sample size must be at least 1");
}

} // namespace

std::vector<double> default_grid(double h, int k) {
    if (!(h > 0.0) || k < 1)
        throw ValidationError("grid needs h > 0 and k >= 1");
    std::vector<double> domain(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        domain[static_cast<std::size_t>(i)] = (i + 1) * (h / k);
    return domain;
}

SumSampler::SumSampler(const SumSpec& spec, const NormalSystem& system)
    : chol_(system.chol), mu_(system.means), weights_(spec.weights),
      z_(spec.size()), u_(spec.size()) {}

double SumSampler::operator()(std::mt19937_64& engine) {
    for (Eigen::Index d = 0; d < z_.size(); ++d)
        z_(d) = normal_(engine);
    u_.noalias() = chol_ * z_;
    double s = 0.0;
    for (Eigen::Index d = 0; d < u_.size(); ++d)
        s += weights_(d) * std::exp(kTheta * (u_(d) + mu_(d)));
    return s;
}

int stream_count(std::int64_t sample_size) {
    return static_cast<int>((sample_size + kStreamSamples - 1) / kStreamSamples);
}

std::mt19937_64 stream_engine(std::uint64_t seed, int stream) {
    std::uint64_t state = seed + 0x632be59bd9b4e019ULL * static_cast<std::uint64_t>(stream);
    std::uint32_t words[8];
    for (int i = 0; i < 4; ++i) {
        const std::uint64_t w = splitmix64(state);
        words[2 * i] = static_cast<std::uint32_t>(w);
        words[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(words, words + 8);
    return std::mt19937_64(seq);
}

CdfGrid simulate_cdf(const SumSpec& spec, const std::vector<double>& grid_domain,
                     const SimConfig& config) {
    validate(spec);
    validate_grid(grid_domain);
    validate_config(config);
    NormalSystem sys = underlying_system(spec);
    factorize(sys);
    const SumSampler sampler(spec, sys);

    const std::int64_t n = config.sample_size;
    const int streams = stream_count(n);
    const int nthreads = config.threads > 0 ? config.threads : omp_get_max_threads();

    std::vector<std::uint64_t> counts(grid_domain.size(), 0);
#pragma omp parallel num_threads(nthreads)
    {
        std::vector<std::uint64_t> local(grid_domain.size(), 0);
#pragma omp for schedule(dynamic)
        for (int w = 0; w < streams; ++w) {
            const std::int64_t begin = static_cast<std::int64_t>(w) * kStreamSamples;
            const std::int64_t len = std::min(kStreamSamples, n - begin);
            accumulate_stream(sampler, stream_engine(config.seed, w), len, grid_domain, local);
        }
#pragma omp critical
        {
            for (std::size_t k = 0; k < counts.size(); ++k)
                counts[k] += local[k];
        }
    }
    return finish(grid_domain, counts, n);
}

CdfGrid simulate_cdf_serial(const SumSpec& spec, const std::vector<double>& grid_domain,
                            const SimConfig& config) {
    validate(spec);
    validate_grid(grid_domain);
    validate_config(config);
    NormalSystem sys = underlying_system(spec);
    factorize(sys);
    const SumSampler sampler(spec, sys);

    const std::int64_t n = config.sample_size;
    const int streams = stream_count(n);
    std::vector<std::uint64_t> counts(grid_domain.size(), 0);
    for (int w = 0; w < streams; ++w) {
        const std::int64_t begin = static_cast<std::int64_t>(w) * kStreamSamples;
        const std::int64_t len = std::min(kStreamSamples, n - begin);
        accumulate_stream(sampler, stream_engine(config.seed, w), len, grid_domain, counts);
    }
    return finish(grid_domain, counts, n);
}

double empirical_quantile(const CdfGrid& grid, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("empirical quantile probability must lie in (0,1)");
    const auto& d = grid.domain;
    const auto& pr = grid.probabilities;
    const auto it = std::lower_bound(pr.begin(), pr.end(), p);
    if (it == pr.end())
        throw ValidationError("grid does not reach the requested probability");
    const std::size_t k = static_cast<std::size_t>(it - pr.begin());
    if (k == 0 || pr[k] == pr[k - 1])
        return d[k];
    const double f = (p - pr[k - 1]) / (pr[k] - pr[k - 1]);
    return d[k - 1] + f * (d[k] - d[k - 1]);
}

std::string format_cdf_csv(const CdfGrid& grid, const SimConfig& config) {
    std::string out;
    char line[96];
    std::snprintf(line, sizeof line, "# seed=%llu\n",
                  static_cast<unsigned long long>(config.seed));
    out += line;
    std::snprintf(line, sizeof line, "# n=%lld\n",
                  static_cast<long long>(config.sample_size));
    out += line;
    std::snprintf(line, sizeof line, "# streams=%d\n", stream_count(config.sample_size));
    out += line;
    out += "s,p\n";
    for (std::size_t k = 0; k < grid.domain.size(); ++k) {
        std::snprintf(line, sizeof line, "%.10g,%.10g\n", grid.domain[k],
                      grid.probabilities[k]);
        out += line;
    }
    return out;
}

CdfGrid read_cdf_csv(std::istream& in) {
    CdfGrid grid;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line == "s,p")
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            std::ostringstream os;
            os << "CSV line " << lineno << " is not 's,p': " << line;
            throw ValidationError(os.str());
        }
        try {
            grid.domain.push_back(std::stod(line.substr(0, comma)));
            grid.probabilities.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            std::ostringstream os;
            os << "CSV line " << lineno << " has non-numeric fields: " << line;
            throw ValidationError(os.str());
        }
    }
    validate_grid(grid.domain);
    return grid;
}

} // namespace lnsum
