#pragma once

#include <optional>
#include <string>

#include "lnsum/mgf.hpp"
#include "lnsum/montecarlo.hpp"
#include "lnsum/moments.hpp"

namespace lnsum {

/// A parsed problem file: the sum spec plus optional t pair, simulation
/// settings, and grid settings.
///
/// JSON layout:
///   {
///     "means":   [ ... ],
///     "cov":     [ [ ... ], ... ],        // row-major, n x n
///     "weights": [ ... ],
///     "t":       [ t1, t2 ],              // optional
///     "sim":     { "n": 1000000, "seed": 42, "threads": 0 },   // optional
///     "grid":    { "h": 3.0, "k": 3000 }  // optional; or [ s1, s2, ... ]
///   }
struct ProblemFile {
    SumSpec spec;
    std::optional<TPair> t;
    std::optional<SimConfig> sim;
    std::optional<std::vector<double>> grid_domain;
};

/// Parses and validates JSON text. Throws ValidationError with the offending
/// field named.
ProblemFile parse_problem(const std::string& json_text);

/// Reads a problem file from disk.
ProblemFile load_problem(const std::string& path);

} // namespace lnsum
