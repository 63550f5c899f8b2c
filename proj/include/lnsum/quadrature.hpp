#pragma once

#include <array>
#include <cstddef>

namespace lnsum::quadrature {

/// Fixed 12-point Gauss-Hermite rule: sum_j weights[j] * g(nodes[j])
/// approximates the integral of g(u) * exp(-u^2) over the real line.
struct QuadratureRule {
    std::array<double, 12> nodes;
    std::array<double, 12> weights;
};

inline constexpr int kOrder = 12;

/// Abscissas in (-r, +r) pair order, smallest magnitude first.
inline constexpr std::array<double, 12> kNodes = {
    -0.314240376254, 0.314240376254,
    -0.947788391240, 0.947788391240,
    -1.597682635153, 1.597682635153,
    -2.279507080501, 2.279507080501,
    -3.020637025121, 3.020637025121,
    -3.889724897870, 3.889724897870,
};

/// Weights, equal within each +/- node pair.
inline constexpr std::array<double, 12> kWeights = {
    0.57013523626250000,  0.57013523626250000,
    0.26049231026420000,  0.26049231026420000,
    0.05160798561588000,  0.05160798561588000,
    0.003905390584629000, 0.003905390584629000,
    0.000085736870435880, 0.000085736870435880,
    0.000000265855168436, 0.000000265855168436,
};

const QuadratureRule& rule();

/// sum_j w_j * g(t_j). Non-finite g values propagate into the result.
template <typename F>
double hermite_sum(F&& g) {
    double acc = 0.0;
    for (int j = 0; j < kOrder; ++j)
        acc += kWeights[j] * g(kNodes[j]);
    return acc;
}

} // namespace lnsum::quadrature
