#include "lnsum/quadrature.hpp"

namespace lnsum::quadrature {

const QuadratureRule& rule() {
    static const QuadratureRule r{kNodes, kWeights};
    return r;
}

} // namespace lnsum::quadrature
