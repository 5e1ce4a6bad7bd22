#include "gstrand/grid.hpp"

#include <cmath>

#include "gstrand/errors.hpp"

namespace gstrand {

PeriodicGrid::PeriodicGrid(double length, std::size_t nodes) : length_(length), nodes_(nodes) {
    if (!std::isfinite(length) || length <= 0.0) {
        throw ValidationError("grid length S must be positive and finite");
    }
    if (nodes < kMinNodes) {
        throw ValidationError("grid needs at least 8 nodes");
    }
}

DerivativeStencil::DerivativeStencil(int order) : order_(order) {
    if (order != 2 && order != 4) {
        throw ValidationError("stencil order must be 2 or 4");
    }
}

}  // namespace gstrand
