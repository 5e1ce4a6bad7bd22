#include "gstrand/algebra.hpp"

#include <cmath>

#include "gstrand/errors.hpp"

namespace gstrand {

DiagonalParams::DiagonalParams(const Eigen::Vector3d& diagonal, Role role)
    : diagonal_(diagonal), role_(role) {
    if (!diagonal_.allFinite()) {
        throw ValidationError("diagonal parameters must be finite");
    }
    if (role_ != Role::AnisotropyP && (diagonal_.array() == 0.0).any()) {
        throw ValidationError("inertia diagonal must have nonzero entries");
    }
}

So3Vector DiagonalParams::apply_inverse(const So3Vector& x) const {
    if ((diagonal_.array() == 0.0).any()) {
        throw ValidationError("diagonal matrix is not invertible");
    }
    return x.cwiseQuotient(diagonal_);
}

So3Matrix hat(const So3Vector& u) {
    So3Matrix m;
    m << 0.0, -u.z(), u.y(),
         u.z(), 0.0, -u.x(),
         -u.y(), u.x(), 0.0;
    return m;
}

So3Vector unhat(const So3Matrix& omega) {
    if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > kAntisymmetryTolerance) {
        throw ValidationError("unhat: matrix is not antisymmetric");
    }
    return {omega(2, 1), omega(0, 2), omega(1, 0)};
}

double pairing(const So3Matrix& m, const So3Matrix& n) {
    return 0.5 * (m.transpose() * n).trace();
}

So4Matrix embed_so4(const So3Vector& u, const So3Vector& v) {
    So4Matrix a;
    a << 0.0, u.z(), -u.y(), v.x(),
         -u.z(), 0.0, u.x(), v.y(),
         u.y(), -u.x(), 0.0, v.z(),
         -v.x(), -v.y(), -v.z(), 0.0;
    return a;
}

std::pair<So3Vector, So3Vector> extract_so4(const So4Matrix& a) {
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > kAntisymmetryTolerance) {
        throw ValidationError("extract_so4: matrix is not antisymmetric");
    }
    So3Vector u{a(1, 2), a(2, 0), a(0, 1)};
    So3Vector v{a(0, 3), a(1, 3), a(2, 3)};
    return {u, v};
}

So4Matrix build_J(const DiagonalParams& p) {
    if (p.role() != DiagonalParams::Role::AnisotropyP) {
        throw ValidationError("build_J expects anisotropy parameters");
    }
    const auto& d = p.diagonal();
    Eigen::Vector4d diag{d.x(), d.y(), d.z(), d.sum()};
    return (-0.5 * diag).asDiagonal();
}

}  // namespace gstrand
