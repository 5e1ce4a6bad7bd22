#pragma once

#include <utility>

#include <Eigen/Dense>

namespace gstrand {

/**
 * so(3) in its R^3 identification. The vector u corresponds to
 *
 *   ⎡  0   -u₃   u₂ ⎤
 *   ⎢  u₃   0   -u₁ ⎥
 *   ⎣ -u₂   u₁   0  ⎦
 *
 * Duals (momenta m, n) live in the same R^3 via the dot-product pairing.
 */
using So3Vector = Eigen::Vector3d;
using So3Matrix = Eigen::Matrix3d;
using So4Matrix = Eigen::Matrix4d;

// Absolute tolerance on |Ω + Ωᵀ| for accepting a matrix as antisymmetric.
inline constexpr double kAntisymmetryTolerance = 1e-12;

/// Diagonal 3x3 parameter matrix with a role tag.
class DiagonalParams {
public:
    enum class Role { InertiaA, InertiaB, AnisotropyP };

    // Entries must be finite; inertia roles additionally require every entry
    // to be nonzero. Sign is not restricted (the chiral model uses B = -Id).
    DiagonalParams(const Eigen::Vector3d& diagonal, Role role);

    static DiagonalParams identity(Role role) { return {Eigen::Vector3d::Ones(), role}; }

    const Eigen::Vector3d& diagonal() const noexcept { return diagonal_; }
    Role role() const noexcept { return role_; }

    So3Vector apply(const So3Vector& x) const { return diagonal_.cwiseProduct(x); }
    // Throws ValidationError when an entry is zero.
    So3Vector apply_inverse(const So3Vector& x) const;
    Eigen::Matrix3d matrix() const { return diagonal_.asDiagonal(); }

private:
    Eigen::Vector3d diagonal_;
    Role role_;
};

So3Matrix hat(const So3Vector& u);
// Throws ValidationError if |Ω + Ωᵀ| exceeds kAntisymmetryTolerance.
So3Vector unhat(const So3Matrix& omega);

inline So3Matrix commutator(const So3Matrix& a, const So3Matrix& b) { return a * b - b * a; }
inline So4Matrix commutator(const So4Matrix& a, const So4Matrix& b) { return a * b - b * a; }

/// ad_u v = u × v.
inline So3Vector ad(const So3Vector& u, const So3Vector& v) { return u.cross(v); }

/// ad*_u m = m × u, the dual of ad_u under the dot-product pairing.
inline So3Vector ad_star(const So3Vector& u, const So3Vector& m) { return m.cross(u); }

/// ⟨m, n⟩ = ½ tr(mᵀ n). Equals unhat(m)·unhat(n) on antisymmetric arguments.
double pairing(const So3Matrix& m, const So3Matrix& n);

/**
 * so(3) ⊕ so(3) → so(4):
 *
 *   ⎡  0    u₃  -u₂   v₁ ⎤
 *   ⎢ -u₃   0    u₁   v₂ ⎥
 *   ⎢  u₂  -u₁   0    v₃ ⎥
 *   ⎣ -v₁  -v₂  -v₃   0  ⎦
 */
So4Matrix embed_so4(const So3Vector& u, const So3Vector& v);
// Inverse of embed_so4. Throws ValidationError on non-antisymmetric input.
std::pair<So3Vector, So3Vector> extract_so4(const So4Matrix& a);

/// J = -½ diag(P₁, P₂, P₃, P₁+P₂+P₃).
So4Matrix build_J(const DiagonalParams& p);

}  // namespace gstrand
