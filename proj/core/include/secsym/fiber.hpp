#pragma once

#include "secsym/types.hpp"

namespace secsym {

/// A vertical phase direction at one node: field-value part q and velocity
/// part v, both in R^m.
struct PhaseVector {
    Vec q, v;
};

/// Fiber-level data: the nondegenerate symmetric bilinear form B on the fiber
/// and everything derived from it pointwise (the 2m x 2m symplectic block,
/// its inverse, SPD detection).
class FiberModel {
public:
    explicit FiberModel(Mat bilinear);

    int dim() const { return static_cast<int>(B_.rows()); }
    const Mat& bilinear() const { return B_; }
    const Mat& inverse() const { return Binv_; }
    bool positive_definite() const { return spd_; }
    /// smallest singular value of B (validated > 1e-10 at construction)
    double min_singular_value() const { return sigma_min_; }

private:
    Mat B_, Binv_;
    bool spd_ = false;
    double sigma_min_ = 0.0;
};

/// The per-node symplectic pairing in (q, v) coordinates,
///   omega_f(X, Y) = <B q_X, v_Y> - <B q_Y, v_X>.
/// Sign convention fixed so the smeared-field bracket comes out
/// {Phi_f, Pi_g} = +delta^{mu nu} * integral(f g) for B = identity.
double omega_fiber(const FiberModel& fiber, const PhaseVector& x, const PhaseVector& y);

/// Matrix A with omega_f(X, Y) = z_X^T A z_Y for z = (q, v); in blocks
/// A = [[0, B], [-B, 0]].
Mat omega_matrix(const FiberModel& fiber);

/// Compatible pair for an SPD fiber: j(q,v) = (v,-q) and h = B (+) B, so that
/// h(X,Y) = omega_f(jX, Y), j^2 = -1 and omega_f(jX, jY) = omega_f(X, Y).
struct CompatibleStructure {
    Mat j, h;
};
CompatibleStructure compatible_structure(const FiberModel& fiber);

/// Whitney sum: m = m1 + m2 and B = blockdiag(B1, B2).
FiberModel direct_sum(const FiberModel& f1, const FiberModel& f2);

/// Pointwise inverse of the insertion map: returns X with
/// omega_f(X, Y) = a.q_Y + b.v_Y for all Y; explicitly (B^-1 b, -B^-1 a).
PhaseVector fiber_solve(const FiberModel& fiber, const Vec& a, const Vec& b);

} // namespace secsym
