#pragma once

#include "secsym/fiber.hpp"
#include "secsym/grid.hpp"
#include "secsym/sections.hpp"
#include "secsym/types.hpp"

#include <functional>

namespace secsym {

/// Grid + fiber: fixes the node ordering and with it a global coordinate
/// system of dimension 2 m N on the discretized tangent space. Global
/// coordinates are node-major blocks (q_1..q_m, v_1..v_m) per node.
struct SymplecticContext {
    Grid grid;
    FiberModel fiber;

    std::size_t phase_dim() const {
        return 2 * static_cast<std::size_t>(fiber.dim()) * grid.nodes();
    }
};

/// Omega(X, Y) = Sum_p w_p omega_f(X(p), Y(p)), fixed row-major node order.
/// The value does not depend on the base section (constant coefficients);
/// that independence is itself a tested invariant.
double omega_eval(const SymplecticContext& ctx, const TangentField& x, const TangentField& y);

/// H(X, Y) = Sum_p w_p (dq_X . B dq_Y + dv_X . B dv_Y); requires SPD fiber.
double metric_eval(const SymplecticContext& ctx, const TangentField& x, const TangentField& y);

/// Pointwise j: (dq, dv) -> (dv, -dq). Satisfies Omega(X, Y) = H(J X, Y).
TangentField j_apply(const SymplecticContext& ctx, const TangentField& x);

/// Primitive one-form: Theta(X)|_gamma = -Sum_p w_p <B v_gamma(p), dq_X(p)>.
/// The sign makes d Theta = Omega under the alternating-sum d convention.
double theta_eval(const SymplecticContext& ctx, const PhaseSection& gamma, const TangentField& x);

// global coordinate maps
Vec to_global(const SymplecticContext& ctx, const TangentField& x);
TangentField tangent_from_global(const SymplecticContext& ctx, const Vec& z);
Vec section_to_global(const SymplecticContext& ctx, const PhaseSection& gamma);
PhaseSection section_from_global(const SymplecticContext& ctx, const Vec& z);

/// Assembled form: block-diagonal, node block w_p A. Verification-scale only.
SpMat assemble_matrix(const SymplecticContext& ctx, std::size_t max_dim = 16384);
/// Assembled metric: node block w_p (B (+) B).
SpMat assemble_metric(const SymplecticContext& ctx, std::size_t max_dim = 16384);
/// min_p w_p sigma_min(A) > 0 (discrete weak nondegeneracy), from the fiber SVD.
double min_singular_value(const SymplecticContext& ctx);

using SectionOneForm = std::function<double(const PhaseSection&, const TangentField&)>;
using SectionTwoForm =
    std::function<double(const PhaseSection&, const TangentField&, const TangentField&)>;

SectionOneForm theta_one_form(const SymplecticContext& ctx);
SectionTwoForm omega_two_form(const SymplecticContext& ctx);

/// Central difference of a functional along the flow of an ultralocal field.
double directional_derivative(const std::function<double(const PhaseSection&)>& functional,
                              const VerticalField& direction, const PhaseSection& gamma,
                              double step);

/// d(theta)(X, Y) = X(theta(Y)) - Y(theta(X)) - theta([X, Y]) at gamma, with
/// the section-space fields generated by vertical fields and directional
/// derivatives taken by central differences along their flows.
double d_one_form(const SymplecticContext& ctx, const SectionOneForm& form,
                  const VerticalField& x, const VerticalField& y, const PhaseSection& gamma,
                  double fd_step);

/// Six-term exterior derivative in cyclic form:
///   X(w(Y,Z)) + Y(w(Z,X)) + Z(w(X,Y)) - w([X,Y],Z) - w([Y,Z],X) - w([Z,X],Y).
double d_two_form(const SymplecticContext& ctx, const SectionTwoForm& form,
                  const VerticalField& x, const VerticalField& y, const VerticalField& z,
                  const PhaseSection& gamma, double fd_step);

/// Concatenate per-node fiber blocks of two tangent fields over the same grid
/// (the Whitney-sum pairing of tangents).
TangentField tangent_direct_sum(const TangentField& x1, const TangentField& x2);

} // namespace secsym
