// Shared test oracles. Everything here recomputes contract values through an
// independent route (dense basis assembly, finite differences, SVD) and must
// stay decoupled from the implementation paths it checks.
#pragma once

#include "secsym/observables.hpp"
#include "secsym/sampling.hpp"
#include "secsym/symform.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace secsym::test {

/// Dense matrix of a bilinear form on tangent space, assembled by evaluating
/// the form on all coordinate basis pairs.
inline Mat dense_form_oracle(const SymplecticContext& ctx,
                             const std::function<double(const TangentField&, const TangentField&)>& form) {
    const Index dim = static_cast<Index>(ctx.phase_dim());
    Mat out(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        Vec ei = Vec::Zero(dim);
        ei[i] = 1.0;
        const TangentField xi = tangent_from_global(ctx, ei);
        for (Index j = 0; j < dim; ++j) {
            Vec ej = Vec::Zero(dim);
            ej[j] = 1.0;
            out(i, j) = form(xi, tangent_from_global(ctx, ej));
        }
    }
    return out;
}

/// Dense matrix of a linear operator on scalar fields (basis application).
inline Mat dense_operator_oracle(std::size_t nodes,
                                 const std::function<ScalarField(const ScalarField&)>& op) {
    const Index n = static_cast<Index>(nodes);
    Mat out(n, n);
    for (Index j = 0; j < n; ++j) {
        ScalarField e = ScalarField::Zero(n);
        e[j] = 1.0;
        out.col(j) = op(e);
    }
    return out;
}

/// Central-difference differential of a functional, as a density.
inline CovectorDensity fd_differential_oracle(const SymplecticContext& ctx,
                                              const std::function<double(const PhaseSection&)>& value,
                                              const PhaseSection& gamma, double step) {
    CovectorDensity d = CovectorDensity::zero(gamma.m, gamma.nodes());
    PhaseSection probe = gamma;
    const double w = ctx.grid.weight();
    auto deriv = [&](double& slot) {
        const double saved = slot;
        slot = saved + step;
        const double fp = value(probe);
        slot = saved - step;
        const double fm = value(probe);
        slot = saved;
        return (fp - fm) / (2.0 * step);
    };
    for (Index i = 0; i < gamma.q.size(); ++i) d.a[i] = deriv(probe.q[i]) / w;
    for (Index i = 0; i < gamma.v.size(); ++i) d.b[i] = deriv(probe.v[i]) / w;
    return d;
}

/// Solve Omega(X, .) = u for X through the dense assembled matrix (LU).
inline TangentField dense_hamiltonian_oracle(const SymplecticContext& ctx, const Vec& pairing) {
    const Mat m = Mat(assemble_matrix(ctx));
    const Vec x = m.transpose().partialPivLu().solve(pairing);
    return tangent_from_global(ctx, x);
}

/// K = M^{-1} through a dense LU for the quadratic-bracket cross-checks.
inline Mat dense_form_inverse_oracle(const SymplecticContext& ctx) {
    const Mat m = Mat(assemble_matrix(ctx));
    return m.partialPivLu().inverse();
}

} // namespace secsym::test
