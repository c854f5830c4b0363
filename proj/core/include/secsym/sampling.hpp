#pragma once

#include "secsym/observables.hpp"
#include "secsym/random.hpp"
#include "secsym/symform.hpp"

namespace secsym {

/// Smooth random field: truncated Fourier series with max_mode harmonics per
/// axis, plus a constant bias. On dirichlet grids the outermost layer is a
/// smooth bump factor that vanishes there.
ScalarField random_smooth_field(const Grid& grid, Rng& rng, int max_mode = 3, double bias = 0.0,
                                double amplitude = 1.0);

/// Nodewise-random section; vanishes on the support boundary of dirichlet grids.
PhaseSection random_section(const Grid& grid, int m, Rng& rng, double scale = 1.0);
TangentField random_tangent(const Grid& grid, int m, Rng& rng, double scale = 1.0);

/// Random tangent normalized to H(X, X) = 1 (SPD fiber).
TangentField random_unit_tangent(const SymplecticContext& ctx, Rng& rng);

/// Symmetric matrix with eigenvalues of magnitude in [lo, hi]; indefinite
/// draws flip random signs. Exactly symmetric bitwise.
Mat random_symmetric_nondegenerate(Rng& rng, int m, double lo, double hi, bool allow_indefinite);
Mat random_spd(Rng& rng, int m, double lo = 0.5, double hi = 2.0);

/// Random quadratic functional scaled so the induced affine field generator
/// -K P has spectral norm about field_scale (keeps flow/bracket magnitudes
/// O(1) independent of the grid resolution).
QuadraticFunctional random_quadratic(const SymplecticContext& ctx, Rng& rng,
                                     double field_scale = 0.1);

} // namespace secsym
