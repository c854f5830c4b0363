#include "secsym/sampling.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace secsym {

ScalarField random_smooth_field(const Grid& grid, Rng& rng, int max_mode, double bias,
                                double amplitude) {
    const int dim = grid.dim();
    ScalarField f = ScalarField::Constant(static_cast<Index>(grid.nodes()), bias);
    for (int ax = 0; ax < dim; ++ax) {
        for (int k = 1; k <= max_mode; ++k) {
            const double ac = amplitude * rng.uniform(-1.0, 1.0) / k;
            const double as = amplitude * rng.uniform(-1.0, 1.0) / k;
            const double freq = 2.0 * std::numbers::pi * k / grid.length(ax);
            for (std::size_t p = 0; p < grid.nodes(); ++p) {
                const double x = grid.position(p)[static_cast<std::size_t>(ax)];
                f[static_cast<Index>(p)] += ac * std::cos(freq * x) + as * std::sin(freq * x);
            }
        }
    }
    if (grid.boundary() == Boundary::dirichlet) {
        for (std::size_t p = 0; p < grid.nodes(); ++p) {
            double bump = 1.0;
            for (int ax = 0; ax < dim; ++ax) {
                const double s = grid.position(p)[static_cast<std::size_t>(ax)] /
                                 (grid.length(ax) - grid.spacing(ax));
                bump *= std::sin(std::numbers::pi * s);
            }
            if (grid.boundary_node(p)) bump = 0.0;
            f[static_cast<Index>(p)] *= bump * bump;
        }
    }
    return f;
}

PhaseSection random_section(const Grid& grid, int m, Rng& rng, double scale) {
    PhaseSection g;
    g.m = m;
    g.q = rng.uniform_vec(static_cast<Index>(m) * static_cast<Index>(grid.nodes()), -scale, scale);
    g.v = rng.uniform_vec(static_cast<Index>(m) * static_cast<Index>(grid.nodes()), -scale, scale);
    enforce_support(grid, g);
    return g;
}

TangentField random_tangent(const Grid& grid, int m, Rng& rng, double scale) {
    TangentField x;
    x.m = m;
    x.dq = rng.uniform_vec(static_cast<Index>(m) * static_cast<Index>(grid.nodes()), -scale, scale);
    x.dv = rng.uniform_vec(static_cast<Index>(m) * static_cast<Index>(grid.nodes()), -scale, scale);
    enforce_support(grid, x);
    return x;
}

TangentField random_unit_tangent(const SymplecticContext& ctx, Rng& rng) {
    TangentField x = random_tangent(ctx.grid, ctx.fiber.dim(), rng);
    const double h = std::sqrt(metric_eval(ctx, x, x));
    if (!(h > 0.0)) throw std::runtime_error("random_unit_tangent: degenerate draw");
    return (1.0 / h) * x;
}

Mat random_symmetric_nondegenerate(Rng& rng, int m, double lo, double hi, bool allow_indefinite) {
    Mat g(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) g(i, j) = rng.gaussian();
    const Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Vec eig(m);
    for (Index i = 0; i < m; ++i) {
        double lambda = rng.uniform(lo, hi);
        if (allow_indefinite && rng.uniform() < 0.5) lambda = -lambda;
        eig[i] = lambda;
    }
    Mat b = q * eig.asDiagonal() * q.transpose();
    b = (0.5 * (b + b.transpose())).eval(); // bitwise symmetric
    return b;
}

Mat random_spd(Rng& rng, int m, double lo, double hi) {
    return random_symmetric_nondegenerate(rng, m, lo, hi, false);
}

QuadraticFunctional random_quadratic(const SymplecticContext& ctx, Rng& rng, double field_scale) {
    const Index dim = static_cast<Index>(ctx.phase_dim());
    Mat p(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j <= i; ++j) {
            const double v = rng.uniform(-1.0, 1.0);
            p(i, j) = v;
            p(j, i) = v;
        }
    Vec r = rng.uniform_vec(dim, -1.0, 1.0);
    // scale so the affine field generator -K P has spectral norm ~ field_scale
    const Mat kp = apply_form_inverse(ctx, p);
    const double nrm = kp.operatorNorm();
    if (!(nrm > 0.0)) throw std::runtime_error("random_quadratic: degenerate draw");
    const double s = field_scale / nrm;
    return QuadraticFunctional(s * p, s * r, rng.uniform(-1.0, 1.0));
}

} // namespace secsym
