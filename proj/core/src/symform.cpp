#include "secsym/symform.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace secsym {

namespace {

void check_tangent(const SymplecticContext& ctx, const TangentField& x, const char* where) {
    if (x.m != ctx.fiber.dim() || x.nodes() != ctx.grid.nodes())
        throw std::invalid_argument(std::string(where) + ": tangent shape mismatch");
}

void check_section(const SymplecticContext& ctx, const PhaseSection& g, const char* where) {
    if (g.m != ctx.fiber.dim() || g.nodes() != ctx.grid.nodes())
        throw std::invalid_argument(std::string(where) + ": section shape mismatch");
}

} // namespace

double omega_eval(const SymplecticContext& ctx, const TangentField& x, const TangentField& y) {
    check_tangent(ctx, x, "omega_eval");
    check_tangent(ctx, y, "omega_eval");
    const Mat& b = ctx.fiber.bilinear();
    double acc = 0.0;
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p)
        acc += (b * x.dq_node(p)).dot(y.dv_node(p)) - (b * y.dq_node(p)).dot(x.dv_node(p));
    return ctx.grid.weight() * acc;
}

double metric_eval(const SymplecticContext& ctx, const TangentField& x, const TangentField& y) {
    check_tangent(ctx, x, "metric_eval");
    check_tangent(ctx, y, "metric_eval");
    if (!ctx.fiber.positive_definite())
        throw std::invalid_argument("metric_eval: requires positive-definite B");
    const Mat& b = ctx.fiber.bilinear();
    double acc = 0.0;
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p)
        acc += (b * x.dq_node(p)).dot(y.dq_node(p)) + (b * x.dv_node(p)).dot(y.dv_node(p));
    return ctx.grid.weight() * acc;
}

TangentField j_apply(const SymplecticContext& ctx, const TangentField& x) {
    check_tangent(ctx, x, "j_apply");
    if (!ctx.fiber.positive_definite())
        throw std::invalid_argument("j_apply: requires positive-definite B");
    // pointwise inverse of the fiber structure j: with h = omega(j., .) and
    // j^2 = -1, the section-level identity Omega(X, Y) = H(J X, Y) needs
    // J = j^-1 = -j
    return TangentField{x.m, -x.dv, x.dq};
}

double theta_eval(const SymplecticContext& ctx, const PhaseSection& gamma,
                  const TangentField& x) {
    check_section(ctx, gamma, "theta_eval");
    check_tangent(ctx, x, "theta_eval");
    const Mat& b = ctx.fiber.bilinear();
    double acc = 0.0;
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p)
        acc += (b * gamma.v_node(p)).dot(x.dq_node(p));
    return -ctx.grid.weight() * acc;
}

Vec to_global(const SymplecticContext& ctx, const TangentField& x) {
    check_tangent(ctx, x, "to_global");
    const int m = ctx.fiber.dim();
    Vec z(static_cast<Index>(ctx.phase_dim()));
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p) {
        z.segment(2 * m * static_cast<Index>(p), m) = x.dq_node(p);
        z.segment(2 * m * static_cast<Index>(p) + m, m) = x.dv_node(p);
    }
    return z;
}

TangentField tangent_from_global(const SymplecticContext& ctx, const Vec& z) {
    if (static_cast<std::size_t>(z.size()) != ctx.phase_dim())
        throw std::invalid_argument("tangent_from_global: dimension mismatch");
    const int m = ctx.fiber.dim();
    TangentField x = TangentField::zero(m, ctx.grid.nodes());
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p) {
        x.dq_node(p) = z.segment(2 * m * static_cast<Index>(p), m);
        x.dv_node(p) = z.segment(2 * m * static_cast<Index>(p) + m, m);
    }
    return x;
}

Vec section_to_global(const SymplecticContext& ctx, const PhaseSection& gamma) {
    check_section(ctx, gamma, "section_to_global");
    return to_global(ctx, TangentField{gamma.m, gamma.q, gamma.v});
}

PhaseSection section_from_global(const SymplecticContext& ctx, const Vec& z) {
    const TangentField x = tangent_from_global(ctx, z);
    return PhaseSection{x.m, x.dq, x.dv};
}

SpMat assemble_matrix(const SymplecticContext& ctx, std::size_t max_dim) {
    const std::size_t dim = ctx.phase_dim();
    if (dim > max_dim)
        throw std::invalid_argument("assemble_matrix: dimension " + std::to_string(dim) +
                                    " exceeds limit " + std::to_string(max_dim));
    const int m = ctx.fiber.dim();
    const Mat block = ctx.grid.weight() * omega_matrix(ctx.fiber);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(ctx.grid.nodes() * static_cast<std::size_t>(2 * m * m));
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p) {
        const Index off = 2 * m * static_cast<Index>(p);
        for (Index i = 0; i < 2 * m; ++i)
            for (Index j = 0; j < 2 * m; ++j)
                if (block(i, j) != 0.0) trip.emplace_back(off + i, off + j, block(i, j));
    }
    SpMat out(static_cast<Index>(dim), static_cast<Index>(dim));
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

SpMat assemble_metric(const SymplecticContext& ctx, std::size_t max_dim) {
    const std::size_t dim = ctx.phase_dim();
    if (dim > max_dim)
        throw std::invalid_argument("assemble_metric: dimension " + std::to_string(dim) +
                                    " exceeds limit " + std::to_string(max_dim));
    if (!ctx.fiber.positive_definite())
        throw std::invalid_argument("assemble_metric: requires positive-definite B");
    const int m = ctx.fiber.dim();
    const Mat& b = ctx.fiber.bilinear();
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p) {
        const Index off = 2 * m * static_cast<Index>(p);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < m; ++j)
                if (b(i, j) != 0.0) {
                    const double v = ctx.grid.weight() * b(i, j);
                    trip.emplace_back(off + i, off + j, v);
                    trip.emplace_back(off + m + i, off + m + j, v);
                }
    }
    SpMat out(static_cast<Index>(dim), static_cast<Index>(dim));
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

double min_singular_value(const SymplecticContext& ctx) {
    Eigen::JacobiSVD<Mat> svd(omega_matrix(ctx.fiber));
    return ctx.grid.weight() * svd.singularValues().minCoeff();
}

SectionOneForm theta_one_form(const SymplecticContext& ctx) {
    return [&ctx](const PhaseSection& gamma, const TangentField& x) {
        return theta_eval(ctx, gamma, x);
    };
}

SectionTwoForm omega_two_form(const SymplecticContext& ctx) {
    return [&ctx](const PhaseSection&, const TangentField& x, const TangentField& y) {
        return omega_eval(ctx, x, y);
    };
}

double directional_derivative(const std::function<double(const PhaseSection&)>& functional,
                              const VerticalField& direction, const PhaseSection& gamma,
                              double step) {
    if (!(step > 0.0)) throw std::invalid_argument("directional_derivative: step must be > 0");
    const double fp = functional(tilde_flow(direction, gamma, step));
    const double fm = functional(tilde_flow(direction, gamma, -step));
    return (fp - fm) / (2.0 * step);
}

double d_one_form(const SymplecticContext& ctx, const SectionOneForm& form,
                  const VerticalField& x, const VerticalField& y, const PhaseSection& gamma,
                  double fd_step) {
    check_section(ctx, gamma, "d_one_form");
    const auto pair_with = [&form](const VerticalField& field) {
        return [&form, &field](const PhaseSection& g) { return form(g, hat_of_vertical(field, g)); };
    };
    const double xy = directional_derivative(pair_with(y), x, gamma, fd_step);
    const double yx = directional_derivative(pair_with(x), y, gamma, fd_step);
    const double br = form(gamma, hat_of_vertical(vertical_bracket(x, y), gamma));
    return xy - yx - br;
}

double d_two_form(const SymplecticContext& ctx, const SectionTwoForm& form,
                  const VerticalField& x, const VerticalField& y, const VerticalField& z,
                  const PhaseSection& gamma, double fd_step) {
    check_section(ctx, gamma, "d_two_form");
    const auto pair_with = [&form](const VerticalField& a, const VerticalField& b) {
        return [&form, &a, &b](const PhaseSection& g) {
            return form(g, hat_of_vertical(a, g), hat_of_vertical(b, g));
        };
    };
    const double t1 = directional_derivative(pair_with(y, z), x, gamma, fd_step);
    const double t2 = directional_derivative(pair_with(z, x), y, gamma, fd_step);
    const double t3 = directional_derivative(pair_with(x, y), z, gamma, fd_step);
    const double b1 = form(gamma, hat_of_vertical(vertical_bracket(x, y), gamma),
                           hat_of_vertical(z, gamma));
    const double b2 = form(gamma, hat_of_vertical(vertical_bracket(y, z), gamma),
                           hat_of_vertical(x, gamma));
    const double b3 = form(gamma, hat_of_vertical(vertical_bracket(z, x), gamma),
                           hat_of_vertical(y, gamma));
    return t1 + t2 + t3 - b1 - b2 - b3;
}

TangentField tangent_direct_sum(const TangentField& x1, const TangentField& x2) {
    if (x1.nodes() != x2.nodes())
        throw std::invalid_argument("tangent_direct_sum: node count mismatch");
    const int m = x1.m + x2.m;
    TangentField out = TangentField::zero(m, x1.nodes());
    for (std::size_t p = 0; p < x1.nodes(); ++p) {
        out.dq_node(p).head(x1.m) = x1.dq_node(p);
        out.dq_node(p).tail(x2.m) = x2.dq_node(p);
        out.dv_node(p).head(x1.m) = x1.dv_node(p);
        out.dv_node(p).tail(x2.m) = x2.dv_node(p);
    }
    return out;
}

} // namespace secsym
