#include "secsym/observables.hpp"

#include "secsym/parallel.hpp"
#include "secsym/random.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace secsym {

CovectorDensity CovectorDensity::zero(int m, std::size_t nodes) {
    CovectorDensity d;
    d.m = m;
    d.a = Vec::Zero(static_cast<Index>(m) * static_cast<Index>(nodes));
    d.b = Vec::Zero(static_cast<Index>(m) * static_cast<Index>(nodes));
    return d;
}

double pair_density(const SymplecticContext& ctx, const CovectorDensity& d,
                    const TangentField& x) {
    if (d.m != x.m || d.a.size() != x.dq.size())
        throw std::invalid_argument("pair_density: shape mismatch");
    double acc = 0.0;
    for (Index i = 0; i < d.a.size(); ++i) acc += d.a[i] * x.dq[i] + d.b[i] * x.dv[i];
    return ctx.grid.weight() * acc;
}

Functional functional_from_value(const SymplecticContext& ctx,
                                 std::function<double(const PhaseSection&)> value,
                                 double fd_step) {
    Functional f;
    f.value = value;
    const double w = ctx.grid.weight();
    f.differential = [value, w, fd_step](const PhaseSection& gamma) {
        CovectorDensity d = CovectorDensity::zero(gamma.m, gamma.nodes());
        PhaseSection probe = gamma;
        auto slot_derivative = [&](double& slot) {
            const double saved = slot;
            const double h = fd_step * std::max(1.0, std::abs(saved));
            slot = saved + h;
            const double fp = value(probe);
            slot = saved - h;
            const double fm = value(probe);
            slot = saved;
            return (fp - fm) / (2.0 * h);
        };
        for (Index i = 0; i < gamma.q.size(); ++i) d.a[i] = slot_derivative(probe.q[i]) / w;
        for (Index i = 0; i < gamma.v.size(); ++i) d.b[i] = slot_derivative(probe.v[i]) / w;
        return d;
    };
    return f;
}

Functional smeared_position(const SymplecticContext& ctx, ScalarField f, int mu) {
    ctx.grid.check_field(f, "smeared_position");
    const int m = ctx.fiber.dim();
    if (mu < 0 || mu >= m) throw std::invalid_argument("smeared_position: component index out of range");
    const double w = ctx.grid.weight();
    Functional out;
    out.value = [f, mu, m, w](const PhaseSection& gamma) {
        double acc = 0.0;
        for (Index p = 0; p < f.size(); ++p) acc += f[p] * gamma.q[p * m + mu];
        return w * acc;
    };
    out.differential = [f, mu, m](const PhaseSection& gamma) {
        CovectorDensity d = CovectorDensity::zero(m, gamma.nodes());
        for (Index p = 0; p < f.size(); ++p) d.a[p * m + mu] = f[p];
        return d;
    };
    return out;
}

Functional smeared_momentum(const SymplecticContext& ctx, ScalarField g, int nu) {
    ctx.grid.check_field(g, "smeared_momentum");
    const int m = ctx.fiber.dim();
    if (nu < 0 || nu >= m) throw std::invalid_argument("smeared_momentum: component index out of range");
    const double w = ctx.grid.weight();
    Functional out;
    out.value = [g, nu, m, w](const PhaseSection& gamma) {
        double acc = 0.0;
        for (Index p = 0; p < g.size(); ++p) acc += g[p] * gamma.v[p * m + nu];
        return w * acc;
    };
    out.differential = [g, nu, m](const PhaseSection& gamma) {
        CovectorDensity d = CovectorDensity::zero(m, gamma.nodes());
        for (Index p = 0; p < g.size(); ++p) d.b[p * m + nu] = g[p];
        return d;
    };
    return out;
}

TangentField hamiltonian_field(const SymplecticContext& ctx, const CovectorDensity& d) {
    if (d.m != ctx.fiber.dim() || d.nodes() != ctx.grid.nodes())
        throw std::invalid_argument("hamiltonian_field: density shape mismatch");
    const Mat& binv = ctx.fiber.inverse();
    TangentField x = TangentField::zero(d.m, d.nodes());
    parallel_for(d.nodes(), [&](std::size_t p) {
        x.dq_node(p) = binv * d.b_node(p);
        x.dv_node(p) = -(binv * d.a_node(p));
    });
    return x;
}

TangentField hamiltonian_field(const SymplecticContext& ctx, const Functional& f,
                               const PhaseSection& gamma) {
    return hamiltonian_field(ctx, f.differential(gamma));
}

double poisson(const SymplecticContext& ctx, const Functional& f, const Functional& g,
               const PhaseSection& gamma) {
    return omega_eval(ctx, hamiltonian_field(ctx, f, gamma), hamiltonian_field(ctx, g, gamma));
}

double op_norm(const SymplecticContext& ctx, const CovectorDensity& d) {
    if (!ctx.fiber.positive_definite())
        throw std::invalid_argument("op_norm: requires positive-definite B");
    if (d.m != ctx.fiber.dim() || d.nodes() != ctx.grid.nodes())
        throw std::invalid_argument("op_norm: density shape mismatch");
    const Mat& binv = ctx.fiber.inverse();
    double acc = 0.0;
    for (std::size_t p = 0; p < d.nodes(); ++p)
        acc += d.a_node(p).dot(binv * d.a_node(p)) + d.b_node(p).dot(binv * d.b_node(p));
    return std::sqrt(ctx.grid.weight() * acc);
}

double c1_norm(const SymplecticContext& ctx, const Functional& f,
               std::span<const PhaseSection> samples) {
    if (samples.empty()) throw std::invalid_argument("c1_norm: empty sample set");
    double max_val = 0.0, max_diff = 0.0;
    for (const auto& gamma : samples) {
        max_val = std::max(max_val, std::abs(f.value(gamma)));
        max_diff = std::max(max_diff, op_norm(ctx, f.differential(gamma)));
    }
    return max_val + max_diff;
}

std::vector<std::array<double, 2>> gauss_legendre(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: order must be in [1, 64]");
    // Newton iteration on P_n over [-1, 1], then map to [0, 1]
    std::vector<std::array<double, 2>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x; // P_{k-1}, P_k
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
        out[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * wgt};
        out[static_cast<std::size_t>(n - 1 - i)] = {0.5 * (1.0 + x), 0.5 * wgt};
    }
    return out;
}

double reconstruct(const SymplecticContext& ctx,
                   const std::function<TangentField(const PhaseSection&)>& field,
                   const PhaseSection& gamma0, const PhaseSection& gamma1, int quad_order) {
    const TangentField delta = section_delta(gamma1, gamma0);
    const auto rule = gauss_legendre(quad_order);
    double acc = 0.0;
    for (const auto& [t, w] : rule) {
        const PhaseSection c = advance(gamma0, delta, t);
        const double val = omega_eval(ctx, field(c), delta);
        if (!std::isfinite(val)) throw std::runtime_error("reconstruct: non-finite integrand");
        acc += w * val;
    }
    return acc;
}

QuadraticFunctional::QuadraticFunctional(Mat p, Vec r, double c)
    : p_(std::move(p)), r_(std::move(r)), c_(c) {
    if (p_.rows() != p_.cols() || p_.rows() != r_.size())
        throw std::invalid_argument("QuadraticFunctional: shape mismatch");
    for (Index i = 0; i < p_.rows(); ++i)
        for (Index j = 0; j < i; ++j)
            if (p_(i, j) != p_(j, i))
                throw std::invalid_argument("QuadraticFunctional: P must be symmetric");
}

double QuadraticFunctional::value(const SymplecticContext& ctx, const PhaseSection& gamma) const {
    const Vec z = section_to_global(ctx, gamma);
    if (z.size() != r_.size()) throw std::invalid_argument("QuadraticFunctional: context mismatch");
    return 0.5 * z.dot(p_ * z) + r_.dot(z) + c_;
}

Vec QuadraticFunctional::gradient(const SymplecticContext& ctx, const PhaseSection& gamma) const {
    const Vec z = section_to_global(ctx, gamma);
    if (z.size() != r_.size()) throw std::invalid_argument("QuadraticFunctional: context mismatch");
    return p_ * z + r_;
}

CovectorDensity QuadraticFunctional::differential(const SymplecticContext& ctx,
                                                  const PhaseSection& gamma) const {
    const TangentField g = tangent_from_global(ctx, gradient(ctx, gamma));
    const double inv_w = 1.0 / ctx.grid.weight();
    return CovectorDensity{g.m, inv_w * g.dq, inv_w * g.dv};
}

TangentField QuadraticFunctional::hamiltonian_field(const SymplecticContext& ctx,
                                                    const PhaseSection& gamma) const {
    return secsym::hamiltonian_field(ctx, differential(ctx, gamma));
}

Mat QuadraticFunctional::field_generator(const SymplecticContext& ctx) const {
    return -apply_form_inverse(ctx, p_);
}

Vec QuadraticFunctional::field_offset(const SymplecticContext& ctx) const {
    return -apply_form_inverse(ctx, r_);
}

Functional QuadraticFunctional::as_functional(const SymplecticContext& ctx) const {
    Functional f;
    const QuadraticFunctional self = *this;
    f.value = [&ctx, self](const PhaseSection& gamma) { return self.value(ctx, gamma); };
    f.differential = [&ctx, self](const PhaseSection& gamma) { return self.differential(ctx, gamma); };
    return f;
}

Vec apply_form_inverse(const SymplecticContext& ctx, const Vec& u) {
    if (static_cast<std::size_t>(u.size()) != ctx.phase_dim())
        throw std::invalid_argument("apply_form_inverse: dimension mismatch");
    const int m = ctx.fiber.dim();
    const Mat& binv = ctx.fiber.inverse();
    const double inv_w = 1.0 / ctx.grid.weight();
    Vec out(u.size());
    // per node: (1/w) A^-1 (a, b) = (1/w) (-B^-1 b, B^-1 a)
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p) {
        const Index off = 2 * m * static_cast<Index>(p);
        out.segment(off, m) = -inv_w * (binv * u.segment(off + m, m));
        out.segment(off + m, m) = inv_w * (binv * u.segment(off, m));
    }
    return out;
}

Mat apply_form_inverse(const SymplecticContext& ctx, const Mat& u) {
    Mat out(u.rows(), u.cols());
    for (Index c = 0; c < u.cols(); ++c) out.col(c) = apply_form_inverse(ctx, Vec(u.col(c)));
    return out;
}

QuadraticFunctional poisson_bracket(const SymplecticContext& ctx, const QuadraticFunctional& f,
                                    const QuadraticFunctional& g) {
    const Mat kp = apply_form_inverse(ctx, f.quad());
    const Mat kq = apply_form_inverse(ctx, g.quad());
    const Vec krf = apply_form_inverse(ctx, f.lin());
    const Vec krg = apply_form_inverse(ctx, g.lin());
    Mat s = g.quad() * kp - f.quad() * kq;
    s = (0.5 * (s + s.transpose())).eval(); // symmetric up to rounding by construction
    const Vec l = g.quad() * krf - f.quad() * krg;
    const double c = -f.lin().dot(krg);
    return QuadraticFunctional(std::move(s), l, c);
}

double jacobi_residual(const SymplecticContext& ctx, const QuadraticFunctional& f,
                       const QuadraticFunctional& g, const QuadraticFunctional& k,
                       const PhaseSection& gamma) {
    const double t1 = poisson_bracket(ctx, f, poisson_bracket(ctx, g, k)).value(ctx, gamma);
    const double t2 = poisson_bracket(ctx, g, poisson_bracket(ctx, k, f)).value(ctx, gamma);
    const double t3 = poisson_bracket(ctx, k, poisson_bracket(ctx, f, g)).value(ctx, gamma);
    return std::abs(t1 + t2 + t3);
}

double bracket_field_residual(const SymplecticContext& ctx, const QuadraticFunctional& f,
                              const QuadraticFunctional& g, const PhaseSection& gamma) {
    const QuadraticFunctional fg = poisson_bracket(ctx, f, g);
    const TangentField lhs = fg.hamiltonian_field(ctx, gamma);

    // exact t->0 limit of the commutator loop: [X_G, X_F] = S_F X_G - S_G X_F
    const Mat sf = f.field_generator(ctx);
    const Mat sg = g.field_generator(ctx);
    const Vec z = section_to_global(ctx, gamma);
    const Vec xf = sf * z + f.field_offset(ctx);
    const Vec xg = sg * z + g.field_offset(ctx);
    const TangentField rhs = tangent_from_global(ctx, Vec(sf * xg - sg * xf));

    return sup_norm(lhs - rhs);
}

namespace {

struct AffineMapG {
    Mat a;
    Vec b;
};

AffineMapG affine_exp(const Mat& s, const Vec& c, double t) {
    const Index n = s.rows();
    if (s.isZero(0.0)) return {Mat::Identity(n, n), t * c};
    if (c.isZero(0.0)) return {(t * s).exp(), Vec::Zero(n)};
    Mat aug = Mat::Zero(n + 1, n + 1);
    aug.topLeftCorner(n, n) = t * s;
    aug.topRightCorner(n, 1) = t * c;
    const Mat e = aug.exp();
    return {e.topLeftCorner(n, n), e.topRightCorner(n, 1)};
}

AffineMapG compose(const AffineMapG& outer, const AffineMapG& inner) {
    return {outer.a * inner.a, outer.a * inner.b + outer.b};
}

} // namespace

TangentField flow_commutator_estimate(const SymplecticContext& ctx, const QuadraticFunctional& f,
                                      const QuadraticFunctional& g, const PhaseSection& gamma,
                                      double t) {
    if (!(t > 0.0)) throw std::invalid_argument("flow_commutator_estimate: t must be > 0");
    const Mat sf = f.field_generator(ctx);
    const Mat sg = g.field_generator(ctx);
    const Vec cf = f.field_offset(ctx);
    const Vec cg = g.field_offset(ctx);
    // loop oriented to estimate [X_G, X_F]: Fl^F_{-t} Fl^G_{-t} Fl^F_t Fl^G_t
    const AffineMapG loop =
        compose(affine_exp(sf, cf, -t),
                compose(affine_exp(sg, cg, -t),
                        compose(affine_exp(sf, cf, t), affine_exp(sg, cg, t))));
    const Vec z = section_to_global(ctx, gamma);
    const Vec moved = loop.a * z + loop.b;
    return tangent_from_global(ctx, Vec((moved - z) / (t * t)));
}

PerturbationMode perturbation_mode_from_string(const std::string& s) {
    if (s == "truncation") return PerturbationMode::truncation;
    if (s == "noise") return PerturbationMode::noise;
    throw std::invalid_argument("unknown perturbation mode '" + s + "'");
}

namespace {

// density of the one-form Omega(X, .): (a, b) = (-B v_X, B q_X)
CovectorDensity insertion_density(const SymplecticContext& ctx, const TangentField& x) {
    const Mat& b = ctx.fiber.bilinear();
    CovectorDensity d = CovectorDensity::zero(x.m, x.nodes());
    for (std::size_t p = 0; p < x.nodes(); ++p) {
        d.a_node(p) = -(b * x.dv_node(p));
        d.b_node(p) = b * x.dq_node(p);
    }
    return d;
}

CovectorDensity density_difference(const CovectorDensity& x, const CovectorDensity& y) {
    return CovectorDensity{x.m, x.a - y.a, x.b - y.b};
}

// drop the smallest per-node dual-norm contributions while their total stays
// below budget^2; contributions are H-orthogonal across nodes so the removed
// operator norm is exactly the root of the removed sum
CovectorDensity truncate_density(const SymplecticContext& ctx, const CovectorDensity& d,
                                 double budget) {
    const Mat& binv = ctx.fiber.inverse();
    const double w = ctx.grid.weight();
    const std::size_t n = d.nodes();
    std::vector<double> contribution(n);
    for (std::size_t p = 0; p < n; ++p)
        contribution[p] =
            w * (d.a_node(p).dot(binv * d.a_node(p)) + d.b_node(p).dot(binv * d.b_node(p)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return contribution[i] < contribution[j]; });
    CovectorDensity out = d;
    double dropped = 0.0;
    const double cap = 0.98 * budget * budget;
    for (std::size_t idx : order) {
        if (dropped + contribution[idx] > cap) break;
        dropped += contribution[idx];
        out.a_node(idx).setZero();
        out.b_node(idx).setZero();
    }
    return out;
}

} // namespace

EpsilonResult epsilon_approximation(const SymplecticContext& ctx, const Functional& f,
                                    const EpsilonOptions& opt, const PhaseSection& base) {
    if (!ctx.fiber.positive_definite())
        throw std::invalid_argument("epsilon_approximation: requires positive-definite B");
    if (opt.epsilon < 0.0) throw std::invalid_argument("epsilon_approximation: epsilon must be >= 0");
    const int m = ctx.fiber.dim();
    const std::size_t nodes = ctx.grid.nodes();

    // the perturbed field X^eps
    std::function<TangentField(const PhaseSection&)> field;
    if (opt.epsilon == 0.0) {
        field = [&ctx, f](const PhaseSection& gamma) { return hamiltonian_field(ctx, f, gamma); };
    } else if (opt.mode == PerturbationMode::noise) {
        Rng rng(opt.seed);
        TangentField z0 = TangentField{m, rng.gaussian_vec(static_cast<Index>(m) * static_cast<Index>(nodes)),
                                       rng.gaussian_vec(static_cast<Index>(m) * static_cast<Index>(nodes))};
        enforce_support(ctx.grid, z0);
        const double norm = op_norm(ctx, insertion_density(ctx, z0));
        if (!(norm > 0.0)) throw std::runtime_error("epsilon_approximation: degenerate noise draw");
        const TangentField noise = (0.5 * opt.epsilon / norm) * z0;
        field = [&ctx, f, noise](const PhaseSection& gamma) {
            return hamiltonian_field(ctx, f, gamma) + noise;
        };
    } else {
        const double eps = opt.epsilon;
        field = [&ctx, f, eps](const PhaseSection& gamma) {
            return hamiltonian_field(ctx, truncate_density(ctx, f.differential(gamma), eps));
        };
    }

    // f_eps by line integration from the base section
    const PhaseSection base_copy = base;
    const int order = opt.quad_order;
    const double base_value = f.value(base);
    Functional f_eps;
    f_eps.support_diameter = f.support_diameter;
    f_eps.value = [&ctx, field, base_copy, order, base_value](const PhaseSection& gamma) {
        return base_value + reconstruct(ctx, field, base_copy, gamma, order);
    };
    f_eps.differential = [&ctx, field](const PhaseSection& gamma) {
        return insertion_density(ctx, field(gamma));
    };

    // report over a deterministic sample ball around the base section
    EpsilonReport rep;
    rep.epsilon = opt.epsilon;
    const double radius = f.support_diameter.value_or(opt.sample_radius);
    Rng sampler(opt.seed + 0x9e3779b97f4a7c15ull);
    for (int s = 0; s < opt.sample_count; ++s) {
        TangentField dir{m, sampler.gaussian_vec(static_cast<Index>(m) * static_cast<Index>(nodes)),
                         sampler.gaussian_vec(static_cast<Index>(m) * static_cast<Index>(nodes))};
        enforce_support(ctx.grid, dir);
        const double hn = std::sqrt(metric_eval(ctx, dir, dir));
        const double rho = radius * sampler.uniform(0.3, 1.0);
        const PhaseSection gamma = advance(base, dir, rho / hn);

        const double residual =
            op_norm(ctx, density_difference(f.differential(gamma),
                                            insertion_density(ctx, field(gamma))));
        rep.opnorm_residual = std::max(rep.opnorm_residual, residual);
        const double verr = std::abs(f_eps.value(gamma) - f.value(gamma));
        rep.sample_value_errors.push_back(verr);
        rep.max_value_error = std::max(rep.max_value_error, verr);
        rep.max_differential_error = std::max(rep.max_differential_error, residual);
    }
    rep.c1_error = rep.max_value_error + rep.max_differential_error;
    rep.bound_applicable = f.support_diameter.has_value();
    if (rep.bound_applicable && opt.epsilon > 0.0) {
        const double bound = *f.support_diameter * opt.epsilon;
        for (double e : rep.sample_value_errors)
            if (!(e <= bound)) rep.bound_satisfied = false;
    }

    return EpsilonResult{field, std::move(f_eps), std::move(rep)};
}

} // namespace secsym
