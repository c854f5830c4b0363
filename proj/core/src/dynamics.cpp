#include "secsym/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace secsym {

KGParams make_kg(SymplecticContext& ctx, double mass) {
    if (mass < 0.0) throw std::invalid_argument("make_kg: mass must be >= 0");
    if (!ctx.fiber.positive_definite())
        throw std::invalid_argument("make_kg: requires positive-definite B");
    return KGParams{&ctx, mass};
}

namespace {

// split a node-major m-component block vector into per-component scalar fields
ScalarField component_field(const Vec& block, int m, int c) {
    const Index nodes = block.size() / m;
    ScalarField f(nodes);
    for (Index p = 0; p < nodes; ++p) f[p] = block[p * m + c];
    return f;
}

void add_component(Vec& block, int m, int c, const ScalarField& f, double scale) {
    for (Index p = 0; p < f.size(); ++p) block[p * m + c] += scale * f[p];
}

} // namespace

Vec kg_force_operator(const KGParams& params, const Vec& q) {
    const SymplecticContext& ctx = *params.ctx;
    const int m = ctx.fiber.dim();
    Vec out = (params.mass * params.mass) * q;
    for (int c = 0; c < m; ++c) {
        const ScalarField qc = component_field(q, m, c);
        for (int ax = 0; ax < ctx.grid.dim(); ++ax)
            add_component(out, m, c, ctx.grid.adjoint_diff(ax, ctx.grid.diff(ax, qc)), 1.0);
    }
    return out;
}

double kg_energy(const KGParams& params, const PhaseSection& gamma) {
    const SymplecticContext& ctx = *params.ctx;
    const Mat& b = ctx.fiber.bilinear();
    const int m = ctx.fiber.dim();
    double acc = 0.0;
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p) {
        acc += gamma.v_node(p).dot(b * gamma.v_node(p));
        acc += params.mass * params.mass * gamma.q_node(p).dot(b * gamma.q_node(p));
    }
    for (int ax = 0; ax < ctx.grid.dim(); ++ax)
        for (int c1 = 0; c1 < m; ++c1) {
            const ScalarField d1 = ctx.grid.diff(ax, component_field(gamma.q, m, c1));
            for (int c2 = 0; c2 < m; ++c2) {
                if (b(c1, c2) == 0.0) continue;
                const ScalarField d2 = (c2 == c1) ? d1 : ctx.grid.diff(ax, component_field(gamma.q, m, c2));
                acc += b(c1, c2) * d1.dot(d2);
            }
        }
    return 0.5 * ctx.grid.weight() * acc;
}

Functional kg_hamiltonian(const KGParams& params) {
    Functional f;
    const KGParams p = params;
    f.value = [p](const PhaseSection& gamma) { return kg_energy(p, gamma); };
    f.differential = [p](const PhaseSection& gamma) {
        const SymplecticContext& ctx = *p.ctx;
        const Mat& b = ctx.fiber.bilinear();
        const int m = ctx.fiber.dim();
        CovectorDensity d = CovectorDensity::zero(m, gamma.nodes());
        const Vec force = kg_force_operator(p, gamma.q); // (mass^2 + D*D) q
        for (std::size_t node = 0; node < gamma.nodes(); ++node) {
            d.a_node(node) = b * force.segment(static_cast<Index>(m) * static_cast<Index>(node), m);
            d.b_node(node) = b * gamma.v_node(node);
        }
        return d;
    };
    return f;
}

double stability_dt(const KGParams& params) {
    const Grid& grid = params.ctx->grid;
    double w2 = params.mass * params.mass;
    for (int ax = 0; ax < grid.dim(); ++ax) w2 += 1.0 / (grid.spacing(ax) * grid.spacing(ax));
    return 2.0 / std::sqrt(w2);
}

double dispersion_frequency(const KGParams& params, const std::vector<int>& mode) {
    const Grid& grid = params.ctx->grid;
    if (mode.size() != static_cast<std::size_t>(grid.dim()))
        throw std::invalid_argument("dispersion_frequency: one wave number per axis");
    double w2 = params.mass * params.mass;
    for (int ax = 0; ax < grid.dim(); ++ax) {
        const double h = grid.spacing(ax);
        const double k = 2.0 * std::numbers::pi * mode[static_cast<std::size_t>(ax)] / grid.length(ax);
        const double s = std::sin(k * h) / h;
        w2 += s * s;
    }
    return std::sqrt(w2);
}

void leapfrog_step(const KGParams& params, PhaseSection& gamma, double dt) {
    gamma.v -= (0.5 * dt) * kg_force_operator(params, gamma.q);
    gamma.q += dt * gamma.v;
    gamma.v -= (0.5 * dt) * kg_force_operator(params, gamma.q);
}

EvolveResult evolve(const KGParams& params, const PhaseSection& initial, double dt, long steps,
                    const EvolveOptions& opt) {
    const SymplecticContext& ctx = *params.ctx;
    if (initial.m != ctx.fiber.dim() || initial.nodes() != ctx.grid.nodes())
        throw std::invalid_argument("evolve: initial section shape mismatch");
    if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");
    check_support(ctx.grid, initial, "evolve");

    EvolveResult out;
    out.state = initial;
    const double bound = stability_dt(params);
    if (std::abs(dt) >= bound) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "dt=%.6g is at or above the stability bound %.6g", dt,
                      bound);
        out.warning = buf;
    }

    const double h0 = kg_energy(params, initial);
    const double h_cap = opt.instability_factor * std::max(std::abs(h0), 1e-12);
    const long every = std::max<long>(1, opt.record_every);

    auto record = [&](long step) {
        TrajectorySample s;
        s.step = step;
        s.time = step * dt;
        s.energy = kg_energy(params, out.state);
        for (const auto& [name, fn] : opt.observables) s.observables.push_back(fn.value(out.state));
        out.samples.push_back(std::move(s));
        return out.samples.back().energy;
    };

    record(0);
    for (long n = 1; n <= steps; ++n) {
        leapfrog_step(params, out.state, dt);
        if (n % every == 0 || n == steps) {
            const double h = record(n);
            if (!std::isfinite(h) || std::abs(h) > h_cap) {
                char buf[200];
                std::snprintf(buf, sizeof(buf),
                              "instability detected at step %ld: H=%.6g exceeds %.3g x H0=%.6g",
                              n, h, opt.instability_factor, h0);
                out.aborted = true;
                out.diagnostic = buf;
                break;
            }
        }
    }
    return out;
}

} // namespace secsym
