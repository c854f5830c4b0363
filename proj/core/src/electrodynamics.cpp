#include "secsym/electrodynamics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace secsym {

EDConfig make_ed_config(Grid grid, Vec eta) {
    if (grid.boundary() != Boundary::periodic)
        throw std::invalid_argument("EDConfig: periodic grid required");
    const int n = grid.dim() + 1;
    if (eta.size() == 0) {
        eta = Vec::Ones(n);
        eta[0] = -1.0;
    }
    if (eta.size() != n) throw std::invalid_argument("EDConfig: eta must have d+1 entries");
    for (Index i = 0; i < n; ++i)
        if (eta[i] == 0.0) throw std::invalid_argument("EDConfig: eta must be nondegenerate");
    return EDConfig{std::move(grid), std::move(eta)};
}

EDPhasePoint EDPhasePoint::zero(int components, std::size_t nodes) {
    EDPhasePoint x;
    x.n = components;
    x.potential = Vec::Zero(static_cast<Index>(components) * static_cast<Index>(nodes));
    x.velocity = Vec::Zero(static_cast<Index>(components) * static_cast<Index>(nodes));
    return x;
}

namespace {

void check_point(const EDConfig& cfg, const EDPhasePoint& x, const char* where) {
    if (x.n != cfg.components() || x.nodes() != cfg.grid.nodes())
        throw std::invalid_argument(std::string(where) + ": phase point shape mismatch");
}

// component a of a phase point as a scalar field
ScalarField component(const EDPhasePoint& x, int a, bool velocity) {
    const std::size_t nodes = x.nodes();
    ScalarField f(static_cast<Index>(nodes));
    for (std::size_t p = 0; p < nodes; ++p)
        f[static_cast<Index>(p)] = velocity ? x.phidot(p, a) : x.phi(p, a);
    return f;
}

} // namespace

Vec field_strength_time_row(const EDConfig& cfg, const EDPhasePoint& psi) {
    check_point(cfg, psi, "field_strength_time_row");
    const int n = cfg.components();
    const std::size_t nodes = cfg.grid.nodes();
    Vec f = Vec::Zero(static_cast<Index>(n) * static_cast<Index>(nodes));
    const ScalarField phi0 = component(psi, 0, false);
    for (int b = 1; b < n; ++b) {
        const ScalarField grad = cfg.grid.diff(b - 1, phi0);
        for (std::size_t p = 0; p < nodes; ++p)
            f[static_cast<Index>(p) * n + b] = 2.0 * (psi.phidot(p, b) - grad[static_cast<Index>(p)]);
    }
    return f;
}

double wald_form(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y) {
    check_point(cfg, x, "wald_form");
    check_point(cfg, y, "wald_form");
    const int n = cfg.components();
    const Vec fy = field_strength_time_row(cfg, y);
    const Vec fx = field_strength_time_row(cfg, x);
    double acc = 0.0;
    for (std::size_t p = 0; p < cfg.grid.nodes(); ++p)
        for (int b = 0; b < n; ++b) {
            const Index i = static_cast<Index>(p) * n + b;
            acc += cfg.eta[b] * (x.phi(p, b) * fy[i] - y.phi(p, b) * fx[i]);
        }
    return 0.5 * cfg.grid.weight() * acc;
}

double mueller_form(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y) {
    check_point(cfg, x, "mueller_form");
    check_point(cfg, y, "mueller_form");
    const int n = cfg.components();
    double acc = 0.0;
    for (std::size_t p = 0; p < cfg.grid.nodes(); ++p)
        for (int b = 0; b < n; ++b)
            acc += cfg.eta[b] * (x.phi(p, b) * y.phidot(p, b) - y.phi(p, b) * x.phidot(p, b));
    return 0.5 * cfg.grid.weight() * acc;
}

double spatial_term(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y) {
    check_point(cfg, x, "spatial_term");
    check_point(cfg, y, "spatial_term");
    const int n = cfg.components();
    const ScalarField x0 = component(x, 0, false);
    const ScalarField y0 = component(y, 0, false);
    double acc = 0.0;
    for (int b = 1; b < n; ++b) {
        const ScalarField gy = cfg.grid.diff(b - 1, y0);
        const ScalarField gx = cfg.grid.diff(b - 1, x0);
        for (std::size_t p = 0; p < cfg.grid.nodes(); ++p)
            acc += cfg.eta[b] *
                   (x.phi(p, b) * gy[static_cast<Index>(p)] - y.phi(p, b) * gx[static_cast<Index>(p)]);
    }
    return cfg.grid.weight() * acc;
}

double normal_compensation(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y) {
    check_point(cfg, x, "normal_compensation");
    check_point(cfg, y, "normal_compensation");
    double acc = 0.0;
    for (std::size_t p = 0; p < cfg.grid.nodes(); ++p)
        acc += cfg.eta[0] * (x.phi(p, 0) * y.phidot(p, 0) - y.phi(p, 0) * x.phidot(p, 0));
    return cfg.grid.weight() * acc;
}

double decomposition_residual(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y) {
    const double w = wald_form(cfg, x, y);
    const double m = mueller_form(cfg, x, y);
    const double s = spatial_term(cfg, x, y);
    const double t = normal_compensation(cfg, x, y);
    return std::abs(w - (2.0 * m - s - t));
}

Mat assemble_ed(const EDConfig& cfg, EDFormKind kind, std::size_t max_dim) {
    const int n = cfg.components();
    const std::size_t nodes = cfg.grid.nodes();
    const std::size_t dim = 2 * static_cast<std::size_t>(n) * nodes;
    if (dim > max_dim)
        throw std::invalid_argument("assemble_ed: dimension " + std::to_string(dim) +
                                    " exceeds limit " + std::to_string(max_dim));
    const double w = cfg.grid.weight();
    // per-node coordinates (Phi_0..Phi_d, Phidot_0..Phidot_d)
    const auto phi_idx = [n](std::size_t p, int b) {
        return static_cast<Index>(2 * n) * static_cast<Index>(p) + b;
    };
    const auto dot_idx = [n](std::size_t p, int b) {
        return static_cast<Index>(2 * n) * static_cast<Index>(p) + n + b;
    };

    Mat out = Mat::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
    if (kind == EDFormKind::mueller) {
        for (std::size_t p = 0; p < nodes; ++p)
            for (int b = 0; b < n; ++b) {
                const double c = 0.5 * w * cfg.eta[b];
                out(phi_idx(p, b), dot_idx(p, b)) += c;
                out(dot_idx(p, b), phi_idx(p, b)) -= c;
            }
        return out;
    }

    // Wald form: velocity pairings for b >= 1 plus gradient coupling to Phi_0.
    // diff is applied row by row through unit fields so the assembled entries
    // match the operator exactly, stencils and boundaries included.
    for (std::size_t p = 0; p < nodes; ++p)
        for (int b = 1; b < n; ++b) {
            const double c = w * cfg.eta[b];
            out(phi_idx(p, b), dot_idx(p, b)) += c;
            out(dot_idx(p, b), phi_idx(p, b)) -= c;
        }
    ScalarField unit = ScalarField::Zero(static_cast<Index>(nodes));
    for (std::size_t r = 0; r < nodes; ++r) {
        unit[static_cast<Index>(r)] = 1.0;
        for (int b = 1; b < n; ++b) {
            const ScalarField col = cfg.grid.diff(b - 1, unit); // (partial_b e_r)
            for (std::size_t p = 0; p < nodes; ++p) {
                const double g = col[static_cast<Index>(p)];
                if (g == 0.0) continue;
                const double c = w * cfg.eta[b] * g;
                // -Phi^b(p) partial_b Psi_0 picks Psi_0(r); +Psi^b(p) partial_b Phi_0 transposes
                out(phi_idx(p, b), phi_idx(r, 0)) -= c;
                out(phi_idx(r, 0), phi_idx(p, b)) += c;
            }
        }
        unit[static_cast<Index>(r)] = 0.0;
    }
    return out;
}

EDKernelReport kernel_analysis(const EDConfig& cfg, double rel_threshold, std::size_t max_dim) {
    EDKernelReport rep;
    const Mat mw = assemble_ed(cfg, EDFormKind::wald, max_dim);
    const Mat mm = assemble_ed(cfg, EDFormKind::mueller, max_dim);
    rep.dim = static_cast<int>(mw.rows());

    Eigen::JacobiSVD<Mat> svd_w(mw, Eigen::ComputeThinV);
    Eigen::JacobiSVD<Mat> svd_m(mm, Eigen::ComputeThinV);
    const Vec sw = svd_w.singularValues();
    const Vec sm = svd_m.singularValues();
    rep.sigma_max_wald = sw.size() ? sw[0] : 0.0;
    rep.sigma_max_mueller = sm.size() ? sm[0] : 0.0;
    const double tw = rel_threshold * rep.sigma_max_wald;
    const double tm = rel_threshold * rep.sigma_max_mueller;
    for (Index i = 0; i < sw.size(); ++i)
        if (sw[i] > tw) ++rep.rank_wald;
    for (Index i = 0; i < sm.size(); ++i)
        if (sm[i] > tm) ++rep.rank_mueller;
    rep.kernel_wald = rep.dim - rep.rank_wald;
    rep.kernel_mueller = rep.dim - rep.rank_mueller;
    rep.sigma_min_mueller = sm.size() ? sm[sm.size() - 1] : 0.0;
    rep.kernel_basis_wald = svd_w.matrixV().rightCols(rep.kernel_wald);
    return rep;
}

} // namespace secsym
