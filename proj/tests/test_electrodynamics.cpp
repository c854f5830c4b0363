#include "secsym/electrodynamics.hpp"
#include "secsym/random.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace secsym;

namespace {

constexpr double pi = std::numbers::pi;

EDConfig cfg1d(int n = 8) { return make_ed_config(Grid(1, {n}, {1.0}, Boundary::periodic)); }

EDPhasePoint random_point(const EDConfig& cfg, Rng& rng) {
    EDPhasePoint x = EDPhasePoint::zero(cfg.components(), cfg.grid.nodes());
    x.potential = rng.uniform_vec(x.potential.size(), -1.0, 1.0);
    x.velocity = rng.uniform_vec(x.velocity.size(), -1.0, 1.0);
    return x;
}

} // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(make_ed_config(Grid(1, {8}, {1.0}, Boundary::dirichlet)),
                    std::invalid_argument);
    Vec bad(2);
    bad << -1.0, 0.0;
    CHECK_THROWS_AS(make_ed_config(Grid(1, {8}, {1.0}, Boundary::periodic), bad),
                    std::invalid_argument);
    const EDConfig c = cfg1d();
    CHECK(c.eta[0] == -1.0);
    CHECK(c.eta[1] == 1.0);
}

TEST_CASE("field strength time row") {
    const EDConfig cfg = cfg1d(16);
    EDPhasePoint psi = EDPhasePoint::zero(2, 16);
    for (std::size_t p = 0; p < 16; ++p) psi.phi(p, 0) = 0.7; // constant potential
    Vec f = field_strength_time_row(cfg, psi);
    CHECK(f.cwiseAbs().maxCoeff() <= 1e-13);

    for (std::size_t p = 0; p < 16; ++p) psi.phidot(p, 1) = 0.5;
    f = field_strength_time_row(cfg, psi);
    for (std::size_t p = 0; p < 16; ++p) {
        CHECK(f[static_cast<Index>(2 * p)] == 0.0); // F_00
        CHECK(f[static_cast<Index>(2 * p) + 1] == doctest::Approx(1.0).epsilon(1e-14));
    }

    // Psi_0 = sin(2 pi x): F_01 = -2 d_x Psi_0 to second order
    EDPhasePoint wave = EDPhasePoint::zero(2, 128);
    const Grid fine(1, {128}, {1.0}, Boundary::periodic);
    const EDConfig cfgf = make_ed_config(fine);
    for (std::size_t p = 0; p < 128; ++p) wave.phi(p, 0) = std::sin(2 * pi * fine.position(p)[0]);
    const Vec fw = field_strength_time_row(cfgf, wave);
    double max_err = 0.0;
    for (std::size_t p = 0; p < 128; ++p) {
        const double ref = -4 * pi * std::cos(2 * pi * fine.position(p)[0]);
        max_err = std::max(max_err, std::abs(fw[static_cast<Index>(2 * p) + 1] - ref));
    }
    CHECK(max_err <= 2.0 * std::pow(2 * pi, 3) / 6.0 * std::pow(1.0 / 128, 2) * 1.05);
}

TEST_CASE("wald form: pinned value, antisymmetry, silent velocity-time direction") {
    const EDConfig cfg = cfg1d(8);
    Rng rng(191);

    const EDPhasePoint x = random_point(cfg, rng);
    CHECK(wald_form(cfg, x, x) == 0.0);

    // constant Phi_1 = 1 against Psidot_1 = 1: (1/2) * Sum w * (1 * 2 * 1) = volume
    EDPhasePoint a = EDPhasePoint::zero(2, 8), b = EDPhasePoint::zero(2, 8);
    for (std::size_t p = 0; p < 8; ++p) {
        a.phi(p, 1) = 1.0;
        b.phidot(p, 1) = 1.0;
    }
    CHECK(wald_form(cfg, a, b) == doctest::Approx(cfg.grid.volume()).epsilon(1e-14));

    // Psi with only the time-velocity component set never couples: F_00 = 0
    EDPhasePoint tdot = EDPhasePoint::zero(2, 8);
    for (std::size_t p = 0; p < 8; ++p) tdot.phidot(p, 0) = rng.uniform(-1, 1);
    CHECK(wald_form(cfg, x, tdot) == 0.0);
    // coefficient inspection: the assembled columns of those directions vanish
    const Mat mw = assemble_ed(cfg, EDFormKind::wald);
    for (std::size_t p = 0; p < 8; ++p)
        CHECK(mw.col(static_cast<Index>(4 * p) + 2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("forms match their assembled matrices") {
    const EDConfig cfg = cfg1d(8);
    Rng rng(193);
    const Mat mw = assemble_ed(cfg, EDFormKind::wald);
    const Mat mm = assemble_ed(cfg, EDFormKind::mueller);
    CHECK((mw + mw.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((mm + mm.transpose()).cwiseAbs().maxCoeff() == 0.0);

    auto coords = [&](const EDPhasePoint& x) {
        Vec z(4 * 8);
        for (std::size_t p = 0; p < 8; ++p) {
            z[static_cast<Index>(4 * p) + 0] = x.phi(p, 0);
            z[static_cast<Index>(4 * p) + 1] = x.phi(p, 1);
            z[static_cast<Index>(4 * p) + 2] = x.phidot(p, 0);
            z[static_cast<Index>(4 * p) + 3] = x.phidot(p, 1);
        }
        return z;
    };
    for (int k = 0; k < 10; ++k) {
        const EDPhasePoint x = random_point(cfg, rng);
        const EDPhasePoint y = random_point(cfg, rng);
        CHECK(wald_form(cfg, x, y) ==
              doctest::Approx(coords(x).dot(mw * coords(y))).epsilon(1e-12));
        CHECK(mueller_form(cfg, x, y) ==
              doctest::Approx(coords(x).dot(mm * coords(y))).epsilon(1e-12));
        CHECK(mueller_form(cfg, x, x) == 0.0);
        CHECK(spatial_term(cfg, x, x) == 0.0);
    }
}

TEST_CASE("decomposition: exact discrete identity") {
    Rng rng(197);
    for (int dim : {1, 2}) {
        const EDConfig cfg = (dim == 1)
                                 ? cfg1d(16)
                                 : make_ed_config(Grid(2, {6, 6}, {1.0, 1.0}, Boundary::periodic));
        for (int k = 0; k < 20; ++k) {
            const EDPhasePoint x = random_point(cfg, rng);
            const EDPhasePoint y = random_point(cfg, rng);
            CHECK(decomposition_residual(cfg, x, y) <= 1e-12);
        }
        // constant fields: gradient part vanishes, wald = 2 mueller - compensation
        EDPhasePoint cx = EDPhasePoint::zero(cfg.components(), cfg.grid.nodes());
        EDPhasePoint cy = EDPhasePoint::zero(cfg.components(), cfg.grid.nodes());
        for (std::size_t p = 0; p < cfg.grid.nodes(); ++p)
            for (int b = 0; b < cfg.components(); ++b) {
                cx.phi(p, b) = 0.3 + b;
                cx.phidot(p, b) = -0.2 + b;
                cy.phi(p, b) = 1.1 - b;
                cy.phidot(p, b) = 0.4 * (b + 1);
            }
        CHECK(spatial_term(cfg, cx, cy) == 0.0);
        CHECK(std::abs(wald_form(cfg, cx, cy) -
                       (2.0 * mueller_form(cfg, cx, cy) - normal_compensation(cfg, cx, cy))) <=
              1e-12);
    }
}

TEST_CASE("mueller form localizes, wald does not") {
    const EDConfig cfg = cfg1d(8);
    Rng rng(199);
    // Psi supported at one node
    EDPhasePoint psi = EDPhasePoint::zero(2, 8);
    psi.phi(3, 0) = 0.8;
    psi.phi(3, 1) = -0.4;
    psi.phidot(3, 0) = 0.6;
    psi.phidot(3, 1) = 0.2;
    // two Phi's agreeing at node 3, differing elsewhere
    EDPhasePoint a = random_point(cfg, rng);
    EDPhasePoint b = random_point(cfg, rng);
    for (int c = 0; c < 2; ++c) {
        b.phi(3, c) = a.phi(3, c);
        b.phidot(3, c) = a.phidot(3, c);
    }
    CHECK(mueller_form(cfg, a, psi) == mueller_form(cfg, b, psi));
    CHECK(wald_form(cfg, a, psi) != wald_form(cfg, b, psi));
}

TEST_CASE("kernel analysis: degeneracy split") {
    const EDConfig cfg = cfg1d(16);
    const EDKernelReport rep = kernel_analysis(cfg);
    CHECK(rep.dim == 64);
    CHECK(rep.kernel_mueller == 0);
    CHECK(rep.rank_mueller == 64);
    CHECK(rep.sigma_min_mueller > 0.0);
    CHECK(rep.kernel_wald >= 16);
    CHECK(rep.kernel_basis_wald.cols() == rep.kernel_wald);

    // every pure time-velocity direction is annihilated by the wald matrix
    const Mat mw = assemble_ed(cfg, EDFormKind::wald);
    for (std::size_t p = 0; p < 16; ++p) {
        Vec e = Vec::Zero(64);
        e[static_cast<Index>(4 * p) + 2] = 1.0;
        CHECK((mw * e).cwiseAbs().maxCoeff() == 0.0);
    }

    const EDConfig cfg2 = make_ed_config(Grid(2, {4, 4}, {1.0, 1.0}, Boundary::periodic));
    const EDKernelReport rep2 = kernel_analysis(cfg2);
    CHECK(rep2.kernel_mueller == 0);
    CHECK(rep2.kernel_wald >= 16); // one silent direction per node

    CHECK_THROWS_AS(assemble_ed(cfg, EDFormKind::wald, 32), std::invalid_argument);
}
