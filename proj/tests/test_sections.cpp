#include "secsym/sections.hpp"
#include "secsym/random.hpp"
#include "secsym/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace secsym;

namespace {

PhaseSection uniform_section(int m, std::size_t nodes, double qv, double vv) {
    PhaseSection g = PhaseSection::zero(m, nodes);
    g.q.setConstant(qv);
    g.v.setConstant(vv);
    return g;
}

} // namespace

TEST_CASE("hat: constant and rotation rules") {
    const Grid grid(1, {8}, {1.0}, Boundary::periodic);
    const PhaseSection gamma = uniform_section(1, grid.nodes(), 2.0, 0.0);

    const VerticalField vc = constant_vertical(1, Vec::Ones(1), Vec::Zero(1));
    const TangentField xc = hat_of_vertical(vc, gamma);
    CHECK(xc.dq.isConstant(1.0, 0.0));
    CHECK(xc.dv.isZero(0.0));

    const TangentField xr = hat_of_vertical(rotation_vertical(1), gamma);
    CHECK(xr.dq.isZero(0.0));          // dq = v = 0
    CHECK(xr.dv.isConstant(-2.0, 0.0)); // dv = -q
}

TEST_CASE("hat equals the flow derivative at t = 0") {
    const Grid grid(1, {12}, {1.0}, Boundary::periodic);
    Rng rng(41);
    for (int k = 0; k < 10; ++k) {
        const int m = rng.uniform_int(1, 2);
        const VerticalField v = named_vertical(k % 2 ? "linear" : "polynomial", m, rng, 0.8);
        const PhaseSection gamma = random_section(grid, m, rng, 0.7);
        const TangentField x = hat_of_vertical(v, gamma);
        const double t = 1e-5;
        const PhaseSection gp = tilde_flow(v, gamma, t);
        const PhaseSection gm = tilde_flow(v, gamma, -t);
        const TangentField fd = (1.0 / (2.0 * t)) * section_delta(gp, gm);
        CHECK(sup_norm(fd - x) <= 1e-8);
    }
}

TEST_CASE("tilde_flow: rotation for a quarter period, identity cases") {
    const Grid grid(1, {8}, {1.0}, Boundary::periodic);
    const PhaseSection gamma = uniform_section(1, grid.nodes(), 1.0, 0.0);
    const VerticalField rot = rotation_vertical(1);

    const PhaseSection quarter = tilde_flow(rot, gamma, std::numbers::pi / 2);
    CHECK(quarter.q.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((quarter.v.array() + 1.0).abs().maxCoeff() <= 1e-12);

    const VerticalField zero = constant_vertical(1, Vec::Zero(1), Vec::Zero(1));
    const PhaseSection same = tilde_flow(zero, gamma, 0.37);
    CHECK((same.q - gamma.q).cwiseAbs().maxCoeff() == 0.0);
    const PhaseSection t0 = tilde_flow(rot, gamma, 0.0);
    CHECK((t0.q - gamma.q).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tilde_flow: one-step integrator converges at fourth order") {
    const Grid grid(1, {6}, {1.0}, Boundary::periodic);
    Rng rng(43);
    const VerticalField v = named_vertical("polynomial", 1, rng, 0.5);
    const PhaseSection gamma = random_section(grid, 1, rng, 0.5);
    const double t = 0.4;
    FlowOptions coarse{2, 0.5}, fine{4, 0.5}, ref_opt{64, 0.5};
    const PhaseSection ref = tilde_flow(v, gamma, t, ref_opt);
    const double e2 = sup_norm(section_delta(tilde_flow(v, gamma, t, coarse), ref));
    const double e4 = sup_norm(section_delta(tilde_flow(v, gamma, t, fine), ref));
    CHECK(e2 / e4 >= 10.0); // ~16 for a 4th-order one-step method
}

TEST_CASE("tilde_flow: blow-up is reported") {
    const Grid grid(1, {4}, {1.0}, Boundary::periodic);
    VerticalField quad;
    quad.m = 1;
    quad.eval = [](std::size_t, Eigen::Ref<const Vec> q, Eigen::Ref<const Vec>,
                   Eigen::Ref<Vec> dq, Eigen::Ref<Vec> dv) {
        dq[0] = q[0] * q[0]; // finite-time blow-up for q0 > 0
        dv[0] = 0.0;
    };
    const PhaseSection gamma = uniform_section(1, grid.nodes(), 1.0, 0.0);
    CHECK_THROWS_AS(tilde_flow(quad, gamma, 50.0, FlowOptions{4, 100.0}), std::runtime_error);
}

TEST_CASE("vertical_bracket: constants commute, self-bracket vanishes") {
    Rng rng(47);
    const VerticalField c1 = constant_vertical(2, rng.uniform_vec(2, -1, 1), rng.uniform_vec(2, -1, 1));
    const VerticalField c2 = constant_vertical(2, rng.uniform_vec(2, -1, 1), rng.uniform_vec(2, -1, 1));
    const VerticalField br = vertical_bracket(c1, c2);
    CHECK(br.affine->generator.isZero(0.0));
    CHECK(br.affine->offset.isZero(0.0));

    const VerticalField v = named_vertical("polynomial", 1, rng, 1.0);
    const VerticalField vv = vertical_bracket(v, v);
    const Vec q = rng.uniform_vec(1, -1, 1), w = rng.uniform_vec(1, -1, 1);
    const PhaseVector out = vv(0, q, w);
    CHECK(out.q.cwiseAbs().maxCoeff() == 0.0);
    CHECK(out.v.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vertical_bracket: analytic value checked against the flow commutator") {
    // m = 1, V = (v, 0), W = (0, q): [V, W] = DW V - DV W = (-q, v)
    Mat gv = Mat::Zero(2, 2), gw = Mat::Zero(2, 2);
    gv(0, 1) = 1.0;
    gw(1, 0) = 1.0;
    const VerticalField v = linear_vertical(1, gv);
    const VerticalField w = linear_vertical(1, gw);
    const VerticalField br = vertical_bracket(v, w);
    Vec q(1), vv(1);
    q << 0.7;
    vv << -0.3;
    const PhaseVector val = br(0, q, vv);
    CHECK(val.q[0] == doctest::Approx(-0.7).epsilon(1e-14));
    CHECK(val.v[0] == doctest::Approx(-0.3).epsilon(1e-14));

    // flow-commutator estimate approaches the analytic bracket as O(t)
    const Grid grid(1, {4}, {1.0}, Boundary::periodic);
    PhaseSection gamma = PhaseSection::zero(1, grid.nodes());
    gamma.q.setConstant(0.7);
    gamma.v.setConstant(-0.3);
    auto estimate_err = [&](double t) {
        const PhaseSection looped = commutator_loop(v, w, gamma, t);
        const TangentField est = (1.0 / (t * t)) * section_delta(looped, gamma);
        return sup_norm(est - hat_of_vertical(br, gamma));
    };
    const double r1 = estimate_err(1e-2);
    const double r2 = estimate_err(5e-3);
    CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("named registry: lookup, rotation rule, affine consistency") {
    Rng rng(51);
    CHECK_THROWS_AS(named_vertical("spline", 1, rng, 1.0), std::invalid_argument);

    const VerticalField rot = named_vertical("rotation", 2, rng, 1.0);
    CHECK(rot.linear());
    const Vec q = rng.uniform_vec(2, -1, 1), v = rng.uniform_vec(2, -1, 1);
    const PhaseVector out = rot(0, q, v);
    CHECK((out.q - v).cwiseAbs().maxCoeff() == 0.0);
    CHECK((out.v + q).cwiseAbs().maxCoeff() == 0.0);

    // spot-check: an affine-flagged field evaluates as generator * z + offset
    for (const char* name : {"constant", "linear"}) {
        const VerticalField f = named_vertical(name, 2, rng, 0.7);
        REQUIRE(f.affine.has_value());
        for (int k = 0; k < 4; ++k) {
            Vec z(4);
            z << rng.uniform_vec(2, -1, 1), rng.uniform_vec(2, -1, 1);
            const Vec expect = f.affine->generator * z + f.affine->offset;
            const PhaseVector val = f(0, z.head(2), z.tail(2));
            CHECK((val.q - expect.head(2)).cwiseAbs().maxCoeff() <= 1e-15);
            CHECK((val.v - expect.tail(2)).cwiseAbs().maxCoeff() <= 1e-15);
        }
    }
}

TEST_CASE("fd jacobian fallback matches the analytic jacobian") {
    Rng rng(53);
    const VerticalField poly = named_vertical("polynomial", 2, rng, 0.6);
    VerticalField nofd = poly;
    nofd.jacobian_fn = nullptr;
    nofd.affine.reset();
    const Vec q = rng.uniform_vec(2, -1, 1), v = rng.uniform_vec(2, -1, 1);
    const Mat ja = poly.jacobian(0, q, v);
    const Mat jf = nofd.jacobian(0, q, v);
    CHECK((ja - jf).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("bracket preservation: trivial zeros at the fp floor") {
    const Grid grid(1, {8}, {1.0}, Boundary::periodic);
    Rng rng(59);
    const PhaseSection gamma = random_section(grid, 1, rng, 1.0);

    const VerticalField c1 = constant_vertical(1, rng.uniform_vec(1, -1, 1), rng.uniform_vec(1, -1, 1));
    const VerticalField c2 = constant_vertical(1, rng.uniform_vec(1, -1, 1), rng.uniform_vec(1, -1, 1));
    CHECK(bracket_preservation_residual(c1, c2, gamma, 1e-2) <= 1e-12);
    CHECK(bracket_preservation_residual(c1, c2, gamma, 1e-3) <= 1e-12);

    Mat gen(2, 2);
    gen << 0.1, -0.2, 0.15, 0.05;
    const VerticalField lin = linear_vertical(1, gen);
    CHECK(bracket_preservation_residual(lin, lin, gamma, 5e-2) <= 1e-12);
}

TEST_CASE("bracket preservation: first-order decay on linear fields") {
    const Grid grid(1, {8}, {1.0}, Boundary::periodic);
    Rng rng(61);
    const PhaseSection gamma = random_section(grid, 2, rng, 1.0);

    const VerticalField vs = named_vertical("linear", 2, rng, 0.1);
    const VerticalField ws = named_vertical("linear", 2, rng, 0.1);
    CHECK(bracket_preservation_residual(vs, ws, gamma, 1e-3) <= 1e-5);

    const VerticalField v = named_vertical("linear", 2, rng, 0.2);
    const VerticalField w = named_vertical("linear", 2, rng, 0.2);
    const double r1 = bracket_preservation_residual(v, w, gamma, 1e-2);
    const double r2 = bracket_preservation_residual(v, w, gamma, 5e-3);
    const double r3 = bracket_preservation_residual(v, w, gamma, 2.5e-3);
    CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.25));
    CHECK(r2 / r3 == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("compact support is preserved by flows of boundary-vanishing fields") {
    const Grid grid(1, {12}, {1.0}, Boundary::dirichlet);
    Rng rng(67);
    PhaseSection gamma = random_section(grid, 1, rng, 0.8); // vanishes on the layer
    check_support(grid, gamma, "test");

    const VerticalField masked = mask_boundary(grid, named_vertical("polynomial", 1, rng, 0.5));
    const PhaseSection moved = tilde_flow(masked, gamma, 0.3, FlowOptions{8, 0.1});
    check_support(grid, moved, "test"); // throws on violation
    CHECK(moved.q[0] == 0.0);
    CHECK(moved.v[static_cast<Index>(grid.nodes()) - 1] == 0.0);

    PhaseSection bad = gamma;
    bad.q[0] = 0.5;
    CHECK_THROWS_AS(check_support(grid, bad, "test"), std::invalid_argument);
}
