#include "secsym/fiber.hpp"
#include "secsym/random.hpp"
#include "secsym/sampling.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace secsym;

namespace {

Mat m1(double v) {
    Mat b(1, 1);
    b(0, 0) = v;
    return b;
}

PhaseVector pv(std::initializer_list<double> q, std::initializer_list<double> v) {
    PhaseVector x;
    x.q = Vec(static_cast<Index>(q.size()));
    x.v = Vec(static_cast<Index>(v.size()));
    Index i = 0;
    for (double val : q) x.q[i++] = val;
    i = 0;
    for (double val : v) x.v[i++] = val;
    return x;
}

} // namespace

TEST_CASE("model validation") {
    CHECK_THROWS_AS(FiberModel(Mat::Zero(2, 2)), std::invalid_argument);
    Mat asym(2, 2);
    asym << 1.0, 0.5, 0.25, 1.0;
    CHECK_THROWS_AS(FiberModel{asym}, std::invalid_argument);
    Mat tiny(1, 1);
    tiny << 1e-12;
    CHECK_THROWS_AS(FiberModel{tiny}, std::invalid_argument);

    const FiberModel spd(Mat::Identity(2, 2));
    CHECK(spd.positive_definite());
    Mat indef = Mat::Identity(2, 2);
    indef(1, 1) = -1.0;
    CHECK_FALSE(FiberModel(indef).positive_definite());
}

TEST_CASE("omega_fiber: pinned values and antisymmetry") {
    const FiberModel f(m1(1.0));
    CHECK(omega_fiber(f, pv({1.0}, {0.0}), pv({0.0}, {1.0})) == 1.0);

    Mat b = Mat::Identity(2, 2);
    b(1, 1) = -1.0;
    const FiberModel f2(b);
    CHECK(omega_fiber(f2, pv({1.0, 0.0}, {0.0, 0.0}), pv({0.0, 0.0}, {1.0, 0.0})) == 1.0);

    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const FiberModel fr(random_symmetric_nondegenerate(rng, 3, 0.5, 2.0, true));
        const PhaseVector x{rng.uniform_vec(3, -1, 1), rng.uniform_vec(3, -1, 1)};
        const PhaseVector y{rng.uniform_vec(3, -1, 1), rng.uniform_vec(3, -1, 1)};
        CHECK(omega_fiber(fr, x, x) == 0.0);
        CHECK(omega_fiber(fr, x, y) == -omega_fiber(fr, y, x)); // exact by construction
    }

    CHECK_THROWS_AS(omega_fiber(f, pv({1.0, 2.0}, {0.0, 0.0}), pv({0.0}, {1.0})),
                    std::invalid_argument);
}

TEST_CASE("omega_matrix: block structure, determinant and singular values") {
    const FiberModel f1(m1(1.0));
    Mat a = omega_matrix(f1);
    CHECK(a(0, 1) == 1.0);
    CHECK(a(1, 0) == -1.0);
    CHECK(a(0, 0) == 0.0);

    Mat b = Mat::Zero(2, 2);
    b(0, 0) = 2.0;
    b(1, 1) = 3.0;
    const Mat a2 = omega_matrix(FiberModel(b));
    CHECK(a2.determinant() == doctest::Approx(36.0).epsilon(1e-12)); // (det B)^2

    Rng rng(13);
    for (int k = 0; k < 10; ++k) {
        const Mat br = random_symmetric_nondegenerate(rng, 3, 0.4, 2.5, true);
        const Mat ar = omega_matrix(FiberModel(br));
        CHECK((ar + ar.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::JacobiSVD<Mat> sa(ar);
        const Eigen::JacobiSVD<Mat> sb(br);
        CHECK(sa.singularValues().minCoeff() ==
              doctest::Approx(sb.singularValues().minCoeff()).epsilon(1e-10));
    }
}

TEST_CASE("vertical nondegeneracy: every direction pairs against some other") {
    Rng rng(17);
    for (int k = 0; k < 10; ++k) {
        const FiberModel f(random_symmetric_nondegenerate(rng, 2, 0.5, 2.0, true));
        const Mat a = omega_matrix(f);
        const Eigen::JacobiSVD<Mat> svd(a);
        CHECK(svd.singularValues().minCoeff() > 0.0);

        Vec z = rng.gaussian_vec(4).normalized();
        const Vec zy = a.transpose() * z; // omega(x, y) = |A^T z|^2 > 0
        const PhaseVector x{z.head(2), z.tail(2)};
        const PhaseVector y{zy.head(2), zy.tail(2)};
        CHECK(std::abs(omega_fiber(f, x, y)) > 1e-12);
    }
}

TEST_CASE("compatible_structure: pinned case and postconditions") {
    const auto cs1 = compatible_structure(FiberModel(m1(1.0)));
    Mat jexp(2, 2);
    jexp << 0.0, 1.0, -1.0, 0.0;
    CHECK((cs1.j - jexp).cwiseAbs().maxCoeff() == 0.0);
    CHECK((cs1.h - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    Mat b = Mat::Zero(2, 2);
    b(0, 0) = 2.0;
    b(1, 1) = 5.0;
    const FiberModel f(b);
    const auto cs = compatible_structure(f);
    Vec hdiag(4);
    hdiag << 2.0, 5.0, 2.0, 5.0;
    CHECK((cs.h - Mat(hdiag.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-13);

    Rng rng(23);
    for (int k = 0; k < 10; ++k) {
        const int m = rng.uniform_int(1, 3);
        const FiberModel fr(random_spd(rng, m));
        const auto c = compatible_structure(fr);
        const Mat a = omega_matrix(fr);
        // j o j = -1; h SPD; h = omega(j ., .); omega(j ., j .) = omega
        CHECK((c.j * c.j + Mat::Identity(2 * m, 2 * m)).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK(Eigen::SelfAdjointEigenSolver<Mat>(c.h).eigenvalues().minCoeff() > 0.0);
        CHECK((c.j.transpose() * a - c.h).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK((c.j.transpose() * a * c.j - a).cwiseAbs().maxCoeff() <= 1e-13);
    }

    Mat indef = Mat::Identity(2, 2);
    indef(1, 1) = -1.0;
    CHECK_THROWS_WITH_AS(compatible_structure(FiberModel(indef)),
                         "compatible structure requires positive-definite B",
                         std::invalid_argument);
}

TEST_CASE("direct_sum: block structure and covariance at the fiber level") {
    const FiberModel s = direct_sum(FiberModel(m1(1.0)), FiberModel(m1(1.0)));
    CHECK(s.dim() == 2);
    CHECK((s.bilinear() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    Rng rng(29);
    for (int k = 0; k < 10; ++k) {
        const FiberModel f1(random_symmetric_nondegenerate(rng, 2, 0.5, 2.0, true));
        const FiberModel f2(random_symmetric_nondegenerate(rng, 1, 0.5, 2.0, true));
        const FiberModel fs = direct_sum(f1, f2);
        const PhaseVector x1{rng.uniform_vec(2, -1, 1), rng.uniform_vec(2, -1, 1)};
        const PhaseVector y1{rng.uniform_vec(2, -1, 1), rng.uniform_vec(2, -1, 1)};
        const PhaseVector x2{rng.uniform_vec(1, -1, 1), rng.uniform_vec(1, -1, 1)};
        const PhaseVector y2{rng.uniform_vec(1, -1, 1), rng.uniform_vec(1, -1, 1)};
        Vec xq(3), xv(3), yq(3), yv(3);
        xq << x1.q, x2.q;
        xv << x1.v, x2.v;
        yq << y1.q, y2.q;
        yv << y1.v, y2.v;
        const double whole = omega_fiber(fs, PhaseVector{xq, xv}, PhaseVector{yq, yv});
        const double parts = omega_fiber(f1, x1, y1) + omega_fiber(f2, x2, y2);
        CHECK(whole == doctest::Approx(parts).epsilon(1e-12));

        const double det_sum = omega_matrix(fs).determinant();
        const double det_b = f1.bilinear().determinant() * f2.bilinear().determinant();
        CHECK(det_sum == doctest::Approx(det_b * det_b).epsilon(1e-10));
    }
}

TEST_CASE("fiber_solve: explicit inverse of the insertion map") {
    const FiberModel f(m1(1.0));
    const PhaseVector x1 = fiber_solve(f, Vec::Ones(1), Vec::Zero(1));
    CHECK(x1.q[0] == 0.0);
    CHECK(x1.v[0] == -1.0);
    const PhaseVector x2 = fiber_solve(f, Vec::Zero(1), Vec::Ones(1));
    CHECK(x2.q[0] == 1.0);
    CHECK(x2.v[0] == 0.0);
    const PhaseVector x0 = fiber_solve(f, Vec::Zero(1), Vec::Zero(1));
    CHECK(x0.q.cwiseAbs().maxCoeff() == 0.0);
    CHECK(x0.v.cwiseAbs().maxCoeff() == 0.0);

    Rng rng(31);
    for (int k = 0; k < 10; ++k) {
        const int m = rng.uniform_int(1, 3);
        const FiberModel fr(random_symmetric_nondegenerate(rng, m, 0.5, 2.0, true));
        const Mat a = omega_matrix(fr);
        for (int trial = 0; trial < 2 * m; ++trial) {
            const Vec av = rng.uniform_vec(m, -1, 1);
            const Vec bv = rng.uniform_vec(m, -1, 1);
            const PhaseVector x = fiber_solve(fr, av, bv);
            // dense solve of the A z system as oracle
            Vec rhs(2 * m);
            rhs << av, bv;
            const Vec z = a.transpose().partialPivLu().solve(rhs);
            CHECK((x.q - z.head(m)).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK((x.v - z.tail(m)).cwiseAbs().maxCoeff() <= 1e-12);
            // two-sided inverse: omega(X, Y) reproduces the pairing on a basis
            for (int j = 0; j < 2 * m; ++j) {
                Vec e = Vec::Zero(2 * m);
                e[j] = 1.0;
                const PhaseVector y{e.head(m), e.tail(m)};
                CHECK(std::abs(omega_fiber(fr, x, y) - rhs[j]) <= 1e-12);
            }
        }
    }
}
