#include "secsym/fiber.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace secsym {

namespace {
constexpr double kNondegenerateFloor = 1e-10;
}

FiberModel::FiberModel(Mat bilinear) : B_(std::move(bilinear)) {
    if (B_.rows() != B_.cols() || B_.rows() < 1)
        throw std::invalid_argument("FiberModel: B must be square and nonempty");
    for (Index i = 0; i < B_.rows(); ++i)
        for (Index j = 0; j < i; ++j)
            if (B_(i, j) != B_(j, i))
                throw std::invalid_argument("FiberModel: B must be exactly symmetric");

    Eigen::JacobiSVD<Mat> svd(B_);
    sigma_min_ = svd.singularValues().minCoeff();
    if (!(sigma_min_ > kNondegenerateFloor))
        throw std::invalid_argument("FiberModel: B is degenerate (min singular value " +
                                    std::to_string(sigma_min_) + ")");

    Eigen::SelfAdjointEigenSolver<Mat> eig(B_);
    spd_ = eig.eigenvalues().minCoeff() > 0.0;

    Binv_ = Eigen::PartialPivLU<Mat>(B_).inverse();
}

double omega_fiber(const FiberModel& fiber, const PhaseVector& x, const PhaseVector& y) {
    const int m = fiber.dim();
    if (x.q.size() != m || x.v.size() != m || y.q.size() != m || y.v.size() != m)
        throw std::invalid_argument("omega_fiber: dimension mismatch");
    return (fiber.bilinear() * x.q).dot(y.v) - (fiber.bilinear() * y.q).dot(x.v);
}

Mat omega_matrix(const FiberModel& fiber) {
    const int m = fiber.dim();
    Mat a = Mat::Zero(2 * m, 2 * m);
    a.topRightCorner(m, m) = fiber.bilinear();
    a.bottomLeftCorner(m, m) = -fiber.bilinear();
    return a;
}

CompatibleStructure compatible_structure(const FiberModel& fiber) {
    if (!fiber.positive_definite())
        throw std::invalid_argument("compatible structure requires positive-definite B");
    const int m = fiber.dim();
    CompatibleStructure cs;
    cs.j = Mat::Zero(2 * m, 2 * m);
    cs.j.topRightCorner(m, m) = Mat::Identity(m, m);
    cs.j.bottomLeftCorner(m, m) = -Mat::Identity(m, m);
    cs.h = Mat::Zero(2 * m, 2 * m);
    cs.h.topLeftCorner(m, m) = fiber.bilinear();
    cs.h.bottomRightCorner(m, m) = fiber.bilinear();
    return cs;
}

FiberModel direct_sum(const FiberModel& f1, const FiberModel& f2) {
    const int m1 = f1.dim(), m2 = f2.dim();
    Mat b = Mat::Zero(m1 + m2, m1 + m2);
    b.topLeftCorner(m1, m1) = f1.bilinear();
    b.bottomRightCorner(m2, m2) = f2.bilinear();
    return FiberModel(std::move(b));
}

PhaseVector fiber_solve(const FiberModel& fiber, const Vec& a, const Vec& b) {
    const int m = fiber.dim();
    if (a.size() != m || b.size() != m)
        throw std::invalid_argument("fiber_solve: covector dimension mismatch");
    return PhaseVector{fiber.inverse() * b, -(fiber.inverse() * a)};
}

} // namespace secsym
