#include "secsym/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace secsym {

Grid::Grid(int dim, std::vector<int> shape, std::vector<double> extents, Boundary boundary)
    : dim_(dim), shape_(std::move(shape)), extents_(std::move(extents)), boundary_(boundary) {
    if (dim_ != 1 && dim_ != 2)
        throw std::invalid_argument("Grid: dim must be 1 or 2, got " + std::to_string(dim_));
    if (shape_.size() != static_cast<std::size_t>(dim_) ||
        extents_.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("Grid: shape/extents must have one entry per axis");
    nodes_ = 1;
    weight_ = 1.0;
    spacing_.resize(shape_.size());
    for (std::size_t ax = 0; ax < shape_.size(); ++ax) {
        if (shape_[ax] < 4)
            throw std::invalid_argument("Grid: shape must be >= 4 per axis, got " +
                                        std::to_string(shape_[ax]));
        if (!(extents_[ax] > 0.0))
            throw std::invalid_argument("Grid: extents must be positive");
        spacing_[ax] = extents_[ax] / shape_[ax];
        nodes_ *= static_cast<std::size_t>(shape_[ax]);
        weight_ *= spacing_[ax];
    }
}

double Grid::volume() const {
    double v = 1.0;
    for (double L : extents_) v *= L;
    return v;
}

std::size_t Grid::node_index(int i0, int i1) const {
    if (dim_ == 1) return static_cast<std::size_t>(i0);
    return static_cast<std::size_t>(i0) * static_cast<std::size_t>(shape_[1]) +
           static_cast<std::size_t>(i1);
}

std::array<int, 2> Grid::node_coords(std::size_t p) const {
    if (dim_ == 1) return {static_cast<int>(p), 0};
    const int n1 = shape_[1];
    return {static_cast<int>(p / static_cast<std::size_t>(n1)),
            static_cast<int>(p % static_cast<std::size_t>(n1))};
}

std::array<double, 2> Grid::position(std::size_t p) const {
    const auto c = node_coords(p);
    std::array<double, 2> x{0.0, 0.0};
    for (int ax = 0; ax < dim_; ++ax) x[static_cast<std::size_t>(ax)] = c[static_cast<std::size_t>(ax)] * spacing_[static_cast<std::size_t>(ax)];
    return x;
}

bool Grid::boundary_node(std::size_t p) const {
    if (boundary_ == Boundary::periodic) return false;
    const auto c = node_coords(p);
    for (int ax = 0; ax < dim_; ++ax) {
        const int i = c[static_cast<std::size_t>(ax)];
        if (i == 0 || i == shape_[static_cast<std::size_t>(ax)] - 1) return true;
    }
    return false;
}

void Grid::check_field(const ScalarField& f, const char* where) const {
    if (static_cast<std::size_t>(f.size()) != nodes_)
        throw std::invalid_argument(std::string(where) + ": field size " +
                                    std::to_string(f.size()) + " does not match grid with " +
                                    std::to_string(nodes_) + " nodes");
}

double Grid::quadrature(const ScalarField& f) const {
    check_field(f, "quadrature");
    double acc = 0.0;
    for (Index p = 0; p < f.size(); ++p) acc += f[p];
    return weight_ * acc;
}

namespace {

// one-sided second-order first derivative at a dirichlet edge
inline double edge_low(const ScalarField& f, Index p, Index s, double h) {
    return (-3.0 * f[p] + 4.0 * f[p + s] - f[p + 2 * s]) / (2.0 * h);
}
inline double edge_high(const ScalarField& f, Index p, Index s, double h) {
    return (3.0 * f[p] - 4.0 * f[p - s] + f[p - 2 * s]) / (2.0 * h);
}

} // namespace

ScalarField Grid::diff(int axis, const ScalarField& f) const {
    check_field(f, "diff");
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("diff: axis out of range");

    const int n = shape_[static_cast<std::size_t>(axis)];
    const double h = spacing_[static_cast<std::size_t>(axis)];
    const Index stride = (dim_ == 2 && axis == 0) ? shape_[1] : 1;
    const Index lines = static_cast<Index>(nodes_) / n;
    // stride between consecutive lines, in node order
    const Index line_step = (dim_ == 2 && axis == 0) ? 1 : stride * n;

    ScalarField out(f.size());
    for (Index l = 0; l < lines; ++l) {
        const Index base = l * line_step;
        if (boundary_ == Boundary::periodic) {
            for (Index i = 0; i < n; ++i) {
                const Index ip = (i + 1 == n) ? 0 : i + 1;
                const Index im = (i == 0) ? n - 1 : i - 1;
                out[base + i * stride] =
                    (f[base + ip * stride] - f[base + im * stride]) / (2.0 * h);
            }
        } else {
            out[base] = edge_low(f, base, stride, h);
            for (Index i = 1; i < n - 1; ++i)
                out[base + i * stride] =
                    (f[base + (i + 1) * stride] - f[base + (i - 1) * stride]) / (2.0 * h);
            out[base + (n - 1) * stride] = edge_high(f, base + (n - 1) * stride, stride, h);
        }
    }
    return out;
}

ScalarField Grid::adjoint_diff(int axis, const ScalarField& f) const {
    check_field(f, "adjoint_diff");
    if (axis < 0 || axis >= dim_) throw std::invalid_argument("adjoint_diff: axis out of range");

    const int n = shape_[static_cast<std::size_t>(axis)];
    const double h = spacing_[static_cast<std::size_t>(axis)];
    const Index stride = (dim_ == 2 && axis == 0) ? shape_[1] : 1;
    const Index lines = static_cast<Index>(nodes_) / n;
    const Index line_step = (dim_ == 2 && axis == 0) ? 1 : stride * n;

    // scatter the transpose of the diff stencil; weights are uniform and cancel
    ScalarField out = ScalarField::Zero(f.size());
    const double c = 1.0 / (2.0 * h);
    for (Index l = 0; l < lines; ++l) {
        const Index base = l * line_step;
        if (boundary_ == Boundary::periodic) {
            for (Index i = 0; i < n; ++i) {
                const Index ip = (i + 1 == n) ? 0 : i + 1;
                const Index im = (i == 0) ? n - 1 : i - 1;
                const double v = f[base + i * stride];
                out[base + ip * stride] += c * v;
                out[base + im * stride] -= c * v;
            }
        } else {
            for (Index i = 0; i < n; ++i) {
                const double v = f[base + i * stride];
                if (i == 0) {
                    out[base] += -3.0 * c * v;
                    out[base + stride] += 4.0 * c * v;
                    out[base + 2 * stride] += -c * v;
                } else if (i == n - 1) {
                    out[base + i * stride] += 3.0 * c * v;
                    out[base + (i - 1) * stride] += -4.0 * c * v;
                    out[base + (i - 2) * stride] += c * v;
                } else {
                    out[base + (i + 1) * stride] += c * v;
                    out[base + (i - 1) * stride] -= c * v;
                }
            }
        }
    }
    return out;
}

ScalarField sample_field(const Grid& grid, const std::function<double(double, double)>& fn) {
    ScalarField out(static_cast<Index>(grid.nodes()));
    for (std::size_t p = 0; p < grid.nodes(); ++p) {
        const auto x = grid.position(p);
        out[static_cast<Index>(p)] = fn(x[0], x[1]);
    }
    return out;
}

} // namespace secsym
