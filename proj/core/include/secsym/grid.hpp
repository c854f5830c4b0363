#pragma once

#include "secsym/types.hpp"

#include <array>
#include <functional>
#include <vector>

namespace secsym {

/// Per-node real values in the grid's row-major node order.
using ScalarField = Vec;

enum class Boundary { periodic, dirichlet };

/// Uniform discretization of the spatial slice: nodes, spacings, quadrature
/// weights, central differences and their weighted adjoints.
///
/// Nodes sit at x_j = j*h with h = L/N on both boundary modes, so the node
/// weight w = prod(h_i) sums exactly to the domain volume. On dirichlet grids
/// the outermost node layer is the support boundary: admissible fields vanish
/// there (compact-support model).
class Grid {
public:
    Grid(int dim, std::vector<int> shape, std::vector<double> extents, Boundary boundary);

    int dim() const { return dim_; }
    Boundary boundary() const { return boundary_; }
    const std::vector<int>& shape() const { return shape_; }
    int size(int axis) const { return shape_[static_cast<std::size_t>(axis)]; }
    double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
    double length(int axis) const { return extents_[static_cast<std::size_t>(axis)]; }
    std::size_t nodes() const { return nodes_; }
    /// uniform per-node quadrature weight, prod(h_i)
    double weight() const { return weight_; }
    double volume() const;

    // row-major addressing, axis 0 slowest
    std::size_t node_index(int i0, int i1 = 0) const;
    std::array<int, 2> node_coords(std::size_t p) const;
    std::array<double, 2> position(std::size_t p) const;
    /// true on the outermost layer of a dirichlet grid (always false on periodic)
    bool boundary_node(std::size_t p) const;

    /// Sum_p w_p f_p in fixed row-major order.
    double quadrature(const ScalarField& f) const;

    /// Central difference along axis; periodic wrap, or second-order one-sided
    /// stencils on the dirichlet edges.
    ScalarField diff(int axis, const ScalarField& f) const;

    /// Adjoint of diff w.r.t. the weighted inner product <f,g> = Sum w f g.
    /// With uniform weights this is the transpose of the stencil matrix.
    ScalarField adjoint_diff(int axis, const ScalarField& f) const;

    void check_field(const ScalarField& f, const char* where) const;

private:
    int dim_;
    std::vector<int> shape_;
    std::vector<double> extents_;
    std::vector<double> spacing_;
    Boundary boundary_;
    std::size_t nodes_;
    double weight_;
};

/// Evaluate fn at every node position (fn receives x, y; y = 0 in 1D).
ScalarField sample_field(const Grid& grid, const std::function<double(double, double)>& fn);

} // namespace secsym
