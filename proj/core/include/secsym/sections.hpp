#pragma once

#include "secsym/fiber.hpp"
#include "secsym/grid.hpp"
#include "secsym/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace secsym {

/// A section of the phase bundle: per-node pair (q, v) in R^m x R^m,
/// stored node-major (block p occupies entries [m*p, m*p+m)).
struct PhaseSection {
    int m = 0;
    Vec q, v;

    static PhaseSection zero(int m, std::size_t nodes);
    std::size_t nodes() const { return m > 0 ? static_cast<std::size_t>(q.size()) / m : 0; }

    auto q_node(std::size_t p) { return q.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto q_node(std::size_t p) const { return q.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto v_node(std::size_t p) { return v.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto v_node(std::size_t p) const { return v.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
};

/// A vector field along a section: per-node (dq, dv), same layout.
struct TangentField {
    int m = 0;
    Vec dq, dv;

    static TangentField zero(int m, std::size_t nodes);
    std::size_t nodes() const { return m > 0 ? static_cast<std::size_t>(dq.size()) / m : 0; }

    auto dq_node(std::size_t p) { return dq.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto dq_node(std::size_t p) const { return dq.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto dv_node(std::size_t p) { return dv.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto dv_node(std::size_t p) const { return dv.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
};

TangentField operator+(const TangentField& a, const TangentField& b);
TangentField operator-(const TangentField& a, const TangentField& b);
TangentField operator*(double s, const TangentField& x);

/// gamma + t * X
PhaseSection advance(const PhaseSection& gamma, const TangentField& x, double t);
/// to - from, as a tangent vector on the (linear) section space
TangentField section_delta(const PhaseSection& to, const PhaseSection& from);
double sup_norm(const TangentField& x);

/// Zero the outermost layer of a dirichlet grid; no-op on periodic grids.
void enforce_support(const Grid& grid, PhaseSection& gamma);
void enforce_support(const Grid& grid, TangentField& x);
/// Throws if a dirichlet section carries data on the support boundary.
void check_support(const Grid& grid, const PhaseSection& gamma, const char* where);

/// A vertical vector field on the total space, evaluated pointwise:
/// (p, q, v) -> (dq, dv). Ultralocal by construction.
class VerticalField {
public:
    using EvalFn = std::function<void(std::size_t p, Eigen::Ref<const Vec> q,
                                      Eigen::Ref<const Vec> v, Eigen::Ref<Vec> dq,
                                      Eigen::Ref<Vec> dv)>;
    using JacobianFn =
        std::function<Mat(std::size_t p, Eigen::Ref<const Vec> q, Eigen::Ref<const Vec> v)>;

    /// z' = M z + c in z = (q, v) coordinates, the same rule at every node.
    /// When set, flows are exact (matrix exponentials).
    struct AffineRule {
        Mat generator; // 2m x 2m
        Vec offset;    // 2m
    };

    int m = 0;
    EvalFn eval;
    JacobianFn jacobian_fn;          // optional analytic Jacobian, d(dq,dv)/d(q,v)
    std::optional<AffineRule> affine;

    /// linear flag: evaluation is linear in (q, v) at every node
    bool linear() const { return affine.has_value() && affine->offset.isZero(0.0); }

    PhaseVector operator()(std::size_t p, const Vec& q, const Vec& v) const;
    /// analytic when available, otherwise central differences with relative step eta
    Mat jacobian(std::size_t p, const Vec& q, const Vec& v, double eta = 1e-5) const;
};

// named builders (also reachable from the CLI registry)
VerticalField constant_vertical(int m, Vec dq, Vec dv);
VerticalField linear_vertical(int m, Mat generator);
VerticalField affine_vertical(int m, Mat generator, Vec offset);
/// the rotation rule (q, v) -> (v, -q)
VerticalField rotation_vertical(int m);
/// components are degree-2 polynomials in z = (q, v):
/// out_i = c0[i] + C1.row(i) z + z^T C2[i] z, with C2[i] symmetric
VerticalField polynomial_vertical(int m, Vec c0, Mat c1, std::vector<Mat> c2);
/// zero the field on the support boundary of a dirichlet grid
VerticalField mask_boundary(const Grid& grid, VerticalField field);

class Rng;
/// registry for config-driven tests: "constant" | "rotation" | "linear" | "polynomial",
/// with coefficients drawn deterministically from rng at the given scale
VerticalField named_vertical(const std::string& name, int m, Rng& rng, double scale);

/// The hat map at gamma: p -> V(p, gamma(p)), i.e. the pull-back of V along gamma.
TangentField hat_of_vertical(const VerticalField& field, const PhaseSection& gamma);

struct FlowOptions {
    int substeps = 0;       // 0 = choose from max_step
    double max_step = 0.1;  // per-substep bound for the generic integrator
};

/// The flow of V applied pointwise for time t: exact matrix exponential for
/// affine rules, classical 4th-order one-step integration otherwise.
/// Throws on non-finite output (blow-up).
PhaseSection tilde_flow(const VerticalField& field, const PhaseSection& gamma, double t,
                        const FlowOptions& opt = {});

/// [V, W](p, z) = DW(z) V(z) - DV(z) W(z), pointwise.
VerticalField vertical_bracket(const VerticalField& v, const VerticalField& w);

/// Second-order commutator loop applied to gamma:
/// Fl^W_{-t} o Fl^V_{-t} o Fl^W_t o Fl^V_t. For affine fields the four maps
/// are composed as affine maps before touching gamma.
PhaseSection commutator_loop(const VerticalField& v, const VerticalField& w,
                             const PhaseSection& gamma, double t, const FlowOptions& opt = {});

/// sup-norm of (commutator loop - flow of [V, W] for time t^2), scaled by 1/t^2.
/// Decays O(t) for smooth fields; identically zero when the flows commute.
double bracket_preservation_residual(const VerticalField& v, const VerticalField& w,
                                     const PhaseSection& gamma, double t,
                                     const FlowOptions& opt = {});

} // namespace secsym
