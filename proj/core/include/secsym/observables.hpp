#pragma once

#include "secsym/symform.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace secsym {

/// A differential as a per-node density (a, b): the pairing with a tangent is
///   <d, X> = Sum_p w_p (a(p).dq(p) + b(p).dv(p)),
/// i.e. densities are defined relative to the quadrature weights, which keeps
/// Hamiltonian solves pointwise.
struct CovectorDensity {
    int m = 0;
    Vec a, b;

    static CovectorDensity zero(int m, std::size_t nodes);
    std::size_t nodes() const { return m > 0 ? static_cast<std::size_t>(a.size()) / m : 0; }
    auto a_node(std::size_t p) { return a.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto a_node(std::size_t p) const { return a.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto b_node(std::size_t p) { return b.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
    auto b_node(std::size_t p) const { return b.segment(static_cast<Index>(m) * static_cast<Index>(p), m); }
};

double pair_density(const SymplecticContext& ctx, const CovectorDensity& d, const TangentField& x);

/// An observable on section space: a value map plus a differential map
/// (analytic, or the central-difference fallback installed by
/// functional_from_value).
struct Functional {
    std::function<double(const PhaseSection&)> value;
    std::function<CovectorDensity(const PhaseSection&)> differential;
    std::optional<double> support_diameter;
};

/// Wrap a bare value map with a finite-difference differential.
Functional functional_from_value(const SymplecticContext& ctx,
                                 std::function<double(const PhaseSection&)> value,
                                 double fd_step = 1e-5);

/// Phi_f^mu(gamma) = Sum_p w_p f(p) q^mu(p); analytic differential a = f e_mu.
Functional smeared_position(const SymplecticContext& ctx, ScalarField f, int mu);
/// Pi_g^nu(gamma) = Sum_p w_p g(p) v^nu(p); analytic differential b = g e_nu.
Functional smeared_momentum(const SymplecticContext& ctx, ScalarField g, int nu);

/// X with Omega(X, Y) = <d, Y> for all Y: pointwise (B^-1 b, -B^-1 a).
TangentField hamiltonian_field(const SymplecticContext& ctx, const CovectorDensity& d);
TangentField hamiltonian_field(const SymplecticContext& ctx, const Functional& f,
                               const PhaseSection& gamma);

/// {F, G} = Omega(X_F, X_G) at gamma.
double poisson(const SymplecticContext& ctx, const Functional& f, const Functional& g,
               const PhaseSection& gamma);

/// Operator norm of a differential w.r.t. H: sqrt(H(grad, grad)) with the
/// pointwise H-gradient (B^-1 a, B^-1 b). Requires SPD fiber.
double op_norm(const SymplecticContext& ctx, const CovectorDensity& d);

/// Empirical C1 norm over a sample set: max |F| + max op_norm(dF).
double c1_norm(const SymplecticContext& ctx, const Functional& f,
               std::span<const PhaseSection> samples);

/// Gauss-Legendre nodes/weights on [0, 1].
std::vector<std::array<double, 2>> gauss_legendre(int n);

/// Line integral of Omega(X|_c(t), gamma1 - gamma0) along the straight
/// segment c(t) = gamma0 + t (gamma1 - gamma0), by Gauss-Legendre quadrature.
double reconstruct(const SymplecticContext& ctx,
                   const std::function<TangentField(const PhaseSection&)>& field,
                   const PhaseSection& gamma0, const PhaseSection& gamma1, int quad_order = 8);

/// F(gamma) = 1/2 z^T P z + r.z + c in the global coordinates of ctx
/// (plain-dot pairing; the covector density divides out the weights).
/// Quadratic functionals close under the Poisson bracket, which keeps nested
/// brackets exactly computable.
class QuadraticFunctional {
public:
    QuadraticFunctional(Mat p, Vec r, double c);

    const Mat& quad() const { return p_; }
    const Vec& lin() const { return r_; }
    double constant() const { return c_; }

    double value(const SymplecticContext& ctx, const PhaseSection& gamma) const;
    /// plain-coordinates gradient P z + r
    Vec gradient(const SymplecticContext& ctx, const PhaseSection& gamma) const;
    CovectorDensity differential(const SymplecticContext& ctx, const PhaseSection& gamma) const;
    TangentField hamiltonian_field(const SymplecticContext& ctx, const PhaseSection& gamma) const;
    /// generator S = -K P and offset -K r of the induced affine field on
    /// section space (K = inverse of the assembled form, applied blockwise)
    Mat field_generator(const SymplecticContext& ctx) const;
    Vec field_offset(const SymplecticContext& ctx) const;
    Functional as_functional(const SymplecticContext& ctx) const;

private:
    Mat p_;
    Vec r_;
    double c_;
};

/// K u, the blockwise inverse of the assembled form: per node (1/w) A^-1.
Vec apply_form_inverse(const SymplecticContext& ctx, const Vec& u);
Mat apply_form_inverse(const SymplecticContext& ctx, const Mat& u);

/// Exact bracket of quadratics: {F, G} has quadratic matrix Q K P - P K Q,
/// linear part Q K r_F - P K r_G and constant -r_F . K r_G.
QuadraticFunctional poisson_bracket(const SymplecticContext& ctx, const QuadraticFunctional& f,
                                    const QuadraticFunctional& g);

/// |{F,{G,K}} + {G,{K,F}} + {K,{F,G}}| at gamma, nested brackets exact.
double jacobi_residual(const SymplecticContext& ctx, const QuadraticFunctional& f,
                       const QuadraticFunctional& g, const QuadraticFunctional& k,
                       const PhaseSection& gamma);

/// sup-norm of X_{F,G} - [X_G, X_F] at gamma, both sides exact for the affine
/// Hamiltonian flows of quadratics. With this module's sign conventions the
/// Hamiltonian map satisfies X_{F,G} = [X_G, X_F]; the commutator loop below
/// is oriented the same way.
double bracket_field_residual(const SymplecticContext& ctx, const QuadraticFunctional& f,
                              const QuadraticFunctional& g, const PhaseSection& gamma);

/// Second-order commutator-loop estimate of [X_G, X_F] at gamma:
/// (Fl^{X_F}_{-t} Fl^{X_G}_{-t} Fl^{X_F}_t Fl^{X_G}_t gamma - gamma) / t^2,
/// with exact affine flows. Converges to X_{F,G} at rate O(t).
TangentField flow_commutator_estimate(const SymplecticContext& ctx, const QuadraticFunctional& f,
                                      const QuadraticFunctional& g, const PhaseSection& gamma,
                                      double t);

enum class PerturbationMode { truncation, noise };
PerturbationMode perturbation_mode_from_string(const std::string& s);

struct EpsilonOptions {
    double epsilon = 1e-2;
    PerturbationMode mode = PerturbationMode::noise;
    int sample_count = 8;
    int quad_order = 8;
    std::uint64_t seed = 1;
    /// H-radius of the sample ball around the base section; the support
    /// diameter hint of the functional overrides it when present
    double sample_radius = 1.0;
};

struct EpsilonReport {
    double epsilon = 0.0;
    /// sup over probed sections of ||dF - Omega(X_eps, .)||_op
    double opnorm_residual = 0.0;
    double max_value_error = 0.0;
    double max_differential_error = 0.0;
    double c1_error = 0.0;
    bool bound_applicable = false; // support-diameter hint present
    bool bound_satisfied = true;   // |f_eps - F| <= hint * epsilon on all samples
    std::vector<double> sample_value_errors;
};

struct EpsilonResult {
    std::function<TangentField(const PhaseSection&)> field; // X^eps
    Functional f_eps;
    EpsilonReport report;
};

/// Almost-Hamiltonian approximation: perturbs the exact Hamiltonian field so
/// that ||dF - Omega(X^eps, .)||_op < eps, then rebuilds f_eps by line
/// integration from the base section. epsilon = 0 reproduces F exactly.
EpsilonResult epsilon_approximation(const SymplecticContext& ctx, const Functional& f,
                                    const EpsilonOptions& opt,
                                    const PhaseSection& base);

} // namespace secsym
