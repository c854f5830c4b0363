#pragma once

#include "secsym/grid.hpp"
#include "secsym/types.hpp"

namespace secsym {

/// Setup for the electrodynamics form comparison: a periodic spatial grid of
/// dimension d, spacetime indices a, b in 0..d, and a diagonal metric eta
/// (default Minkowski diag(-1, +1, ...)) raising the b index. The normal
/// direction is time: only the a = 0 row of d sigma^a carries weights.
struct EDConfig {
    Grid grid;
    Vec eta; // d+1 diagonal entries

    int components() const { return grid.dim() + 1; }
};

EDConfig make_ed_config(Grid grid, Vec eta = Vec());

/// Per-node potentials Phi_a and velocities Phidot_a, a = 0..d, node-major.
struct EDPhasePoint {
    int n = 0; // components per node
    Vec potential, velocity;

    static EDPhasePoint zero(int components, std::size_t nodes);
    std::size_t nodes() const { return n > 0 ? static_cast<std::size_t>(potential.size()) / n : 0; }
    double& phi(std::size_t p, int a) { return potential[static_cast<Index>(p) * n + a]; }
    double phi(std::size_t p, int a) const { return potential[static_cast<Index>(p) * n + a]; }
    double& phidot(std::size_t p, int a) { return velocity[static_cast<Index>(p) * n + a]; }
    double phidot(std::size_t p, int a) const { return velocity[static_cast<Index>(p) * n + a]; }
};

/// F_0b = 2 (Phidot_b - partial_b Phi_0) for b >= 1, F_00 = 0; per-node rows.
Vec field_strength_time_row(const EDConfig& cfg, const EDPhasePoint& psi);

/// (1/2) Int Sum_b [Phi^b F_0b(Psi) - Psi^b F_0b(Phi)]; the pure-velocity
/// time components never enter (F_00 = 0), which is the degeneracy.
double wald_form(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y);

/// (1/2) Int Sum_b [Phi^b Psidot_b - Psi^b Phidot_b], all b — the pointwise
/// (tensorial-in-the-normal) form; nondegenerate since eta is.
double mueller_form(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y);

/// Int Sum_{b>=1} [Phi^b partial_b Psi_0 - Psi^b partial_b Phi_0].
double spatial_term(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y);

/// Int eta^00 (Phi_0 Psidot_0 - Psi_0 Phidot_0): the b = 0 pairing present in
/// the pointwise form but absent from the Wald form (F_00 = 0).
double normal_compensation(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y);

/// |wald - (2 mueller - spatial - normal_compensation)|: the exact discrete
/// decomposition residual.
double decomposition_residual(const EDConfig& cfg, const EDPhasePoint& x, const EDPhasePoint& y);

enum class EDFormKind { wald, mueller };

/// Dense antisymmetric matrix over per-node (Phi_a, Phidot_a) coordinates.
Mat assemble_ed(const EDConfig& cfg, EDFormKind kind, std::size_t max_dim = 16384);

struct EDKernelReport {
    int dim = 0;
    int rank_wald = 0, rank_mueller = 0;
    int kernel_wald = 0, kernel_mueller = 0;
    double sigma_max_wald = 0.0, sigma_max_mueller = 0.0;
    double sigma_min_mueller = 0.0;
    Mat kernel_basis_wald; // columns span the numerical kernel
};

/// SVD rank/kernel analysis of both assembled forms; singular values below
/// rel_threshold * sigma_max count as zero.
EDKernelReport kernel_analysis(const EDConfig& cfg, double rel_threshold = 1e-10,
                               std::size_t max_dim = 16384);

} // namespace secsym
