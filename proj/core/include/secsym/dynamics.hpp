#pragma once

#include "secsym/observables.hpp"
#include "secsym/symform.hpp"

#include <string>
#include <vector>

namespace secsym {

/// Klein-Gordon field on a symplectic context with SPD fiber:
///   H(gamma) = 1/2 Sum_p w [v.Bv + Sum_axes (Dq).B(Dq) + mass^2 q.Bq].
struct KGParams {
    SymplecticContext* ctx = nullptr;
    double mass = 0.0;
};

KGParams make_kg(SymplecticContext& ctx, double mass);

/// (mass^2 + Sum_axes D* D) q, componentwise over the fiber index.
Vec kg_force_operator(const KGParams& params, const Vec& q);

double kg_energy(const KGParams& params, const PhaseSection& gamma);
/// the energy as a Functional, with the analytic differential built from the
/// weighted adjoint of the difference operator
Functional kg_hamiltonian(const KGParams& params);

/// Leapfrog stability bound 2 / omega_max with
/// omega_max = sqrt(mass^2 + Sum_axes (1/h_ax)^2).
double stability_dt(const KGParams& params);

/// Discrete dispersion frequency of the Fourier mode with the given integer
/// wave numbers: sqrt(mass^2 + Sum_ax (sin(k h)/h)^2), k = 2 pi kappa / L.
double dispersion_frequency(const KGParams& params, const std::vector<int>& mode);

/// One kick-drift-kick step; exactly preserves the discrete form Omega.
void leapfrog_step(const KGParams& params, PhaseSection& gamma, double dt);

struct EvolveOptions {
    long record_every = 1;
    double instability_factor = 8.0; // abort when H grows past factor * max(|H0|, eps)
    std::vector<std::pair<std::string, Functional>> observables;
};

struct TrajectorySample {
    long step = 0;
    double time = 0.0;
    double energy = 0.0;
    std::vector<double> observables;
};

struct EvolveResult {
    PhaseSection state;
    std::vector<TrajectorySample> samples;
    bool aborted = false;
    std::string diagnostic; // set when aborted
    std::string warning;    // e.g. dt above the stability bound (reported, not clamped)
};

EvolveResult evolve(const KGParams& params, const PhaseSection& initial, double dt, long steps,
                    const EvolveOptions& opt = {});

} // namespace secsym
