#include "experiments.hpp"

#include "secsym/dynamics.hpp"
#include "secsym/electrodynamics.hpp"
#include "secsym/observables.hpp"
#include "secsym/sampling.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace secsym::runner {

namespace {

Json value_to_json(const toml::Value& v) {
    if (std::holds_alternative<std::int64_t>(v.v)) return std::get<std::int64_t>(v.v);
    if (std::holds_alternative<double>(v.v)) return std::get<double>(v.v);
    if (std::holds_alternative<bool>(v.v)) return std::get<bool>(v.v);
    if (std::holds_alternative<std::string>(v.v)) return std::get<std::string>(v.v);
    Json arr = Json::array();
    for (const auto& e : v.as_array()) arr.push_back(value_to_json(e));
    return arr;
}

ExperimentResult begin_result(const ExperimentConfig& cfg) {
    ExperimentResult result;
    result.report["experiment"] = cfg.experiment;
    Json inputs;
    inputs["seed"] = cfg.seed;
    inputs["grid"] = {{"dim", cfg.grid_dim},
                      {"shape", cfg.grid_shape},
                      {"extents", cfg.grid_extents},
                      {"boundary", cfg.grid_boundary}};
    inputs["fiber"] = {{"m", cfg.fiber_m},
                       {"B", cfg.fiber_b.empty() ? Json("identity") : Json(cfg.fiber_b)},
                       {"spd", cfg.fiber_spd_expected}};
    Json params = Json::object();
    for (const auto& [key, value] : cfg.params.entries()) params[key] = value_to_json(value);
    inputs["params"] = std::move(params);
    result.report["inputs"] = std::move(inputs);
    result.report["checks"] = Json::array();
    return result;
}

void finish_result(ExperimentResult& result) { result.report["pass"] = result.pass; }

} // namespace

ExperimentResult run_ccr(const ExperimentConfig& cfg) {
    ExperimentResult result = begin_result(cfg);
    const SymplecticContext ctx = cfg.make_context();
    const int pairs = static_cast<int>(cfg.params.get_int("pairs", 20));
    const double tol_rel = cfg.params.get_float("tol_rel", 1e-10);
    const double tol_abs = cfg.params.get_float("tol_abs", 1e-12);
    const std::string csv_path = cfg.params.get_string("smearing_csv", "");
    Rng rng(cfg.seed);

    const bool identity_b = ctx.fiber.bilinear().isIdentity(0.0);
    const Mat& binv = ctx.fiber.inverse();
    const int m = ctx.fiber.dim();
    const PhaseSection gamma = random_section(ctx.grid, m, rng);

    std::vector<ScalarField> table;
    if (!csv_path.empty()) table = load_fields_csv(csv_path, ctx.grid.nodes());
    if (!table.empty() && table.size() % 2 != 0)
        throw ConfigError("smearing_csv must hold an even number of columns (f, g pairs)");

    double max_rel = 0.0, max_phiphi = 0.0, max_pipi = 0.0;
    std::vector<std::vector<double>> rows;
    const int total = table.empty() ? pairs : static_cast<int>(table.size() / 2);
    for (int k = 0; k < total; ++k) {
        const ScalarField f = table.empty() ? random_smooth_field(ctx.grid, rng, 3, 1.0)
                                            : table[static_cast<std::size_t>(2 * k)];
        const ScalarField g = table.empty() ? random_smooth_field(ctx.grid, rng, 3, 1.0)
                                            : table[static_cast<std::size_t>(2 * k + 1)];
        const int mu = rng.uniform_int(0, m - 1);
        const int nu = rng.uniform_int(0, m - 1);
        const Functional phi = smeared_position(ctx, f, mu);
        const Functional pi = smeared_momentum(ctx, g, nu);

        const double bracket = poisson(ctx, phi, pi, gamma);
        const double smear = ctx.grid.quadrature(f.cwiseProduct(g));
        const double expected = binv(mu, nu) * smear;
        const double scale = std::max(std::abs(smear), 1e-30);
        const double rel = std::abs(bracket - expected) / scale;
        max_rel = std::max(max_rel, rel);

        const double phiphi = std::abs(poisson(ctx, phi, smeared_position(ctx, g, nu), gamma));
        const double pipi = std::abs(poisson(ctx, smeared_momentum(ctx, f, mu), pi, gamma));
        max_phiphi = std::max(max_phiphi, phiphi);
        max_pipi = std::max(max_pipi, pipi);

        rows.push_back({static_cast<double>(k), static_cast<double>(mu), static_cast<double>(nu),
                        bracket, expected, rel, phiphi, pipi});
    }

    result.report["results"] = {{"pairs", total},
                                {"identity_reference", identity_b},
                                {"max_rel_error", max_rel},
                                {"max_abs_phiphi", max_phiphi},
                                {"max_abs_pipi", max_pipi}};
    add_residual_check(result, "commutation_relative_error", max_rel, tol_rel);
    add_residual_check(result, "phi_phi_bracket", max_phiphi, tol_abs);
    add_residual_check(result, "pi_pi_bracket", max_pipi, tol_abs);
    result.csv_files["ccr_pairs.csv"] = csv_table(
        {"pair", "mu", "nu", "bracket", "expected", "rel_error", "phi_phi", "pi_pi"}, rows);
    finish_result(result);
    return result;
}

ExperimentResult run_closedness(const ExperimentConfig& cfg) {
    ExperimentResult result = begin_result(cfg);
    const SymplecticContext ctx = cfg.make_context();
    const int triples = static_cast<int>(cfg.params.get_int("triples", 10));
    const double bound_step = cfg.params.get_float("bound_step", 1e-4);
    const double tolerance = cfg.params.get_float("tolerance", 1e-6);
    const double ratio_lo = cfg.params.get_float("ratio_lo", 3.5);
    const double ratio_hi = cfg.params.get_float("ratio_hi", 4.5);
    const double field_scale = cfg.params.get_float("field_scale", 0.3);
    // any registry name works; the decay check needs nonvanishing third
    // derivatives, hence the polynomial default
    const std::string field_kind = cfg.params.get_string("field", "polynomial");
    std::vector<double> steps = {1e-3, 5e-4, 2.5e-4};
    if (const toml::Value* v = cfg.params.find("fd_steps")) steps = v->as_float_array();
    Rng rng(cfg.seed);

    const auto omega = omega_two_form(ctx);
    const int m = ctx.fiber.dim();
    double worst_residual = 0.0, worst_ratio_lo = 1e300, worst_ratio_hi = 0.0;
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < triples; ++k) {
        const VerticalField x = named_vertical(field_kind, m, rng, field_scale);
        const VerticalField y = named_vertical(field_kind, m, rng, field_scale);
        const VerticalField z = named_vertical(field_kind, m, rng, field_scale);
        const PhaseSection gamma = random_section(ctx.grid, m, rng, 0.5);

        const double bound_res = std::abs(d_two_form(ctx, omega, x, y, z, gamma, bound_step));
        worst_residual = std::max(worst_residual, bound_res);

        std::vector<double> row{static_cast<double>(k), bound_res};
        double prev = -1.0;
        for (double s : steps) {
            const double r = std::abs(d_two_form(ctx, omega, x, y, z, gamma, s));
            row.push_back(r);
            if (prev >= 0.0 && r > 0.0) {
                const double ratio = prev / r;
                worst_ratio_lo = std::min(worst_ratio_lo, ratio);
                worst_ratio_hi = std::max(worst_ratio_hi, ratio);
            }
            prev = r;
        }
        rows.push_back(std::move(row));
    }

    result.report["results"] = {{"triples", triples},
                                {"bound_step", bound_step},
                                {"max_residual", worst_residual},
                                {"fd_steps", steps},
                                {"min_halving_ratio", worst_ratio_lo},
                                {"max_halving_ratio", worst_ratio_hi}};
    add_residual_check(result, "d_omega_residual", worst_residual, tolerance);
    add_check(result, "halving_ratio_low", worst_ratio_lo, ratio_lo, worst_ratio_lo >= ratio_lo);
    add_check(result, "halving_ratio_high", worst_ratio_hi, ratio_hi, worst_ratio_hi <= ratio_hi);
    std::vector<std::string> headers{"triple", "residual_at_bound_step"};
    for (double s : steps) headers.push_back("residual_step_" + format_double(s));
    result.csv_files["closedness_residuals.csv"] = csv_table(headers, rows);
    finish_result(result);
    return result;
}

ExperimentResult run_exactness(const ExperimentConfig& cfg) {
    ExperimentResult result = begin_result(cfg);
    const SymplecticContext ctx = cfg.make_context();
    const int count = static_cast<int>(cfg.params.get_int("count", 10));
    const double fd_step = cfg.params.get_float("fd_step", 1e-4);
    const double tolerance = cfg.params.get_float("tolerance", 1e-8);
    Rng rng(cfg.seed);

    const auto theta = theta_one_form(ctx);
    const int m = ctx.fiber.dim();
    double worst = 0.0;
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < count; ++k) {
        const VerticalField x = named_vertical("constant", m, rng, 1.0);
        const VerticalField y = named_vertical("constant", m, rng, 1.0);
        const PhaseSection gamma = random_section(ctx.grid, m, rng);
        const double dtheta = d_one_form(ctx, theta, x, y, gamma, fd_step);
        const double omega =
            omega_eval(ctx, hat_of_vertical(x, gamma), hat_of_vertical(y, gamma));
        const double residual = std::abs(dtheta - omega);
        worst = std::max(worst, residual);
        rows.push_back({static_cast<double>(k), dtheta, omega, residual});
    }

    result.report["results"] = {{"count", count}, {"fd_step", fd_step}, {"max_residual", worst}};
    add_residual_check(result, "d_theta_vs_omega", worst, tolerance);
    result.csv_files["exactness.csv"] =
        csv_table({"trial", "d_theta", "omega", "residual"}, rows);
    finish_result(result);
    return result;
}

ExperimentResult run_lemma2(const ExperimentConfig& cfg) {
    ExperimentResult result = begin_result(cfg);
    const SymplecticContext ctx = cfg.make_context();
    const int count = static_cast<int>(cfg.params.get_int("count", 10));
    const double fd_step = cfg.params.get_float("fd_step", 1e-5);
    const double tol_pullback = cfg.params.get_float("tol_pullback", 1e-8);
    const double constant_t = cfg.params.get_float("constant_t", 1e-2);
    const double tol_constant = cfg.params.get_float("tol_constant", 1e-12);
    const double field_scale = cfg.params.get_float("field_scale", 0.2);
    const double ratio_lo = cfg.params.get_float("ratio_lo", 1.5);
    const double ratio_hi = cfg.params.get_float("ratio_hi", 2.5);
    std::vector<double> times = {1e-2, 5e-3, 2.5e-3};
    if (const toml::Value* v = cfg.params.find("times")) times = v->as_float_array();
    Rng rng(cfg.seed);
    const int m = ctx.fiber.dim();

    // (i) pullback: hat equals the flow derivative
    double worst_pullback = 0.0;
    for (int k = 0; k < count; ++k) {
        const VerticalField v =
            named_vertical(k % 2 ? "linear" : "polynomial", m, rng, field_scale * 2.0);
        const PhaseSection gamma = random_section(ctx.grid, m, rng, 0.7);
        const TangentField analytic = hat_of_vertical(v, gamma);
        const TangentField fd = (1.0 / (2.0 * fd_step)) * section_delta(
                                    tilde_flow(v, gamma, fd_step), tilde_flow(v, gamma, -fd_step));
        worst_pullback = std::max(worst_pullback, sup_norm(fd - analytic));
    }

    // (ii) bracket preservation: constants are flat, linear fields decay O(t)
    const VerticalField c1 =
        constant_vertical(m, rng.uniform_vec(m, -1, 1), rng.uniform_vec(m, -1, 1));
    const VerticalField c2 =
        constant_vertical(m, rng.uniform_vec(m, -1, 1), rng.uniform_vec(m, -1, 1));
    const PhaseSection gamma0 = random_section(ctx.grid, m, rng);
    const double const_residual = bracket_preservation_residual(c1, c2, gamma0, constant_t);

    double worst_lo = 1e300, worst_hi = 0.0, worst_first = 0.0;
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < count; ++k) {
        const VerticalField v = named_vertical("linear", m, rng, field_scale);
        const VerticalField w = named_vertical("linear", m, rng, field_scale);
        const PhaseSection gamma = random_section(ctx.grid, m, rng);
        std::vector<double> row{static_cast<double>(k)};
        double prev = -1.0;
        for (double t : times) {
            const double r = bracket_preservation_residual(v, w, gamma, t);
            row.push_back(r);
            if (prev >= 0.0 && r > 0.0) {
                const double ratio = prev / r;
                worst_lo = std::min(worst_lo, ratio);
                worst_hi = std::max(worst_hi, ratio);
            }
            prev = r;
        }
        worst_first = std::max(worst_first, row[1]);
        rows.push_back(std::move(row));
    }

    result.report["results"] = {{"count", count},
                                {"pullback_max_residual", worst_pullback},
                                {"constant_field_residual", const_residual},
                                {"times", times},
                                {"bracket_first_residual_max", worst_first},
                                {"min_decay_ratio", worst_lo},
                                {"max_decay_ratio", worst_hi}};
    add_residual_check(result, "pullback_identity", worst_pullback, tol_pullback);
    add_residual_check(result, "constant_fields_commute", const_residual, tol_constant);
    add_check(result, "bracket_decay_ratio_low", worst_lo, ratio_lo, worst_lo >= ratio_lo);
    add_check(result, "bracket_decay_ratio_high", worst_hi, ratio_hi, worst_hi <= ratio_hi);
    std::vector<std::string> headers{"trial"};
    for (double t : times) headers.push_back("residual_t_" + format_double(t));
    result.csv_files["lemma2_bracket.csv"] = csv_table(headers, rows);
    finish_result(result);
    return result;
}

ExperimentResult run_reconstruct(const ExperimentConfig& cfg) {
    ExperimentResult result = begin_result(cfg);
    const SymplecticContext ctx = cfg.make_context();
    const double eps0 = cfg.params.get_float("eps0", 1e-1);
    const int halvings = static_cast<int>(cfg.params.get_int("halvings", 4));
    const int samples = static_cast<int>(cfg.params.get_int("samples", 6));
    const int quad_order = static_cast<int>(cfg.params.get_int("quad_order", 8));
    const double diam = cfg.params.get_float("diam", 2.0);
    const double tol_exact = cfg.params.get_float("tol_exact", 1e-10);
    const double tol_loop = cfg.params.get_float("tol_loop", 1e-10);
    const std::string mode_name = cfg.params.get_string("mode", "noise");
    const PerturbationMode mode = perturbation_mode_from_string(mode_name);
    Rng rng(cfg.seed);
    const int m = ctx.fiber.dim();

    const ScalarField f = random_smooth_field(ctx.grid, rng, 3, 1.0);
    Functional phi = smeared_position(ctx, f, 0);
    phi.support_diameter = diam;
    const PhaseSection base = PhaseSection::zero(m, ctx.grid.nodes());

    // exact Hamiltonian field reconstructs the observable up to the base value
    const PhaseSection target = random_section(ctx.grid, m, rng);
    const auto exact_field = [&](const PhaseSection& s) { return hamiltonian_field(ctx, phi, s); };
    const double rec = reconstruct(ctx, exact_field, base, target, quad_order);
    const double exact_residual = std::abs(rec - (phi.value(target) - phi.value(base)));

    // closed polygonal loop of a quadratic Hamiltonian integrand
    const QuadraticFunctional q = random_quadratic(ctx, rng, 0.3);
    const auto qfield = [&](const PhaseSection& s) { return q.hamiltonian_field(ctx, s); };
    const PhaseSection g1 = random_section(ctx.grid, m, rng);
    const PhaseSection g2 = random_section(ctx.grid, m, rng);
    const double loop = reconstruct(ctx, qfield, base, g1, quad_order) +
                        reconstruct(ctx, qfield, g1, g2, quad_order) +
                        reconstruct(ctx, qfield, g2, base, quad_order);

    // epsilon sweep
    EpsilonOptions opt;
    opt.mode = mode;
    opt.sample_count = samples;
    opt.quad_order = quad_order;
    opt.seed = cfg.seed + 1;
    bool monotone = true, bound_ok = true;
    double prev_c1 = -1.0;
    std::vector<std::vector<double>> rows;
    for (int k = 0; k <= halvings; ++k) {
        opt.epsilon = eps0 / static_cast<double>(1 << k);
        const EpsilonResult r = epsilon_approximation(ctx, phi, opt, base);
        if (prev_c1 >= 0.0 && r.report.c1_error > prev_c1) monotone = false;
        prev_c1 = r.report.c1_error;
        bound_ok = bound_ok && r.report.bound_satisfied;
        rows.push_back({opt.epsilon, r.report.opnorm_residual, r.report.max_value_error,
                        r.report.max_differential_error, r.report.c1_error});
    }

    result.report["results"] = {{"mode", mode_name},
                                {"exact_reconstruction_residual", exact_residual},
                                {"loop_integral", loop},
                                {"epsilon_rows", static_cast<int>(rows.size())},
                                {"c1_monotone_decay", monotone},
                                {"diameter_bound_satisfied", bound_ok}};
    add_residual_check(result, "exact_reconstruction", exact_residual, tol_exact);
    add_residual_check(result, "closed_loop_integral", loop, tol_loop);
    add_check(result, "c1_monotone_decay", monotone ? 1.0 : 0.0, 1.0, monotone);
    add_check(result, "diameter_bound", bound_ok ? 1.0 : 0.0, 1.0, bound_ok);
    result.csv_files["reconstruct_sweep.csv"] = csv_table(
        {"epsilon", "opnorm_residual", "max_value_error", "max_diff_error", "c1_error"}, rows);
    finish_result(result);
    return result;
}

ExperimentResult run_ed_compare(const ExperimentConfig& cfg) {
    ExperimentResult result = begin_result(cfg);
    Vec eta;
    if (const toml::Value* v = cfg.params.find("eta")) {
        const auto arr = v->as_float_array();
        eta.resize(static_cast<Index>(arr.size()));
        for (std::size_t i = 0; i < arr.size(); ++i) eta[static_cast<Index>(i)] = arr[i];
    }
    const EDConfig ed = make_ed_config(cfg.make_grid(), eta);
    const double threshold = cfg.params.get_float("threshold", 1e-10);
    const int pairs = static_cast<int>(cfg.params.get_int("pairs", 20));
    const double tol_decomp = cfg.params.get_float("tol_decomp", 1e-12);
    Rng rng(cfg.seed);

    const EDKernelReport kernels = kernel_analysis(ed, threshold);

    double worst_decomp = 0.0, worst_normal = 0.0;
    for (int k = 0; k < pairs; ++k) {
        EDPhasePoint x = EDPhasePoint::zero(ed.components(), ed.grid.nodes());
        EDPhasePoint y = EDPhasePoint::zero(ed.components(), ed.grid.nodes());
        x.potential = rng.uniform_vec(x.potential.size(), -1, 1);
        x.velocity = rng.uniform_vec(x.velocity.size(), -1, 1);
        y.potential = rng.uniform_vec(y.potential.size(), -1, 1);
        y.velocity = rng.uniform_vec(y.velocity.size(), -1, 1);
        worst_decomp = std::max(worst_decomp, decomposition_residual(ed, x, y));
        worst_normal = std::max(worst_normal, std::abs(normal_compensation(ed, x, y)));
    }

    const std::size_t n = ed.grid.nodes();
    result.report["results"] = {
        {"dim", kernels.dim},
        {"rank_wald", kernels.rank_wald},
        {"rank_mueller", kernels.rank_mueller},
        {"dim_kernel_wald", kernels.kernel_wald},
        {"dim_kernel_mueller", kernels.kernel_mueller},
        {"sigma_min_mueller", kernels.sigma_min_mueller},
        {"decomposition_residual", worst_decomp},
        {"normal_compensation_magnitude", worst_normal}};
    add_check(result, "wald_kernel_at_least_n", kernels.kernel_wald,
              static_cast<double>(n), kernels.kernel_wald >= static_cast<int>(n));
    add_check(result, "mueller_kernel_trivial", kernels.kernel_mueller, 0.0,
              kernels.kernel_mueller == 0);
    add_residual_check(result, "decomposition_residual", worst_decomp, tol_decomp);
    finish_result(result);
    return result;
}

ExperimentResult run_evolve(const ExperimentConfig& cfg) {
    ExperimentResult result = begin_result(cfg);
    SymplecticContext ctx = cfg.make_context();
    const double mass = cfg.params.get_float("mass", 0.0);
    const KGParams params = make_kg(ctx, mass);
    const double bound = stability_dt(params);
    const double dt = cfg.params.contains("dt")
                          ? cfg.params.get_float("dt", 0.0)
                          : cfg.params.get_float("dt_factor", 0.1) * bound;
    const long steps = cfg.params.get_int("steps", 10000);
    const long record_every = cfg.params.get_int("record_every", 1);
    const int kappa = static_cast<int>(cfg.params.get_int("mode", 1));
    const double amplitude = cfg.params.get_float("amplitude", 1.0);
    const double drift_tol = cfg.params.get_float("drift_tol", 1e-6);
    const int m = ctx.fiber.dim();

    PhaseSection initial = PhaseSection::zero(m, ctx.grid.nodes());
    const ScalarField probe = sample_field(ctx.grid, [&](double x, double) {
        return std::cos(2.0 * std::numbers::pi * kappa * x / ctx.grid.length(0));
    });
    for (std::size_t p = 0; p < ctx.grid.nodes(); ++p)
        initial.q_node(p)[0] = amplitude * probe[static_cast<Index>(p)];

    EvolveOptions opt;
    opt.record_every = record_every;
    opt.observables.emplace_back("phi", smeared_position(ctx, probe, 0));
    opt.observables.emplace_back("pi", smeared_momentum(ctx, probe, 0));
    const EvolveResult traj = evolve(params, initial, dt, steps, opt);

    const double h0 = traj.samples.front().energy;
    double drift = 0.0;
    std::vector<std::vector<double>> rows;
    for (const auto& s : traj.samples) {
        drift = std::max(drift, std::abs(s.energy - h0) / std::max(std::abs(h0), 1e-300));
        rows.push_back({static_cast<double>(s.step), s.time, s.energy, s.observables[0],
                        s.observables[1]});
    }

    result.report["results"] = {{"mass", mass},
                                {"dt", dt},
                                {"stability_bound", bound},
                                {"steps", steps},
                                {"initial_mode", kappa},
                                {"energy_drift", drift},
                                {"aborted", traj.aborted},
                                {"diagnostic", traj.diagnostic},
                                {"warning", traj.warning}};
    add_check(result, "completed", traj.aborted ? 0.0 : 1.0, 1.0, !traj.aborted);
    add_residual_check(result, "relative_energy_drift", drift, drift_tol);
    result.csv_files["evolve_trajectory.csv"] =
        csv_table({"step", "time", "energy", "phi", "pi"}, rows);
    finish_result(result);
    return result;
}

ExperimentResult run_nondegeneracy(const ExperimentConfig& cfg) {
    ExperimentResult result = begin_result(cfg);
    const SymplecticContext ctx = cfg.make_context();
    const int draws = static_cast<int>(cfg.params.get_int("random_b", 10));
    const bool indefinite = cfg.params.get_bool("include_indefinite", true);
    const double tol_rel = cfg.params.get_float("tol_rel", 1e-10);
    Rng rng(cfg.seed);

    double worst_rel = 0.0, smallest_sigma = 1e300;
    std::vector<std::vector<double>> rows;
    for (int k = 0; k <= draws; ++k) {
        // draw 0 is the configured fiber itself
        const FiberModel fiber =
            (k == 0) ? ctx.fiber
                     : FiberModel(random_symmetric_nondegenerate(
                           rng, ctx.fiber.dim(), 0.4, 2.0, indefinite));
        const SymplecticContext local{ctx.grid, fiber};
        const double formula = min_singular_value(local);
        Eigen::JacobiSVD<Mat> svd(Mat(assemble_matrix(local)));
        const double dense = svd.singularValues().minCoeff();
        const double rel = std::abs(formula - dense) / std::max(dense, 1e-300);
        worst_rel = std::max(worst_rel, rel);
        smallest_sigma = std::min(smallest_sigma, dense);
        rows.push_back({static_cast<double>(k), formula, dense, rel});
    }

    result.report["results"] = {{"draws", draws + 1},
                                {"max_rel_difference", worst_rel},
                                {"min_singular_value", smallest_sigma}};
    add_residual_check(result, "formula_vs_svd", worst_rel, tol_rel);
    add_check(result, "strictly_positive", smallest_sigma, 0.0, smallest_sigma > 0.0);
    result.csv_files["nondegeneracy.csv"] =
        csv_table({"draw", "formula", "dense_svd", "rel_difference"}, rows);
    finish_result(result);
    return result;
}

int run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    ExperimentResult result;
    if (cfg.experiment == "ccr")
        result = run_ccr(cfg);
    else if (cfg.experiment == "closedness")
        result = run_closedness(cfg);
    else if (cfg.experiment == "exactness")
        result = run_exactness(cfg);
    else if (cfg.experiment == "lemma2")
        result = run_lemma2(cfg);
    else if (cfg.experiment == "reconstruct")
        result = run_reconstruct(cfg);
    else if (cfg.experiment == "ed-compare")
        result = run_ed_compare(cfg);
    else if (cfg.experiment == "evolve")
        result = run_evolve(cfg);
    else if (cfg.experiment == "nondegeneracy")
        result = run_nondegeneracy(cfg);
    else
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");

    const std::string file_stem =
        cfg.experiment == "ed-compare" ? "ed_compare" : cfg.experiment;
    write_result(result, file_stem, out_dir);
    return result.pass ? 0 : 1;
}

} // namespace secsym::runner
