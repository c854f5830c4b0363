#pragma once

#include "toml.hpp"

#include "secsym/fiber.hpp"
#include "secsym/grid.hpp"
#include "secsym/symform.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace secsym::runner {

/// Validated experiment inputs. Every randomized experiment requires a seed;
/// reports echo exactly these fields (never the CLI thread count or paths) so
/// repeated runs stay byte-identical.
struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    bool seed_set = false;

    // [grid]
    int grid_dim = 1;
    std::vector<int> grid_shape;
    std::vector<double> grid_extents;
    std::string grid_boundary = "periodic";

    // [fiber]
    int fiber_m = 1;
    std::vector<double> fiber_b; // row-major m x m; empty = identity
    bool fiber_spd_expected = false;

    toml::Table params; // the experiment's own table

    Grid make_grid() const;
    FiberModel make_fiber() const;
    SymplecticContext make_context() const;
};

/// Parse + validate a config file for the given experiment. Throws
/// ConfigError with a line/field diagnostic on any problem.
ExperimentConfig load_config(const std::string& path, const std::string& experiment);
ExperimentConfig config_from_document(const toml::Document& doc, const std::string& experiment);

/// Columns of a CSV file (header row required) as scalar fields.
std::vector<ScalarField> load_fields_csv(const std::string& path, std::size_t expected_rows);

} // namespace secsym::runner
