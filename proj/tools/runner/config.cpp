#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace secsym::runner {

namespace {

const std::set<std::string> kExperiments = {"ccr",        "closedness", "exactness",
                                            "lemma2",     "reconstruct", "ed-compare",
                                            "evolve",     "nondegeneracy"};

void check_known_keys(const toml::Table& table, const std::set<std::string>& allowed,
                      const std::string& where) {
    for (const auto& [key, value] : table.entries())
        if (!allowed.count(key))
            throw ConfigError(value.line, "unknown key '" + key + "' in " + where);
}

} // namespace

Grid ExperimentConfig::make_grid() const {
    Boundary bc;
    if (grid_boundary == "periodic")
        bc = Boundary::periodic;
    else if (grid_boundary == "dirichlet")
        bc = Boundary::dirichlet;
    else
        throw ConfigError("grid.boundary must be \"periodic\" or \"dirichlet\", got \"" +
                          grid_boundary + "\"");
    try {
        return Grid(grid_dim, grid_shape, grid_extents, bc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[grid] ") + e.what());
    }
}

FiberModel ExperimentConfig::make_fiber() const {
    const int m = fiber_m;
    Mat b;
    if (fiber_b.empty()) {
        b = Mat::Identity(m, m);
    } else {
        if (fiber_b.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m))
            throw ConfigError("fiber.B must have m*m row-major entries");
        b.resize(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                b(i, j) = fiber_b[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                                  static_cast<std::size_t>(j)];
    }
    try {
        FiberModel fiber(std::move(b));
        if (fiber_spd_expected && !fiber.positive_definite())
            throw ConfigError("fiber.spd = true but B is not positive definite");
        return fiber;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[fiber] ") + e.what());
    }
}

SymplecticContext ExperimentConfig::make_context() const {
    return SymplecticContext{make_grid(), make_fiber()};
}

ExperimentConfig config_from_document(const toml::Document& doc, const std::string& experiment) {
    if (!kExperiments.count(experiment))
        throw ConfigError("unknown experiment '" + experiment + "'");

    ExperimentConfig cfg;
    cfg.experiment = experiment;

    check_known_keys(doc.root, {"seed"}, "the top level");
    if (const toml::Value* seed = doc.root.find("seed")) {
        const std::int64_t s = seed->as_int();
        if (s < 0) throw ConfigError(seed->line, "seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(s);
        cfg.seed_set = true;
    }

    // every experiment needs the grid; ed-compare and evolve use it directly
    if (!doc.has_section("grid")) throw ConfigError("missing [grid] section");
    const toml::Table& grid = doc.section("grid");
    check_known_keys(grid, {"dim", "shape", "extents", "boundary"}, "[grid]");
    cfg.grid_dim = static_cast<int>(grid.at("dim").as_int());
    for (std::int64_t n : grid.at("shape").as_int_array()) cfg.grid_shape.push_back(static_cast<int>(n));
    for (double L : grid.at("extents").as_float_array()) cfg.grid_extents.push_back(L);
    cfg.grid_boundary = grid.get_string("boundary", "periodic");

    const toml::Table& fiber = doc.section("fiber");
    check_known_keys(fiber, {"m", "B", "spd"}, "[fiber]");
    cfg.fiber_m = static_cast<int>(fiber.get_int("m", 1));
    if (const toml::Value* b = fiber.find("B")) cfg.fiber_b = b->as_float_array();
    cfg.fiber_spd_expected = fiber.get_bool("spd", false);

    // the experiment's own table is passed through, validated by the experiment
    for (const auto& [name, table] : doc.sections) {
        if (name == "grid" || name == "fiber") continue;
        if (name != experiment)
            throw ConfigError("unexpected table [" + name + "] (running experiment '" +
                              experiment + "')");
        cfg.params = table;
    }

    // evolve is fully deterministic; everything else draws random inputs
    const bool randomized = experiment != "evolve";
    if (randomized && !cfg.seed_set)
        throw ConfigError("seed is required for experiment '" + experiment + "'");
    if (!cfg.seed_set) cfg.seed = 0;

    return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::string& experiment) {
    return config_from_document(toml::parse_file(path), experiment);
}

std::vector<ScalarField> load_fields_csv(const std::string& path, std::size_t expected_rows) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open CSV file '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw ConfigError("empty CSV file '" + path + "'");
    std::size_t cols = std::count(header.begin(), header.end(), ',') + 1;

    std::vector<std::vector<double>> columns(cols);
    std::string line;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(row, cell, ',')) {
            if (c >= cols) throw ConfigError(lineno, "too many columns in CSV row");
            try {
                columns[c].push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError(lineno, "cannot parse CSV cell '" + cell + "'");
            }
            ++c;
        }
        if (c != cols) throw ConfigError(lineno, "expected " + std::to_string(cols) + " columns");
    }
    std::vector<ScalarField> out;
    for (auto& col : columns) {
        if (col.size() != expected_rows)
            throw ConfigError("CSV column length " + std::to_string(col.size()) +
                              " does not match the grid (" + std::to_string(expected_rows) +
                              " nodes)");
        ScalarField f(static_cast<Index>(col.size()));
        for (std::size_t i = 0; i < col.size(); ++i) f[static_cast<Index>(i)] = col[i];
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace secsym::runner
