#include "runner/config.hpp"
#include "runner/experiments.hpp"
#include "runner/report.hpp"
#include "runner/toml.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace secsym;
using namespace secsym::runner;

namespace {

const char* kBasicConfig = R"(
seed = 42

[grid]
dim = 1
shape = [16]
extents = [1.0]
boundary = "periodic"

[fiber]
m = 2
B = [1.0, 0.0,
     0.0, 1.0]
spd = true

[ccr]
pairs = 5
)";

} // namespace

TEST_CASE("toml: scalars, arrays, comments, sections") {
    const auto doc = toml::parse(R"(
# top comment
count = 3
rate = 2.5e-1    # inline comment
label = "hello world"
flag = true
values = [1.0, 2.0,
          3.0]

[section]
nested = -7
)");
    CHECK(doc.root.at("count").as_int() == 3);
    CHECK(doc.root.at("rate").as_float() == doctest::Approx(0.25));
    CHECK(doc.root.at("label").as_string() == "hello world");
    CHECK(doc.root.at("flag").as_bool());
    CHECK(doc.root.at("values").as_float_array() == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(doc.section("section").at("nested").as_int() == -7);
    CHECK_FALSE(doc.has_section("absent"));
}

TEST_CASE("toml: errors carry line numbers") {
    auto expect_error = [](const char* text, const char* fragment) {
        try {
            toml::parse(text);
            FAIL_CHECK("expected ConfigError for: " << text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error("key 3", "expected '='");
    expect_error("key = ", "missing value");
    expect_error("key = [1, \"a\"]", "homogeneous");
    expect_error("key = 1\nkey = 2", "duplicate key");
    expect_error("x = 99999999999999999999999", "out of range");
    expect_error("x = zzz", "cannot parse value");
    expect_error("x = \"unterminated", "unterminated string");
    expect_error("x = 1 2", "unexpected trailing text");

    try {
        toml::parse("ok = 1\nbad = oops\n");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("config: validation catches the right problems") {
    const auto doc = toml::parse(kBasicConfig);
    const ExperimentConfig cfg = config_from_document(doc, "ccr");
    CHECK(cfg.seed == 42);
    CHECK(cfg.make_grid().nodes() == 16);
    CHECK(cfg.make_fiber().dim() == 2);
    CHECK(cfg.params.get_int("pairs", 0) == 5);

    CHECK_THROWS_AS(config_from_document(doc, "unknown-thing"), ConfigError);
    CHECK_THROWS_AS(config_from_document(toml::parse("seed = 1"), "ccr"), ConfigError);

    // randomized experiments demand a seed
    const auto no_seed = toml::parse(R"(
[grid]
dim = 1
shape = [8]
extents = [1.0]
)");
    CHECK_THROWS_AS(config_from_document(no_seed, "ccr"), ConfigError);

    // unknown keys are rejected with their location
    const auto bad_key = toml::parse(R"(
seed = 1
[grid]
dim = 1
shape = [8]
extents = [1.0]
spacing = 0.5
)");
    try {
        config_from_document(bad_key, "ccr");
        FAIL_CHECK("unknown key accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("spacing") != std::string::npos);
    }

    // a table for a different experiment is a usage error
    const auto wrong_table = toml::parse(R"(
seed = 1
[grid]
dim = 1
shape = [8]
extents = [1.0]
[evolve]
steps = 10
)");
    CHECK_THROWS_AS(config_from_document(wrong_table, "ccr"), ConfigError);
}

TEST_CASE("experiments: ccr and nondegeneracy pass on a sane config") {
    const ExperimentConfig cfg = config_from_document(toml::parse(kBasicConfig), "ccr");
    const ExperimentResult r = run_ccr(cfg);
    CHECK(r.pass);
    CHECK(r.report["results"]["identity_reference"].get<bool>());
    CHECK(r.report["results"]["max_rel_error"].get<double>() <= 1e-12);
    CHECK(r.csv_files.count("ccr_pairs.csv") == 1);

    ExperimentConfig nd = cfg;
    nd.experiment = "nondegeneracy";
    nd.params = toml::Table{};
    const ExperimentResult rn = run_nondegeneracy(nd);
    CHECK(rn.pass);
}

TEST_CASE("experiments: reports are byte-identical for a fixed seed") {
    const ExperimentConfig cfg = config_from_document(toml::parse(kBasicConfig), "ccr");
    const ExperimentResult a = run_ccr(cfg);
    const ExperimentResult b = run_ccr(cfg);
    CHECK(a.report.dump(2) == b.report.dump(2));
    CHECK(a.csv_files.at("ccr_pairs.csv") == b.csv_files.at("ccr_pairs.csv"));

    ExperimentConfig other = cfg;
    other.seed = 43;
    const ExperimentResult c = run_ccr(other);
    CHECK(a.report.dump(2) != c.report.dump(2));
}

TEST_CASE("experiments: smearing fields from CSV") {
    const auto dir = std::filesystem::temp_directory_path() / "secsym_test_csv";
    std::filesystem::create_directories(dir);
    const auto csv = dir / "fields.csv";
    {
        std::ofstream out(csv);
        out << "f0,g0\n";
        for (int i = 0; i < 16; ++i) out << 1.0 + 0.1 * i << "," << 2.0 - 0.05 * i << "\n";
    }
    const auto fields = load_fields_csv(csv.string(), 16);
    REQUIRE(fields.size() == 2);
    CHECK(fields[0][0] == doctest::Approx(1.0));
    CHECK(fields[1][15] == doctest::Approx(2.0 - 0.75));
    CHECK_THROWS_AS(load_fields_csv(csv.string(), 8), ConfigError);

    auto doc = toml::parse(std::string(kBasicConfig));
    ExperimentConfig cfg = config_from_document(doc, "ccr");
    toml::Table params;
    params.insert("smearing_csv", toml::Value{csv.string(), 0}, 0);
    cfg.params = params;
    const ExperimentResult r = run_ccr(cfg);
    CHECK(r.pass);
    CHECK(r.report["results"]["pairs"].get<int>() == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("experiments: evolve demo reports drift and warnings") {
    const auto doc = toml::parse(R"(
[grid]
dim = 1
shape = [64]
extents = [1.0]

[fiber]
m = 1

[evolve]
steps = 400
drift_tol = 1.0e-4
)");
    const ExperimentConfig cfg = config_from_document(doc, "evolve");
    const ExperimentResult r = run_evolve(cfg);
    CHECK(r.pass);
    CHECK(r.report["results"]["energy_drift"].get<double>() <= 1e-4);
    CHECK(r.csv_files.count("evolve_trajectory.csv") == 1);

    // dt above the stability bound: warning recorded, run aborts, checks fail
    auto hot_doc = toml::parse(R"(
[grid]
dim = 1
shape = [64]
extents = [1.0]

[fiber]
m = 1

[evolve]
dt_factor = 1.05
steps = 4000
record_every = 10
)");
    const ExperimentConfig hot = config_from_document(hot_doc, "evolve");
    const ExperimentResult rh = run_evolve(hot);
    CHECK_FALSE(rh.pass);
    CHECK_FALSE(rh.report["results"]["warning"].get<std::string>().empty());
    CHECK(rh.report["results"]["aborted"].get<bool>());
}

TEST_CASE("experiments: ed-compare emits the agreed report fields") {
    // randomized (draws phase-point pairs): the seed is mandatory
    const auto unseeded = toml::parse("[grid]\ndim = 1\nshape = [16]\nextents = [1.0]\n");
    CHECK_THROWS_AS(config_from_document(unseeded, "ed-compare"), ConfigError);

    const auto doc = toml::parse(R"(
seed = 7

[grid]
dim = 1
shape = [16]
extents = [1.0]
)");
    const ExperimentConfig cfg = config_from_document(doc, "ed-compare");
    const ExperimentResult r = run_ed_compare(cfg);
    CHECK(r.pass);
    CHECK(r.report["results"].contains("rank_wald"));
    CHECK(r.report["results"].contains("rank_mueller"));
    CHECK(r.report["results"].contains("dim_kernel_wald"));
    CHECK(r.report["results"].contains("decomposition_residual"));
    CHECK(r.report["results"]["dim_kernel_wald"].get<int>() >= 16);
    CHECK(r.report["results"]["dim_kernel_mueller"].get<int>() == 0);
}

TEST_CASE("csv formatting is deterministic and round-trips") {
    const std::string table = csv_table({"a", "b"}, {{1.0 / 3.0, 2e-17}, {-0.0, 5.0}});
    CHECK(table == csv_table({"a", "b"}, {{1.0 / 3.0, 2e-17}, {-0.0, 5.0}}));
    CHECK(table.find("0.33333333333333331") != std::string::npos);
}
