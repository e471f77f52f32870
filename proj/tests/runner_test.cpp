#include "qpurify/runner.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace qpurify;
using namespace qpurify::testing;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

RunConfig base_config() {
    RunConfig config;
    config.state = NamedState::h();
    config.xi_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    config.seed = 7;
    return config;
}

} // namespace

TEST_CASE("parse_grid: inclusive endpoints and validation") {
    const std::vector<double> grid = parse_grid("0:1:0.1");
    CHECK(grid.size() == 11);
    CHECK(grid.front() == doctest::Approx(0.0));
    CHECK(grid.back() == doctest::Approx(1.0));

    CHECK(parse_grid("0.2:1:0.1").size() == 9);
    CHECK(parse_grid("0.5:0.5:0.1").size() == 1);
    CHECK_THROWS_AS(parse_grid("1:0:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1:0"), std::invalid_argument);
}

TEST_CASE("ideal_point: symmetric case collapses to the single-xi closed forms") {
    for (double xi : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const IdealPoint pt = ideal_point(xi, xi);
        const GainPoint gp = gain_at(xi);
        CHECK(pt.xi == gp.xi);
        CHECK(pt.xi_p == gp.xi_p);
        CHECK(pt.eta == gp.eta);
        CHECK(pt.p == gp.p);
    }
}

TEST_CASE("run_ideal: full grid with empty simulated columns") {
    const std::vector<RunRecord> records = run_ideal(base_config());
    REQUIRE(records.size() == 11);
    CHECK(records.front().eta_ideal == doctest::Approx(4.0 / 3.0));
    CHECK(records.back().eta_ideal == doctest::Approx(1.0));
    CHECK(records.back().xi_p_ideal == doctest::Approx(1.0));
    CHECK(records.back().p_ideal == doctest::Approx(1.0));
    for (const RunRecord& rec : records) {
        CHECK(rec.eta_ideal * rec.p_ideal == doctest::Approx(1.0).epsilon(1e-14));
        CHECK_FALSE(rec.xi_hat.has_value());
        CHECK_FALSE(rec.eta_hat.has_value());
        CHECK_FALSE(rec.p_hat.has_value());
    }
}

TEST_CASE("run_ideal: the closed-form columns are state independent") {
    RunConfig config = base_config();
    const std::vector<RunRecord> h_records = run_ideal(config);
    config.state = NamedState::l();
    const std::vector<RunRecord> l_records = run_ideal(config);
    for (std::size_t i = 0; i < h_records.size(); ++i) {
        CHECK(h_records[i].eta_ideal == l_records[i].eta_ideal);
        CHECK(h_records[i].p_ideal == l_records[i].p_ideal);
    }
}

TEST_CASE("run_ideal: rejects an empty grid") {
    RunConfig config;
    config.xi_grid = {};
    CHECK_THROWS_AS(run_ideal(config), std::invalid_argument);
}

TEST_CASE("run_endtoend: deterministic per seed") {
    RunConfig config = base_config();
    config.xi_grid = {0.5, 0.8};
    config.trials = 5000;
    config.counts_per_setting = 2000;

    const std::string first = to_csv(run_endtoend(config));
    const std::string second = to_csv(run_endtoend(config));
    CHECK(first == second);

    config.seed = 8;
    CHECK(to_csv(run_endtoend(config)) != first);
}

TEST_CASE("run_endtoend: rows depend only on their own grid point") {
    RunConfig full = base_config();
    full.xi_grid = {0.3, 0.5, 0.9};
    full.trials = 4000;
    full.counts_per_setting = 1000;
    const std::vector<RunRecord> all = run_endtoend(full);

    RunConfig single = full;
    single.xi_grid = {0.5};
    const std::vector<RunRecord> one = run_endtoend(single);
    REQUIRE(one.size() == 1);
    CHECK(to_csv({all[1]}) == to_csv({one[0]}));
}

TEST_CASE("run_endtoend: noiseless point estimates exactly no gain") {
    RunConfig config = base_config();
    config.xi_grid = {1.0};
    config.trials = 2000;
    config.counts_per_setting = 2000;
    const RunRecord rec = run_endtoend(config).front();
    REQUIRE(rec.eta_hat.has_value());
    CHECK(std::abs(*rec.eta_hat - 1.0) <= std::max(3.0 * rec.se_eta_hat.value(), 1e-12));
    CHECK(*rec.p_hat == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("run_endtoend: recovers the closed forms at xi = 0.5") {
    RunConfig config = base_config();
    config.state = NamedState::l();
    config.xi_grid = {0.5};
    config.trials = 50000;
    config.counts_per_setting = 10000;
    config.seed = 3;
    const RunRecord rec = run_endtoend(config).front();
    REQUIRE(rec.eta_hat.has_value());
    CHECK(std::abs(*rec.xi_hat - 0.5) < 3.5 * *rec.se_xi_hat);
    CHECK(std::abs(*rec.eta_hat - 16.0 / 13.0) < 0.05);
    CHECK(std::abs(*rec.p_hat - 13.0 / 16.0) < 0.01);
}

TEST_CASE("run_endtoend: asymmetric cloning point") {
    RunConfig config = base_config();
    config.xi_grid = {};
    config.zeta_kappa = std::make_pair(1.0, 0.0);
    config.trials = 50000;
    config.counts_per_setting = 10000;
    config.seed = 5;
    const RunRecord rec = run_endtoend(config).front();
    CHECK(rec.xi == doctest::Approx(0.5));
    REQUIRE(rec.eta_hat.has_value());
    CHECK(std::abs(*rec.eta_hat - 4.0 / 3.0) < 0.05);
    CHECK(std::abs(*rec.p_hat - 0.75) < 0.01);
}

TEST_CASE("run_endtoend: gain is withheld when the input looks fully mixed") {
    RunConfig config = base_config();
    config.xi_grid = {0.0};
    config.trials = 20000;
    config.counts_per_setting = 10000;
    config.seed = 11;
    const RunRecord rec = run_endtoend(config).front();
    REQUIRE(rec.xi_hat.has_value());
    CHECK(std::abs(*rec.xi_hat) < kMinXiForGain);  // seed chosen well inside the bulk
    CHECK_FALSE(rec.eta_hat.has_value());
    CHECK_FALSE(rec.se_eta_hat.has_value());
    CHECK(rec.p_hat.has_value());
}

TEST_CASE("run_endtoend: ideal columns coincide with run_ideal") {
    RunConfig config = base_config();
    config.xi_grid = {0.2, 0.6};
    config.trials = 2000;
    config.counts_per_setting = 500;
    const std::vector<RunRecord> ideal = run_ideal(config);
    const std::vector<RunRecord> sim = run_endtoend(config);
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        CHECK(sim[i].xi == ideal[i].xi);
        CHECK(sim[i].xi_p_ideal == ideal[i].xi_p_ideal);
        CHECK(sim[i].eta_ideal == ideal[i].eta_ideal);
        CHECK(sim[i].p_ideal == ideal[i].p_ideal);
    }
}

TEST_CASE("to_csv: frozen header and empty optional fields") {
    const std::vector<RunRecord> records = run_ideal(base_config());
    const std::string csv = to_csv(records);
    CHECK(csv.rfind("state,xi,xi_p_ideal,eta_ideal,p_ideal,xi_hat,se_xi_hat,xi_p_hat,"
                    "se_xi_p_hat,eta_hat,se_eta_hat,p_hat,seed\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);  // header + 11 rows
    CHECK(csv.find(",,,,,,,7\n") != std::string::npos);     // empty simulated columns
}

TEST_CASE("emit: writes data plus a manifest that pins the rerun") {
    const auto dir = std::filesystem::temp_directory_path() / "qpurify_test_emit";
    std::filesystem::create_directories(dir);
    const auto csv_path = dir / "sweep.csv";

    RunConfig config = base_config();
    config.xi_grid = {0.4, 0.7};
    config.trials = 2000;
    config.counts_per_setting = 500;
    const std::vector<RunRecord> records = run_endtoend(config);

    emit(records, EmitFormat::Csv, csv_path.string(), config, "endtoend");
    const std::string first = read_file(csv_path);
    CHECK(first == to_csv(records));

    const std::string manifest = read_file(csv_path.string() + ".manifest.json");
    CHECK(manifest.find("\"seed\": 7") != std::string::npos);
    CHECK(manifest.find("\"artifact_version\"") != std::string::npos);
    CHECK(manifest.find("\"trials\": 2000") != std::string::npos);

    // Re-running the recorded config reproduces the file byte for byte.
    emit(run_endtoend(config), EmitFormat::Csv, csv_path.string(), config, "endtoend");
    CHECK(read_file(csv_path) == first);

    const auto json_path = dir / "sweep.json";
    emit(records, EmitFormat::Json, json_path.string(), config, "endtoend");
    const std::string json_body = read_file(json_path);
    CHECK(json_body.find("\"eta_ideal\"") != std::string::npos);

    std::filesystem::remove_all(dir);
}

TEST_CASE("emit: surfaces the failing path") {
    const std::vector<RunRecord> records = run_ideal(base_config());
    CHECK_THROWS_WITH_AS(
        emit(records, EmitFormat::Csv, "/nonexistent_dir_qpurify/out.csv", base_config(), "ideal"),
        doctest::Contains("/nonexistent_dir_qpurify/out.csv"), std::runtime_error);
    CHECK_THROWS_AS(emit({}, EmitFormat::Csv, "out.csv", base_config(), "ideal"),
                    std::invalid_argument);
}

TEST_CASE("format_double: stable representation") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(13.0 / 16.0) == "0.8125");
    CHECK(format_double(4.0 / 3.0) == "1.33333333333");
}
