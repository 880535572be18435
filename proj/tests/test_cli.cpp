#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "camsim/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kFixtureDir = CAMSIM_FIXTURE_DIR;

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("camsim_cli_test_" + std::to_string(counter++))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string out(const std::string& name) const { return (path / name).string(); }
    static int counter;
};

int TempDir::counter = 0;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kBcamConfig = R"({
  "application": {"distance_function": "hamming", "match_type": "exact", "data_bits": 1},
  "circuit": {"rows": 4, "columns": 4, "cell_type": "bcam"},
  "device": {"device_type": "CMOS", "seed": 5}
})";

camsim::cli::SimulateOptions tiny_simulate(const TempDir& tmp) {
    camsim::cli::SimulateOptions opt;
    opt.config_path = tmp.file("config.json", kBcamConfig);
    opt.stored_path = kFixtureDir + "/tiny_stored.csv";
    opt.query_path = kFixtureDir + "/tiny_query.csv";
    opt.out_path = tmp.out("report.json");
    return opt;
}

}  // namespace

TEST_CASE("cmd_validate exit codes") {
    TempDir tmp;
    CHECK(camsim::cli::cmd_validate(kFixtureDir + "/mann.json") == camsim::cli::kExitOk);
    CHECK(camsim::cli::cmd_validate(kFixtureDir + "/does_not_exist.json") ==
          camsim::cli::kExitUsage);

    std::string bad = tmp.file("bad.json", R"({
      "application": {"distance_function": "hamming", "match_type": "exact", "data_bits": 3},
      "circuit": {"rows": 4, "columns": 4, "cell_type": "tcam"}
    })");
    CHECK(camsim::cli::cmd_validate(bad) == camsim::cli::kExitValidation);

    std::string malformed = tmp.file("malformed.json", "{ nope");
    CHECK(camsim::cli::cmd_validate(malformed) == camsim::cli::kExitValidation);
}

TEST_CASE("cmd_simulate writes a report with the expected sections") {
    TempDir tmp;
    camsim::cli::SimulateOptions opt = tiny_simulate(tmp);
    opt.stored_labels_path = kFixtureDir + "/tiny_stored_labels.csv";
    opt.query_labels_path = kFixtureDir + "/tiny_query_labels.csv";
    opt.cost_model_path = kFixtureDir + "/cost_model.json";

    REQUIRE(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitOk);
    json report = json::parse(slurp(opt.out_path));
    REQUIRE(report.contains("results"));
    CHECK(report["results"].size() == 2);
    CHECK(report["results"][0]["matched"] == json::array({0}));
    CHECK(report["accuracy"] == 1.0);
    CHECK(report.contains("performance"));
    CHECK(report["architecture"]["subarrays"] == 1);
}

TEST_CASE("cmd_simulate without a cost model omits the performance section") {
    TempDir tmp;
    camsim::cli::SimulateOptions opt = tiny_simulate(tmp);
    REQUIRE(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitOk);
    json report = json::parse(slurp(opt.out_path));
    CHECK_FALSE(report.contains("performance"));
    CHECK_FALSE(report.contains("accuracy"));
    CHECK(report.contains("results"));
}

TEST_CASE("cmd_simulate is byte-deterministic") {
    TempDir tmp;
    camsim::cli::SimulateOptions opt = tiny_simulate(tmp);
    REQUIRE(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitOk);
    std::string first = slurp(opt.out_path);
    opt.out_path = tmp.out("report2.json");
    REQUIRE(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitOk);
    CHECK(first == slurp(opt.out_path));
}

TEST_CASE("cmd_simulate rejects invalid configs without writing output") {
    TempDir tmp;
    camsim::cli::SimulateOptions opt = tiny_simulate(tmp);
    opt.config_path = tmp.file("invalid.json", R"({
      "application": {"distance_function": "hamming", "match_type": "exact", "data_bits": 3},
      "circuit": {"rows": 4, "columns": 4, "cell_type": "tcam"}
    })");
    CHECK(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitValidation);
    CHECK_FALSE(fs::exists(opt.out_path));
}

TEST_CASE("cmd_simulate maps missing inputs and runtime failures to exit codes") {
    TempDir tmp;
    camsim::cli::SimulateOptions opt = tiny_simulate(tmp);
    opt.stored_path = tmp.out("nope.csv");
    CHECK(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitUsage);

    opt = tiny_simulate(tmp);
    opt.cost_model_path = tmp.file("empty_cm.json", R"({"subarrays": []})");
    CHECK(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitRuntime);  // MissingCostKey
}

TEST_CASE("cmd_sweep emits one row per design point") {
    TempDir tmp;
    camsim::cli::SweepOptions opt;
    opt.config_path = tmp.file("config.json", kBcamConfig);
    opt.sweep_path = tmp.file("sweep.json", R"({"circuit.columns": [2, 4, 8]})");
    opt.stored_path = kFixtureDir + "/tiny_stored.csv";
    opt.query_path = kFixtureDir + "/tiny_query.csv";
    opt.stored_labels_path = kFixtureDir + "/tiny_stored_labels.csv";
    opt.query_labels_path = kFixtureDir + "/tiny_query_labels.csv";
    opt.out_path = tmp.out("sweep.csv");

    REQUIRE(camsim::cli::cmd_sweep(opt) == camsim::cli::kExitOk);
    std::string csv = slurp(opt.out_path);
    int lines = 0;
    for (char c : csv) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 4);  // header + 3 points
    CHECK(csv.rfind("circuit.columns,status,accuracy", 0) == 0);
}

TEST_CASE("cmd_sweep covers the Cartesian product in declared order") {
    TempDir tmp;
    camsim::cli::SweepOptions opt;
    opt.config_path = tmp.file("config.json", kBcamConfig);
    opt.sweep_path =
        tmp.file("sweep.json", R"({"circuit.rows": [2, 4], "circuit.columns": [2, 4, 8]})");
    opt.stored_path = kFixtureDir + "/tiny_stored.csv";
    opt.query_path = kFixtureDir + "/tiny_query.csv";
    opt.out_path = tmp.out("sweep.csv");

    REQUIRE(camsim::cli::cmd_sweep(opt) == camsim::cli::kExitOk);
    std::istringstream csv(slurp(opt.out_path));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "circuit.rows,circuit.columns,status,accuracy,latency_ns,energy_pj,edp_pj_ns,"
                  "approximate");
    std::vector<std::string> rows;
    while (std::getline(csv, line)) rows.push_back(line);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].rfind("2,2,", 0) == 0);  // last key varies fastest
    CHECK(rows[1].rfind("2,4,", 0) == 0);
    CHECK(rows[2].rfind("2,8,", 0) == 0);
    CHECK(rows[3].rfind("4,2,", 0) == 0);
}

TEST_CASE("cmd_sweep flags unsupported merge points without aborting") {
    TempDir tmp;
    camsim::cli::SweepOptions opt;
    opt.config_path = tmp.file("config.json", R"({
      "application": {"distance_function": "l1", "match_type": "threshold",
                      "match_parameter": 1.0, "data_bits": 2},
      "circuit": {"rows": 8, "columns": 4, "cell_type": "mcam"},
      "device": {"seed": 2}
    })");
    // Columns 2 splits the 4-dim vectors: threshold match cannot merge that.
    opt.sweep_path = tmp.file("sweep.json", R"({"circuit.columns": [2, 4]})");
    opt.stored_path = kFixtureDir + "/tiny_stored.csv";
    opt.query_path = kFixtureDir + "/tiny_query.csv";
    opt.out_path = tmp.out("sweep.csv");

    REQUIRE(camsim::cli::cmd_sweep(opt) == camsim::cli::kExitOk);
    std::istringstream csv(slurp(opt.out_path));
    std::string header, first, second;
    std::getline(csv, header);
    std::getline(csv, first);
    std::getline(csv, second);
    CHECK(first.rfind("2,unsupported", 0) == 0);
    CHECK(second.rfind("4,ok", 0) == 0);
}

TEST_CASE("cmd_sweep averages accuracy over variation repeats") {
    TempDir tmp;
    camsim::cli::SweepOptions opt;
    opt.config_path = tmp.file("config.json", R"({
      "application": {"distance_function": "l2", "match_type": "best",
                      "match_parameter": 1, "data_bits": 2},
      "circuit": {"rows": 8, "columns": 4, "cell_type": "mcam"},
      "device": {"variation_enabled": true, "variation_type": "d2d",
                 "variation_spec": "statistical", "variation_std": 0.8, "seed": 10}
    })");
    opt.sweep_path = tmp.file("sweep.json", R"({"device.variation_std": [0.8]})");
    opt.stored_path = kFixtureDir + "/tiny_stored.csv";
    opt.query_path = kFixtureDir + "/tiny_query.csv";
    opt.stored_labels_path = kFixtureDir + "/tiny_stored_labels.csv";
    opt.query_labels_path = kFixtureDir + "/tiny_query_labels.csv";
    opt.repeats = 4;
    opt.out_path = tmp.out("sweep.csv");
    REQUIRE(camsim::cli::cmd_sweep(opt) == camsim::cli::kExitOk);
    std::string averaged = slurp(opt.out_path);

    opt.repeats = 1;
    opt.out_path = tmp.out("single.csv");
    REQUIRE(camsim::cli::cmd_sweep(opt) == camsim::cli::kExitOk);
    std::string single = slurp(opt.out_path);
    // Distinct seeds enter the average, so the two columns can differ; both
    // runs must stay parseable with an accuracy value in [0, 1].
    auto accuracy_of = [](const std::string& csv) {
        std::istringstream in(csv);
        std::string header, row;
        std::getline(in, header);
        std::getline(in, row);
        std::istringstream cells(row);
        std::string cell;
        std::getline(cells, cell, ',');  // swept value
        std::getline(cells, cell, ',');  // status
        REQUIRE(cell == "ok");
        std::getline(cells, cell, ',');  // accuracy
        return std::stod(cell);
    };
    double averaged_acc = accuracy_of(averaged);
    double single_acc = accuracy_of(single);
    CHECK(averaged_acc >= 0.0);
    CHECK(averaged_acc <= 1.0);
    CHECK(single_acc >= 0.0);
    CHECK(single_acc <= 1.0);
}

TEST_CASE("a seed override changes variation draws deterministically") {
    TempDir tmp;
    camsim::cli::SimulateOptions opt = tiny_simulate(tmp);
    opt.config_path = tmp.file("config.json", R"({
      "application": {"distance_function": "l2", "match_type": "best",
                      "match_parameter": 1, "data_bits": 2},
      "circuit": {"rows": 8, "columns": 4, "cell_type": "mcam"},
      "device": {"variation_enabled": true, "variation_type": "both",
                 "variation_spec": "statistical", "variation_std": 0.6, "seed": 1}
    })");
    opt.seed = 42;
    REQUIRE(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitOk);
    std::string with_42 = slurp(opt.out_path);

    opt.out_path = tmp.out("again.json");
    REQUIRE(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitOk);
    CHECK(with_42 == slurp(opt.out_path));  // same override, same bytes

    opt.seed = 43;
    opt.out_path = tmp.out("other.json");
    REQUIRE(camsim::cli::cmd_simulate(opt) == camsim::cli::kExitOk);
    CHECK(with_42 != slurp(opt.out_path));  // different draws
}

TEST_CASE("cmd_sweep is byte-deterministic") {
    TempDir tmp;
    camsim::cli::SweepOptions opt;
    opt.config_path = tmp.file("config.json", kBcamConfig);
    opt.sweep_path = tmp.file("sweep.json", R"({"circuit.rows": [2, 4]})");
    opt.stored_path = kFixtureDir + "/tiny_stored.csv";
    opt.query_path = kFixtureDir + "/tiny_query.csv";
    opt.out_path = tmp.out("a.csv");
    REQUIRE(camsim::cli::cmd_sweep(opt) == camsim::cli::kExitOk);
    std::string first = slurp(opt.out_path);
    opt.out_path = tmp.out("b.csv");
    REQUIRE(camsim::cli::cmd_sweep(opt) == camsim::cli::kExitOk);
    CHECK(first == slurp(opt.out_path));
}
