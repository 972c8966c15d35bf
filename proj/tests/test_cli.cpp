#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "soc/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kFixtures = {
    "convergence_geometric", "remainder_exponential", "radius_factorial",
    "radius_exponential",    "plethysm_ones",         "chain_rule_quadratic",
    "cross_effect_quadratic", "reconstruct_exponential", "excision_exponential",
    "stability_exp_exp",     "admissibility_identity",
};

std::string subcommand_of(const std::string& fixture) {
    const soc::json cfg = soc::json::parse(soc::read_file(
        std::string(SOC_FIXTURES_DIR) + "/" + fixture + ".json"));
    return cfg.at("subcommand").get<std::string>();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SOC_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path temp_dir() {
    const fs::path d = fs::temp_directory_path() / "soc_cli_test";
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("every fixture runs and reproduces its golden CSV byte for byte") {
    const fs::path tmp = temp_dir();
    for (const std::string& fixture : kFixtures) {
        const std::string sub = subcommand_of(fixture);
        const fs::path out1 = tmp / (fixture + "_a.csv");
        const fs::path out2 = tmp / (fixture + "_b.csv");
        const std::string cfg = std::string(SOC_FIXTURES_DIR) + "/" + fixture + ".json";

        REQUIRE(run_cli(sub + " --config " + cfg + " --out " + out1.string()) == 0);
        REQUIRE(run_cli(sub + " --config " + cfg + " --out " + out2.string()) == 0);

        const std::string a = soc::read_file(out1.string());
        const std::string b = soc::read_file(out2.string());
        INFO("fixture " << fixture << " is not deterministic");
        REQUIRE(a == b);

        const std::string golden =
            soc::read_file(std::string(SOC_FIXTURES_DIR) + "/golden/" + fixture + ".csv");
        INFO("fixture " << fixture << " drifted from its golden CSV");
        REQUIRE(a == golden);
    }
}

TEST_CASE("manifest is written next to the artifact") {
    const fs::path tmp = temp_dir();
    const fs::path out = tmp / "radius.csv";
    const std::string cfg = std::string(SOC_FIXTURES_DIR) + "/radius_factorial.json";
    REQUIRE(run_cli("radius --config " + cfg + " --out " + out.string()) == 0);
    const soc::json manifest = soc::json::parse(soc::read_file(out.string() + ".manifest.json"));
    REQUIRE(manifest.at("tool") == "soc");
    REQUIRE(manifest.at("subcommand") == "radius");
    REQUIRE(manifest.at("config_hash").get<std::string>().size() == 16);
    REQUIRE(manifest.contains("summary"));
}

TEST_CASE("config schema violations exit with code 2") {
    const fs::path tmp = temp_dir();

    // Unknown top-level key.
    const fs::path bad1 = tmp / "bad1.json";
    soc::write_file(bad1.string(),
                    R"({"subcommand":"radius","functor":{"kind":"geometric"},"bogus":1})");
    REQUIRE(run_cli("radius --config " + bad1.string() + " --out " + (tmp / "o1.csv").string()) ==
            2);

    // Subcommand mismatch.
    const fs::path bad2 = tmp / "bad2.json";
    soc::write_file(bad2.string(), R"({"subcommand":"remainder","functor":{"kind":"geometric"}})");
    REQUIRE(run_cli("radius --config " + bad2.string() + " --out " + (tmp / "o2.csv").string()) ==
            2);

    // Violated mathematical precondition: non-reduced inner functor.
    const fs::path bad3 = tmp / "bad3.json";
    soc::write_file(bad3.string(), R"({
        "subcommand": "chain-rule",
        "functor": {"kind": "quadratic", "truncation": 6},
        "params": {"inner": {"kind": "geometric", "truncation": 6}, "n_max": 6}
    })");
    REQUIRE(run_cli("chain-rule --config " + bad3.string() + " --out " +
                    (tmp / "o3.csv").string()) == 2);
}

TEST_CASE("capacity violations exit with code 3") {
    const fs::path tmp = temp_dir();
    const fs::path cfg = tmp / "cap.json";
    soc::write_file(cfg.string(), R"({
        "subcommand": "plethysm",
        "params": {
            "outer": {"max_degree": 2, "dims": [0, 1, 1]},
            "inner": {"max_degree": 2, "dims": [0, 1, 1]},
            "n_max": 13
        }
    })");
    REQUIRE(run_cli("plethysm --config " + cfg.string() + " --out " + (tmp / "o.csv").string()) ==
            3);
}

TEST_CASE("kpl flag rescales gamma") {
    const fs::path tmp = temp_dir();
    const std::string cfg = std::string(SOC_FIXTURES_DIR) + "/stability_exp_exp.json";
    const fs::path out = tmp / "stab_kpl.csv";
    REQUIRE(run_cli("stability --config " + cfg + " --kpl 2.0 --out " + out.string()) == 0);
    const soc::json manifest = soc::json::parse(soc::read_file(out.string() + ".manifest.json"));
    REQUIRE(manifest.at("summary").at("gamma").get<double>() == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("seed flag changes generated samples but keeps runs reproducible") {
    const fs::path tmp = temp_dir();
    const std::string cfg = std::string(SOC_FIXTURES_DIR) + "/excision_exponential.json";
    const fs::path a = tmp / "exc_a.csv";
    const fs::path b = tmp / "exc_b.csv";
    const fs::path c = tmp / "exc_c.csv";
    REQUIRE(run_cli("excision --config " + cfg + " --seed 99 --out " + a.string()) == 0);
    REQUIRE(run_cli("excision --config " + cfg + " --seed 99 --out " + b.string()) == 0);
    REQUIRE(run_cli("excision --config " + cfg + " --seed 100 --out " + c.string()) == 0);
    REQUIRE(soc::read_file(a.string()) == soc::read_file(b.string()));
    REQUIRE(soc::read_file(a.string()) != soc::read_file(c.string()));
}

TEST_CASE("convention flag overrides the config") {
    const fs::path tmp = temp_dir();
    const std::string cfg = std::string(SOC_FIXTURES_DIR) + "/remainder_exponential.json";
    const fs::path sum_out = tmp / "rem_sum.csv";
    const fs::path max_out = tmp / "rem_max.csv";
    REQUIRE(run_cli("remainder --config " + cfg + " --out " + sum_out.string()) == 0);
    REQUIRE(run_cli("remainder --config " + cfg + " --convention layer_max --out " +
                    max_out.string()) == 0);
    // layer_max remainders are dominated by layer_sum ones.
    REQUIRE(soc::read_file(sum_out.string()) != soc::read_file(max_out.string()));
}
