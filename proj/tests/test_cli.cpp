#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LPSYM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("classify command") {
    auto r = run_cli("classify --n 2 --p -3/1 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "classify");
    CHECK(j["results"]["dimension"] == 8);
    CHECK(j["results"]["system"]["cols"] == 60);
    int projective = 0, xtrans = 0;
    for (auto& g : j["results"]["generators"]) {
        if (g["family"] == "projective") ++projective;
        if (g["family"] == "x-translation") ++xtrans;
    }
    CHECK(projective == 2);
    CHECK(xtrans == 2);
    CHECK_FALSE(j.contains("timing_ms"));

    auto r3 = run_cli("classify --n 2 --p 3 --format json");
    REQUIRE(r3.exit_code == 0);
    auto j3 = nlohmann::json::parse(r3.out);
    CHECK(j3["results"]["dimension"] == 4);
    bool has_scaling = false;
    for (auto& g : j3["results"]["generators"]) has_scaling |= (g["family"] == "u-scaling");
    CHECK(has_scaling);
}

TEST_CASE("timing is attached only on request") {
    auto r = run_cli("classify --n 1 --p 2 --format json --timing");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("timing_ms"));
}

TEST_CASE("classify rejects invalid input") {
    CHECK(run_cli("classify --n 0 --p 1").exit_code != 0);
    CHECK(run_cli("classify --n 2 --p bogus").exit_code != 0);
    CHECK(run_cli("classify --n 2 --p 1 --ansatz-degree 1").exit_code != 0);
}

TEST_CASE("scan command") {
    auto r = run_cli("scan --n 2 --p-from -4 --p-to 4 --step 1 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    auto rows = j["results"]["rows"];
    REQUIRE(rows.size() == 9);
    std::vector<int> dims;
    for (auto& row : rows) dims.push_back(row["dimension"]);
    CHECK(dims == std::vector<int>{3, 8, 3, 3, 3, 6, 3, 4, 3});

    CHECK(run_cli("scan --n 2 --p-from 1 --p-to 2 --step 0").exit_code != 0);
    CHECK(run_cli("scan --n 2").exit_code != 0);

    auto single = run_cli("scan --n 1 --p 2 --p 1 --format json");
    REQUIRE(single.exit_code == 0);
    auto js = nlohmann::json::parse(single.out);
    REQUIRE(js["results"]["rows"].size() == 2);
    CHECK(js["results"]["rows"][0]["dimension"] == 3);
    CHECK(js["results"]["rows"][1]["dimension"] == 2);
}

TEST_CASE("verify command exit codes") {
    CHECK(run_cli("verify --n 2 --p 3 --action g2 --eps 2 --samples 200").exit_code == 0);
    CHECK(run_cli("verify --n 2 --p 2 --action g2 --eps 2 --samples 200 --expect refuted").exit_code == 0);
    CHECK(run_cli("verify --n 2 --p 2 --action g2 --eps 2 --samples 200").exit_code == 2);
    CHECK(run_cli("verify --n 2 --p 2 --action g99 --samples 100").exit_code == 1);
}

TEST_CASE("verify emits a full report") {
    auto r = run_cli("verify --n 2 --p -3 --action g9 --axis 1 --eps 0.15 --samples 300 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["verdict"] == "confirmed");
    CHECK(j["results"]["kind"] == "action-transport");
    CHECK(j["inputs"]["p"] == "-3");
    CHECK(double(j["results"]["max_abs_residual"]) <= 1e-9);
}

TEST_CASE("resolve command adjudicates the axis shear") {
    auto r = run_cli("resolve --n 2 --action g9 --axis 1 --eps 0.2 --samples 300 --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"]["certification"]["verdict"] == "confirmed");
    auto notes = j["results"]["certification"]["notes"];
    CHECK(notes["adjudication"] == "the eps^2 Y_i^2 weight matches the direct support oracle");
    CHECK(j["results"]["transforms"][0]["kind"] == "centro-affine");
}

TEST_CASE("decompose command") {
    auto r = run_cli("decompose --matrix '1,1;0,1' --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(std::abs(double(j["results"]["lambda"][0]) - golden) <= 1e-12);
    CHECK(double(j["results"]["reconstruction_error"]) <= 1e-12);

    CHECK(run_cli("decompose --matrix '2,0;0,1'").exit_code == 1);
    CHECK(run_cli("decompose --matrix '1,1;0'").exit_code == 1);
}

TEST_CASE("lemma command with descriptive names and aliases") {
    CHECK(run_cli("lemma --n 2 --lemma shear-axis --eps 0.8 --samples 300").exit_code == 0);
    CHECK(run_cli("lemma --n 2 --lemma 6.3 --eps 0.8 --samples 300").exit_code == 0);
    CHECK(run_cli("lemma --n 2 --lemma 4.2 --samples 300").exit_code == 0);
    CHECK(run_cli("lemma --n 3 --lemma translation --samples 300").exit_code == 0);
    CHECK(run_cli("lemma --n 2 --lemma nonsense").exit_code == 1);
}

TEST_CASE("JSON reports are byte-identical across runs with one seed") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "lpsym_cli_test";
    fs::create_directories(dir);
    fs::path f1 = dir / "r1.json", f2 = dir / "r2.json";

    std::string base = "verify --n 2 --p -3 --action g8 --axis 2 --eps 0.4 --samples 500 --seed 42 "
                       "--format json --out ";
    REQUIRE(run_cli(base + f1.string()).exit_code == 0);
    REQUIRE(run_cli(base + f2.string()).exit_code == 0);
    std::string a = slurp(f1), b = slurp(f2);
    REQUIRE_FALSE(a.empty());
    CHECK(a == b);

    // parse(render(report)) round trip
    auto j = nlohmann::json::parse(a);
    CHECK(nlohmann::json::parse(j.dump()) == j);
    fs::remove_all(dir);
}
