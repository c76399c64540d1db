// End-to-end tests for the CLI binary; ISOEQ_CLI_PATH is provided by the
// build system.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef ISOEQ_CLI_PATH
#error "ISOEQ_CLI_PATH must be defined"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "isoeq_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    const fs::path out_file = temp_dir() / "stdout.txt";
    const fs::path in_file = temp_dir() / "stdin.txt";
    std::string cmd = std::string(ISOEQ_CLI_PATH) + " " + args;
    if (!stdin_text.empty()) {
        std::ofstream f(in_file);
        f << stdin_text;
        cmd += " < " + in_file.string();
    }
    cmd += " > " + out_file.string() + " 2> " + (temp_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(out_file);
    std::ostringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    return r;
}

}  // namespace

TEST_CASE("construct | verify | classify round trip") {
    const RunResult built = run_cli("construct --type a --p 2 --e 1 --dim 2");
    REQUIRE(built.exit_code == 0);
    const json pair = json::parse(built.out);
    CHECK(pair["type"] == "a");
    CHECK(pair["U"].size() == 3);

    const RunResult verified = run_cli("verify", built.out);
    CHECK(verified.exit_code == 0);
    const json rep = json::parse(verified.out);
    CHECK(rep["solution"] == true);
    CHECK(rep["trivial"] == false);

    const RunResult classified = run_cli("classify", built.out);
    CHECK(classified.exit_code == 0);
    CHECK(json::parse(classified.out)["kind"] == "TypeA");
}

TEST_CASE("construct families round trip through classify") {
    for (const auto& [type, dim, kind] :
         {std::tuple{"b", 4, "TypeB"}, {"c", 5, "TypeC"}}) {
        const std::string args = std::string("construct --type ") + type + " --p 3 --dim " +
                                 std::to_string(dim) + " --s-dim 1";
        const RunResult built = run_cli(args);
        REQUIRE(built.exit_code == 0);
        const RunResult classified = run_cli("classify", built.out);
        REQUIRE(classified.exit_code == 0);
        CHECK(json::parse(classified.out)["kind"] == kind);
    }
}

TEST_CASE("verify distinguishes non-solutions with exit 1") {
    const RunResult built = run_cli("construct --type a --p 2 --dim 2");
    json pair = json::parse(built.out);
    pair["U"][0]["basis"] = json::array({json::array({1, 0})});
    pair["U"][1]["basis"] = json::array({json::array({1, 0})});
    const RunResult verified = run_cli("verify", pair.dump());
    CHECK(verified.exit_code == 1);
    CHECK(json::parse(verified.out)["solution"] == false);
}

TEST_CASE("malformed input exits 2 with a message") {
    CHECK(run_cli("verify", "this is not json").exit_code == 2);
    CHECK(run_cli("verify", "{\"field\": {\"p\": 2, \"e\": 1}}").exit_code == 2);

    const RunResult built = run_cli("construct --type a --p 2 --dim 2");
    json pair = json::parse(built.out);
    pair["U"][0]["basis"] = json::array({json::array({0, 1}), json::array({1, 0})});
    CHECK(run_cli("verify", pair.dump()).exit_code == 2);

    json bad_range = json::parse(built.out);
    bad_range["V"][0]["basis"][0][0] = 9;
    CHECK(run_cli("verify", bad_range.dump()).exit_code == 2);
}

TEST_CASE("exceeded caps exit 4") {
    const RunResult built = run_cli("construct --type a --p 2 --dim 2");
    CHECK(run_cli("verify --max-points 2", built.out).exit_code == 4);
}

TEST_CASE("precondition violations exit 3") {
    CHECK(run_cli("construct --type c --p 2 --dim 3").exit_code == 3);  // ambient too small
    const RunResult built = run_cli("construct --type a --p 2 --dim 2");
    json pair = json::parse(built.out);
    pair["U"].erase(2);
    pair["V"].erase(2);  // m = 2 != q + 1: classify refuses
    CHECK(run_cli("classify", pair.dump()).exit_code == 3);
}

TEST_CASE("coverings subcommand emits certificates") {
    const RunResult res = run_cli("coverings --p 2 --dim 2 --m 3");
    REQUIRE(res.exit_code == 0);
    const json out = json::parse(res.out);
    CHECK(out["count"] == 1);
    CHECK(out["coverings"][0]["certificate"]["core"]["basis"].empty());

    const json empty = json::parse(run_cli("coverings --p 2 --dim 2 --m 2").out);
    CHECK(empty["count"] == 0);
}

TEST_CASE("search subcommand reports classes") {
    const json none = json::parse(run_cli("search --p 2 --dim 2 --m 2").out);
    CHECK(none["classes"].empty());

    const json one = json::parse(run_cli("search --p 2 --dim 2 --m 3 --jobs 2").out);
    REQUIRE(one["classes"].size() == 1);
    CHECK(one["classes"][0]["classification"]["kind"] == "TypeA");
}

TEST_CASE("atlas writes verified entries plus an index") {
    const fs::path dir = temp_dir() / "atlas";
    fs::remove_all(dir);
    const RunResult res = run_cli("atlas --out-dir " + dir.string());
    REQUIRE(res.exit_code == 0);

    std::ifstream idx(dir / "index.json");
    REQUIRE(idx.good());
    json index;
    idx >> index;
    CHECK(index["entries"].size() == 24);  // 4 fields x 2 cores x 3 types

    for (const auto& entry : index["entries"]) {
        std::ifstream f(dir / entry["file"].get<std::string>());
        REQUIRE(f.good());
        json e;
        f >> e;
        CHECK(e["digest"] == entry["digest"]);
        // Entries re-verify on load.
        const RunResult verified = run_cli("verify", e.dump());
        CHECK(verified.exit_code == 0);
        const std::string kind = e["classification"]["kind"].get<std::string>();
        const std::string type = entry["type"].get<std::string>();
        CHECK(kind == (type == "a" ? "TypeA" : type == "b" ? "TypeB" : "TypeC"));
    }
}
