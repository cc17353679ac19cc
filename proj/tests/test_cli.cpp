#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "hrf/cli.hpp"
#include "hrf/error.hpp"
#include "hrf/io.hpp"
#include "hrf/space_model.hpp"
#include "support.hpp"

using namespace hrf;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

}  // namespace

TEST_CASE("list parsing") {
    CHECK(parse_int_list("4..6,9") == std::vector<int>{4, 5, 6, 9});
    CHECK(parse_int_list("100") == std::vector<int>{100});
    CHECK(parse_double_list("1,0.5,2e-1") == std::vector<double>{1, 0.5, 0.2});
    CHECK_THROWS_AS(parse_int_list("4..x"), Error);
    CHECK_THROWS_AS(parse_double_list("1,,2"), Error);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"bogus"}).code == kExitUsage);
    CHECK(cli({"flow", "--nope"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
    CHECK(cli({"--workers", "-2", "gap-scan"}).code == kExitUsage);
}

TEST_CASE("space") {
    const auto dir = testsupport::scratch_dir("cli_space");
    const auto path = (dir / "su2.json").string();
    auto r = cli({"space", "dump", path, "--preset", "su2"});
    REQUIRE(r.code == kExitOk);
    CHECK(cli({"space", "validate", path}).code == kExitOk);

    auto j = nlohmann::json::parse(read_file(path));
    j["structure_constants"][0]["triple"] = {3, 1, 2};
    write_file_atomic(dir / "bad.json", j.dump());
    CHECK(cli({"space", "validate", (dir / "bad.json").string()}).code == kExitParse);
    write_file_atomic(dir / "broken.json", "{");
    CHECK(cli({"space", "validate", (dir / "broken.json").string()}).code == kExitParse);
    CHECK(cli({"space", "validate", (dir / "missing.json").string()}).code == kExitParse);

    r = cli({"space", "show", "--preset", "suN", "--n", "4"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("[112] = 32") != std::string::npos);
    CHECK(r.out.find("[113] = 16") != std::string::npos);
    CHECK(cli({"space", "show", "--preset", "suN", "--n", "1"}).code == kExitUsage);
}

TEST_CASE("flow") {
    const auto dir = testsupport::scratch_dir("cli_flow");
    auto r = cli({"--out", dir.string(), "flow", "--preset", "su2", "--x0", "1,1,1", "--t-end", "1"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("termination: Extinction") != std::string::npos);
    CHECK(r.out.find("extinction_estimate: 0.25") != std::string::npos);
    CHECK(fs::exists(dir / "trajectory.csv"));
    CHECK(fs::exists(dir / "config.json"));
    const auto summary = nlohmann::json::parse(read_file(dir / "trajectory.json"));
    CHECK(summary["termination"] == "Extinction");

    r = cli({"--out", (dir / "n").string(), "flow", "--preset", "su2", "--x0", "1,2,3", "--field", "normalized",
             "--t-end", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("termination: ReachedEnd") != std::string::npos);

    CHECK(cli({"--out", dir.string(), "flow", "--preset", "su2"}).code == kExitUsage);
    CHECK(cli({"--out", dir.string(), "flow", "--preset", "su2", "--x0", "1,-1,1"}).code == kExitCheck);
    CHECK(cli({"--out", dir.string(), "flow", "--preset", "su2", "--x0", "1,a,1"}).code == kExitUsage);

    r = cli({"--out", (dir / "aa").string(), "flow", "--aa", "1,0,0,0,1,0,0,0,1", "--t-end", "1"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("termination: ReachedEnd") != std::string::npos);
}

TEST_CASE("scenario and verify") {
    const auto dir = testsupport::scratch_dir("cli_scen");
    auto r = cli({"--out", dir.string(), "scenario", "gap-family", "--n", "4..6"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("0.666666667") != std::string::npos);
    CHECK(fs::exists(dir / "gap-family" / "gap_family.csv"));

    r = cli({"--out", dir.string(), "scenario", "round-sphere"});
    REQUIRE(r.code == kExitOk);
    const auto rdir = (dir / "round-sphere").string();
    r = cli({"verify", rdir, "--checks", "main-estimate,type-products,scalar,evolution,doubling,volume"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(cli({"verify", rdir, "-C", "0.5"}).code == kExitOk);
    CHECK(cli({"verify", rdir, "--checks", "doubling", "--ricci-constant", "0.5"}).code == kExitCheck);
    CHECK(cli({"verify", rdir, "--checks", "nonsense"}).code == kExitUsage);
    CHECK(cli({"verify", (dir / "nowhere").string()}).code == kExitParse);

    r = cli({"--out", dir.string(), "scenario", "berger", "--l", "100"});
    CHECK(r.code == kExitOk);
    CHECK(cli({"verify", (dir / "berger").string(), "--checks", "main-estimate,type-products,volume"}).code ==
          kExitOk);
    CHECK(cli({"--out", dir.string(), "scenario", "berger", "--l", "50"}).code == kExitUsage);

    r = cli({"--out", dir.string(), "scenario", "suN-portrait", "--n", "4"});
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(dir / "suN-portrait" / "grid.csv"));
    CHECK(cli({"--out", dir.string(), "scenario", "nonesuch"}).code == kExitUsage);

    const auto fdir = dir / "sun_flow";
    CHECK(cli({"--out", fdir.string(), "flow", "--preset", "suN", "--n", "4", "--x0", "1,1,1", "--t-end", "0.01"})
              .code == kExitOk);
    r = cli({"verify", fdir.string(), "--checks", "main-estimate"});
    CHECK(r.code == kExitCheck);
    CHECK(r.out.find("SKIP") != std::string::npos);
}

TEST_CASE("gap-scan") {
    const auto dir = testsupport::scratch_dir("cli_gap");
    auto r = cli({"--out", dir.string(), "--seed", "5", "gap-scan", "--n", "4..5", "--samples", "200"});
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(dir / "gap_scan" / "n_4.csv"));
    const auto s = nlohmann::json::parse(read_file(dir / "gap_scan" / "summary.json"));
    CHECK(s["pass"] == true);
    const auto first = read_file(dir / "gap_scan" / "n_5.csv");
    CHECK(cli({"--out", dir.string(), "--seed", "5", "--workers", "3", "gap-scan", "--n", "4..5", "--samples", "200"})
              .code == kExitOk);
    CHECK(read_file(dir / "gap_scan" / "n_5.csv") == first);
    CHECK(cli({"--out", dir.string(), "gap-scan", "--n", "3"}).code == kExitUsage);
    CHECK(cli({"--out", dir.string(), "gap-scan", "--mode", "odd"}).code == kExitUsage);
}

TEST_CASE("binary exit status") {
    const std::string bin = HRF_CLI_PATH;
    const auto dir = testsupport::scratch_dir("cli_bin");
    auto status = [&](const std::string& a) {
        const int s = std::system((bin + " " + a + " > " + (dir / "log").string() + " 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status("--out " + dir.string() + " scenario gap-family --n 4") == kExitOk);
    CHECK(status("flow") == kExitUsage);
    CHECK(status("space validate " + (dir / "none.json").string()) == kExitParse);
}
