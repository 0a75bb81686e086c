#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hetbound/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hetbound");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = hetbound::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "hetbound_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("bound --model stiff") {
    const auto r = run({"bound", "--model", "stiff"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["X_numeric"].get<double>() == doctest::Approx(0.69341596397289068).epsilon(1e-12));
    CHECK(j["agreement"].get<double>() <= 1e-9);
    CHECK(j["schema"] == 1);
}

TEST_CASE("bound --model kappa carries both closed forms") {
    const auto r = run({"bound", "--model", "kappa", "--kappa", "0.3333333333333333"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["X_closed"].get<double>() == doctest::Approx(0.63911770148895538).epsilon(1e-9));
    CHECK(j["X_closed_printed"].get<double>() == doctest::Approx(0.62117005181295743).epsilon(1e-9));
    CHECK(j.contains("kappa_constants"));
}

TEST_CASE("analyze --model nonrel") {
    const auto r = run({"analyze", "--model", "nonrel"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto& st = j["stability"];
    CHECK(st["origin_eigen"][0]["eigenvalue"] == -1.0);
    CHECK(st["origin_eigen"][1]["eigenvalue"] == 2.0);
    CHECK(st["unstable_slope"] == 3.0);
    CHECK(st["origin_classification"] == "SaddleAtOrigin");
    CHECK(j["x_max"].is_null());
}

TEST_CASE("analyze writes to a file") {
    const auto path = scratch("analyze.json");
    const auto r = run({"analyze", "--model", "scaled", "--json", path.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["equilibrium"]["z"].get<double>() == doctest::Approx(1.0 / (16 * M_PI)));
}

TEST_CASE("masstable") {
    const auto md = run({"masstable", "--markdown"});
    REQUIRE(md.code == 0);
    std::istringstream is(md.out);
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) {
        if (line.rfind("| ", 0) == 0) ++rows;
    }
    CHECK(rows == 6);  // header plus five rows
    CHECK(md.out.find("0.8889") != std::string::npos);
    CHECK(md.out.find("0.9706") != std::string::npos);

    const auto js = run({"masstable", "--json"});
    REQUIRE(js.code == 0);
    CHECK(nlohmann::json::parse(js.out)["rows"].size() == 5);
    CHECK(run({"masstable", "--json", "--markdown"}).code == 2);
}

TEST_CASE("trajectory csv and determinism") {
    const auto a = scratch("a.csv");
    const auto b = scratch("b.csv");
    const auto r1 = run({"trajectory", "--model", "stiff", "--out", a.string()});
    const auto r2 = run({"trajectory", "--model", "stiff", "--out", b.string()});
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    CHECK(r1.out == r2.out);
    const auto text = slurp(a);
    CHECK(text.rfind("t,x,y,V\n", 0) == 0);
    CHECK(text == slurp(b));
    const auto summary = nlohmann::json::parse(r1.out);
    CHECK(summary["converged"] == true);

    const auto stdout_run = run({"trajectory", "--model", "stiff", "--dt", "1", "--out", "-"});
    REQUIRE(stdout_run.code == 0);
    CHECK(stdout_run.out.rfind("t,x,y,V\n", 0) == 0);

    const auto prof = scratch("profile.csv");
    REQUIRE(run({"trajectory", "--model", "stiff", "--profile", prof.string()}).code == 0);
    CHECK(slurp(prof).rfind("r,m,rho,p,compactness\n", 0) == 0);
}

TEST_CASE("sweep and portrait outputs") {
    const auto r = run({"bound", "--sweep-kappa", "0.1:1:4"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("kappa,z,w,alpha,D,E,X_closed,X_numeric\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);

    const auto csv = scratch("p.csv");
    REQUIRE(run({"portrait", "--model", "stiff", "--grid", "12,10", "--out", csv.string()}).code == 0);
    CHECK(slurp(csv).rfind("x,y,dx,dy,V,valid\n", 0) == 0);
    const auto svg = scratch("p.svg");
    REQUIRE(run({"portrait", "--model", "stiff", "--grid", "12,10", "--out", svg.string()}).code == 0);
    CHECK(slurp(svg).find("<svg") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"bound"}).code == 2);
    CHECK(run({"bound", "--model", "nope"}).code == 2);
    CHECK(run({"bound", "--model", "kappa", "--kappa", "2"}).code == 2);
    CHECK(run({"bound", "--sweep-kappa", "1:0.1:x"}).code == 2);
    CHECK(run({"portrait", "--model", "stiff", "--grid", "0,3", "--out", "x.csv"}).code == 2);
    CHECK(run({"trajectory", "--model", "stiff", "--max-time", "1"}).code == 4);
    CHECK(run({"trajectory", "--model", "stiff", "--eps", "0.4"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    const auto nr = run({"trajectory", "--model", "nonrel", "--profile", scratch("n.csv").string()});
    CHECK(nr.code == 3);  // no TOV interpretation
    CHECK(nr.err.find("error:") != std::string::npos);
}
