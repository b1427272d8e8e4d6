#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "coarsesep/app.hpp"
#include "coarsesep/error.hpp"
#include "coarsesep/graph_io.hpp"

using namespace coarsesep;
namespace fs = std::filesystem;

namespace {

const fs::path kData = COARSESEP_DATA_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "coarsesep");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = app::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string graph(const char* name) { return (kData / "graphs" / name).string(); }

fs::path temp_dir(const char* name) {
    auto p = fs::temp_directory_path() / ("coarsesep-test-" + std::to_string(::getpid()) + "-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("classify reports") {
    auto r = cli({"classify", "--graph", graph("pentagon-Z2.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find(R"("virtual_surface": "yes")") != std::string::npos);
    CHECK(r.out.find(R"("coarsely_separable_subexp": "yes")") != std::string::npos);

    r = cli({"classify", "--graph", graph("pentagon-one-Z3.json")});
    CHECK(r.out.find(R"("virtual_surface": "no")") != std::string::npos);
    CHECK(r.out.find(R"("hyperbolic": "yes")") != std::string::npos);
    CHECK(r.out.find(R"("one_ended": "yes")") != std::string::npos);

    r = cli({"classify", "--graph", graph("square-Z2.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find(R"("hyperbolic": "no")") != std::string::npos);
    CHECK(r.out.find(R"("coarsely_separable_subexp": "not_applicable")") != std::string::npos);

    r = cli({"classify", "--graph", graph("pentagon-Z2.json"), "--format", "text"});
    CHECK(r.out.find("virtual_surface") != std::string::npos);
}

TEST_CASE("undecided verdicts exit 2") {
    const auto g = parse_graph(R"({"vertices": [{"id": 0, "group": {"abstract": {"order": "infinite"}}},
                                                {"id": 1, "group": {"cyclic": 2}}]})");
    int code = -1;
    const auto json = app::classify_json(g, &code);
    CHECK(code == app::kExitUndecided);
    CHECK(json.find("undecided") != std::string::npos);
}

TEST_CASE("errors exit 1") {
    CHECK(cli({"classify", "--graph", "/nonexistent.json"}).code == 1);
    const auto r = cli({"cut-spheres", "--graph", graph("pentagon-Z2.json")});
    CHECK(r.code == 1);
    CHECK(r.err.find("seed required") != std::string::npos);
    CHECK(cli({"cut-spheres", "--manifest", (kData / "manifests" / "cut-spheres-no-seed.json").string()}).err.find(
              "seed required") != std::string::npos);
    CHECK(cli({"distort", "--graph", graph("pentagon-Z2.json")}).code == 1);
    CHECK(cli({"persist", "--graph", graph("dihedral.json")}).code == 1);
    CHECK(cli({"sep-profile", "--graph", graph("dihedral.json")}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"grow", "--graph", graph("dihedral.json"), "--bogus"}).code == 1);
}

TEST_CASE("grow") {
    auto r = cli({"grow", "--graph", graph("dihedral.json"), "--n-max", "10"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,ball,sphere");
    int n = 0;
    while (std::getline(in, line)) {
        if (n > 0) CHECK(line.substr(line.rfind(',') + 1) == "2");
        ++n;
    }
    CHECK(n == 11);
    r = cli({"grow", "--graph", graph("k2-z2-z3.json"), "--n-max", "5"});
    CHECK(r.out.find("5,6,0") != std::string::npos);
}

TEST_CASE("manifests") {
    CHECK_THROWS_AS(app::parse_manifest(R"({"nope": 1})", "."), Error);
    CHECK_THROWS_AS(app::parse_manifest("[1]", "."), Error);
    const auto p = app::parse_manifest(R"({"command": "grow", "graph": "g.json", "n_max": 4, "delta": 0.25})", "/base");
    CHECK(p.graph == fs::path("/base/g.json"));
    CHECK(p.n_max == 4);
    CHECK(p.delta == "0.25");
    app::Params over;
    over.n_max = 7;
    const auto m = app::merge(p, over);
    CHECK(m.n_max == 7);
    CHECK(m.graph == p.graph);
    CHECK_THROWS_AS(app::run_command("classify", p), Error);
}

TEST_CASE("reruns are byte-identical") {
    const auto a = temp_dir("a");
    const auto b = temp_dir("b");
    for (const auto& dir : {a, b}) {
        CHECK(cli({"cut-spheres", "--graph", graph("pentagon-Z2.json"), "--seed", "4", "--n-max", "5", "--out-dir",
                   dir.string()})
                  .code == 0);
    }
    for (const char* f : {"cut_spheres.csv", "cut_spheres.dat"}) {
        CHECK(read_text_file(a / f) == read_text_file(b / f));
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("distort, persist and sep-profile outputs") {
    const std::string w = "v0:1 v2:1 v0:1 v2:1 v0:1";
    auto r = cli({"distort", "--graph", graph("pentagon-Z2.json"), "--seed", "2", "--n", "5", "--pair", w + "|" + w});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("x,y,extrinsic,intrinsic,in_fit\n" + w + "," + w + ",0,0,") == 0);

    r = cli({"persist", "--graph", graph("dihedral.json"), "--seed", "2", "--r-min", "5", "--r-max", "5", "--t-max", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("violations 0") != std::string::npos);

    r = cli({"sep-profile", "--graph", graph("k2-z2-z3.json"), "--seed", "2"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("COARSESEP_MEM_CAP") {
    ::setenv("COARSESEP_MEM_CAP", "100", 1);
    const auto r = cli({"grow", "--graph", graph("pentagon-Z3.json"), "--n-max", "6"});
    CHECK(r.code == 1);
    CHECK(r.err.find("memory cap") != std::string::npos);
    ::setenv("COARSESEP_MEM_CAP", "abc", 1);
    CHECK(cli({"grow", "--graph", graph("dihedral.json")}).code == 1);
    ::unsetenv("COARSESEP_MEM_CAP");
}
