#include <doctest.h>

#include "support.hpp"
#include "wstab/cli.hpp"

#include <filesystem>

using namespace wstab;
using namespace wstab::testing;

namespace {
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "wstab_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}
}  // namespace

TEST_CASE("validate exit codes") {
    CHECK(run({"validate", data_path("two_node.json")}).code == 0);
    auto leaf = run({"validate", data_path("bad_leaf.json")});
    CHECK(leaf.code == 2);
    CHECK(contains(leaf.out, "component 3"));
    auto bad = run({"validate", data_path("malformed.json")});
    CHECK(bad.code == 1);
    CHECK(contains(bad.err, "malformed JSON"));
    CHECK(run({"validate", data_path("does_not_exist.json")}).code != 0);
    CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("stability report") {
    auto ok = run({"stability", data_path("weierstrass_n1_marked.json")});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "verdict: STABLE"));
    CHECK(contains(ok.out, "input: sha256:"));
    CHECK(run({"stability", data_path("weierstrass_n1.json")}).code == 2);
    CHECK(run({"validate", data_path("bad_cap.json")}).code == 2);
    CHECK(run({"stability", data_path("bad_cap.json")}).code == 3);
    CHECK(run({"stability", data_path("two_node.json"), "--weights", "1/2,1/2"}).code == 2);

    auto js = run({"--json", "stability", data_path("two_node.json")});
    REQUIRE(js.code == 0);
    auto doc = Json::parse(js.out);
    CHECK(doc["stability"]["verdict"] == "STABLE");
    CHECK(doc["input_digest"].get<std::string>().rfind("sha256:", 0) == 0);
}

TEST_CASE("reduce writes a trace and a filmstrip") {
    auto trace = scratch("trace.json");
    auto dot = scratch("film.dot");
    auto r = run({"reduce", data_path("two_node.json"), "--from", "1/2,3/4", "--to", "1/2,1/4", "--trace",
                  trace.string(), "--dot", dot.string()});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "moves: 2"));
    CHECK(contains(r.out, "LaNaveFlip"));

    auto doc = Json::parse(slurp(trace));
    REQUIRE(doc["moves"].size() == 2);
    CHECK(doc["moves"][1]["kind"] == "DivisorialContractionPseudoelliptic");

    std::string film = slurp(dot);
    int frames = 0;
    for (std::size_t at = film.find("graph frame_"); at != std::string::npos; at = film.find("graph frame_", at + 1)) ++frames;
    CHECK(frames == 3);
}

TEST_CASE("output is deterministic") {
    auto first = run({"--json", "reduce", data_path("three_chain.json"), "--to", "1/2,1/10"});
    auto second = run({"--json", "reduce", data_path("three_chain.json"), "--to", "1/2,1/10"});
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
}

TEST_CASE("walls, threshold and no-pseudo") {
    auto w = run({"walls", data_path("one_component_walls.json")});
    CHECK(w.code == 0);
    CHECK(contains(w.out, "2*s - 3*a1 + 1 = 0"));
    CHECK(contains(w.out, "s - 3*a1 + 1 = 0"));

    auto t = run({"threshold", data_path("two_node.json")});
    CHECK(t.code == 0);
    CHECK(contains(t.out, "threshold: 1/9"));
    CHECK(contains(run({"threshold", data_path("interior_n2.json")}).out, "threshold: infinity"));
    CHECK(run({"threshold", data_path("two_node.json"), "--weights", "1/2,2/3"}).code == 3);

    auto n = run({"no-pseudo", data_path("two_node.json"), "--fiber-weights", "1/2"});
    CHECK(n.code == 0);
    CHECK(contains(n.out, "s_tilde: 1/4"));
}
