#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "helpers.hpp"

using namespace eqbundle;
using namespace testutil;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(EQBUNDLE_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data_path(const std::string& name) { return std::string(EQBUNDLE_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("action file parsing") {
    auto af = parse_action_file(R"act(
# a comment
[group]
name = "Q8/D2"
kind = "permutation"
degree = 8
generators = ["(1 2 5 6)(3 4 7 8)", "(1 3 5 7)(2 8 6 4)"]
labels = ["i", "j"]

[rho]
dets = [1, -1]
turns = ["1/2", "0"]
)act");
    CHECK(af.name == "Q8/D2");
    CHECK(af.degree == 8);
    CHECK(af.generators.size() == 2);
    auto act = action_from_file(af);
    CHECK(act.image == ImageKind{true, 2});

    CHECK_THROWS_AS(parse_action_file("[group]\nkind = \"nope\"\n[rho]\ndets=[]\nturns=[]"),
                    ParseError);
    CHECK_THROWS_AS(parse_action_file("[group]\nkind = \"permutation\"\ndegree = 2\n"
                                      "generators = [\"(1 2)\"]\n[rho]\ndets = [1, 1]\n"
                                      "turns = [\"0\", \"0\"]"),
                    ParseError);
    // cayley form
    auto cf = parse_action_file(
        "[group]\nkind = \"cayley\"\norder = 2\ntable = [0, 1, 1, 0]\ngenerators = [1]\n"
        "[rho]\ndets = [-1]\nturns = [\"0\"]");
    auto cact = action_from_file(cf);
    CHECK(cact.image == ImageKind{true, 1});
}

TEST_CASE("embedded corpus matches the shipped data files") {
    for (const auto& [name, content] : builtin_corpus()) {
        std::ifstream in(data_path(name), std::ios::binary);
        REQUIRE_MESSAGE(in.good(), name);
        std::ostringstream os;
        os << in.rdbuf();
        CHECK_MESSAGE(os.str() == content, name);
    }
}

TEST_CASE("cli subcommands and exit codes") {
    auto classify = run_cli("classify " + data_path("z2_reflection.action"));
    CHECK(classify.exit_code == 0);
    CHECK(classify.output.find("image D_1") != std::string::npos);
    CHECK(classify.output.find("quadruple") != std::string::npos);

    auto chartab = run_cli("chartab " + data_path("q8_d2.action"));
    CHECK(chartab.exit_code == 0);
    CHECK(chartab.output.find("character table of G (order 8, 5 classes)") != std::string::npos);

    auto z2tab = run_cli("chartab " + data_path("z2_reflection.action"));
    CHECK(z2tab.exit_code == 0);
    CHECK(z2tab.output.find("character table of G (order 2, 2 classes)") != std::string::npos);

    auto count = run_cli("count " + data_path("z2_reflection.action") + " --fiber 0:1");
    CHECK(count.exit_code == 0);
    CHECK(count.output.find("isomorphism classes: 4") != std::string::npos);

    auto count9 = run_cli("count " + data_path("q8_d2.action") + " --fiber 0:2 --enumerate");
    CHECK(count9.exit_code == 0);
    CHECK(count9.output.find("isomorphism classes: 9") != std::string::npos);
    CHECK(count9.output.find("class 8:") != std::string::npos);

    auto empty_fiber = run_cli("count " + data_path("q8_d2.action"));
    CHECK(empty_fiber.exit_code == 0);
    CHECK(empty_fiber.output.find("isomorphism classes: 1") != std::string::npos);

    auto kg = run_cli("kgroup " + data_path("z2_reflection.action") + " --reduced");
    CHECK(kg.exit_code == 0);
    CHECK(kg.output.find("rank 1") != std::string::npos);

    // precondition error: --reduced without a fixed point
    auto bad_reduced = run_cli("kgroup " + data_path("z4_rotation.action") + " --reduced");
    CHECK(bad_reduced.exit_code == 3);

    // malformed rho: exit 2 with the witness pair
    std::string tmp = std::string(EQBUNDLE_BUILD_DIR) + "/bad_action.action";
    {
        std::ofstream out(tmp);
        out << "[group]\nkind = \"permutation\"\ndegree = 4\ngenerators = [\"(1 2 3 4)\"]\n"
            << "[rho]\ndets = [1]\nturns = [\"1/3\"]\n";
    }
    auto bad = run_cli("classify " + tmp);
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("rho(x*y)") != std::string::npos);

    auto missing = run_cli("classify /nonexistent/file.action");
    CHECK(missing.exit_code == 2);

    auto usage = run_cli("frobnicate");
    CHECK(usage.exit_code == 2);
}

TEST_CASE("json output round-trips") {
    for (const std::string sub : {"classify", "chartab", "kgroup"}) {
        auto r = run_cli(sub + " " + data_path("q8_d2.action") + " --json");
        REQUIRE(r.exit_code == 0);
        auto parsed = nlohmann::json::parse(r.output);
        CHECK(nlohmann::json::parse(parsed.dump(2)) == parsed);
    }
    auto r = run_cli("count " + data_path("s3_sign.action") + " --fiber 0:1,1:1 --enumerate --json");
    REQUIRE(r.exit_code == 0);
    auto parsed = nlohmann::json::parse(r.output);
    CHECK(parsed["count"] == "4");
    CHECK(parsed["classes"].size() == 4);

    // the raw-character form: orbit {omega, omega-bar} needs equal multiplicities
    auto good = run_cli("count " + data_path("s3_sign.action") + " --fiber-irr 1:1,2:1");
    CHECK(good.exit_code == 0);
    auto bad = run_cli("count " + data_path("s3_sign.action") + " --fiber-irr 1:1");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("selftest is deterministic across runs") {
    auto a = run_cli("selftest");
    auto b = run_cli("selftest");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("selftest:") != std::string::npos);
}
