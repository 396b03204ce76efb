#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "multfam/cli.hpp"
#include "multfam/report.hpp"

using namespace multfam;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string &name, const std::string &text)
{
    const auto dir = std::filesystem::temp_directory_path() / "multfam_cli_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << text;
    return path.string();
}

// Every object carrying "num" also carries "den" and "decimal" as strings.
bool fractions_complete(const Json &j)
{
    if (j.is_object()) {
        if (j.contains("num") && !(j["num"].is_string() && j.contains("den") && j["den"].is_string() &&
                                   j.contains("decimal") && j["decimal"].is_string())) {
            return false;
        }
        for (const auto &[k, v] : j.items()) {
            if (!fractions_complete(v)) {
                return false;
            }
        }
    } else if (j.is_array()) {
        for (const auto &v : j) {
            if (!fractions_complete(v)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("cli: mult and input errors")
{
    const auto ideal = write_temp("x2y3.txt", "vars = 2\ngens = [[2,0],[0,3]]\n");
    auto r = run({"mult", ideal});
    CHECK(r.code == 0);
    CHECK(r.out.find("e(I) = 6") != std::string::npos);

    auto j = run({"mult", ideal, "--format", "json"});
    CHECK(j.code == 0);
    auto doc = Json::parse(j.out);
    CHECK(doc["multiplicity"]["num"] == "6");
    CHECK(doc["multiplicity"]["den"] == "1");
    CHECK(doc["passed"] == true);

    const auto bad = write_temp("bad.txt", "vars = 2\ngens = [[2]]\n");
    auto b = run({"mult", bad});
    CHECK(b.code == 2);
    CHECK(b.err.find("exponent arity") != std::string::npos);
    CHECK(b.err.find(":2:") != std::string::npos);

    CHECK(run({"mult", "/nonexistent.txt"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"mult", ideal, "--format", "yaml"}).code == 2);
    CHECK(run({"mult", ideal, "--bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    const auto notprimary = write_temp("np.txt", "vars = 2\ngens = [[1,0]]\n");
    CHECK(run({"mult", notprimary}).code == 2);
}

TEST_CASE("cli: csv and --out")
{
    const auto ideal = write_temp("x2y3.txt", "vars = 2\ngens = [[2,0],[0,3]]\n");
    auto r = run({"mult-seq", ideal, "--mmax", "6", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,value_decimal,value_fraction\n", 0) == 0);
    CHECK(r.out.find("4,7.5,15/2\n") != std::string::npos);

    const auto out = (std::filesystem::temp_directory_path() / "multfam_cli_tests" / "out.json").string();
    std::filesystem::remove(out);
    CHECK(run({"mult", ideal, "--format", "json", "--out", out}).code == 0);
    std::ifstream in(out);
    CHECK(Json::parse(in)["command"] == "mult");
    CHECK(run({"mult", ideal, "--out", "/nonexistent/dir/x"}).code == 2);
}

TEST_CASE("cli: json output is deterministic and carries fractions")
{
    const auto F = write_temp("f.txt", "kind = adic\nvars = 2\nideal = [[2,0],[0,3]]\n");
    const auto G = write_temp("g.txt", "kind = twist\nvars = 2\nideal = [[2,0],[0,3]]\nc = \"3/2\"\n");
    const auto V = write_temp("v.txt", "kind = volex\nd = 2\nschedule = builtin\n");
    const auto C = write_temp("c.txt", "size = 3\nprox = [[2,1],[3,2],[3,1]]\ntargets = [\"2\", \"3\", \"6\"]\n");
    const std::vector<std::vector<std::string>> commands = {
        {"minkowski", F, G},    {"family-mult", V, "--nmax", "24"}, {"family-vol", C},
        {"value", F},           {"saturate", F, "--levels", "3"},   {"closure", G, "--levels", "3"},
        {"blowup", C},          {"reproduce", "reesex"},            {"suite", "--seed", "3", "--pairs", "4"},
    };
    for (auto args : commands) {
        args.push_back("--format");
        args.push_back("json");
        INFO(args[0]);
        auto a = run(args);
        auto b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        auto j = Json::parse(a.out);
        CHECK(fractions_complete(j));
        CHECK(j["passed"] == true);
    }
}

TEST_CASE("cli: command results")
{
    const auto I = write_temp("m.txt", "vars = 2\ngens = [[1,0],[0,1]]\n");
    const auto J = write_temp("x2y3.txt", "vars = 2\ngens = [[2,0],[0,3]]\n");
    auto mixed = Json::parse(run({"mixed", I, J, "--format", "json"}).out);
    CHECK(mixed["e_product"]["num"] == "11");
    CHECK(mixed["coefficients"].size() == 3);

    const auto C = write_temp("c.txt", "size = 3\nprox = [[2,1],[3,2],[3,1]]\ntargets = [\"2\", \"3\", \"6\"]\n");
    auto blow = Json::parse(run({"blowup", C, "--format", "json"}).out);
    CHECK(blow["unloaded"]["values"] == Json::parse("[2,3,6]"));
    CHECK(blow["unloaded"]["colength"]["num"] == "5");
    CHECK(blow["unloaded"]["multiplicity"]["num"] == "6");

    const auto R = write_temp("rees_f.txt", "kind = adic\nvars = 1\nideal = [[1]]\nshift = 1\nvaluations = [[1]]\n");
    const auto S = write_temp("rees_g.txt", "kind = adic\nvars = 1\nideal = [[1]]\n");
    auto rees = Json::parse(run({"rees", R, S, "--format", "json"}).out);
    CHECK(rees["comparable"] == true);
    CHECK(rees["saturations_equal"] == true);
    CHECK(rees["closures_equal"] == false);

    const auto cf = write_temp("cf.txt", "branches = 2\norders = [3, 1]\n");
    const auto cg = write_temp("cg.txt", "branches = 2\norders = [1, 3]\n");
    auto curve = Json::parse(run({"curve", cf, cg, "--format", "json"}).out);
    CHECK(curve["minkowski_equality"] == true);
    CHECK(curve["all_proportional"] == false);

    auto volex = Json::parse(run({"reproduce", "volex", "--format", "json"}).out);
    CHECK(volex["example"] == "volex");
    CHECK(volex["passed"] == true);
    CHECK(run({"reproduce", "nope"}).code == 2);
}

TEST_CASE("cli: audits")
{
    const auto T = write_temp("t.txt", "kind = table\nvars = 1\nlevels = [[[1]], [[2]], [[4]]]\n");
    auto r = run({"family-mult", T});
    CHECK(r.code == 2);
    CHECK(r.err.find("I_1 I_2") != std::string::npos);

    const auto sh = write_temp("sh.txt", "kind = adic\nvars = 1\nideal = [[1]]\n");
    CHECK(run({"family-mult", sh, "--audit", "30"}).code == 0);

    // (t^2)^n inside (t)^n
    const auto big = write_temp("big.txt", "kind = adic\nvars = 1\nideal = [[2]]\n");
    CHECK(run({"rees", big, sh}).code == 0);
}
