#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tiling/cli.hpp>
#include <tiling/constructions.hpp>
#include <tiling/graph.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tiling;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Workspace {
public:
    Workspace()
    {
        dir_ = fs::temp_directory_path() / ("tilinglab-cli-" + std::to_string(::getpid()));
        fs::create_directories(dir_);
        write("k3.json", write_graph_json(complete_graph(3)));
        write("k6.json", write_graph_json(complete_graph(6)));
        write("c5.json", write_graph_json(cycle_graph(5)));
        write("c5.txt", write_graph_text(cycle_graph(5)));
        write("bad.txt", "3\n0 1\n0 5\n");
    }
    ~Workspace() { fs::remove_all(dir_); }

    std::string path(const std::string & name) const { return (dir_ / name).string(); }

    void write(const std::string & name, const std::string & text) const
    {
        std::ofstream f(dir_ / name);
        f << text;
    }

private:
    fs::path dir_;
};

const Workspace & ws()
{
    static Workspace w;
    return w;
}

} // namespace

TEST_CASE("homs")
{
    auto a = run({"homs", "--pattern", "K2", "--graph", ws().path("k3.json")});
    CHECK(a.code == 0);
    CHECK(a.out == "6\n");

    auto b = run({"homs", "--pattern", "K3", "--graph", ws().path("c5.json"), "--columns"});
    CHECK(b.code == 0);
    CHECK(b.out == "0\n");

    CHECK(run({"homs", "--pattern", "P3", "--graph", ws().path("k3.json")}).out == "12\n");
    CHECK(run({"homs", "--pattern", "K2", "--graph", ws().path("c5.txt")}).out == "10\n");
}

TEST_CASE("tile, cover, duality")
{
    auto d = run({"duality", "--pattern", "K2", "--graph", ws().path("c5.json")});
    CHECK(d.code == 0);
    CHECK(d.out.starts_with("5/2 = 5/2"));

    auto t = run({"tile", "--integral", "--pattern", "K3", "--graph", ws().path("k6.json")});
    CHECK(t.code == 0);
    CHECK(t.out.starts_with("2\n"));

    auto c = run({"cover", "--pattern", "K3", "--graph", ws().path("c5.json")});
    CHECK(c.code == 0);
    CHECK(c.out.starts_with("0\n"));

    auto f = run({"tile", "--pattern", "K2", "--graph", ws().path("c5.json"), "--format", "json"});
    CHECK(f.code == 0);
    CHECK(f.out.find("\"value\":\"5/2\"") != std::string::npos);
    CHECK(f.out.find("\"certificate_ok\":true") != std::string::npos);

    auto lp = ws().path("c5.lp");
    CHECK(run({"tile", "--pattern", "K2", "--graph", ws().path("c5.json"), "--dump-lp", lp}).code == 0);
    std::ifstream dumped(lp);
    std::string first;
    std::getline(dumped, first);
    CHECK(first == "# exact lp dump v1");

    auto csv = run({"cover", "--pattern", "K2", "--graph", ws().path("c5.json"), "--format", "csv", "--full"});
    CHECK(csv.code == 0);
    CHECK(csv.out.starts_with("value,rows_used,certificate_ok\n5/2,"));
}

TEST_CASE("generators")
{
    auto e = run({"extremal", "--r", "3", "--H", "K3", "--x", "1/6", "--n", "12", "--audit"});
    CHECK(e.code == 0);
    CHECK(e.out.find("parts (2,2,5,3)") != std::string::npos);
    CHECK(e.out.find("tiling 2 = xn = 2") != std::string::npos);

    auto k = run({"k333", "--x", "1/10", "--n", "20"});
    CHECK(k.code == 0);
    CHECK(k.out.find("parts (4,8,7,1)") != std::string::npos);

    auto s = run({"extremal", "--r", "3", "--H", "K3", "--x", "1/7", "--n", "12"});
    CHECK(s.code == 2);
    CHECK(s.err.find("spec error") != std::string::npos);
    CHECK(s.err.find("--x 1/7 --n 14") != std::string::npos);

    auto out = ws().path("ext.json");
    CHECK(run({"extremal", "--H", "K3", "--x", "1/6", "--n", "12", "--out", out}).code == 0);
    auto lg = read_graph_file(out);
    CHECK(lg.graph.order() == 12);
    CHECK(lg.part("V3").size() == 5);

    auto b = run({"blowup", "--graph", ws().path("k3.json"), "--s", "2", "--format", "json"});
    CHECK(b.code == 0);
    CHECK(parse_graph(b.out).graph == blow_up(complete_graph(3), 2));

    auto g = run({"gen-random", "--n", "8", "--p", "1", "--seed", "4", "--format", "json"});
    CHECK(g.code == 0);
    CHECK(parse_graph(g.out).graph == complete_graph(8));
}

TEST_CASE("verify")
{
    auto v = run({"verify", "--pattern", "K2", "--x", "1/8", "--random", "50", "--n", "8", "--p", "1/2", "--seed", "3"});
    CHECK(v.code == 0);
    std::istringstream lines(v.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# tilinglab verify v1");
    std::getline(lines, line);
    CHECK(line == "id,n,x,hypothesis,cover,xn,slack,bound,duality");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.ends_with(",ok"));
    }
    CHECK(rows == 50);

    auto ext = ws().path("ext-verify.json");
    REQUIRE(run({"extremal", "--H", "K3", "--x", "1/6", "--n", "12", "--out", ext}).code == 0);
    auto e = run({"verify", "--pattern", "K3", "--x", "1/6", "--graph", ext});
    CHECK(e.code == 0);
    CHECK(e.out.find(",12,1/6,yes,2,2,0,holds,ok") != std::string::npos);

    auto c = run({"verify", "--pattern", "K3", "--x", "1/6", "--graph", ws().path("c5.json")});
    CHECK(c.code == 0);
    CHECK(c.out.find(",no,0,5/6,-5/6,skipped,ok") != std::string::npos);
}

TEST_CASE("same seed, same bytes")
{
    std::vector<std::string> args{"verify", "--pattern", "P3", "--x", "1/12", "--random", "10", "--n", "7", "--p", "1/2", "--seed", "11"};
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto g1 = run({"gen-random", "--n", "9", "--p", "1/3", "--seed", "5"});
    auto g2 = run({"gen-random", "--n", "9", "--p", "1/3", "--seed", "5"});
    CHECK(g1.out == g2.out);
    CHECK(g1.out != run({"gen-random", "--n", "9", "--p", "1/3", "--seed", "6"}).out);
}

TEST_CASE("exit codes")
{
    // a colouring with more classes than needed lets P3 avoid V1
    CHECK(run({"extremal", "--H", "P3", "--r", "3", "--x", "1/6", "--n", "12", "--audit"}).code == 1);

    CHECK(run({"extremal", "--H", "K3", "--x", "0.5", "--n", "12"}).code == 2);
    CHECK(run({"gen-random", "--n", "5", "--p", "0.25"}).code == 2);
    CHECK(run({"homs", "--pattern", "K2", "--graph", ws().path("missing.json")}).code == 2);
    CHECK(run({"homs", "--pattern", "Q9", "--graph", ws().path("k3.json")}).code == 2);
    CHECK(run({"tile", "--pattern", "K2", "--graph", ws().path("k3.json"), "--max-columns", "-1"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);

    auto bad = run({"homs", "--pattern", "K2", "--graph", ws().path("bad.txt")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 3") != std::string::npos);

    CHECK(run({"tile", "--pattern", "K2", "--graph", ws().path("k6.json"), "--max-columns", "3"}).code == 3);
    CHECK(run({"k333", "--x", "1/10", "--n", "20", "--audit", "--max-nodes", "10"}).code == 3);
    CHECK(run({"k333", "--x", "1/10", "--n", "20", "--audit", "--time-budget-secs", "0"}).code == 3);
}
