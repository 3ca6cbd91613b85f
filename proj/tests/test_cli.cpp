#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hyperperc/config.hpp"
#include "hyperperc/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBinary = HYPERPERC_CLI_PATH;

fs::path scratch_dir()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("hyperperc_cli_tests_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path_in(const std::string& name) { return (scratch_dir() / name).string(); }

int run_cli(const std::string& args)
{
    const std::string cmd = kBinary + " " + args + " 2>" + path_in("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("fnv1a64 matches published test vectors")
{
    CHECK(hyperperc::fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(hyperperc::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hyperperc::fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config hash ignores output and thread settings only")
{
    json a = {{"command", "percolate"}, {"p", {0.5}}, {"seed", 1}, {"threads", 1}, {"out", "a.csv"}};
    json b = a;
    b["threads"] = 8;
    b["out"] = "elsewhere.csv";
    b["report"] = "r.csv";
    CHECK(hyperperc::config_hash(a) == hyperperc::config_hash(b));
    b["seed"] = 2;
    CHECK(hyperperc::config_hash(a) != hyperperc::config_hash(b));
    CHECK(hyperperc::config_hash(a).size() == 16);
}

TEST_CASE("generate writes a graph that round-trips byte for byte")
{
    const auto file = path_in("g.json");
    REQUIRE(run_cli("generate --p 4 --q 5 --radius 3 --star-edges --out " + file) == 0);
    const auto text = slurp(file);
    auto doc = hyperperc::read_graph_string(text);
    CHECK(hyperperc::write_graph_string(doc) == text);
    CHECK(doc.has_star_edges);
    CHECK(doc.meta.at("config_hash").get<std::string>() == hyperperc::config_hash(doc.meta.at("config")));

    const auto file2 = path_in("g2.json");
    REQUIRE(run_cli("matching --graph " + file + " --out " + file2) == 0);
    auto summary = json::parse(slurp(file2));
    CHECK(summary.at("vertex_count").get<std::size_t>() == doc.graph.vertex_count());
    CHECK(summary.at("star_edge_count").get<std::size_t>() == doc.star_edges.size());
}

TEST_CASE("percolate CSV is reproducible, thread independent, and re-runs from a saved config")
{
    const auto a = path_in("a.csv"), b = path_in("b.csv"), c = path_in("c.csv"), cfg = path_in("cfg.json");
    const std::string base = "percolate --tiling 3,7,5 --p 0.3,0.55,0.8 --samples 4";
    const std::string args = base + " --seed 7";
    REQUIRE(run_cli(args + " --out " + a + " --save-config " + cfg) == 0);
    REQUIRE(run_cli(args + " --threads 3 --out " + b) == 0);
    REQUIRE(run_cli("run " + cfg + " --out " + c) == 0);
    const auto text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text == slurp(c));

    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# config_hash=" + hyperperc::config_hash(json::parse(slurp(cfg))));
    std::getline(in, line);
    CHECK(line == "p,sample,state,clusters_touching,largest_size");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3 * 4 * 2);

    REQUIRE(run_cli(base + " --seed 8 --out " + b) == 0);
    CHECK(text != slurp(b));
}

TEST_CASE("percolate at p = 0 and p = 1 reports the trivial configurations")
{
    const auto f = path_in("trivial.csv");
    REQUIRE(run_cli("percolate --tiling 3,7,3 --p 0,1 --samples 1 --out " + f) == 0);
    const auto text = slurp(f);
    CHECK(text.find("\n0,0,1,0,0\n") != std::string::npos);
    CHECK(text.find("\n1,0,0,0,0\n") != std::string::npos);
}

TEST_CASE("JSON outputs carry the config hash")
{
    for (const std::string cmd : {"walk --tiling 3,7,4 --steps 10", "phi --tiling 3,7,4 --radius 1",
                                  "two-point --tiling 3,7,3 --samples 100", "tree --tiling 3,7,5 --depth 3"}) {
        const auto f = path_in("o.json");
        REQUIRE(run_cli(cmd + " --out " + f) == 0);
        auto j = json::parse(slurp(f));
        CHECK(j.at("config_hash").get<std::string>() == hyperperc::config_hash(j.at("config")));
    }
}

TEST_CASE("exit codes")
{
    CHECK(run_cli("generate --radius 2 --out " + path_in("x.json")) == 0);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("percolate --no-such-flag") == 2);
    CHECK(run_cli("percolate --p 1.5") == 2);
    CHECK(run_cli("two-point --tiling 3,7,2 --v 100000") == 2);
    CHECK(run_cli("generate --p 4 --q 4 --radius 2") == 2);
    CHECK(run_cli("walk --graph " + path_in("missing.json")) == 2);
    {
        std::ofstream(path_in("bad.json")) << "{\"format\": \"hyperperc-graph\", \"rotation\": [[1], []]}";
        CHECK(run_cli("matching --graph " + path_in("bad.json")) == 2);
    }
    CHECK(run_cli("generate --radius 30 --budget 1000") == 3);
    CHECK(run_cli("phi --tiling 3,7,6 --radius 4") == 3);
    CHECK(run_cli("decay --tiling 3,7,8 --p 0 --samples 50") == 3);
}
