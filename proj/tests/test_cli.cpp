#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "netfar/generator.hpp"
#include "netfar/oracle.hpp"

using namespace netfar;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("netfar_cli_" + name + ".txt");
  std::ofstream(path) << text;
  return path.string();
}

const std::string kSquarePendant = "edge v1 v2 1\nedge v2 v3 1\nedge v3 v4 1\nedge v4 v1 1\nedge v1 t 1\n";

}  // namespace

TEST_CASE("classify") {
  const Run tri = run({"classify", write_temp("tri", "edge a b 1\nedge b c 1\nedge c a 1\n"), "--json"});
  CHECK(tri.code == 0);
  CHECK(tri.out == "{\"class\":\"cycle\",\"n\":3,\"m\":3,\"bags\":1,\"hinges\":0}\n");
  const Run sq = run({"classify", write_temp("sq", kSquarePendant)});
  CHECK(sq.out.find("class: unicyclic") != std::string::npos);
  const Run k4 = run({"classify", write_temp("k4", "edge a b 1\nedge a c 1\nedge a d 1\nedge b c 1\nedge b d 1\n"
                                                   "edge c d 1\n")});
  CHECK(k4.out.find("class: general") != std::string::npos);
  CHECK(k4.out.find("only oracle queries") != std::string::npos);
}

TEST_CASE("query") {
  const std::string file = write_temp("sq", kSquarePendant);
  CHECK(run({"query", file, "--edge", "t", "v1", "--lambda", "0"}).out == "eccentricity: 3\n");
  const Run far = run({"query", file, "--edge", "v1", "t", "--lambda", "1", "--mode", "farthest", "--json"});
  CHECK(far.out ==
        "{\"mode\":\"farthest\",\"query\":{\"u\":\"t\",\"v\":\"v1\",\"lambda\":0.0},\"eccentricity\":3.0,"
        "\"points\":[{\"u\":\"v2\",\"v\":\"v3\",\"lambda\":1.0,\"distance\":3.0}]}\n");
  const Run mid = run({"query", file, "--edge", "v2", "v3", "--lambda", "0.5", "--mode", "count"});
  CHECK(mid.out == "count: 1\n");
  CHECK(run({"query", file, "--edge", "v3", "v2", "--lambda", "0.5"}).out == "eccentricity: 2.5\n");
}

TEST_CASE("exit codes") {
  const std::string k4 =
      write_temp("k4", "edge a b 1\nedge a c 1\nedge a d 1\nedge b c 1\nedge b d 1\nedge c d 1\n");
  CHECK(run({"classify", write_temp("bad", "edge a b 0\n")}).code == 1);
  CHECK(run({"classify", write_temp("syntax", "edge a b\n")}).code == 1);
  CHECK(run({"classify", "/nonexistent/file"}).code == 1);
  CHECK(run({"query", k4, "--edge", "a", "b", "--lambda", "0.5"}).code == 2);
  CHECK(run({"query", k4, "--edge", "a", "b", "--lambda", "0.5", "--oracle"}).code == 0);
  const std::string sq = write_temp("sq", kSquarePendant);
  CHECK(run({"query", sq, "--edge", "v1", "v3", "--lambda", "0.5"}).code == 3);
  CHECK(run({"query", sq, "--edge", "v1", "x", "--lambda", "0.5"}).code == 3);
  CHECK(run({"query", sq, "--edge", "v1", "v2", "--lambda", "2"}).code == 3);
  CHECK(run({"check", "general", "3"}).code == 2);
}

TEST_CASE("heatmap") {
  const Run path = run({"heatmap", write_temp("ab", "edge a b 2\n"), "--samples", "3"});
  CHECK(path.out == "u,v,lambda,ecc\na,b,0,2\na,b,0.25,1.5\na,b,0.5,1\na,b,0.75,1.5\na,b,1,2\n");
  const Run tri = run({"heatmap", write_temp("tri", "edge a b 1\nedge b c 1\nedge c a 1\n"), "--samples", "1"});
  std::istringstream rows(tri.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "u,v,lambda,ecc");
  int count = 0;
  while (std::getline(rows, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "1.5");
    ++count;
  }
  CHECK(count == 9);
}

TEST_CASE("heatmap rows match the oracle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Network net = generate_network(NetworkClass::Cactus, 30, seed);
    const Run r = run({"heatmap", write_temp("cactus", format_network(net)), "--samples", "4"});
    REQUIRE(r.code == 0);
    std::istringstream rows(r.out);
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) {
      std::stringstream ss(line);
      std::string u, v, lambda, ecc;
      std::getline(ss, u, ',');
      std::getline(ss, v, ',');
      std::getline(ss, lambda, ',');
      std::getline(ss, ecc, ',');
      const NetworkPoint p = canonical_point(net, u, v, std::stod(lambda));
      CHECK(std::abs(std::stod(ecc) - oracle::eccentricity(net, p)) <= 1e-9 * (1 + std::stod(ecc)));
    }
  }
}

TEST_CASE("centers") {
  CHECK(run({"centers", write_temp("ab", "edge a b 2\n")}).out == "min_eccentricity: 1\nsegment a b 0.5 0.5\n");
  const Run tri = run({"centers", write_temp("tri", "edge a b 1\nedge b c 1\nedge c a 1\n"), "--json"});
  CHECK(tri.out ==
        "{\"min_eccentricity\":1.5,\"vertices\":[],\"segments\":[{\"u\":\"a\",\"v\":\"b\",\"lambda0\":0.0,"
        "\"lambda1\":1.0},{\"u\":\"a\",\"v\":\"c\",\"lambda0\":0.0,\"lambda1\":1.0},{\"u\":\"b\",\"v\":\"c\","
        "\"lambda0\":0.0,\"lambda1\":1.0}]}\n");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::string file = write_temp("uni", format_network(generate_network(NetworkClass::UniCyclic, 40, seed)));
    CHECK(run({"centers", file, "--json"}).out == run({"centers", file, "--json", "--oracle"}).out);
  }
}

TEST_CASE("oracle and structure answers print alike") {
  const NetworkClass classes[] = {NetworkClass::Tree, NetworkClass::Cycle, NetworkClass::UniCyclic,
                                  NetworkClass::Cactus};
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Network net = generate_network(classes[seed % 4], 40, seed);
    const std::string file = write_temp("rand", format_network(net));
    Rng rng(seed);
    for (int k = 0; k < 5; ++k) {
      const auto [e, lambda] = net.display_form(random_point(net, rng));
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", lambda);
      for (const char* mode : {"ecc", "farthest", "count"}) {
        const std::vector<std::string> args{"query",  file,   "--edge",           net.name(net.edge(e).u),
                                            net.name(net.edge(e).v), "--lambda", buf, "--mode",
                                            mode,     "--json"};
        std::vector<std::string> with_oracle = args;
        with_oracle.push_back("--oracle");
        CHECK(run(args).out == run(with_oracle).out);
      }
    }
  }
}

TEST_CASE("check is deterministic and reports counts") {
  const Run a = run({"check", "unicyclic", "5", "7", "--json"});
  const Run b = run({"check", "unicyclic", "--trials", "5", "--seed", "7", "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"passed\":5") != std::string::npos);
}

TEST_CASE("bench prints one row per size") {
  const Run r = run({"bench", "tree", "--sizes", "64,128", "--queries", "10", "--json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"rows\":[{\"n\":64") != std::string::npos);
  CHECK(run({"bench", "tree", "--sizes", "128,64"}).code == 1);
}
