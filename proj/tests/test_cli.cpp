#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "sgf/cli.hpp"
#include "sgf/counting.hpp"
#include "sgf/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "sgf");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = sgf::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("sgf_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_CASE("analyze-motif") {
  auto tri = run({"analyze-motif", "triangle"});
  REQUIRE(tri.code == 0);
  CHECK(contains(tri.out, "automorphisms: 6"));
  CHECK(contains(tri.out, "m(H)  = 1 (1.000000)"));
  CHECK(contains(tri.out, "m1(H) = 3/2 (1.500000)"));
  CHECK(contains(tri.out, "strictly strongly balanced: yes"));

  auto fig = run({"analyze-motif", "fig1b"});
  REQUIRE(fig.code == 0);
  CHECK(contains(fig.out, "m1(H) = 5/3"));
  CHECK(contains(fig.out, "m(H)  = 5/4"));
  CHECK(contains(fig.out, "strictly balanced: no"));

  auto js = run({"analyze-motif", "c4", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto j = sgf::Json::parse(js.out);
  CHECK(j["automorphisms"] == 8);
  CHECK(j["m"] == "1");
  CHECK(j["m1"] == "4/3");

  CHECK(run({"analyze-motif", "/nonexistent/motif.json"}).code == 2);
  CHECK(run({"analyze-motif", "triangle", "--format", "xml"}).code == 2);
  CHECK(run({"analyze-motif"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("analyze-motif reads motif files") {
  TempDir dir("motif");
  spit(dir.path / "p3.json", R"({"vertices": 3, "edges": [[1, 2], [2, 3]]})");
  auto r = run({"analyze-motif", (dir.path / "p3.json").string()});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "automorphisms: 2"));
  CHECK(contains(r.out, "m1(H) = 1 "));
  spit(dir.path / "loop.json", R"({"vertices": 2, "edges": [[1, 1]]})");
  CHECK(run({"analyze-motif", (dir.path / "loop.json").string()}).code == 2);
  spit(dir.path / "bad.json", "{not json");
  CHECK(run({"analyze-motif", (dir.path / "bad.json").string()}).code == 2);
}

TEST_CASE("analyze-graphon") {
  auto asym = run({"analyze-graphon", "--graphon", "W_asym", "--motif", "edge"});
  REQUIRE(asym.code == 0);
  CHECK(contains(asym.out, "t(H,W) = 0.4\n"));
  CHECK(contains(asym.out, "H-regular: no"));
  CHECK(contains(asym.out, "xi1 = 0.04"));
  CHECK(contains(asym.out, "kappa(c=1) = 0.8333333333"));

  for (auto [w, m] : {std::pair{"const:0.5", "triangle"}, std::pair{"W_sym", "edge"}}) {
    auto r = run({"analyze-graphon", "--graphon", w, "--motif", m});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "H-regular: yes"));
    CHECK(contains(r.out, "kappa(c=1) = undefined (regular case)"));
  }
  CHECK(run({"analyze-graphon", "--graphon", "W_nope", "--motif", "edge"}).code == 2);
  CHECK(run({"analyze-graphon", "--graphon", "const:1.5", "--motif", "edge"}).code == 2);
}

TEST_CASE("sample, dump and count") {
  TempDir dir("sample");
  const auto path = (dir.path / "g.txt").string();
  REQUIRE(run({"sample", "--graphon", "W_asym", "--n", "60", "--rho", "0.4", "--seed", "9", "--out", path}).code == 0);
  auto stdout_dump = run({"sample", "--graphon", "W_asym", "--n", "60", "--rho", "0.4", "--seed", "9"});
  CHECK(stdout_dump.out == slurp(path));

  std::ifstream in(path);
  const auto g = sgf::read_graph_dump(in);
  const auto direct = sgf::sample(*sgf::named_graphon("W_asym"), 60, 0.4, 9);
  CHECK(g.edges == direct.edges);
  CHECK(g.latents.coords == direct.latents.coords);
  CHECK(g.latents.blocks == direct.latents.blocks);

  auto tri = run({"count", "--graph", path, "--motif", "triangle"});
  REQUIRE(tri.code == 0);
  CHECK(tri.out == std::to_string(sgf::count(direct, sgf::Motif::complete(3))) + "\n");

  std::ostringstream again;
  sgf::write_graph_dump(again, g);
  CHECK(again.str() == slurp(path));

  CHECK(run({"sample", "--graphon", "W_asym", "--n", "10", "--rho", "0", "--seed", "1"}).code == 2);
  CHECK(run({"sample", "--graphon", "W_asym", "--n", "0", "--rho", "0.5", "--seed", "1"}).code == 2);
  CHECK(run({"count", "--graph", (dir.path / "missing").string(), "--motif", "edge"}).code == 2);
  spit(dir.path / "dup.txt", "3 0.5 1\n1 2\n1 2\nlatents\n0.1 1\n0.2 1\n0.3 1\n");
  CHECK(run({"count", "--graph", (dir.path / "dup.txt").string(), "--motif", "edge"}).code == 2);
}

TEST_CASE("decompose") {
  auto r = run({"decompose", "--graphon", "W_asym", "--motif", "triangle", "--n", "30", "--rho", "0.3", "--seed", "42"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "expected = 13.7025\n"));
  const auto d = sgf::decompose(sgf::sample(*sgf::named_graphon("W_asym"), 30, 0.3, 42), sgf::Motif::complete(3),
                                *sgf::named_graphon("W_asym"));
  std::ostringstream x;
  x << "x = " << d.x << '\n';
  CHECK(contains(r.out, x.str()));
}

TEST_CASE("run-experiment output is reproducible") {
  TempDir dir("experiment");
  const auto cfg = dir.path / "cfg.json";
  spit(cfg, R"({"kind": "clt", "motif": "triangle", "graphon": "W_asym",
                "schedule": {"amplitude": 1.0, "exponent": 0.5},
                "n_values": [30, 60], "replicates": 80, "seed": 11, "keep_replicates": true})");
  const auto a = dir.path / "a", b = dir.path / "b", c = dir.path / "c";
  REQUIRE(run({"run-experiment", "--config", cfg.string(), "--out-dir", a.string(), "--threads", "1"}).code == 0);
  REQUIRE(run({"run-experiment", "--config", cfg.string(), "--out-dir", b.string(), "--threads", "3"}).code == 0);
  for (const char* f : {"summary.json", "summary.csv", "replicates.csv"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }

  REQUIRE(run({"run-experiment", "--config", cfg.string(), "--out-dir", c.string(), "--format", "json", "--seed", "12"}).code == 0);
  CHECK(fs::exists(c / "summary.json"));
  CHECK_FALSE(fs::exists(c / "summary.csv"));
  CHECK(slurp(c / "summary.json") != slurp(a / "summary.json"));

  const auto doc = sgf::Json::parse(slurp(a / "summary.json"));
  const auto back = sgf::result_from_json(doc);
  CHECK(sgf::result_to_json(back).dump(2) + "\n" == slurp(a / "summary.json"));
  CHECK(back.cells.size() == 2);
  CHECK(doc["config"]["seed"] == 11);
  CHECK_FALSE(doc.contains("runtime_seconds"));

  spit(cfg, R"({"kind": "clt", "motif": "triangle", "graphon": "W_asym",
                "schedule": {"amplitude": 1.0, "exponent": 0.5},
                "n_values": [30], "replicates": 0, "seed": 1})");
  CHECK(run({"run-experiment", "--config", cfg.string(), "--out-dir", a.string()}).code == 2);
  spit(cfg, R"({"kind": "clt", "motif": "triangle", "graphon": "W_asym",
                "schedule": {"amplitude": 1.0, "exponent": 1.8}, "n_values": [30], "replicates": 5, "seed": 1})");
  CHECK(run({"run-experiment", "--config", cfg.string(), "--out-dir", a.string()}).code == 2);
  spit(cfg, "{\"kind\": ");
  CHECK(run({"run-experiment", "--config", cfg.string(), "--out-dir", a.string()}).code == 2);
  CHECK(run({"run-experiment", "--config", (dir.path / "none.json").string(), "--out-dir", a.string()}).code == 2);
}

TEST_CASE("config json round trip") {
  sgf::ExperimentConfig cfg;
  cfg.kind = sgf::ExperimentKind::critical_kappa;
  cfg.motif = *sgf::named_motif("fig1b");
  cfg.graphon = *sgf::named_graphon("W_asym");
  cfg.n_values = {100, 200};
  cfg.replicates = 17;
  cfg.seed = 0xFFFFFFFFFFFFFFFFull;
  cfg.critical_c = 0.75;
  const auto j = sgf::config_to_json(cfg);
  const auto back = sgf::config_from_json(j);
  CHECK(back.kind == cfg.kind);
  CHECK(back.motif == cfg.motif);
  CHECK(back.graphon.block_measures() == cfg.graphon.block_measures());
  CHECK(back.graphon.values() == cfg.graphon.values());
  CHECK(back.n_values == cfg.n_values);
  CHECK(back.seed == cfg.seed);
  CHECK(back.critical_c == cfg.critical_c);
  CHECK(sgf::config_to_json(back) == j);
}
