#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using gaborlab::cli::run_cli;
using nlohmann::json;
namespace fs = std::filesystem;

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

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name, const std::string& contents = "") {
  fs::path p = fs::temp_directory_path() / ("gaborlab_cli_" + name);
  if (!contents.empty()) std::ofstream(p) << contents;
  return p;
}

}  // namespace

TEST_CASE("cli density") {
  Run r = run({"density", "--family", "sep2d", "--a", "1/2", "--b", "1/2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["density"] == "4");
  CHECK(j["approx"] == 4.0);
  CHECK(j["schema"] == 1);
  CHECK(r.err.empty());

  CHECK(json::parse(run({"density", "--family", "skew", "--a", "0.5", "--b", "1/2"}).out)["density"] == "2");

  const auto singular = scratch("singular.txt", "1\n1 2\n2 4\n");
  Run s = run({"density", "--matrix", singular.string()});
  CHECK(s.code == 3);
  CHECK(s.out.empty());
  CHECK(s.err.find("SingularGenerator") != std::string::npos);

  const auto good = scratch("good.txt", "# a sheared plane\n1\n2 1\n1 1\n");
  CHECK(json::parse(run({"density", "--matrix", good.string()}).out)["density"] == "1");

  CHECK(run({"density", "--family", "sep2d", "--a", "0.1234567890123", "--b", "1"}).code == 2);
  CHECK(run({"density", "--family", "sep2d", "--a", "x", "--b", "1"}).code == 2);
  CHECK(run({"density", "--family", "sep2d", "--a", "1"}).code == 2);
  CHECK(run({"density", "--family", "nope"}).code == 2);
  CHECK(run({"density", "--family", "skew", "--a", "1", "--b", "1", "--k", "3"}).code == 2);
  CHECK(run({"density", "--matrix", scratch("missing_file").string()}).code == 2);
  CHECK(run({"density"}).code == 2);
}

TEST_CASE("cli subcommand handling") {
  CHECK(run({}).code == 2);
  CHECK(run({"density", "classify"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("relation-check") != std::string::npos);
}

TEST_CASE("cli classify") {
  json inc = json::parse(run({"classify", "--family", "skew", "--a", "0.7", "--b", "0.7"}).out);
  CHECK(inc["outcome"] == "Incomplete");
  CHECK(inc["confidence"] == "exact");
  CHECK(inc["rule"] == "coset-splitting");
  bool attached = false;
  for (const auto& e : inc["evidence"])
    if (e["rule"] == "coset-splitting" && e["decisive"] == true) {
      attached = true;
      CHECK(e["detail"]["index"] == "2");
      CHECK(e["detail"]["cosets"].size() == 2);
    }
  CHECK(attached);
  CHECK(inc["params"]["a"] == "7/10");

  CHECK(json::parse(run({"classify", "--family", "sep2d", "--a", "1", "--b", "1"}).out)["outcome"] ==
        "CompleteNotFrame");
  CHECK(json::parse(run({"classify", "--family", "skew", "--a", "0.7", "--b", "0.3"}).out)["outcome"] == "Unknown");
  CHECK(json::parse(run({"classify", "--family", "threed", "--a", "0.4", "--b", "0.4", "--c", "0.9"}).out)["outcome"] ==
        "Frame");

  Run four = run({"classify", "--family", "integer", "--d", "4"});
  CHECK(four.code == 4);
  CHECK(four.out.empty());
}

TEST_CASE("cli certify") {
  json j = json::parse(run({"certify", "--family", "skew", "--a", "0.7", "--b", "0.7"}).out);
  CHECK(j["incompleteness"]["splitting"]["l"] == json({1, 1}));
  CHECK(j["frame_sublattice"].is_null());
  json f = json::parse(run({"certify", "--family", "skew", "--a", "0.4", "--b", "0.4"}).out);
  CHECK(f["incompleteness"].is_null());
  CHECK(f["frame_sublattice"].is_object());
  json c = json::parse(run({"certify", "--family", "skew", "--a", "1/2", "--b", "1/2"}).out);
  CHECK(c["critical"].is_object());
  CHECK(run({"certify", "--family", "skew", "--a", "1/2", "--b", "1/2", "--index-bound", "0"}).code == 2);
}

TEST_CASE("cli sweep matches the golden file") {
  const fs::path golden = fs::path(GABORLAB_GOLDEN_DIR) / "skew_sweep.csv";
  const std::vector<std::string> args{"sweep", "--family", "skew", "--a", "0.1:0.9", "--b", "0.1:0.9", "--step", "0.1"};
  Run r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(golden));

  const auto path = scratch("sweep.csv");
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", path.string()});
  setenv("GABORLAB_THREADS", "3", 1);
  Run o = run(with_out);
  unsetenv("GABORLAB_THREADS");
  CHECK(o.code == 0);
  CHECK(slurp(path) == slurp(golden));
  CHECK(json::parse(o.out)["rows"] == 81);

  CHECK(run({"sweep", "--family", "skew", "--a", "0.9:0.1", "--b", "0.1:0.9", "--step", "0.1"}).code == 2);
  CHECK(run({"sweep", "--family", "skew", "--a", "0.1:0.9", "--b", "0.1:0.9"}).code == 2);
  CHECK(run({"sweep", "--family", "skew", "--a", "0.1:0.9", "--step", "0.1"}).code == 2);
  CHECK(run({"sweep", "--family", "skew", "--a", "0.1:0.9", "--b", "0.1:0.9", "--step", "-0.1"}).code == 2);

  Run cor = run({"sweep", "--family", "cor6", "--k", "5", "--a", "0.1:0.3:0.1", "--b", "1"});
  CHECK(cor.code == 0);
  CHECK(cor.out.rfind("k,a,b,outcome,confidence,rule\n", 0) == 0);
}

TEST_CASE("cli zak-scan and bounds") {
  Run csv = run({"zak-scan", "--m", "8"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("x1,w1,abs_z\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 65);

  const auto path = scratch("zak.csv");
  json j = json::parse(run({"zak-scan", "--m", "64", "--out", path.string()}).out);
  CHECK(j["min_modulus"].get<double>() < 1e-3);
  CHECK(j["argmin"] == json({0.5, 0.5}));
  CHECK(run({"zak-scan", "--m", "4"}).code == 2);
  CHECK(run({"zak-scan", "--d", "5"}).code == 4);

  json b = json::parse(run({"bounds", "--family", "rect", "--a", "1", "--b", "1/2", "--R", "4", "--h", "1/8", "--T", "4"}).out);
  CHECK(b["A_est"].get<double>() > 0.5);
  CHECK(b["B_est"].get<double>() < 4);
  CHECK(b["R"] == 4.0);

  const auto cfg = scratch("cfg.ini", "# numeric overrides\nR=4\nh=1/8\nT=4\ntol=1e-8\n");
  json viacfg = json::parse(run({"bounds", "--family", "rect", "--a", "1", "--b", "1/2", "--config", cfg.string()}).out);
  CHECK(viacfg["A_est"] == b["A_est"]);
  json flagwins =
      json::parse(run({"bounds", "--family", "rect", "--a", "1", "--b", "1/2", "--config", cfg.string(), "--R", "2"}).out);
  CHECK(flagwins["R"] == 2.0);
  CHECK(run({"bounds", "--family", "rect", "--a", "1", "--b", "1", "--config", scratch("bad.ini", "colour=red\n").string()})
            .code == 2);
  CHECK(run({"bounds", "--family", "rect", "--a", "1", "--b", "1", "--h", "0.5"}).code == 1);
}

TEST_CASE("cli relation-check") {
  Run r = run({"relation-check"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["passed"] == true);
  for (const auto& c : j["checks"]) CHECK(c["error"].get<double>() < 1e-5);

  json two = json::parse(run({"relation-check", "--d", "2"}).out);
  bool tensor = false;
  for (const auto& c : two["checks"])
    if (c["name"] == "tensor-factorization") tensor = c["passed"].get<bool>();
  CHECK(tensor);

  Run coarse = run({"relation-check", "--h", "0.5"});
  CHECK(coarse.code == 5);
  json cj = json::parse(coarse.out);
  for (const auto& c : cj["checks"]) {
    const std::string name = c["name"];
    if (name.find("stft") != std::string::npos || name == "bargmann-modulus") {
      CHECK(c["passed"] == false);
      CHECK(c["failure"].get<std::string>().find("GridTooCoarse") != std::string::npos);
    }
  }
}

TEST_CASE("cli output is byte-deterministic") {
  const std::vector<std::string> args{"classify", "--family", "cor6", "--k", "5", "--a", "0.3", "--b", "0.9"};
  setenv("GABORLAB_THREADS", "1", 1);
  const std::string one = run(args).out;
  setenv("GABORLAB_THREADS", "8", 1);
  const std::string eight = run(args).out;
  unsetenv("GABORLAB_THREADS");
  CHECK(one == eight);
}
