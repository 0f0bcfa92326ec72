#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

using muskat::testing::TempDir;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "muskat");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = muskat::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("run a stable graph configuration") {
  TempDir dir("cli_run");
  const fs::path cfg = write_config(dir.path(), "stable.toml",
                                    "mode = \"graph\"\nn_points = 64\nt_final = 0.1\n[initial_data]\n"
                                    "kind = \"slope_profile\"\nslope = 0.5\n");
  const fs::path out = dir.path() / "out";
  const Outcome r = invoke({"run", "--config", cfg.string(), "--output", out.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["status"] == "Completed");
  for (const char* f : {"config.json", "norms.csv", "status.json", "snapshots"}) CHECK(fs::exists(out / f));

  const Outcome v = invoke({"verify", "--log", out.string()});
  CHECK(v.code == 0);
  const json verdicts = json::parse(v.out);
  REQUIRE(verdicts.is_array());
  CHECK(verdicts[0]["status"] == "Holds");

  const Outcome n = invoke({"norms", "--log", (out / "snapshots" / "t_0.000000000.csv").string()});
  CHECK(n.code == 0);
  CHECK(json::parse(n.out)["lipschitz"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));

  const Outcome all = invoke({"norms", "--log", out.string()});
  CHECK(json::parse(all.out).size() == 11);
}

TEST_CASE("turning run halts with exit code 2") {
  TempDir dir("cli_turn");
  const fs::path cfg = write_config(dir.path(), "turn.toml",
                                    "mode = \"curve\"\nn_points = 128\nt_final = 0.2\nreport_interval = 0.002\n"
                                    "[initial_data]\nkind = \"turning_profile\"\nsteepness = 0.92\n");
  const Outcome r = invoke({"run", "--config", cfg.string(), "--output", (dir.path() / "out").string()});
  CHECK(r.code == 2);
  const json status = json::parse(r.out);
  CHECK(status["status"] == "TurningDetected");
  CHECK(status["turning_time"].get<double>() > 0.0);
  std::ifstream in(dir.path() / "out" / "status.json");
  CHECK(json::parse(in)["turning_time"].get<double>() == status["turning_time"].get<double>());
}

TEST_CASE("configuration errors exit with code 1") {
  TempDir dir("cli_bad");
  const fs::path bad = write_config(dir.path(), "bad.toml", "mode = \"graph\"\nt_final = 1\nvisocity = 2\n");
  const Outcome r = invoke({"run", "--config", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("visocity") != std::string::npos);

  const fs::path neg = write_config(dir.path(), "neg.json", R"({"mode": "graph", "t_final": 1, "rho_bar": -1})");
  CHECK(invoke({"run", "--config", neg.string()}).code == 1);
  CHECK(invoke({"run", "--config", (dir.path() / "none.toml").string()}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"run"}).code == 1);
  CHECK(invoke({"verify", "--log", (dir.path() / "nothing").string()}).code == 1);
}

TEST_CASE("convergence and norms subcommands") {
  TempDir dir("cli_conv");
  const fs::path cfg = write_config(dir.path(), "conv.toml",
                                    "mode = \"convergence\"\nresolutions = [16, 32, 64]\n[initial_data]\n"
                                    "kind = \"slope_profile\"\nslope = 0.5\n");
  const Outcome r = invoke({"convergence", "--config", cfg.string()});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["resolutions"].size() == 2);
  CHECK(j["errors"].size() == 2);

  const Outcome same = invoke({"run", "--config", cfg.string()});
  CHECK(same.code == 0);
  CHECK(json::parse(same.out) == j);

  const fs::path norms = write_config(dir.path(), "norms.toml",
                                      "mode = \"norms\"\nn_points = 64\n[initial_data]\nkind = \"cosine\"\n"
                                      "amplitude = 0.5\nwavenumber = 2\n");
  const Outcome n = invoke({"norms", "--config", norms.string()});
  CHECK(n.code == 0);
  CHECK(json::parse(n.out)["wiener1"].get<double>() == doctest::Approx(1.0));
}
