// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"
#include "volume/volume_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int exit_code = -1;
  std::string out;
  std::string err;
  nlohmann::json error() const { return nlohmann::json::parse(err).at("error"); }
};

Outcome run(const testutil::TempDir& dir, const std::string& args) {
  const std::string out = dir.file("stdout.txt"), err = dir.file("stderr.txt");
  const std::string cmd = std::string("\"") + CORSURF_CLI_PATH + "\" " + args + " > \"" + out + "\" 2> \"" + err + "\"";
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = testutil::read_bytes(out);
  o.err = testutil::read_bytes(err);
  return o;
}

std::string q(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

TEST_CASE("version and usage errors") {
  testutil::TempDir dir("cli_usage");
  const Outcome v = run(dir, "--version");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);

  for (const char* args : {"", "phantom --bogus", "frobnicate", "--threads 0 phantom", "phantom --dims x"}) {
    CAPTURE(args);
    const Outcome o = run(dir, args);
    CHECK(o.exit_code == 2);
    REQUIRE(!o.err.empty());
    CHECK(o.error()["category"] == "argument");
    CHECK(o.error().contains("stage"));
    CHECK(o.error().contains("message"));
  }
}

TEST_CASE("full command sequence") {
  testutil::TempDir dir("cli_flow");
  const Outcome ph = run(dir, "--output " + q(dir.file("ph")) + " --seed 4 phantom --dims 40 --gap 0.6 --svf-count 1");
  REQUIRE(ph.exit_code == 0);
  const auto pm = nlohmann::json::parse(ph.out);
  CHECK(pm["gap_mm"] == 0.6);
  CHECK(fs::exists(dir.file("ph/svf_0.nii.gz")));

  const Outcome in = run(dir, "--output " + q(dir.file("init")) + " init-surfaces " + q(dir.file("ph/labels.nii.gz")));
  REQUIRE(in.exit_code == 0);
  CHECK(nlohmann::json::parse(in.out)["command"] == "init-surfaces");

  const Outcome de = run(dir, "--output " + q(dir.file("def")) + " deform --input " + q(dir.file("init")) + " --svf " +
                                  q(dir.file("ph/svf_0.nii.gz")) + " --mesh-format obj");
  REQUIRE(de.exit_code == 0);
  CHECK(fs::exists(dir.file("def/lh_pial.obj")));

  const Outcome co = run(dir, "--output " + q(dir.file("col")) + " collide --input " + q(dir.file("def")) + " --all-pairs");
  REQUIRE(co.exit_code == 0);
  CHECK(nlohmann::json::parse(co.out)["collisions"]["pairs"].size() == 6);

  // Flags override the config file.
  testutil::write_text(dir.file("cfg.json"), R"({"samples": 500, "hausdorff_percentile": 95})");
  const Outcome me = run(dir, "--config " + q(dir.file("cfg.json")) + " --output " + q(dir.file("met")) +
                                  " metrics --input " + q(dir.file("def")) + " --reference " + q(dir.file("init")) +
                                  " --samples 800");
  REQUIRE(me.exit_code == 0);
  const auto mm = nlohmann::json::parse(me.out);
  CHECK(mm["config"]["samples"] == 800);
  CHECK(mm["config"]["hausdorff_percentile"] == 95.0);
  CHECK(mm["metrics"]["samples"] == 800);

  const Outcome re = run(dir, "--output " + q(dir.file("rep")) + " report " + q(dir.file("met/metrics.json")) + " " +
                                  q(dir.file("met/manifest.json")));
  REQUIRE(re.exit_code == 0);
  CHECK(fs::exists(dir.file("rep/aggregate.csv")));

  // A manifest works as a config file and reproduces the run.
  const Outcome again = run(dir, "--config " + q(dir.file("init/manifest.json")) + " --output " + q(dir.file("init2")) +
                                     " init-surfaces");
  REQUIRE(again.exit_code == 0);
  CHECK(testutil::read_bytes(dir.file("init/lh_white.ply")) == testutil::read_bytes(dir.file("init2/lh_white.ply")));
}

TEST_CASE("exit codes by error category") {
  testutil::TempDir dir("cli_errors");
  const Outcome io = run(dir, "--output " + q(dir.file("o")) + " init-surfaces " + q(dir.file("absent.nii.gz")));
  CHECK(io.exit_code == 3);
  CHECK(io.error()["category"] == "io");
  CHECK(io.error()["stage"] == "load_labels");

  testutil::write_text(dir.file("bad.json"), "{ nope");
  const Outcome fmt = run(dir, "--config " + q(dir.file("bad.json")) + " phantom");
  CHECK(fmt.exit_code == 3);
  CHECK(fmt.error()["category"] == "format");

  corsurf::GridGeometry g;
  g.dims = {10, 10, 10};
  corsurf::save_label_volume(corsurf::LabelVolume{corsurf::VoxelGrid<std::uint8_t>(g, 0)}, dir.file("empty.nii.gz"));
  const Outcome deg = run(dir, "--output " + q(dir.file("o")) + " init-surfaces " + q(dir.file("empty.nii.gz")));
  CHECK(deg.exit_code == 4);
  CHECK(deg.error()["category"] == "degenerate_input");
  CHECK(deg.error()["stage"] == "signed_distance");

  corsurf::LabelVolume twelve{corsurf::VoxelGrid<std::uint8_t>(g, 0)};
  twelve.grid.at(1, 2, 3) = 12;
  corsurf::save_label_volume(twelve, dir.file("twelve.nii.gz"));
  const Outcome val = run(dir, "--output " + q(dir.file("o")) + " init-surfaces " + q(dir.file("twelve.nii.gz")));
  CHECK(val.exit_code == 3);
  CHECK(val.error()["category"] == "validation");

  REQUIRE(run(dir, "--output " + q(dir.file("ph")) + " --seed 1 phantom --dims 40 --gap 0.5").exit_code == 0);
  const Outcome nc = run(dir, "--output " + q(dir.file("o")) + " init-surfaces " + q(dir.file("ph/labels.nii.gz")) +
                                  " --lambda-pial 2 --max-iterations 1");
  CHECK(nc.exit_code == 5);
  CHECK(nc.error()["category"] == "non_convergence");

  const Outcome miss = run(dir, "--output " + q(dir.file("o")) + " metrics --input " + q(dir.file("ph")) +
                                    " --reference " + q(dir.file("ph")));
  CHECK(miss.exit_code == 2);
  CHECK(miss.error()["message"].get<std::string>().find("lh_pial, rh_pial, lh_white, rh_white") != std::string::npos);

  testutil::write_text(dir.file("old.json"), R"({"schema_version": 99, "surfaces": []})");
  const Outcome schema = run(dir, "--output " + q(dir.file("o")) + " report " + q(dir.file("old.json")));
  CHECK(schema.exit_code == 3);
  CHECK(schema.error()["category"] == "schema");
  CHECK(schema.error()["message"].get<std::string>().find("old.json") != std::string::npos);

  const Outcome svf = run(dir, "--output " + q(dir.file("o")) + " deform --input " + q(dir.file("ph")) + " --svf " +
                                   q(dir.file("none.nii.gz")));
  CHECK(svf.exit_code == 3);
}
