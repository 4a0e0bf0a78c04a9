#include "ncgft/config.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace ncgft;
using nlohmann::json;

TEST_CASE("toml_to_json: tables, values, arrays, comments")
{
  const char * text = R"(# top comment
name = "demo"   # trailing comment
seed = 7
threads = 2
discontinuity_threshold = 0.125

[embedding]
source = [2, 2]
target = [4]
mult = [[1, 1]]

[path]
kind = "diagonal"
range = [-1.0, 3.0]
samples = 21

[optimizer]
restarts = 4
grad_tol = 1e-8
)";
  json doc = toml_to_json(text);
  CHECK(doc["name"] == "demo");
  CHECK(doc["seed"] == 7);
  CHECK(doc["embedding"]["source"] == json({2, 2}));
  CHECK(doc["embedding"]["mult"] == json({{1, 1}}));
  CHECK(doc["path"]["range"][0] == -1.0);
  CHECK(doc["path"]["samples"] == 21);
  CHECK(doc["optimizer"]["grad_tol"] == 1e-8);
  CHECK(doc["discontinuity_threshold"] == 0.125);

  // multi-line arrays and booleans
  json ml = toml_to_json("x = [\n 1,\n 2,\n]\nflag = true\n");
  CHECK(ml["x"] == json({1, 2}));
  CHECK(ml["flag"] == true);

  CHECK_THROWS(toml_to_json("just a line without equals\n"));
  CHECK_THROWS(toml_to_json("x = 1 stray\n"));
}

TEST_CASE("parse_config: validation and canonical echo")
{
  json doc = {
      {"name", "t"},
      {"embedding", {{"source", {2}}, {"target", {3}}, {"mult", {{1}}}}},
      {"path", {{"kind", "diagonal"}, {"range", {0.0, 1.0}}, {"samples", 5}}},
      {"seed", 9},
  };
  RunConfig cfg = parse_config(doc);
  CHECK(cfg.spec.source.dims == std::vector<int>{2});
  CHECK(cfg.spec.pad == std::vector<int>{1});
  CHECK(cfg.path.samples == 5);
  CHECK(cfg.opts.seed == 9);

  // the echo re-parses to an identical echo (round trip)
  RunConfig cfg2 = parse_config(cfg.echo);
  CHECK(cfg2.echo == cfg.echo);

  // unknown keys anywhere are rejected
  json bad = doc;
  bad["surprise"] = 1;
  CHECK_THROWS(parse_config(bad));
  bad = doc;
  bad["path"]["speed"] = 3;
  CHECK_THROWS(parse_config(bad));
  bad = doc;
  bad["optimizer"] = {{"restarts", 0}};
  CHECK_THROWS(parse_config(bad));

  // infeasible embeddings are rejected through validation
  json inf = doc;
  inf["embedding"]["target"] = {1};
  CHECK_THROWS(parse_config(inf));

  // missing embedding is an error
  json noemb = {{"name", "x"}};
  CHECK_THROWS(parse_config(noemb));
}

TEST_CASE("presets cover the four scan cases")
{
  struct Row { const char * name; std::vector<int> src, tgt; };
  const Row rows[] = {
      {"case1", {2}, {3}},
      {"case2", {2, 2}, {4}},
      {"case3", {2, 2}, {5}},
      {"case4", {2, 3}, {5}},
  };
  for (const Row & r : rows) {
    RunConfig cfg = parse_config(preset_config(r.name));
    CHECK(cfg.spec.source.dims == r.src);
    CHECK(cfg.spec.target.dims == r.tgt);
    CHECK(cfg.path.kind == PathSpec::Kind::Diagonal);
    CHECK(cfg.path.t0 == -1.0);
    CHECK(cfg.path.t1 == 3.0);
    CHECK(cfg.path.samples == 161);
  }
  CHECK_THROWS(preset_config("case9"));
}

TEST_CASE("load_config_file: TOML and JSON produce the same canonical form")
{
  const char * toml_path = "test_cfg_tmp.toml";
  const char * json_path = "test_cfg_tmp.json";
  {
    std::ofstream t(toml_path);
    t << "name = \"same\"\nseed = 3\n[embedding]\nsource = [2]\ntarget = [3]\n"
         "mult = [[1]]\n";
    std::ofstream j(json_path);
    j << R"({"name":"same","seed":3,)"
      << R"("embedding":{"source":[2],"target":[3],"mult":[[1]]}})";
  }
  RunConfig a = load_config_file(toml_path);
  RunConfig b = load_config_file(json_path);
  CHECK(a.echo == b.echo);
  std::remove(toml_path);
  std::remove(json_path);

  CHECK_THROWS(load_config_file("missing_file.toml"));
  CHECK_THROWS(load_config_file("bad_extension.yaml"));
}
