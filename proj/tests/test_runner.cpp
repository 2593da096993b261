#include <cstdio>
#include <filesystem>
#include <string>

#include <doctest.h>

#include "focklab/config.hpp"
#include "focklab/io.hpp"
#include "focklab/runner.hpp"

using namespace focklab;

TEST_CASE("config parsing: sections, comments, typed getters") {
  const Config cfg = Config::parse(
      "# leading comment\n"
      "[model]\n"
      "alpha = 2.5\n"
      "; full-line comment\n"
      "dim = 32\n"
      "[experiment]\n"
      "kind = phi-check\n"
      "[phi-check]\n"
      "r_max = 6.0\n"
      "samples = 40\n");
  CHECK(cfg.has("model", "alpha"));
  CHECK(cfg.get_double("model", "alpha") == 2.5);
  CHECK(cfg.get_int("model", "dim") == 32);
  CHECK(cfg.get("experiment", "kind") == "phi-check");
  CHECK(cfg.get_or("model", "weight", "classical") == "classical");
  CHECK(cfg.get_double_or("phi-check", "missing", 7.0) == 7.0);
  CHECK_FALSE(cfg.has("model", "weight"));
}

TEST_CASE("config parsing: lists and complex values") {
  const Config cfg = Config::parse(
      "[s]\n"
      "radii = 0.5, 1.0, 2.5\n"
      "point = 1.5,-2.0\n"
      "real_only = 3.25\n");
  const std::vector<double> radii = cfg.get_list("s", "radii");
  REQUIRE(radii.size() == 3);
  CHECK(radii[1] == 1.0);
  CHECK(cfg.get_complex("s", "point") == Complex(1.5, -2.0));
  CHECK(cfg.get_complex("s", "real_only") == Complex(3.25, 0.0));
  CHECK(cfg.get_complex_or("s", "missing", Complex(0.0, 1.0)) == Complex(0.0, 1.0));
}

TEST_CASE("config parsing rejects malformed input") {
  CHECK_THROWS_AS(Config::parse("key_without_section = 1\n"), InvalidParameter);
  CHECK_THROWS_AS(Config::parse("[s]\nx = 1\nx = 2\n"), InvalidParameter);
  CHECK_THROWS_AS(Config::parse("[s]\nnot a key value line\n"), InvalidParameter);
  CHECK_THROWS_AS(Config::parse("[unclosed\nx = 1\n"), InvalidParameter);
  const Config cfg = Config::parse("[s]\nx = pear\ny = 2.5\n");
  CHECK_THROWS_AS(cfg.get_double("s", "x"), InvalidParameter);
  CHECK_THROWS_AS(cfg.get_int("s", "y"), InvalidParameter);
  CHECK_THROWS_AS(cfg.get("s", "absent"), InvalidParameter);
  CHECK_THROWS_AS(cfg.get("absent", "x"), InvalidParameter);
  CHECK_THROWS_AS(cfg.require_known_keys("s", {"x"}), InvalidParameter);
  CHECK_NOTHROW(cfg.require_known_keys("s", {"x", "y"}));
}

TEST_CASE("canonical form sorts sections and keys for stable hashing") {
  const Config a = Config::parse("[b]\nz = 1\na = 2\n[a]\nq = 3\n");
  const Config b = Config::parse("[a]\nq = 3\n[b]\na = 2\nz = 1\n");
  CHECK(a.canonical_string() == b.canonical_string());
  CHECK(a.canonical_string().find("[a]") < a.canonical_string().find("[b]"));
}

TEST_CASE("experiments validate their kind and section layout") {
  CHECK_THROWS_AS(
      run_experiment(Config::parse("[experiment]\nkind = juggling\n")),
      InvalidParameter);
  CHECK_THROWS_AS(run_experiment(Config::parse(
                      "[experiment]\nkind = sharp\n[sharp]\na = 1\nb = 1\n"
                      "[heat]\nhalf = 2\n")),
                  InvalidParameter);
  CHECK_THROWS_AS(run_experiment(Config::parse(
                      "[model]\ndim = 12\nflavor = mint\n"
                      "[experiment]\nkind = sharp\n[sharp]\na = 1\nb = 1\n")),
                  InvalidParameter);
}

TEST_CASE("phi-check runs end to end and reports a satisfied curvature bound") {
  const RunResult res = run_experiment(Config::parse(
      "[model]\ndim = 12\n[experiment]\nkind = phi-check\n"
      "[phi-check]\nr_max = 5\nsamples = 50\n"));
  CHECK(res.kind == "phi-check");
  REQUIRE(res.artifacts.size() == 3);
  CHECK(res.artifacts[0].first == "phi_profile.csv");
  CHECK(res.artifacts[1].first == "moments.csv");
  CHECK(res.artifacts[2].first == "phi_condition.json");
  CHECK(res.artifacts[2].second.find("\"satisfied\": true") != std::string::npos);
  CHECK(res.manifest_json.find("\"kind\": \"phi-check\"") != std::string::npos);
  CHECK(res.manifest_hash.size() == 16);
}

TEST_CASE("operator specs parse presets, symbols and measures") {
  const std::string head = "[model]\ndim = 12\n[experiment]\nkind = berezin-scan\n";
  CHECK_NOTHROW(run_experiment(Config::parse(
      head + "[berezin-scan]\noperator = preset:unit-ball\nhalf = 1\nstep = 0.5\n")));
  CHECK_NOTHROW(run_experiment(Config::parse(
      head + "[berezin-scan]\noperator = symbol:abs2(z)\nhalf = 1\nstep = 0.5\n")));
  CHECK_NOTHROW(run_experiment(Config::parse(
      head +
      "[berezin-scan]\noperator = measure:0,0,1,0;0.5,0.5,0,1\nhalf = 1\nstep = 0.5\n")));
  CHECK_THROWS_AS(run_experiment(Config::parse(
                      head + "[berezin-scan]\noperator = guess\nhalf = 1\nstep = 0.5\n")),
                  InvalidParameter);
  CHECK_THROWS_AS(
      run_experiment(Config::parse(
          head + "[berezin-scan]\noperator = measure:0,0,1\nhalf = 1\nstep = 0.5\n")),
      InvalidParameter);
}

TEST_CASE("repeated experiments are byte-identical") {
  const std::string text =
      "[model]\ndim = 16\n[experiment]\nkind = sharp\n[sharp]\na = 2\nb = 2\n";
  const RunResult r1 = run_experiment(Config::parse(text));
  const RunResult r2 = run_experiment(Config::parse(text));
  CHECK(r1.manifest_hash == r2.manifest_hash);
  CHECK(r1.manifest_json == r2.manifest_json);
  REQUIRE(r1.artifacts.size() == r2.artifacts.size());
  for (std::size_t i = 0; i < r1.artifacts.size(); ++i)
    CHECK(r1.artifacts[i] == r2.artifacts[i]);
}

TEST_CASE("artifacts land on disk next to their manifest") {
  const RunResult res = run_experiment(Config::parse(
      "[model]\ndim = 12\n[experiment]\nkind = sharp\n[sharp]\na = 1\nb = 2\n"));
  const std::string dir =
      (std::filesystem::temp_directory_path() / "focklab_runner_test").string();
  std::filesystem::remove_all(dir);
  write_run(res, dir);
  CHECK(io::read_file(dir + "/manifest.json") == res.manifest_json);
  CHECK(io::read_file(dir + "/sharp_poly.json") == res.artifacts[0].second);
  std::filesystem::remove_all(dir);
}

TEST_CASE("berezin scans flag points beyond the trust radius") {
  const RunResult res = run_experiment(Config::parse(
      "[model]\ndim = 12\n[experiment]\nkind = berezin-scan\n"
      "[berezin-scan]\noperator = preset:identity\nhalf = 20\nstep = 10\n"));
  CHECK(res.manifest_json.find("beyond the trust radius") != std::string::npos);
}

TEST_CASE("heat experiments optionally add the point-mass curve") {
  const std::string base =
      "[model]\ndim = 12\n[experiment]\nkind = heat\n"
      "[heat]\ntimes = 0.2,0.1\nhalf = 2\ncell = 0.1\n";
  const RunResult plain = run_experiment(Config::parse(base));
  CHECK(plain.artifacts.size() == 1);
  const RunResult with_pm = run_experiment(
      Config::parse(base + "point_mass_eps = 0.5,0.25\npoint_mass_at = 0.25,0.25\n"));
  CHECK(with_pm.artifacts.size() == 2);
  CHECK(with_pm.artifacts[1].first == "point_mass_curve.csv");
}

TEST_CASE("fock-sobolev weights flow through the model section") {
  const RunResult res = run_experiment(Config::parse(
      "[model]\nweight = fock-sobolev\nalpha = 1\nm = 1\nshift = 3\ndim = 12\n"
      "[experiment]\nkind = phi-check\n[phi-check]\nsamples = 30\n"));
  CHECK(res.manifest_json.find("fock-sobolev") != std::string::npos);
  CHECK_THROWS_AS(
      run_experiment(Config::parse(
          "[model]\nweight = tropical\n[experiment]\nkind = phi-check\n")),
      InvalidParameter);
}
