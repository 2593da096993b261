#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "focklab/checks.hpp"
#include "focklab/config.hpp"
#include "focklab/io.hpp"
#include "focklab/runner.hpp"
#include "focklab/symbols.hpp"

int main(int argc, char** argv) {
  CLI::App app{"focklab: weighted entire-function space laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  CLI::App* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("config", config_path, "INI experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("-o,--out", out_dir, "artifact directory (default: out)");

  CLI::App* presets = app.add_subcommand("presets", "list the operator presets");

  std::string check_out;
  CLI::App* check = app.add_subcommand("check", "run the full verification battery");
  check->add_option("-o,--out", check_out, "also write battery.json here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const focklab::RunResult res =
          focklab::run_experiment(focklab::Config::load(config_path));
      focklab::write_run(res, out_dir);
      std::printf("%s: %zu artifacts -> %s\n", res.kind.c_str(), res.artifacts.size(),
                  out_dir.c_str());
      std::printf("manifest %s\n", res.manifest_hash.c_str());
      return 0;
    }
    if (presets->parsed()) {
      for (const auto& [name, description] : focklab::preset_catalog())
        std::printf("%-12s %s\n", name.c_str(), description.c_str());
      return 0;
    }
    const focklab::BatteryResult battery = focklab::run_battery(true);
    if (!check_out.empty())
      focklab::io::write_file(check_out + "/battery.json", battery.manifest_json);
    std::printf("manifest %s\n", battery.manifest_hash.c_str());
    std::printf("%s\n", battery.all_pass ? "all checks passed" : "CHECK FAILURES");
    return battery.all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
