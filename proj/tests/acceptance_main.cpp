// Release gate runner. Executes the full check battery in-process, then (when
// FOCKLAB_BIN points at the CLI) replays `focklab check` twice to confirm the
// command exits cleanly and reproduces the same manifest hash byte for byte.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "focklab/checks.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string manifest_line(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind("manifest ", 0) == 0) return line.substr(9);
  return {};
}

// Returns the manifest hash printed by `focklab check`, or "" on failure.
std::string run_cli_check(const std::string& bin, const std::string& log) {
  const std::string cmd = "\"" + bin + "\" check > \"" + log + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc != 0) {
    std::fprintf(stderr, "focklab check exited with status %d\n%s\n", rc,
                 slurp(log).c_str());
    return {};
  }
  return manifest_line(slurp(log));
}

}  // namespace

int main() {
  const focklab::BatteryResult battery = focklab::run_battery(true);
  bool ok = battery.all_pass;
  if (!ok) std::fprintf(stderr, "battery has failing checks\n");

  if (const char* bin = std::getenv("FOCKLAB_BIN")) {
    const auto dir = std::filesystem::temp_directory_path() / "focklab_acceptance";
    std::filesystem::create_directories(dir);
    const std::string h1 = run_cli_check(bin, (dir / "check1.log").string());
    const std::string h2 = run_cli_check(bin, (dir / "check2.log").string());
    const bool cli_ok = !h1.empty() && h1 == h2;
    std::printf("cli   %s  focklab check twice      first %s second %s\n",
                cli_ok ? "pass" : "FAIL", h1.empty() ? "(none)" : h1.c_str(),
                h2.empty() ? "(none)" : h2.c_str());
    ok = ok && cli_ok;
  } else {
    std::printf("cli   skip  FOCKLAB_BIN not set\n");
  }

  std::printf("%s\n", ok ? "acceptance: all checks passed"
                         : "acceptance: FAILURES detected");
  return ok ? 0 : 1;
}
