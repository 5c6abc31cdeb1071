#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vnlab/pipeline.hpp"

namespace fs = std::filesystem;
using namespace vnlab;

namespace {

struct Flags {
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::string normalization;
  std::size_t cap = kDefaultHybridCap;
  std::string report_path;
  std::vector<std::string> analyses;
  bool timing = false;
};

RunOptions options_from(const Flags& f) {
  RunOptions o;
  o.cap = f.cap;
  o.tolerance = f.tolerance;
  o.seed = f.seed;
  if (f.normalization == "unit-minimal") o.normalization = Normalization::UnitMinimal;
  if (f.normalization == "unit-total") o.normalization = Normalization::UnitTotal;
  if (!f.analyses.empty()) o.analyses = f.analyses;
  return o;
}

void emit(const Json& report, const Flags& f) {
  const std::string text = report.dump(2);
  if (f.report_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(f.report_path);
  if (!out) throw Error(ErrorKind::IOFailure, "cannot write " + f.report_path);
  out << text << "\n";
}

// Runs one scenario, writes its report, returns the exit code.
template <typename Load>
int run_one(const std::string& source, Load load, const Flags& f, bool print) {
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const Scenario s = load();
    RunResult r = run_scenario(s, options_from(f));
    if (print) emit(r.report, f);
    for (const auto& id : r.failures) std::cerr << source << ": check failed: " << id << "\n";
    code = r.exit_code;
  } catch (const Error& e) {
    if (print) emit(error_report(source, e), f);
    std::cerr << source << ": " << e.what() << "\n";
    code = exit_code_for(e.kind());
  }
  if (f.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    std::cerr << source << ": " << dt.count() << " s\n";
  }
  return code;
}

int check_all(const fs::path& dir, const Flags& f) {
  if (!fs::is_directory(dir)) {
    std::cerr << "error: " << dir.string() << " is not a directory\n";
    return kExitSchema;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  int mismatches = 0;
  for (const auto& path : files) {
    int expected = kExitOk;
    try {
      expected = expected_exit_code(path).value_or(kExitOk);
    } catch (const Error&) {
      expected = kExitSchema;
    }
    const int got = run_one(path.string(), [&] { return load_scenario(path); }, f, false);
    const bool ok = got == expected;
    if (!ok) ++mismatches;
    std::cout << (ok ? "PASS " : "FAIL ") << path.filename().string() << " exit=" << got << " expected=" << expected
              << "\n";
  }
  std::cout << files.size() - mismatches << "/" << files.size() << " scenarios behaved as expected\n";
  return mismatches == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional crossed-product laboratory"};
  app.require_subcommand(1);
  Flags flags;
  if (const char* env = std::getenv("VNLAB_CAP")) flags.cap = std::strtoull(env, nullptr, 10);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tolerance", flags.tolerance, "Relative tolerance eps");
    cmd->add_option("--seed", flags.seed, "Seed for randomised checks");
    cmd->add_option("--normalization", flags.normalization, "unit-minimal or unit-total")
        ->check(CLI::IsMember({"unit-minimal", "unit-total"}));
    cmd->add_option("--cap", flags.cap, "Largest hybrid dimension (default 1024, env VNLAB_CAP)");
    cmd->add_option("--analyses", flags.analyses, "Subset of analyses to run")->delimiter(',');
    cmd->add_flag("--timing", flags.timing, "Print wall time to stderr");
  };

  std::string file;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("file", file, "Scenario JSON")->required();
  run->add_option("--report", flags.report_path, "Write the report here instead of stdout");
  add_common(run);

  std::string preset;
  auto* run_preset = app.add_subcommand("run-preset", "Run a built-in scenario");
  run_preset->add_option("spec", preset, "Preset, e.g. cyclic:3 or II1-tower:2,3,4")->required();
  run_preset->add_option("--report", flags.report_path, "Write the report here instead of stdout");
  add_common(run_preset);

  auto* presets = app.add_subcommand("list-presets", "List the built-in scenarios");

  std::string dir;
  auto* all = app.add_subcommand("check-all", "Run every scenario in a directory against its expected exit code");
  all->add_option("dir", dir, "Directory of scenario files")->required();
  add_common(all);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_one(file, [&] { return load_scenario(file); }, flags, true);
    if (*run_preset) return run_one(preset, [&] { return preset_scenario(preset); }, flags, true);
    if (*presets) {
      for (const auto& p : list_presets()) std::cout << p.syntax << "\n    " << p.description << "\n";
      return kExitOk;
    }
    if (*all) return check_all(dir, flags);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitOk;
}
