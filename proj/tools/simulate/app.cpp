#include "app.hpp"

#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "config.hpp"
#include "cosmoferm/errors.hpp"
#include "runner.hpp"

namespace simulate {

namespace {

struct Flags {
  int workers = 1;
  std::string output;
  std::string preset;
  std::string config;
  std::string manifest;
};

RunConfig resolve_config(const Flags& f) {
  if (f.preset.empty() == f.config.empty()) {
    throw ValidationError("<arguments>", 0, "give either a config file or --preset NAME");
  }
  RunConfig cfg = load_config(f.preset.empty() ? std::filesystem::path(f.config)
                                               : preset_path(f.preset));
  if (!f.output.empty()) cfg.output.directory = f.output;
  return cfg;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian-state simulations of Dirac fermions on an expanding lattice",
               "simulate"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", f.config, "YAML run configuration");
    sub->add_option("--preset", f.preset, "shipped preset name");
    sub->add_option("--output", f.output, "output directory (overrides output.directory)");
    sub->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
  };
  CLI::App* run_cmd = app.add_subcommand("run", "run a configuration");
  add_common(run_cmd);
  CLI::App* check_cmd = app.add_subcommand("check", "validate a configuration only");
  add_common(check_cmd);
  CLI::App* plots_cmd = app.add_subcommand("plots", "write plot scripts for a finished run");
  plots_cmd->add_option("manifest", f.manifest, "manifest.json of a run")->required();
  CLI::App* presets_cmd = app.add_subcommand("presets", "list shipped presets");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "simulate: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*presets_cmd) {
      for (const auto& n : preset_names()) out << n << '\n';
      return kSuccess;
    }
    if (*plots_cmd) {
      const RunManifest m = load_manifest(f.manifest);
      for (const auto& s : make_plots(m)) out << s.string() << '\n';
      return kSuccess;
    }
    const RunConfig cfg = resolve_config(f);
    check_output_directory(cfg.output.directory);
    if (*check_cmd) {
      out << cfg.source_name << ": ok (" << cfg.analyses.size() << " analyses)\n";
      return kSuccess;
    }
    RunOptions opts;
    opts.workers = f.workers;
    const RunManifest m = run(cfg, opts);
    out << m.path().string() << '\n';
    return kSuccess;
  } catch (const ValidationError& e) {
    err << "simulate: invalid configuration: " << e.what() << '\n';
    return kValidation;
  } catch (const RunError& e) {
    err << "simulate: run failed: " << e.what() << '\n';
    return kNumerical;
  } catch (const cosmoferm::Error& e) {
    err << "simulate: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "simulate: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace simulate
