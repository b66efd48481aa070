#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "../app/runner.hpp"

namespace {

int write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Lattice gauge theory with finite and truncated Lie groups: exact diagonalization"};
  cli.require_subcommand(1);

  std::string config_path, output_path, basis;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool timings = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Override the configured seed")->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--threads", threads, "Thread count (overrides LGT_NUM_THREADS)")->check(CLI::PositiveNumber);
    sub->add_option("--output", output_path, "Result file (default: config 'output' or stdout)");
    sub->add_option("--basis", basis, "Link basis")->check(CLI::IsMember({"rep", "group"}));
    sub->add_flag("--timings", timings, "Include wall-clock timings in the result document");
  };

  std::string group_ref;
  auto* info = cli.add_subcommand("group-info", "Print order, classes, irreps and character table");
  info->add_option("group", group_ref, "Built-in reference (D3, Z_4, SU2_trunc:J_max=1/2, U1_trunc:P=2) or JSON file")
      ->required();
  info->add_option("--output", output_path, "Also write the report as JSON");
  info->add_option("--threads", threads, "Thread count")->check(CLI::PositiveNumber);

  auto* run_all = cli.add_subcommand("run", "Run every configured task");
  auto* verify = cli.add_subcommand("verify", "Run the invariant suite for the configured model");
  auto* spectrum = cli.add_subcommand("spectrum", "Low-lying spectrum and degeneracies");
  auto* observables = cli.add_subcommand("observables", "Expectation values in the ground state or vacuum");
  auto* vortex = cli.add_subcommand("vortex-masses", "Single-plaquette vortex gaps per conjugacy class");
  for (auto* sub : {run_all, verify, spectrum, observables, vortex}) add_common(sub);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }

  lgt::set_num_threads(threads > 0 ? threads : lgt::default_num_threads());

  try {
    if (info->parsed()) {
      const auto result = lgt::app::group_info(lgt::app::load_catalog_reference(group_ref));
      std::cout << lgt::app::group_info_text(result.document);
      if (!output_path.empty() && write_output(output_path, lgt::app::serialize(result)) != 0) return 2;
      if (result.exit_code != 0)
        std::cerr << "error: invariant '" << result.document["first_failure"].get<std::string>() << "' fails\n";
      return result.exit_code;
    }

    auto config = lgt::app::load_config(config_path);
    if (seed_set) config.seed = seed;
    if (!basis.empty()) config.basis = lgt::parse_link_basis(basis);
    if (!output_path.empty()) config.output = output_path;

    lgt::app::RunOptions options;
    options.include_timings = timings;
    if (verify->parsed()) options.only_kind = "verify";
    if (spectrum->parsed()) options.only_kind = "spectrum";
    if (observables->parsed()) options.only_kind = "observables";
    if (vortex->parsed()) options.only_kind = "vortex-masses";

    const auto result = lgt::app::run(config, options);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& [task, secs] : result.timings) std::cerr << "timing: " << task << " " << secs << " s\n";
    if (write_output(config.output, lgt::app::serialize(result)) != 0) return 2;
    if (result.exit_code != 0) std::cerr << "one or more tasks failed\n";
    return result.exit_code;
  } catch (const lgt::app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const lgt::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
