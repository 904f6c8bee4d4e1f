// Emits synthetic bookshelf bundles (blocks/nets/pl) for testing the
// pipeline when the published benchmark files are not at hand.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "csf/synth_bench.hpp"

int main(int argc, char** argv) {
  CLI::App app{"csf-genbench: synthetic bookshelf instance generator"};
  csf::SynthSpec spec;
  std::string out = ".";
  app.add_option("--name", spec.name, "instance name (file stem)");
  app.add_option("--modules", spec.modules, "hard module count")->check(CLI::PositiveNumber);
  app.add_option("--terminals", spec.terminals, "fixed terminal count")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--nets", spec.nets, "net count")->check(CLI::PositiveNumber);
  app.add_option("--seed", spec.seed, "generator seed");
  app.add_option("--out", out, "output directory");
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out);
    const csf::Netlist nl = csf::make_synthetic(spec);
    csf::write_bundle(nl, out, spec.name);
    std::cout << spec.name << ": " << nl.modules.size() << " modules, " << nl.terminals.size()
              << " terminals, " << nl.nets.size() << " nets, area " << nl.total_area << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
