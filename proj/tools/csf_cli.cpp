// Command-line harness: loads a bookshelf bundle, runs N seeded repetitions
// of the chosen mode/legalizer, and writes per-run + aggregate JSON (and
// optionally an SVG of the best legal run).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "csf/bench_io.hpp"
#include "csf/csf_driver.hpp"
#include "csf/kernels.hpp"
#include "csf/objective.hpp"
#include "csf/result_io.hpp"

namespace fs = std::filesystem;
using namespace csf;

namespace {

struct Options {
  std::string blocks, nets, pl, bench_dir, instance;
  std::string outline_spec, auto_outline;
  std::string mode = "qq";
  std::string legalizer = "la-csaq";
  std::string preset = "auto";
  std::string out_dir = "results";
  std::string kernel = "auto";
  int runs = 1;
  std::uint64_t seed = 1;
  int jobs = 0;
  bool svg = false;
  // Optional preset overrides (<0 means keep preset value).
  int t_max = -1;
  int population = -1;
  double rotate_prob = -1.0;
  int gp_kmax = -1, la_kmax = -1;
};

BenchmarkBundle resolve_bundle(const Options& opt) {
  BenchmarkBundle b;
  if (!opt.bench_dir.empty()) {
    std::string name = opt.instance;
    if (name.empty()) {
      for (const auto& entry : fs::directory_iterator(opt.bench_dir)) {
        if (entry.path().extension() == ".blocks") {
          if (!name.empty())
            throw std::runtime_error("multiple .blocks files in " + opt.bench_dir +
                                     "; pass --instance");
          name = entry.path().stem().string();
        }
      }
      if (name.empty()) throw std::runtime_error("no .blocks file in " + opt.bench_dir);
    }
    b.name = name;
    b.blocks_path = (fs::path(opt.bench_dir) / (name + ".blocks")).string();
    b.nets_path = (fs::path(opt.bench_dir) / (name + ".nets")).string();
    b.pl_path = (fs::path(opt.bench_dir) / (name + ".pl")).string();
    return b;
  }
  if (opt.blocks.empty() || opt.nets.empty() || opt.pl.empty())
    throw std::runtime_error("pass either --bench-dir or all of --blocks/--nets/--pl");
  b.blocks_path = opt.blocks;
  b.nets_path = opt.nets;
  b.pl_path = opt.pl;
  b.name = opt.instance.empty() ? fs::path(opt.blocks).stem().string() : opt.instance;
  return b;
}

Outline resolve_outline(const Options& opt, const Netlist& nl) {
  if (!opt.outline_spec.empty()) {
    const auto x = opt.outline_spec.find('x');
    if (x == std::string::npos)
      throw std::runtime_error("--outline expects WxH, e.g. 800x800");
    Outline o;
    o.width = std::stod(opt.outline_spec.substr(0, x));
    o.height = std::stod(opt.outline_spec.substr(x + 1));
    if (!(o.width > 0) || !(o.height > 0)) throw std::runtime_error("--outline must be positive");
    o.generated = false;
    return o;
  }
  double gamma = 0.15, aspect = 1.0;
  if (!opt.auto_outline.empty()) {
    std::stringstream ss(opt.auto_outline);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("--auto-outline expects gamma=G,aspect=R");
      const std::string key = item.substr(0, eq);
      const double val = std::stod(item.substr(eq + 1));
      if (key == "gamma") {
        gamma = val;
      } else if (key == "aspect") {
        aspect = val;
      } else {
        throw std::runtime_error("unknown --auto-outline key: " + key);
      }
    }
  }
  return generate_outline(nl.total_area, aspect, gamma);
}

std::string run_tag(const std::string& instance, const std::string& mode,
                    const std::string& legalizer) {
  return instance + "_" + mode + "_" + legalizer;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"csf: fixed-outline floorplanning via population conjugate-subgradient search"};
  Options opt;

  app.add_option("--blocks", opt.blocks, "bookshelf .blocks file");
  app.add_option("--nets", opt.nets, "bookshelf .nets file");
  app.add_option("--pl", opt.pl, "bookshelf .pl file (fixed terminals)");
  app.add_option("--bench-dir", opt.bench_dir, "directory holding <inst>.blocks/.nets/.pl");
  app.add_option("--instance", opt.instance, "instance name (default: from file names)");
  app.add_option("--outline", opt.outline_spec, "fixed outline WxH, e.g. 800x800");
  app.add_option("--auto-outline", opt.auto_outline,
                 "generate the outline: gamma=G,aspect=R (default gamma=0.15,aspect=1)");
  app.add_option("--mode", opt.mode, "optimizer pairing: cc | qc | qq")
      ->check(CLI::IsMember({"cc", "qc", "qq"}));
  app.add_option("--legalizer", opt.legalizer, "la-csaq | la-cg | ila-cgm | ila-cgs")
      ->check(CLI::IsMember({"la-csaq", "la-cg", "ila-cgm", "ila-cgs"}));
  app.add_option("--runs", opt.runs, "number of seeded repetitions")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "master seed; run i uses seed+i");
  app.add_option("--preset", opt.preset, "parameter preset: mcnc | gsrc | auto")
      ->check(CLI::IsMember({"mcnc", "gsrc", "auto"}));
  app.add_option("--out", opt.out_dir, "output directory for JSON/SVG records");
  app.add_option("--kernel", opt.kernel, "evaluation kernels: auto | scalar | avx2");
  app.add_option("--jobs", opt.jobs, "parallel runs (default: min(runs, cores))");
  app.add_flag("--svg", opt.svg, "write an SVG of the best legal run");
  app.add_option("--tmax", opt.t_max, "override restart budget");
  app.add_option("--pop", opt.population, "override population size");
  app.add_option("--rotate-prob", opt.rotate_prob, "override rotation probability");
  app.add_option("--gp-kmax", opt.gp_kmax, "override global-stage iteration budget");
  app.add_option("--la-kmax", opt.la_kmax, "override legalization iteration budget");

  CLI11_PARSE(app, argc, argv);

  try {
    kern::set_active_kernels(opt.kernel);

    const BenchmarkBundle bundle = resolve_bundle(opt);
    std::vector<std::string> warnings;
    const Netlist netlist = load_bundle(bundle, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

    const Outline outline = resolve_outline(opt, netlist);
    const Mode mode = mode_from_string(opt.mode);
    const LegalizerKind legalizer = legalizer_from_string(opt.legalizer);
    const BenchFamily family = opt.preset == "mcnc"   ? BenchFamily::Mcnc
                               : opt.preset == "gsrc" ? BenchFamily::Gsrc
                                                      : detect_family(netlist.module_count());

    fs::create_directories(opt.out_dir);
    const std::string tag = run_tag(bundle.name, opt.mode, opt.legalizer);

    std::cout << bundle.name << ": " << netlist.module_count() << " modules, "
              << netlist.terminals.size() << " terminals, " << netlist.nets.size() << " nets; "
              << "outline " << outline.width << " x " << outline.height << "; kernels "
              << kern::active_kernels().name << "\n";

    auto one_run = [&](int i) {
      CsfConfig cfg =
          make_config(mode, legalizer, family, bundle.name, netlist.module_count(), opt.seed + i);
      if (opt.t_max > 0) cfg.t_max = opt.t_max;
      if (opt.population > 0) cfg.population = opt.population;
      if (opt.rotate_prob >= 0.0) cfg.rotate_prob = opt.rotate_prob;
      if (opt.gp_kmax > 0) cfg.global.k_max = opt.gp_kmax;
      if (opt.la_kmax > 0) cfg.la.k_max = opt.la_kmax;
      return run_csf(netlist, outline, cfg);
    };

    std::vector<RunResult> results(opt.runs);
    const int jobs = opt.jobs > 0 ? opt.jobs
                                  : std::max(1, std::min<int>(opt.runs,
                                                              std::thread::hardware_concurrency()));
    std::atomic<int> next{0};
    std::vector<std::future<void>> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.push_back(std::async(std::launch::async, [&] {
        for (int i = next.fetch_add(1); i < opt.runs; i = next.fetch_add(1)) {
          results[i] = one_run(i);
        }
      }));
    }
    for (auto& w : workers) w.get();

    std::vector<RunStats> stats;
    int best = -1;
    for (int i = 0; i < opt.runs; ++i) {
      const RunResult& r = results[i];
      stats.push_back({r.legal, r.hpwl, r.t_g, r.t_l, r.t_w});
      if (r.legal && (best < 0 || r.hpwl < results[best].hpwl)) best = i;

      ResultRecord rec;
      rec.instance = bundle.name;
      rec.seed = opt.seed + i;
      rec.mode = opt.mode;
      rec.legalizer = opt.legalizer;
      rec.kernel = kern::active_kernels().name;
      rec.outline = outline;
      rec.legal = r.legal;
      rec.hpwl = r.hpwl;
      rec.hpwl_before_compress = r.hpwl_before_compress;
      rec.t_g = r.t_g;
      rec.t_l = r.t_l;
      rec.t_w = r.t_w;
      rec.restarts = r.restarts;
      for (const auto& m : netlist.modules) {
        rec.module_names.push_back(m.name);
        rec.widths.push_back(m.width);
        rec.heights.push_back(m.height);
      }
      rec.placement = r.placement;
      std::ofstream f(fs::path(opt.out_dir) / (tag + "_seed" + std::to_string(opt.seed + i) + ".json"));
      f << emit_result_json(rec);

      if (opt.svg && best == i) {
        std::ofstream s(fs::path(opt.out_dir) / (tag + "_best.svg"));
        s << emit_result_svg(rec);
      }
    }

    const AggregateStats agg = aggregate(stats);
    {
      std::ofstream f(fs::path(opt.out_dir) / (tag + "_aggregate.json"));
      f << aggregate_json(agg, bundle.name, opt.mode, opt.legalizer);
    }

    std::cout << "runs " << agg.runs << "  SR " << agg.sr_percent << "%";
    if (agg.hpwl_mean) {
      std::cout << "  HPWL " << *agg.hpwl_mean << "  MinW " << *agg.hpwl_min << "  HWSD "
                << *agg.hpwl_sd;
    }
    std::cout << "  t_g " << agg.mean_t_g << "s  t_l " << agg.mean_t_l << "s  t_w " << agg.mean_t_w
              << "s\n";
    return agg.successes == 0 && opt.runs > 0 ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
