// nertcam: dataset generation, trace replay, differential runs against the
// golden model, and throughput benchmarks.
//
//   nertcam gen   --out DIR [--classes 10] [--grid 5,5] [--samples 1] [--order random --seed 7]
//   nertcam run   --config cfg.json --trace store.jsonl --trace infer.jsonl [--trace-cycles]
//   nertcam diff  --layout 4,4,4 --entries 16 --ops 10000 --seed 1
//   nertcam bench --mix lookup --ops 2000
//
// Exit codes: 0 ok, 1 input or parse error, 2 divergence found.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nertcam/bench.hpp"
#include "nertcam/dataset.hpp"
#include "nertcam/harness.hpp"
#include "nertcam/system.hpp"
#include "nertcam/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitDivergence = 2;

struct CommonOptions {
  std::string config_path;
  std::vector<std::size_t> layout;  // f,l,c
  std::vector<std::size_t> grid;    // rows,cols
  std::optional<std::size_t> entries;
  std::optional<std::size_t> padding;
  bool khot = false;
};

void add_config_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Config file (JSON)");
  cmd->add_option("--layout", o.layout, "Section widths f,l,c")->delimiter(',')->expected(3);
  cmd->add_option("--grid", o.grid, "Location grid rows,cols (enables 2D padding)")
      ->delimiter(',')
      ->expected(2);
  cmd->add_option("--entries", o.entries, "Memory capacity N");
  cmd->add_option("--padding", o.padding, "Default PREDICT_FEATURE padding");
  cmd->add_flag("--khot", o.khot, "Accept k-hot feature sections");
}

nertcam::NertcamConfig resolve_config(const CommonOptions& o) {
  nertcam::NertcamConfig config;
  if (!o.config_path.empty()) config = nertcam::read_config_file(o.config_path);
  if (!o.layout.empty()) config.layout = {o.layout[0], o.layout[1], o.layout[2]};
  if (!o.grid.empty()) config.padding_mode = nertcam::PaddingMode::grid(o.grid[0], o.grid[1]);
  if (o.entries) config.capacity = *o.entries;
  if (o.khot) config.khot_features = true;
  config.validate();
  return config;
}

std::vector<nertcam::TraceRecord> load_traces(const std::vector<std::string>& paths,
                                              const nertcam::SdrLayout& layout) {
  std::vector<nertcam::TraceRecord> trace;
  for (const auto& path : paths) {
    try {
      auto part = nertcam::read_trace_file(path, layout);
      trace.insert(trace.end(), part.begin(), part.end());
    } catch (const nertcam::ParseError& e) {
      throw nertcam::ParseError(0, path + ": " + e.what());
    }
  }
  return trace;
}

void print_cycle(const nertcam::CycleRecord& r, std::uint64_t total) {
  std::cerr << "cycle " << total << ' ' << nertcam::to_string(r.command) << " #" << r.cycle << ' '
            << nertcam::to_string(r.from) << "->" << nertcam::to_string(r.to) << ' '
            << nertcam::to_string(r.op) << " V=" << (r.valid_entry ? 1 : 0);
  if (r.outcome) std::cerr << ' ' << nertcam::to_string(*r.outcome);
  std::cerr << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NeRTCAM reference-frame memory model"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic object dataset and traces");
  nertcam::DatasetParams gen_params;
  std::string gen_out;
  std::vector<std::size_t> gen_grid{5, 5};
  std::string gen_order = "sequential";
  std::optional<std::size_t> gen_entries;
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--classes", gen_params.classes, "Number of object classes");
  gen->add_option("--grid", gen_grid, "Location grid rows,cols")->delimiter(',')->expected(2);
  gen->add_option("--feature-pool", gen_params.feature_pool, "Distinct features to draw from");
  gen->add_option("--feature-bits", gen_params.feature_bits, "Feature section width");
  gen->add_option("--samples", gen_params.samples_per_class, "Samples per class");
  gen->add_option("--order", gen_order, "Sensation order")
      ->check(CLI::IsMember({"sequential", "random"}));
  gen->add_option("--seed", gen_params.seed, "RNG seed");
  gen->add_option("--entries", gen_entries, "Capacity written to config.json (default: fits)");

  // run
  auto* run = app.add_subcommand("run", "Replay traces through the device model");
  CommonOptions run_opts;
  std::vector<std::string> run_traces;
  std::string run_report_path;
  std::string run_image;
  std::string run_save_image;
  bool trace_cycles = false;
  add_config_flags(run, run_opts);
  run->add_option("--trace", run_traces, "Trace file(s), replayed in order")->required();
  run->add_option("--report", run_report_path, "Write the report here instead of stdout");
  run->add_option("--image", run_image, "Load a memory image before replay");
  run->add_option("--save-image", run_save_image, "Save the memory image after replay");
  run->add_flag("--trace-cycles", trace_cycles, "Print every clock cycle to stderr");

  // diff
  auto* diff = app.add_subcommand("diff", "Run device and golden model in lockstep");
  CommonOptions diff_opts;
  std::vector<std::string> diff_traces;
  std::size_t diff_ops = 10000;
  std::uint64_t diff_seed = 1;
  add_config_flags(diff, diff_opts);
  diff->add_option("--trace", diff_traces, "Trace file(s); omit to fuzz");
  diff->add_option("--ops", diff_ops, "Fuzz length");
  diff->add_option("--seed", diff_seed, "Fuzz seed");

  // bench
  auto* bench = app.add_subcommand("bench", "Throughput across memory sizes");
  std::vector<std::size_t> bench_layout{128, 25, 10};
  std::vector<std::size_t> bench_sizes;
  std::string bench_mix = "lookup";
  std::size_t bench_ops = 1000;
  std::uint64_t bench_seed = 1;
  bench->add_option("--layout", bench_layout, "Section widths f,l,c")->delimiter(',')->expected(3);
  bench->add_option("--entries", bench_sizes, "Memory sizes (default 64..1024)")->delimiter(',');
  bench->add_option("--mix", bench_mix, "Operation mix")
      ->check(CLI::IsMember({"lookup", "infer", "predict", "store-delete"}));
  bench->add_option("--ops", bench_ops, "Iterations per size");
  bench->add_option("--seed", bench_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gen_params.rows = gen_grid[0];
      gen_params.cols = gen_grid[1];
      gen_params.order =
          gen_order == "random" ? nertcam::SensationOrder::Random : nertcam::SensationOrder::Sequential;
      const auto dataset = nertcam::generate_dataset(gen_params);
      nertcam::write_dataset_files(gen_out, dataset, gen_entries.value_or(dataset.entry_count()));
      std::cout << "wrote " << dataset.entry_count() << " STORE records for "
                << gen_params.classes << " classes to " << gen_out << '\n';
      return kExitOk;
    }

    if (run->parsed()) {
      const auto config = resolve_config(run_opts);
      const auto trace = load_traces(run_traces, config.layout);
      nertcam::Nertcam device(config);
      if (!run_image.empty()) {
        std::ifstream in(run_image);
        if (!in) throw nertcam::ParseError(0, "cannot open image " + run_image);
        device.load_image(in);
      }
      if (trace_cycles) {
        device.set_cycle_observer([&device](const nertcam::CycleRecord& r) {
          print_cycle(r, device.status().total_cycles);
        });
      }
      const auto report = nertcam::replay(device, trace, run_opts.padding.value_or(0));
      if (run_report_path.empty()) {
        nertcam::write_report(std::cout, report);
      } else {
        std::ofstream out(run_report_path);
        nertcam::write_report(out, report);
      }
      if (!run_save_image.empty()) {
        std::ofstream out(run_save_image);
        device.save_image(out);
      }
      return report.has_input_error() ? kExitInputError : kExitOk;
    }

    if (diff->parsed()) {
      const auto config = resolve_config(diff_opts);
      std::vector<nertcam::TraceRecord> trace;
      if (diff_traces.empty()) {
        nertcam::FuzzParams fuzz;
        fuzz.ops = diff_ops;
        fuzz.seed = diff_seed;
        if (diff_opts.padding) fuzz.max_padding = *diff_opts.padding;
        trace = nertcam::fuzz_trace(config, fuzz);
      } else {
        trace = load_traces(diff_traces, config.layout);
      }
      const std::size_t padding = diff_traces.empty() ? 0 : diff_opts.padding.value_or(0);
      const auto result = nertcam::diff(config, trace, padding);
      if (result.clean()) {
        std::cout << "clean: " << result.records_checked << " records, 0 divergences\n";
        return kExitOk;
      }
      const auto& d = *result.first;
      std::cout << "divergence at record " << d.record << " field " << d.field
                << ": device=" << d.device_value << " golden=" << d.golden_value << '\n';
      return kExitDivergence;
    }

    if (bench->parsed()) {
      const nertcam::SdrLayout layout{bench_layout[0], bench_layout[1], bench_layout[2]};
      layout.validate();
      const auto sizes = bench_sizes.empty() ? nertcam::default_bench_sizes() : bench_sizes;
      const auto points =
          nertcam::run_bench(layout, sizes, *nertcam::parse_op_mix(bench_mix), bench_ops, bench_seed);
      std::cout << std::left << std::setw(10) << "entries" << std::setw(12) << "iterations"
                << std::setw(16) << "ops/sec" << std::setw(14) << "ns/op" << "cycles/op\n";
      for (const auto& p : points) {
        std::cout << std::left << std::setw(10) << p.entries << std::setw(12) << p.iterations
                  << std::setw(16) << std::fixed << std::setprecision(0) << p.ops_per_sec
                  << std::setw(14) << std::setprecision(1) << p.ns_per_op << std::setprecision(2)
                  << p.cycles_per_op << '\n';
      }
      return kExitOk;
    }
  } catch (const nertcam::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}
