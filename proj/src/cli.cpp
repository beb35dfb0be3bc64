#include "evclust/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"

#include "evclust/bench.hpp"
#include "evclust/io.hpp"
#include "evclust/lattice.hpp"
#include "evclust/neural.hpp"
#include "evclust/oracle.hpp"
#include "evclust/partition.hpp"

namespace evclust::cli {

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw std::runtime_error("cannot write " + out_path);
  }
  out << text;
}

struct GenOptions {
  int size = 0;
  std::uint64_t seed = 0;
  Scalar mass_low = 0.001;
  Scalar mass_high = 0.999;
  std::string out;
};

int do_gen(const GenOptions& o) {
  ProblemSpec spec;
  spec.frame_size = o.size;
  spec.mass_low = o.mass_low;
  spec.mass_high = o.mass_high;
  spec.seed = o.seed;
  emit(io::evidence_to_json(generate_lattice_problem(spec)), o.out);
  return kExitSuccess;
}

struct SolveOptions {
  std::string in;
  std::string out;
  std::string params_path;
  std::string method = "iterative";
  std::vector<int> snapshots;
  int clusters = 0;
  std::uint64_t seed = 0;
  bool no_scale = false;
};

std::filesystem::path snapshot_path(const std::string& out, int iteration) {
  const std::filesystem::path base = out.empty() ? "snapshot" : out;
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "_iter%06d.txt", iteration);
  return base.parent_path() / (base.stem().string() + suffix);
}

int do_solve(const SolveOptions& o) {
  const EvidenceSet es = io::load_evidence(o.in);
  const int clusters = o.clusters > 0 ? o.clusters : es.frame().size();
  const bench::Method method = bench::method_from_string(o.method);

  if (method == bench::Method::iterative) {
    const OptimizeResult opt =
        iterative_optimize(random_partition(es, clusters, o.seed));
    emit(io::partition_to_json(opt.partition), o.out);
    return kExitSuccess;
  }
  if (method != bench::Method::neural) {
    throw std::runtime_error("solve supports methods iterative and neural");
  }

  neural::NetParams params =
      o.params_path.empty() ? neural::NetParams{} : io::load_params(o.params_path);
  if (!o.no_scale) {
    params = neural::scale_params(params, es.size(), clusters);
  }
  const neural::NeuralResult res =
      neural::run(es, clusters, params, o.seed, o.snapshots);
  for (const neural::Snapshot& snap : res.snapshots) {
    io::write_snapshot_frame(snapshot_path(o.out, snap.iteration), snap.V);
  }
  if (!res.converged) {
    std::cerr << "did not converge within " << params.max_iterations
              << " iterations\n";
    return kExitNotConverged;
  }
  emit(io::partition_to_json(*res.partition), o.out);
  return kExitSuccess;
}

struct BenchOptions {
  std::vector<int> sizes;
  int runs = 10;
  std::vector<std::string> methods{"iterative", "neural"};
  std::uint64_t seed = 0;
  std::string out;
  std::string summary_out;
  std::string params_path;
  bool no_scale = false;
  Scalar mass_low = 0.001;
  Scalar mass_high = 0.999;
};

int do_bench(const BenchOptions& o) {
  bench::ExperimentConfig cfg;
  cfg.sizes = o.sizes;
  cfg.runs_per_size = o.runs;
  for (const std::string& name : o.methods) {
    cfg.methods.push_back(bench::method_from_string(name));
  }
  cfg.base_seed = o.seed;
  if (!o.params_path.empty()) {
    cfg.net_params = io::load_params(o.params_path);
  }
  cfg.scale_inhibition = !o.no_scale;
  cfg.mass_low = o.mass_low;
  cfg.mass_high = o.mass_high;

  const std::vector<bench::RunRecord> records = bench::run_experiment(cfg);
  if (o.out.empty()) {
    bench::write_csv(std::cout, records);
  } else {
    std::ofstream out(o.out);
    if (!out) {
      throw std::runtime_error("cannot write " + o.out);
    }
    bench::write_csv(out, records);
  }

  const std::vector<bench::Summary> summaries = bench::summarize(records);
  if (!o.summary_out.empty()) {
    emit(bench::summaries_to_json(summaries), o.summary_out);
  }
  // The table goes wherever the CSV is not.
  (o.out.empty() ? std::cerr : std::cout) << bench::comparison_table(summaries);
  return kExitSuccess;
}

struct OracleOptions {
  std::string in;
  std::string out;
  int clusters = 0;
  bool fix_first = false;
};

int do_oracle(const OracleOptions& o) {
  const EvidenceSet es = io::load_evidence(o.in);
  const int clusters = o.clusters > 0 ? o.clusters : es.frame().size();
  const OracleResult res = brute_force_min(es, clusters, 0.0, o.fix_first);
  std::cerr << "evaluated " << res.evaluated << " assignments\n";
  emit(io::partition_to_json(Partition(es, res.argmin, clusters)), o.out);
  return kExitSuccess;
}

struct RenderOptions {
  std::string in;
  std::string out;
};

int do_render(const RenderOptions& o) {
  const Matrix V = io::read_snapshot_frame(o.in);
  std::filesystem::path out = o.out;
  if (out.empty()) {
    out = std::filesystem::path(o.in).replace_extension(".pgm");
  }
  io::write_pgm(out, V);
  return kExitSuccess;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Conflict-driven clustering of simple-support evidence"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a seeded subset-lattice problem");
  gen_cmd->add_option("--size", gen.size, "Frame size n; emits 2^n - 1 evidences")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "Mass RNG seed");
  gen_cmd->add_option("--mass-low", gen.mass_low, "Lower mass bound");
  gen_cmd->add_option("--mass-high", gen.mass_high, "Upper mass bound");
  gen_cmd->add_option("--out", gen.out, "Evidence JSON path (stdout if omitted)");

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Cluster an evidence file");
  solve_cmd->add_option("--in", solve.in, "Evidence JSON path")->required();
  solve_cmd->add_option("--method", solve.method, "iterative or neural");
  solve_cmd->add_option("--clusters", solve.clusters,
                        "Cluster count (frame size if omitted)");
  solve_cmd->add_option("--seed", solve.seed, "Start-state seed");
  solve_cmd->add_option("--params", solve.params_path, "Network parameter JSON");
  solve_cmd->add_option("--snapshots", solve.snapshots,
                        "Iterations to dump voltage frames at (neural only)")
      ->delimiter(',');
  solve_cmd->add_flag("--no-scale", solve.no_scale,
                      "Use network parameters as given, without size rescaling");
  solve_cmd->add_option("--out", solve.out, "Partition JSON path (stdout if omitted)");

  BenchOptions bench_opts;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Timed method comparison");
  bench_cmd->add_option("--size", bench_opts.sizes, "Frame sizes to sweep")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--runs", bench_opts.runs, "Runs per size");
  bench_cmd->add_option("--method", bench_opts.methods,
                        "Methods to compare (iterative, neural, oracle)")
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench_opts.seed, "Base seed");
  bench_cmd->add_option("--params", bench_opts.params_path, "Network parameter JSON");
  bench_cmd->add_flag("--no-scale", bench_opts.no_scale,
                      "Skip per-size network rescaling");
  bench_cmd->add_option("--mass-low", bench_opts.mass_low, "Lower mass bound");
  bench_cmd->add_option("--mass-high", bench_opts.mass_high, "Upper mass bound");
  bench_cmd->add_option("--out", bench_opts.out, "CSV path (stdout if omitted)");
  bench_cmd->add_option("--summary", bench_opts.summary_out, "Summary JSON path");

  OracleOptions oracle;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Exhaustive minimum over all assignments");
  oracle_cmd->add_option("--in", oracle.in, "Evidence JSON path")->required();
  oracle_cmd->add_option("--clusters", oracle.clusters,
                         "Cluster count (frame size if omitted)");
  oracle_cmd->add_flag("--fix-first", oracle.fix_first,
                       "Pin evidence 0 to cluster 0 to skip relabelings");
  oracle_cmd->add_option("--out", oracle.out, "Partition JSON path (stdout if omitted)");

  RenderOptions render;
  CLI::App* render_cmd =
      app.add_subcommand("render", "Voltage frame to PGM image");
  render_cmd->add_option("--in", render.in, "Frame text path")->required();
  render_cmd->add_option("--out", render.out, "PGM path (input with .pgm if omitted)");

  int rc = kExitSuccess;
  gen_cmd->callback([&] { rc = do_gen(gen); });
  solve_cmd->callback([&] { rc = do_solve(solve); });
  bench_cmd->callback([&] { rc = do_bench(bench_opts); });
  oracle_cmd->callback([&] { rc = do_oracle(oracle); });
  render_cmd->callback([&] { rc = do_render(render); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // app.exit prints the message; fold its exit codes into ours (help is 0)
    return app.exit(e) == 0 ? kExitSuccess : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return rc;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("evclust");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) {
    argv.push_back(s.c_str());
  }
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace evclust::cli
