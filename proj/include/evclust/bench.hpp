#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evclust/evidence.hpp"
#include "evclust/neural.hpp"

namespace evclust::bench {

enum class Method { iterative, neural, oracle };

std::string to_string(Method method);
Method method_from_string(std::string_view name);

// 64-bit finalizer used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Mixes three tags into the base seed. Tag conventions below: a is the
// frame size, b distinguishes the problem stream (0) from each solver
// stream (1 + method index), c is the run id.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c);

struct RunRecord {
  int size = 0;  // frame size n; the problem has 2^n - 1 evidences
  Method method = Method::iterative;
  int run_id = 0;
  std::uint64_t seed = 0;  // solver seed
  std::uint64_t problem_seed = 0;
  int clusters = 0;
  Scalar mcf = 0.0;  // NaN when the run did not produce a partition
  int iterations = 0;  // transfers applied, network updates, or states enumerated
  double wall_ms = 0.0;  // solver time only, problem setup excluded
  bool converged = false;
  std::vector<Scalar> cluster_conflicts;
  std::vector<int> assignment;
  std::string error;  // nonempty when the solver threw
};

std::string run_record_to_json(const RunRecord& record, int indent = 2);

struct ExperimentConfig {
  std::vector<int> sizes;  // frame sizes, one problem family per entry
  int runs_per_size = 10;
  std::vector<Method> methods;
  std::uint64_t base_seed = 0;
  neural::NetParams net_params;
  bool scale_inhibition = true;  // rescale net_params per problem size
  Scalar mass_low = 0.001;
  Scalar mass_high = 0.999;
};

// Solves one problem with one method, timing the solve alone. Solver
// exceptions land in the error field instead of propagating.
RunRecord run_single(const EvidenceSet& es, int clusters, Method method,
                     const neural::NetParams& params, std::uint64_t seed);

// Runs every configured method over the same seeded problems: run r of size
// n is one problem instance shared by all methods, so timings and
// metaconflicts are comparable across methods. Records come back sorted by
// (size, method order as configured, run id).
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

// Header line plus one row per record; doubles are %.17g and the
// cluster-conflict column is a quoted JSON array.
void write_csv(std::ostream& out, std::span<const RunRecord> records);

struct Summary {
  int size = 0;
  Method method = Method::iterative;
  int runs = 0;
  int converged = 0;
  Scalar best_mcf = 0.0;    // stats cover converged, error-free runs
  Scalar median_mcf = 0.0;
  Scalar mean_mcf = 0.0;
  double mean_wall_ms = 0.0;
  Scalar mean_cluster_conflict = 0.0;  // per-cluster rate matching mean_mcf
};

std::vector<Summary> summarize(std::span<const RunRecord> records);

// Tabulated 10-run mean metaconflicts of the reference network at sizes
// 3..7, shown alongside measured means; nullopt elsewhere.
std::optional<Scalar> reference_mean_mcf(int frame_size);

std::string summaries_to_json(std::span<const Summary> summaries, int indent = 2);

// Fixed-width text table, one row per (size, method), with the reference
// mean column filled in for network rows where one is tabulated.
std::string comparison_table(std::span<const Summary> summaries);

}  // namespace evclust::bench
