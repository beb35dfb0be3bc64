#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "evclust/partition.hpp"

namespace evclust::neural {

// Coupling and transfer constants of the clustering network. The
// inhibitions are negative; eb balances them so a uniform, conflict-free
// state receives zero net input. When eb is NaN it is derived from the
// problem dimensions at run time via excitation_bias().
struct NetParams {
  Scalar eta = 1e-5;   // gain factor of the voltage update
  Scalar u0 = 0.02;    // steepness of the tanh transfer
  Scalar ri = -500.0;  // row inhibition (one cluster per evidence)
  Scalar gi = -200.0;  // global inhibition
  Scalar dti = -2000.0;  // data-term inhibition multiplying conflict weights
  Scalar eb = std::numeric_limits<Scalar>::quiet_NaN();  // excitation bias
  Scalar noise_amp = 0.1;       // init noise amplitude as a fraction of u0
  Scalar snap_threshold = 0.99; // output level at which a row hard-commits
  int max_iterations = 10'000;
};

// Bias that cancels the row and global inhibition at the uniform state
// V = 1/cols with zero conflict weights: -[gi*rows + (ri+gi)*(cols-1)]/cols.
Scalar excitation_bias(int rows, int cols, Scalar gi, Scalar ri);

// Rescales gi and dti by 31/rows (the 31-row problem is the reference
// point) so the column inhibition per neuron keeps its reference magnitude
// as the row count grows, and recomputes eb accordingly.
NetParams scale_params(const NetParams& base, int rows, int cols);

// Voltage matrices of the network: one row per evidence, one column per
// cluster. V = (1 + tanh(u/u0))/2 holds entrywise for non-frozen rows;
// frozen rows hold exactly one 1.0 and never change again.
struct NetState {
  Matrix u;  // input voltages
  Matrix V;  // output voltages in [0, 1]
  std::vector<bool> frozen;
  int iteration = 0;

  int rows() const { return static_cast<int>(u.rows()); }
  int cols() const { return static_cast<int>(u.cols()); }
  bool all_frozen() const;
};

// Every input voltage starts at u0*atanh(2/cols - 1) plus seeded uniform
// noise in [-noise_amp*u0, +noise_amp*u0], which puts the outputs at 1/cols
// up to the noise. cols must be at least 2 (the unnoised start diverges at
// a single column).
NetState init_state(int rows, int cols, const NetParams& params, std::uint64_t seed);

// One synchronous update: all voltages advance from the iteration-t values,
// then per non-frozen row (a) if every output fell, the row is lifted so
// its least-decreased neuron is restored, and (b) a row whose top output
// reaches the snap threshold, or whose second-highest output is exactly
// zero, commits to its top column and freezes.
NetState step(const NetState& state, const EvidenceSet& es, const NetParams& params);

struct Snapshot {
  int iteration = 0;  // checkpoint label; late checkpoints carry the final state
  Matrix V;
};

struct NeuralResult {
  bool converged = false;
  int iterations = 0;
  NetState state;                     // final state, partial if not converged
  std::optional<Partition> partition; // present only when converged
  std::vector<Snapshot> snapshots;
};

// Iterates step() until every row is frozen or max_iterations is hit. On
// convergence the partition is read off the 1.0 column of each row and its
// cluster conflicts are computed exactly. Snapshot checkpoints past the
// final iteration repeat the final state.
NeuralResult run(const EvidenceSet& es, int cluster_count, const NetParams& params,
                 std::uint64_t seed, std::span<const int> snapshot_iterations = {});

namespace detail {

// Inverse of the output transfer, with V clamped away from {0, 1} so the
// atanh stays finite.
Scalar voltage_to_input(Scalar v, Scalar u0);

}  // namespace detail

}  // namespace evclust::neural
