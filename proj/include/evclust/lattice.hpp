#pragma once

#include <cstdint>

#include "evclust/partition.hpp"

namespace evclust {

// Benchmark family: one simple support per nonempty subset of {1..n}, so a
// zero-metaconflict partition into n clusters always exists.
struct ProblemSpec {
  int frame_size = 0;        // n: frame size and intended cluster count
  Scalar mass_low = 0.001;   // masses drawn i.i.d. Uniform[mass_low, mass_high]
  Scalar mass_high = 0.999;
  std::uint64_t seed = 0;
};

// 2^n - 1 supports in ascending bitmask order, masses from the seeded
// generator. Evidence index i carries focal mask i + 1.
EvidenceSet generate_lattice_problem(const ProblemSpec& spec);

// Greedy zero-conflict partition: each evidence goes to the cluster of its
// lowest frame element (all its cluster mates then share that element).
// For non-lattice sets an evidence whose lowest element exceeds the cluster
// count lands in the last cluster.
Partition canonical_partition(const EvidenceSet& es, int cluster_count,
                              Scalar domain_conflict = 0.0);

// Probability that two distinct evidences of the lattice family conflict,
// i.e. the fraction of ordered pairs of distinct nonempty subsets that are
// disjoint. Counted in exact integer arithmetic.
struct ConflictOdds {
  std::int64_t conflicting = 0;  // ordered disjoint pairs
  std::int64_t total = 0;        // ordered pairs of distinct subsets
  Scalar value = 0.0;            // conflicting / total
};

ConflictOdds conflict_probability(int n);

// Per-cluster conflict that would reproduce the metaconflict if all n
// clusters conflicted equally: 1 - (1 - mcf)^(1/n).
Scalar average_cluster_conflict(Scalar mcf, int n);

}  // namespace evclust
