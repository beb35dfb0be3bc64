#pragma once

#include <cstdint>
#include <vector>

#include "evclust/evidence.hpp"

namespace evclust {

// Strict-improvement margin: a transfer is favorable only when it lowers
// the metaconflict by more than this, which rules out cycling on
// floating-point ties.
inline constexpr Scalar kFavorableTol = 1e-15;

// Outcome of transferring one piece of evidence to another cluster.
struct MoveCandidate {
  int evidence_index = -1;
  int from_cluster = -1;
  int to_cluster = -1;
  Scalar new_from_conflict = 0.0;  // source-cluster conflict without the evidence
  Scalar new_to_conflict = 0.0;    // target-cluster conflict with it added
  Scalar new_metaconflict = 0.0;
};

// Assignment of every evidence index to one of a fixed number of clusters,
// with the exact per-cluster conflicts kept in step with the assignment.
// Empty clusters are valid and carry zero conflict. Single-writer: apply()
// mutates, everything else is read-only.
class Partition {
 public:
  Partition(const EvidenceSet& es, std::vector<int> assignment, int cluster_count,
            Scalar domain_conflict = 0.0);

  const EvidenceSet& evidence() const { return *es_; }
  int size() const { return static_cast<int>(assignment_.size()); }
  int cluster_count() const { return clusters_; }
  int cluster_of(int evidence_index) const {
    return assignment_[static_cast<std::size_t>(evidence_index)];
  }
  const std::vector<int>& assignment() const { return assignment_; }
  Scalar domain_conflict() const { return c0_; }

  const std::vector<Scalar>& cluster_conflicts() const { return conflicts_; }
  Scalar metaconflict() const;
  std::vector<int> members(int cluster) const;  // ascending evidence indices

  void apply(const MoveCandidate& move);

  // From-scratch recombination of every cluster; the cached conflicts must
  // always match this within kConflictTol.
  std::vector<Scalar> recomputed_conflicts() const;

 private:
  const EvidenceSet* es_;
  std::vector<int> assignment_;
  int clusters_;
  Scalar c0_;
  std::vector<Scalar> conflicts_;
};

// Consequence of moving the evidence to the given cluster; does not mutate p.
MoveCandidate evaluate_transfer(const Partition& p, int evidence_index, int to_cluster);

// True when the move strictly lowers the metaconflict. Equivalent to the
// plausibility-ratio comparison (1-c_j*)/(1-c_j) > (1-c_i)/(1-c_i*).
bool is_favorable(const Partition& p, const MoveCandidate& move);

struct OptimizeResult {
  Partition partition;
  std::vector<MoveCandidate> trace;  // applied moves, strictly decreasing Mcf

  Scalar metaconflict() const { return partition.metaconflict(); }
};

// Steepest-descent single-evidence transfers: at each step applies the
// favorable move with minimal resulting metaconflict (ties broken by lowest
// evidence index, then lowest target cluster) until no favorable move
// remains. Terminates at a local optimum.
OptimizeResult iterative_optimize(Partition start);

// Uniform random assignment into cluster_count clusters; deterministic per
// seed.
Partition random_partition(const EvidenceSet& es, int cluster_count,
                           std::uint64_t seed, Scalar domain_conflict = 0.0);

}  // namespace evclust
