#pragma once

#include <cstdint>
#include <vector>

#include "evclust/evidence.hpp"

namespace evclust {

// Largest assignment space brute_force_min will enumerate.
inline constexpr std::int64_t kMaxOracleAssignments = 10'000'000;

struct OracleResult {
  Scalar min_mcf = 0.0;
  std::vector<int> argmin;      // first optimum in lexicographic order
  std::int64_t evaluated = 0;   // assignments visited
};

// Exhaustive minimum of the metaconflict over every assignment of the
// evidence into cluster_count clusters. Deliberately obvious: no pruning
// beyond the optional fix_first symmetry cut (evidence 0 pinned to cluster
// 0). Refuses instances with more than kMaxOracleAssignments assignments.
OracleResult brute_force_min(const EvidenceSet& es, int cluster_count,
                             Scalar domain_conflict = 0.0, bool fix_first = false);

}  // namespace evclust
