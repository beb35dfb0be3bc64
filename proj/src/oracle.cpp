#include "evclust/oracle.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace evclust {

OracleResult brute_force_min(const EvidenceSet& es, int cluster_count,
                             Scalar domain_conflict, bool fix_first) {
  if (cluster_count < 1)
    throw std::invalid_argument("cluster count must be at least 1");
  const int n = es.size();

  const int free_digits = fix_first && n > 0 ? n - 1 : n;
  std::int64_t space = 1;
  for (int i = 0; i < free_digits; ++i) {
    if (space > kMaxOracleAssignments / cluster_count)
      throw std::invalid_argument(
          "instance too large for exhaustive search: r^N exceeds " +
          std::to_string(kMaxOracleAssignments));
    space *= cluster_count;
  }

  OracleResult result;
  result.min_mcf = std::numeric_limits<Scalar>::infinity();

  std::vector<int> assignment(static_cast<std::size_t>(n), 0);
  std::vector<Scalar> conflicts(static_cast<std::size_t>(cluster_count), 0.0);
  const int lowest_free = fix_first && n > 0 ? 1 : 0;

  for (;;) {
    std::vector<MassFunction> acc(static_cast<std::size_t>(cluster_count),
                                  MassFunction(es.frame()));
    for (int i = 0; i < n; ++i)
      acc[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].fold(
          es.item(i));
    for (int c = 0; c < cluster_count; ++c)
      conflicts[static_cast<std::size_t>(c)] =
          acc[static_cast<std::size_t>(c)].conflict_mass();
    const Scalar mcf = metaconflict(domain_conflict, conflicts);
    ++result.evaluated;
    if (mcf < result.min_mcf) {  // strict: keeps the lexicographically first optimum
      result.min_mcf = mcf;
      result.argmin = assignment;
    }

    // odometer over the free digits, least-significant digit last: visits
    // assignments in ascending lexicographic order
    int pos = n - 1;
    while (pos >= lowest_free) {
      if (++assignment[static_cast<std::size_t>(pos)] < cluster_count) break;
      assignment[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < lowest_free) break;
  }
  return result;
}

}  // namespace evclust
